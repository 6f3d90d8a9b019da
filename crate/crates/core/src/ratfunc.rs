//! Rational functions of `N` with integer coefficients and their expansions
//! in powers of `1/N`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::PolynomialZ;

/// `num / den` in canonical form: coprime, no common integer content and a
/// positive leading denominator coefficient. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRational")]
pub struct RationalFunctionN {
    num: PolynomialZ,
    den: PolynomialZ,
}

#[derive(Deserialize)]
struct RawRational {
    num: PolynomialZ,
    den: PolynomialZ,
}

impl TryFrom<RawRational> for RationalFunctionN {
    type Error = Error;
    fn try_from(r: RawRational) -> Result<Self> {
        RationalFunctionN::new(r.num, r.den)
    }
}

impl RationalFunctionN {
    pub fn new(num: PolynomialZ, den: PolynomialZ) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Arithmetic("zero denominator".into()));
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: PolynomialZ, den: PolynomialZ) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let mut num = num.exact_div(&g).expect("gcd divides");
        let mut den = den.exact_div(&g).expect("gcd divides");
        let mut c = num.content().gcd(&den.content());
        if den.lead().unwrap().is_negative() {
            c = -c;
        }
        if c != BigInt::from(1) {
            let cp = PolynomialZ::constant(c);
            num = num.exact_div(&cp).expect("content divides");
            den = den.exact_div(&cp).expect("content divides");
        }
        RationalFunctionN { num, den }
    }

    pub fn zero() -> Self {
        RationalFunctionN {
            num: PolynomialZ::zero(),
            den: PolynomialZ::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(PolynomialZ::one())
    }

    pub fn from_poly(p: PolynomialZ) -> Self {
        RationalFunctionN {
            num: p,
            den: PolynomialZ::one(),
        }
    }

    pub fn numerator(&self) -> &PolynomialZ {
        &self.num
    }

    pub fn denominator(&self) -> &PolynomialZ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Exact value at `N = x`; fails at a pole.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Arithmetic(format!("pole at N = {x}")));
        }
        Ok(self.num.eval(x) / d)
    }

    /// Expansion at `N = ∞` with `terms` coefficients.
    pub fn series(&self, terms: usize) -> OneOverNSeries {
        if self.is_zero() {
            return OneOverNSeries {
                offset: 0,
                coeffs: vec![BigRational::zero(); terms],
                zero: true,
            };
        }
        let dp = self.num.degree().unwrap();
        let dq = self.den.degree().unwrap();
        // with x = 1/N, P(N)/Q(N) = x^{dq-dp} P̂(x)/Q̂(x) for the reversed
        // coefficient lists
        let rev = |p: &PolynomialZ| -> Vec<BigRational> {
            p.coeffs()
                .iter()
                .rev()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect()
        };
        let a = rev(&self.num);
        let b = rev(&self.den);
        let mut c: Vec<BigRational> = Vec::with_capacity(terms);
        for k in 0..terms {
            let mut s = a.get(k).cloned().unwrap_or_else(BigRational::zero);
            for j in 1..=k.min(b.len() - 1) {
                s -= &b[j] * &c[k - j];
            }
            c.push(s / &b[0]);
        }
        OneOverNSeries {
            offset: dq as i64 - dp as i64,
            coeffs: c,
            zero: false,
        }
    }

    pub fn to_f64(&self, n: f64) -> f64 {
        self.num.eval_f64(n) / self.den.eval_f64(n)
    }
}

/// `Σ_{j<len} c_j N^{−offset−j}`; `c₀ ≠ 0` unless the function is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneOverNSeries {
    pub offset: i64,
    pub coeffs: Vec<BigRational>,
    zero: bool,
}

impl Serialize for OneOverNSeries {
    /// `{"offset":2,"coeffs":["1","0","1"]}`
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("OneOverNSeries", 2)?;
        st.serialize_field("offset", &self.offset)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl OneOverNSeries {
    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// Leading coefficient `c₀`.
    pub fn leading(&self) -> Option<&BigRational> {
        if self.zero {
            None
        } else {
            self.coeffs.first()
        }
    }

    /// Coefficient of `N^{−e}`, or `None` past the computed order.
    pub fn coeff_at_exponent(&self, e: i64) -> Option<BigRational> {
        if self.zero {
            return Some(BigRational::zero());
        }
        if e < self.offset {
            return Some(BigRational::zero());
        }
        self.coeffs.get((e - self.offset) as usize).cloned()
    }
}

impl fmt::Display for OneOverNSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*N^-{}", self.offset + j as i64)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(N^-{})", self.offset + self.coeffs.len() as i64)
    }
}

impl Add for &RationalFunctionN {
    type Output = RationalFunctionN;
    fn add(self, rhs: &RationalFunctionN) -> RationalFunctionN {
        if self.den == rhs.den {
            return RationalFunctionN::canonical(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunctionN::canonical(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunctionN {
    type Output = RationalFunctionN;
    fn neg(self) -> RationalFunctionN {
        RationalFunctionN {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunctionN {
    type Output = RationalFunctionN;
    fn neg(self) -> RationalFunctionN {
        -&self
    }
}

impl Sub for &RationalFunctionN {
    type Output = RationalFunctionN;
    fn sub(self, rhs: &RationalFunctionN) -> RationalFunctionN {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunctionN {
    type Output = RationalFunctionN;
    fn mul(self, rhs: &RationalFunctionN) -> RationalFunctionN {
        RationalFunctionN::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunctionN {
    type Output = Result<RationalFunctionN>;
    fn div(self, rhs: &RationalFunctionN) -> Result<RationalFunctionN> {
        RationalFunctionN::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunctionN {
            type Output = RationalFunctionN;
            fn $m(self, rhs: RationalFunctionN) -> RationalFunctionN {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalFunctionN> for RationalFunctionN {
            type Output = RationalFunctionN;
            fn $m(self, rhs: &RationalFunctionN) -> RationalFunctionN {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for RationalFunctionN {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(RationalFunctionN::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for RationalFunctionN {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(RationalFunctionN::one(), |a, b| a * b)
    }
}

impl fmt::Display for RationalFunctionN {
    /// `num / den`, parenthesising multi-term polynomials.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &PolynomialZ| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{} / {}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RationalFunctionN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunctionN({self})")
    }
}
