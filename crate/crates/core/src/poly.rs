//! Integer polynomials in the formal symbol `N`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Polynomial with arbitrary-precision integer coefficients, ascending
/// degree, never with a trailing zero. The zero polynomial has no
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolynomialZ {
    coeffs: Vec<BigInt>,
}

impl PolynomialZ {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolynomialZ { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        PolynomialZ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c·N^d`.
    pub fn monomial(c: BigInt, d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `self / content`, with a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.lead().unwrap().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Coefficientwise division; the caller guarantees exactness.
    fn div_scalar(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a / c).collect())
    }

    fn shifted_scaled(&self, c: &BigInt, shift: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); shift];
        coeffs.extend(self.coeffs.iter().map(|a| a * c));
        Self::new(coeffs)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Pseudo-remainder: a multiple `lc(b)^e · a` reduced modulo `b`.
    pub fn pseudo_rem(&self, b: &Self) -> Result<Self> {
        let db = b
            .degree()
            .ok_or_else(|| Error::Arithmetic("pseudo-remainder by zero".into()))?;
        let lb = b.lead().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lead().unwrap().clone();
            r = &r.scale(&lb) - &b.shifted_scaled(&lr, dr - db);
        }
        Ok(r)
    }

    /// Primitive gcd with positive leading coefficient (zero iff both are
    /// zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).expect("b is nonzero");
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// Exact quotient over `Z[N]`; fails if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::Arithmetic("division by the zero polynomial".into()))?;
        let ld = d.lead().unwrap();
        let Some(dr) = self.degree() else {
            return Ok(Self::zero());
        };
        if dr < dd {
            return Err(Error::Arithmetic("inexact polynomial division".into()));
        }
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); dr - dd + 1];
        while let Some(deg) = r.degree() {
            if deg < dd {
                return Err(Error::Arithmetic("inexact polynomial division".into()));
            }
            let (c, rem) = r.lead().unwrap().div_rem(ld);
            if !rem.is_zero() {
                return Err(Error::Arithmetic("inexact polynomial division".into()));
            }
            r = &r - &d.shifted_scaled(&c, deg - dd);
            q[deg - dd] = c;
        }
        Ok(Self::new(q))
    }

    /// Horner evaluation at an exact rational.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

/// JSON coefficient: a number when it fits in `i64`, otherwise a decimal
/// string.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl Serialize for PolynomialZ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use num_traits::ToPrimitive;
        let v: Vec<JsonInt> = self
            .coeffs
            .iter()
            .map(|c| match c.to_i64() {
                Some(x) => JsonInt::Small(x),
                None => JsonInt::Big(c.to_string()),
            })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolynomialZ {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<JsonInt>::deserialize(d)?;
        let coeffs = v
            .into_iter()
            .map(|c| match c {
                JsonInt::Small(x) => Ok(BigInt::from(x)),
                JsonInt::Big(t) => t.parse::<BigInt>().map_err(serde::de::Error::custom),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(PolynomialZ::new(coeffs))
    }
}

impl From<Vec<BigInt>> for PolynomialZ {
    fn from(v: Vec<BigInt>) -> Self {
        PolynomialZ::new(v)
    }
}

impl From<PolynomialZ> for Vec<BigInt> {
    fn from(p: PolynomialZ) -> Self {
        p.coeffs
    }
}

impl Add for &PolynomialZ {
    type Output = PolynomialZ;
    fn add(self, rhs: &PolynomialZ) -> PolynomialZ {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        PolynomialZ::new(coeffs)
    }
}

impl Neg for &PolynomialZ {
    type Output = PolynomialZ;
    fn neg(self) -> PolynomialZ {
        PolynomialZ {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for PolynomialZ {
    type Output = PolynomialZ;
    fn neg(self) -> PolynomialZ {
        -&self
    }
}

impl Sub for &PolynomialZ {
    type Output = PolynomialZ;
    fn sub(self, rhs: &PolynomialZ) -> PolynomialZ {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        PolynomialZ::new(coeffs)
    }
}

impl Mul for &PolynomialZ {
    type Output = PolynomialZ;
    fn mul(self, rhs: &PolynomialZ) -> PolynomialZ {
        if self.is_zero() || rhs.is_zero() {
            return PolynomialZ::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        PolynomialZ::new(coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PolynomialZ {
            type Output = PolynomialZ;
            fn $m(self, rhs: PolynomialZ) -> PolynomialZ {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&PolynomialZ> for PolynomialZ {
            type Output = PolynomialZ;
            fn $m(self, rhs: &PolynomialZ) -> PolynomialZ {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for PolynomialZ {
    /// Descending powers: `N^3 - N`, `-1`, `2*N^2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (d, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match d {
                0 => {}
                1 => write!(f, "N")?,
                _ => write!(f, "N^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolynomialZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolynomialZ({self})")
    }
}
