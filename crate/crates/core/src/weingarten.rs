//! The unitary Weingarten function.
//!
//! `Wg(N, ·)` is the inverse of `σ ↦ N^{#(σ)}` under convolution on `S_n`:
//!
//! ```text
//! Σ_τ Wg(N, στ⁻¹) N^{#(τ)} = δ_{σ, id}.
//! ```
//!
//! Since both functions are class functions the identity reduces to a
//! square system indexed by cycle types,
//! `Σ_μ M(λ, μ) Wg_μ = δ_{λ, 1ⁿ}` with `M(λ, μ) = Σ_{ρ ∈ C_μ} N^{#(ρ⁻¹σ_λ)}`,
//! which is solved exactly over `Z[N]` by Cramer's rule with fraction-free
//! (Bareiss) determinants. Results are cached per `n`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{check_size, Error, Result};
use crate::partition::{integer_partitions, interval, mobius_interval, SetPartition};
use crate::perm::Permutation;
use crate::poly::PolynomialZ;
use crate::ratfunc::{OneOverNSeries, RationalFunctionN};
use crate::Limits;

/// `Wg(N, ·)` on `S_n`, keyed by cycle type.
pub type WeingartenTable = HashMap<Vec<usize>, RationalFunctionN>;

type Cache = RwLock<HashMap<usize, Arc<WeingartenTable>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Class-reduced Gram system: the cycle types of `S_n` (non-increasing
/// parts, in reverse lexicographic order) and `M(λ, μ)`.
pub fn class_gram_matrix(n: usize) -> (Vec<Vec<usize>>, Vec<Vec<PolynomialZ>>) {
    let types = integer_partitions(n);
    let index: HashMap<&Vec<usize>, usize> = types.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let reps: Vec<Permutation> = types
        .iter()
        .map(|t| Permutation::from_cycle_type(t).expect("valid cycle type"))
        .collect();
    let k = types.len();
    // counts[λ][μ][c] = #{ρ ∈ C_μ : #(ρ⁻¹σ_λ) = c}
    let mut counts = vec![vec![vec![0i64; n + 1]; k]; k];
    for rho in Permutation::all(n) {
        let mu = index[&rho.cycle_type()];
        let rinv = rho.inverse();
        for (lambda, sigma) in reps.iter().enumerate() {
            counts[lambda][mu][rinv.mul(sigma).num_cycles()] += 1;
        }
    }
    let matrix = counts
        .into_iter()
        .map(|row| row.into_iter().map(|c| PolynomialZ::from_i64(&c)).collect())
        .collect();
    (types, matrix)
}

/// Determinant over `Z[N]` by Bareiss elimination with row pivoting.
pub fn det_bareiss(mut m: Vec<Vec<PolynomialZ>>) -> Result<PolynomialZ> {
    let n = m.len();
    if n == 0 {
        return Ok(PolynomialZ::one());
    }
    let mut negate = false;
    let mut prev = PolynomialZ::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(PolynomialZ::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.exact_div(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

fn compute_table(n: usize) -> Result<WeingartenTable> {
    let (types, m) = class_gram_matrix(n);
    let k = types.len();
    let id_row = types
        .iter()
        .position(|t| t.iter().all(|&c| c == 1))
        .expect("identity class");
    let det = det_bareiss(m.clone())?;
    if det.is_zero() {
        return Err(Error::Arithmetic(format!("singular Gram matrix for n = {n}")));
    }
    let mut table = WeingartenTable::new();
    for (col, t) in types.iter().enumerate() {
        let mut mc = m.clone();
        for (row, r) in mc.iter_mut().enumerate() {
            r[col] = if row == id_row {
                PolynomialZ::one()
            } else {
                PolynomialZ::zero()
            };
        }
        let num = det_bareiss(mc)?;
        table.insert(t.clone(), RationalFunctionN::new(num, det.clone())?);
    }
    debug_assert_eq!(table.len(), k);
    Ok(table)
}

/// `Wg(N, ·)` on `S_n` for every cycle type; cached.
pub fn weingarten_table(n: usize, limits: &Limits) -> Result<Arc<WeingartenTable>> {
    if n > limits.weingarten_n {
        return Err(Error::cap("Weingarten size", n, limits.weingarten_n));
    }
    if let Some(t) = cache().read().expect("cache lock").get(&n) {
        return Ok(t.clone());
    }
    let table = Arc::new(compute_table(n)?);
    cache().write().expect("cache lock").entry(n).or_insert(table.clone());
    Ok(table)
}

/// `Wg(N, p)` as an exact rational function of `N`.
pub fn weingarten(p: &Permutation, limits: &Limits) -> Result<RationalFunctionN> {
    weingarten_class(&p.cycle_type(), limits)
}

/// `Wg(N, ·)` on the class with the given cycle type (any order).
pub fn weingarten_class(cycle_type: &[usize], limits: &Limits) -> Result<RationalFunctionN> {
    if cycle_type.contains(&0) {
        return Err(Error::invalid("cycle lengths must be positive"));
    }
    let mut t = cycle_type.to_vec();
    t.sort_unstable_by(|a, b| b.cmp(a));
    let n = t.iter().sum();
    Ok(weingarten_table(n, limits)?[&t].clone())
}

/// `Wg(N, ·)` on `S_n` evaluated at an integer `N ≥ n`, keyed by cycle type.
pub fn weingarten_values_at(n: usize, big_n: u64, limits: &Limits) -> Result<HashMap<Vec<usize>, BigRational>> {
    if (big_n as u128) < n as u128 {
        return Err(Error::invalid(format!(
            "N = {big_n} is smaller than the word half-length {n}"
        )));
    }
    let x = BigRational::from_integer(BigInt::from(big_n));
    weingarten_table(n, limits)?
        .iter()
        .map(|(t, f)| Ok((t.clone(), f.eval(&x)?)))
        .collect()
}

/// Expansion of `f` at `N = ∞` with `order` coefficients.
pub fn series(f: &RationalFunctionN, order: i64) -> Result<OneOverNSeries> {
    if order < 0 {
        return Err(Error::invalid("series order must be non-negative"));
    }
    Ok(f.series(order as usize))
}

fn to_i64(v: &BigRational) -> Result<i64> {
    if !v.is_integer() {
        return Err(Error::Arithmetic(format!("{v} is not an integer")));
    }
    v.to_integer()
        .to_i64()
        .ok_or_else(|| Error::Arithmetic(format!("{v} overflows i64")))
}

/// Coefficient of `N^{−e}` in `f`, expanding far enough.
fn coefficient(f: &RationalFunctionN, e: i64) -> BigRational {
    let s = f.series(1);
    if s.is_zero() || e < s.offset {
        return BigRational::zero();
    }
    f.series((e - s.offset + 1) as usize)
        .coeff_at_exponent(e)
        .expect("expanded far enough")
}

/// `μ(p)`: the coefficient of `N^{−(|p|+n)}` in `Wg(N, p)`.
///
/// Permutations beyond the Weingarten cap are handled by multiplicativity
/// over cycles.
pub fn mu(p: &Permutation, limits: &Limits) -> Result<i64> {
    mu_of_type(&p.cycle_type(), limits)
}

fn mu_of_type(t: &[usize], limits: &Limits) -> Result<i64> {
    let n: usize = t.iter().sum();
    if n <= limits.weingarten_n {
        let f = weingarten_class(t, limits)?;
        let e = (n - t.len() + n) as i64;
        return to_i64(&coefficient(&f, e));
    }
    t.iter().try_fold(1i64, |acc, &k| {
        if k > limits.weingarten_n {
            return Err(Error::cap("cycle length for μ", k, limits.weingarten_n));
        }
        Ok(acc * mu_of_type(&[k], limits)?)
    })
}

/// `μ₂(p₁, p₂)`: the coefficient of `N^{−(|p₁|+|p₂|+m+n+2)}` in
/// `Wg(p₁ × p₂) − Wg(p₁)·Wg(p₂)`.
pub fn mu2(p1: &Permutation, p2: &Permutation, limits: &Limits) -> Result<BigRational> {
    let total = p1.size() + p2.size();
    if total > limits.weingarten_n {
        return Err(Error::cap("μ₂ total size", total, limits.weingarten_n));
    }
    let d = connected_difference(p1, p2, limits)?;
    let e = (p1.length() + p2.length() + total + 2) as i64;
    Ok(coefficient(&d, e))
}

/// `Wg(p₁ × p₂) − Wg(p₁)·Wg(p₂)`.
pub fn connected_difference(p1: &Permutation, p2: &Permutation, limits: &Limits) -> Result<RationalFunctionN> {
    let joint = weingarten(&p1.times(p2), limits)?;
    Ok(&joint - &(&weingarten(p1, limits)? * &weingarten(p2, limits)?))
}

/// `∏_{V ∈ C} Wg(p|_V)` for a `p`-invariant partition `C`.
pub fn weingarten_product_over(p: &Permutation, c: &SetPartition, limits: &Limits) -> Result<RationalFunctionN> {
    check_size(p.size(), c.size())?;
    c.blocks().iter().map(|b| weingarten(&p.restrict(b)?, limits)).product()
}

/// Relative cumulant
/// `C_{p,A} = Σ_{C ∈ [P_p, A]} moeb(C, A) ∏_{V ∈ C} Wg(p|_V)` where `P_p` is
/// the cycle partition of `p`.
pub fn relative_cumulant(p: &Permutation, a: &SetPartition, limits: &Limits) -> Result<RationalFunctionN> {
    if !a.is_pi_invariant(p)? {
        return Err(Error::invalid(format!("{a} is not invariant under {p}")));
    }
    let lower = SetPartition::from_permutation(p);
    let mut total = RationalFunctionN::zero();
    for c in interval(&lower, a)? {
        let m = mobius_interval(&c, a)?;
        if m == 0 {
            continue;
        }
        let term = weingarten_product_over(p, &c, limits)?;
        total = &total + &(&RationalFunctionN::from_poly(PolynomialZ::from_i64(&[m])) * &term);
    }
    Ok(total)
}
