//! Large-`N` limit of the covariance of two traces.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::noncrossing::{enumerate_nc_eps, enumerate_snc_eps, tilde};
use crate::perm::gamma;
use crate::weingarten::{mu, mu2};
use crate::Limits;

use super::space::{phi1_extension, phi2_extension, SecondOrderSpace};
use super::words::TraceWordSpec;

/// `lim_N k₂(Tr(U^r), Tr(U^s))`: `|r|` when `r = −s`, else `0`.
pub fn ds_covariance(r: i64, s: i64) -> Result<i64> {
    if r == 0 || s == 0 {
        return Err(Error::invalid("exponents must be non-zero"));
    }
    Ok(if r == -s { r.abs() } else { 0 })
}

fn single_group(spec: &TraceWordSpec, side: &str) -> Result<()> {
    if spec.num_groups() != 1 {
        return Err(Error::invalid(format!(
            "{side} word must be a single trace, got {} groups",
            spec.num_groups()
        )));
    }
    Ok(())
}

/// Limit of `k₂(Tr(D₁U^{ε₁}⋯D_mU^{ε_m}), Tr(D_{m+1}U^{ε_{m+1}}⋯D_{m+n}U^{ε_{m+n}}))`
/// when `(D_i)` has the second-order limit distribution described by
/// `space`, with `D_i` represented by `d_letters[letter.d]`:
///
/// `Σ_{π ∈ S^{(ε)}_NC(m,n)} μ(π̃) φ₁(γ_{m,n}π⁻¹)[d]
///  + Σ_{π₁ ∈ NC^{(ε₁)}(m), π₂ ∈ NC^{(ε₂)}(n)} (μ₂(π̃₁, π̃₂) φ₁(γ_mπ₁⁻¹ × γ_nπ₂⁻¹)[d]
///  + μ(π̃₁ × π̃₂) φ₂(γ_mπ₁⁻¹, γ_nπ₂⁻¹)[d])`.
pub fn limit_k2<S: SecondOrderSpace + ?Sized>(
    left: &TraceWordSpec,
    right: &TraceWordSpec,
    d_letters: &[S::Letter],
    space: &S,
    limits: &Limits,
) -> Result<BigRational> {
    single_group(left, "left")?;
    single_group(right, "right")?;
    let spec = TraceWordSpec::merge([left, right])?;
    if let Some(max) = spec.max_d_index() {
        if max >= d_letters.len() {
            return Err(Error::invalid(format!(
                "letter refers to d{max} but only {} letters were given",
                d_letters.len()
            )));
        }
    }
    if !spec.is_balanced() {
        return Ok(BigRational::zero());
    }
    let (m, n) = (left.len(), right.len());
    let letters: Vec<S::Letter> = spec.d_indices().iter().map(|&i| d_letters[i].clone()).collect();
    let eps = spec.epsilon();
    let g = spec.gamma();

    let mut total = BigRational::zero();
    for pi in enumerate_snc_eps(m, n, &eps, limits)? {
        let f = phi1_extension(&g.mul(&pi.inverse()), &letters, space)?;
        if f.is_zero() {
            continue;
        }
        total += f * BigRational::from_integer(mu(&tilde(&pi, &eps)?, limits)?.into());
    }

    let (eps1, eps2) = (left.epsilon(), right.epsilon());
    if !eps1.is_balanced() {
        return Ok(total);
    }
    let (g1, g2) = (gamma(&[m])?, gamma(&[n])?);
    let (a, b) = letters.split_at(m);
    let planar1 = enumerate_nc_eps(&eps1, limits)?
        .map(|p| {
            let k = g1.mul(&p.inverse());
            Ok((tilde(&p, &eps1)?, phi1_extension(&k, a, space)?, k))
        })
        .collect::<Result<Vec<_>>>()?;
    let planar2 = enumerate_nc_eps(&eps2, limits)?
        .map(|p| {
            let k = g2.mul(&p.inverse());
            Ok((tilde(&p, &eps2)?, phi1_extension(&k, b, space)?, k))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut mu2_cache: HashMap<(Vec<usize>, Vec<usize>), BigRational> = HashMap::new();
    for (t1, f1, k1) in &planar1 {
        for (t2, f2, k2) in &planar2 {
            let f = f1 * f2;
            if !f.is_zero() {
                let key = (t1.cycle_type(), t2.cycle_type());
                let c = match mu2_cache.get(&key) {
                    Some(c) => c.clone(),
                    None => {
                        let c = mu2(t1, t2, limits)?;
                        mu2_cache.insert(key, c.clone());
                        c
                    }
                };
                total += c * f;
            }
            let f2nd = phi2_extension(k1, k2, &letters, space)?;
            if !f2nd.is_zero() {
                let c = mu(t1, limits)? * mu(t2, limits)?;
                total += f2nd * BigRational::from_integer(c.into());
            }
        }
    }
    Ok(total)
}
