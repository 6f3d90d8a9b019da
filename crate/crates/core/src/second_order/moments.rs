//! Exact finite-`N` moments and cumulants of traces of words in a Haar
//! unitary `U` and deterministic matrices `D`.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{check_size, Error, Result};
use crate::noncrossing::{s_epsilon, tilde_unchecked};
use crate::partition::{cumulants_from_moments, enumerate_pi_invariant, SetPartition};
use crate::perm::Permutation;
use crate::weingarten::{relative_cumulant, weingarten_values_at};
use crate::Limits;

use super::words::{ExactMatrix, SquareMatrix, TraceCache, TraceWordSpec};

/// Largest `N` accepted by [`entrywise_moment_oracle`].
pub const ORACLE_MAX_N: u64 = 3;
/// Largest total word length accepted by [`entrywise_moment_oracle`].
pub const ORACLE_MAX_LEN: usize = 6;
/// Largest number of observables in [`exact_cumulant`].
pub const CUMULANT_MAX_R: usize = 4;

fn check_inputs(spec: &TraceWordSpec, d: &[ExactMatrix], big_n: u64) -> Result<()> {
    if big_n == 0 {
        return Err(Error::invalid("N must be positive"));
    }
    if let Some(max) = spec.max_d_index() {
        if max >= d.len() {
            return Err(Error::invalid(format!(
                "letter refers to D{max} but only {} matrices were given",
                d.len()
            )));
        }
    }
    for m in d {
        check_size(big_n as usize, m.dim())?;
    }
    Ok(())
}

/// `E(∏ traces) = Σ_{π ∈ S^{(ε)}} Wg(N, π̃) · Tr_{γπ⁻¹}(D_{d₁}, …, D_{d_{2l}})`
/// for deterministic `D` and Haar `U` of size `N`; zero when `ε` is
/// unbalanced.
pub fn exact_mixed_moment(spec: &TraceWordSpec, d: &[ExactMatrix], big_n: u64, limits: &Limits) -> Result<BigRational> {
    check_inputs(spec, d, big_n)?;
    if !spec.is_balanced() {
        return Ok(BigRational::zero());
    }
    let eps = spec.epsilon();
    let l = eps.len() / 2;
    let wg = weingarten_values_at(l, big_n, limits)?;
    let gamma = spec.gamma();
    let pos = eps.positives();
    let d_at = spec.d_indices();
    let mut traces = TraceCache::new(d);
    let mut by_class: HashMap<Vec<usize>, BigRational> = HashMap::new();
    for pi in s_epsilon(&eps, limits)? {
        let t = tilde_unchecked(&pi, &pos).cycle_type();
        let tr = traces.trace_pi(&gamma.mul(&pi.inverse()), &d_at);
        if tr.is_zero() {
            continue;
        }
        *by_class.entry(t).or_insert_with(BigRational::zero) += tr;
    }
    Ok(by_class.into_iter().map(|(t, s)| &wg[&t] * s).sum())
}

/// Brute-force evaluation of the same expectation: every trace is expanded
/// into entry sums and each monomial in the entries of `U` and `Ū` is
/// integrated with
/// `E(U_{i₁j₁}⋯U_{i_l j_l} Ū_{i'₁j'₁}⋯Ū_{i'_l j'_l}) =
/// Σ_{α,β ∈ S_l} ∏_s δ(i_s, i'_{α(s)}) δ(j_s, j'_{β(s)}) Wg(N, βα⁻¹)`.
///
/// Cost grows like `N^{2·len}`; capped at `N ≤ 3` and length ≤ 6.
pub fn entrywise_moment_oracle(
    spec: &TraceWordSpec,
    d: &[ExactMatrix],
    big_n: u64,
    limits: &Limits,
) -> Result<BigRational> {
    check_inputs(spec, d, big_n)?;
    if big_n > ORACLE_MAX_N {
        return Err(Error::cap("oracle N", big_n as usize, ORACLE_MAX_N as usize));
    }
    if spec.len() > ORACLE_MAX_LEN {
        return Err(Error::cap("oracle word length", spec.len(), ORACLE_MAX_LEN));
    }
    if !spec.is_balanced() {
        return Ok(BigRational::zero());
    }
    let len = spec.len();
    let l = len / 2;
    let n = big_n as usize;
    let letters = spec.letters();
    let gamma = spec.gamma();
    let wg = weingarten_values_at(l, big_n, limits)?;
    let perms: Vec<Permutation> = Permutation::all(l).collect();
    let inv: Vec<Permutation> = perms.iter().map(Permutation::inverse).collect();
    // Wg(βα⁻¹) for every pair
    let wg_pair: Vec<Vec<BigRational>> = perms
        .iter()
        .map(|b| inv.iter().map(|ai| wg[&b.mul(ai).cycle_type()].clone()).collect())
        .collect();

    // Tr(⋯ D_{d_x} U^{ε_x} ⋯) = Σ (D_{d_x})_{j_x k_x} (U^{ε_x})_{k_x, j_{γ(x)}}
    let plus: Vec<usize> = (0..len).filter(|&x| letters[x].eps == 1).collect();
    let minus: Vec<usize> = (0..len).filter(|&x| letters[x].eps == -1).collect();
    let mut j = vec![0usize; len];
    let mut k = vec![0usize; len];
    let mut total = BigRational::zero();
    let (mut ui, mut uj, mut ci, mut cj) = (vec![0; l], vec![0; l], vec![0; l], vec![0; l]);
    loop {
        // U_{k_x, j_{γ(x)}} at + positions, conj(U_{j_{γ(x)}, k_x}) at − positions
        for (s, &x) in plus.iter().enumerate() {
            ui[s] = k[x];
            uj[s] = j[gamma.apply(x)];
        }
        for (t, &x) in minus.iter().enumerate() {
            ci[t] = j[gamma.apply(x)];
            cj[t] = k[x];
        }
        let alphas: Vec<usize> = (0..perms.len())
            .filter(|&a| (0..l).all(|s| ui[s] == ci[perms[a].apply(s)]))
            .collect();
        if !alphas.is_empty() {
            let betas: Vec<usize> = (0..perms.len())
                .filter(|&b| (0..l).all(|s| uj[s] == cj[perms[b].apply(s)]))
                .collect();
            if !betas.is_empty() {
                let mut coeff = BigRational::zero();
                for &a in &alphas {
                    for &b in &betas {
                        coeff += &wg_pair[b][a];
                    }
                }
                if !coeff.is_zero() {
                    let mut prod = coeff;
                    for x in 0..len {
                        let e = d[letters[x].d].get(j[x], k[x]);
                        if e.is_zero() {
                            prod = BigRational::zero();
                            break;
                        }
                        prod *= e;
                    }
                    total += prod;
                }
            }
        }
        // odometer over (j, k) ∈ [N]^{2·len}
        let mut pos = 0;
        loop {
            if pos == 2 * len {
                return Ok(total);
            }
            let digit = if pos < len { &mut j[pos] } else { &mut k[pos - len] };
            *digit += 1;
            if *digit < n {
                break;
            }
            *digit = 0;
            pos += 1;
        }
    }
}

/// Joint classical cumulant `k_r` of the `r` trace observables, by Möbius
/// inversion over `P(r)` with every joint moment evaluated exactly.
pub fn exact_cumulant(specs: &[TraceWordSpec], d: &[ExactMatrix], big_n: u64, limits: &Limits) -> Result<BigRational> {
    let r = specs.len();
    if r > CUMULANT_MAX_R {
        return Err(Error::cap("number of trace observables", r, CUMULANT_MAX_R));
    }
    cumulants_from_moments(r, limits, |subset: &[usize]| {
        let merged = TraceWordSpec::merge(subset.iter().map(|&i| &specs[i]))?;
        exact_mixed_moment(&merged, d, big_n, limits)
    })
}

/// `Ã`: the partition of `[l]` induced on the `+1` positions.
pub fn tilde_partition(a: &SetPartition, positives: &[usize]) -> SetPartition {
    let mut rank = vec![usize::MAX; a.size()];
    for (k, &p) in positives.iter().enumerate() {
        rank[p] = k;
    }
    let blocks = a
        .blocks()
        .iter()
        .map(|b| {
            b.iter()
                .filter(|&&x| rank[x] != usize::MAX)
                .map(|&x| rank[x])
                .collect::<Vec<_>>()
        })
        .filter(|b: &Vec<usize>| !b.is_empty())
        .collect();
    SetPartition::new(positives.len(), blocks).expect("ranks cover [l]")
}

/// The joint cumulant of the traces of `spec` (one observable per group)
/// through the relative-cumulant expansion
/// `k_r = Σ_{π ∈ S^{(ε)}} Σ_{A ∨ B = 1} C_{π̃,Ã} · k_{γπ⁻¹,B}(D)`.
///
/// For deterministic `D` only `B` equal to the cycle partition of `γπ⁻¹`
/// contributes, with `k_{γπ⁻¹,B}(D) = Tr_{γπ⁻¹}(D)`. Used to cross-check
/// [`exact_cumulant`].
pub fn cumulant_by_relative_cumulants(
    spec: &TraceWordSpec,
    d: &[ExactMatrix],
    big_n: u64,
    limits: &Limits,
) -> Result<BigRational> {
    check_inputs(spec, d, big_n)?;
    if !spec.is_balanced() {
        return Ok(BigRational::zero());
    }
    let eps = spec.epsilon();
    let len = eps.len();
    let l = len / 2;
    if (big_n as usize) < l {
        return Err(Error::invalid(format!("N = {big_n} is smaller than {l}")));
    }
    let x = BigRational::from_integer(big_n.into());
    let gamma = spec.gamma();
    let pos = eps.positives();
    let d_at = spec.d_indices();
    let top = SetPartition::one(len);
    let mut traces = TraceCache::new(d);
    let mut rel_cache: HashMap<(Permutation, SetPartition), BigRational> = HashMap::new();
    let mut total = BigRational::zero();
    for pi in s_epsilon(&eps, limits)? {
        let g = gamma.mul(&pi.inverse());
        let b = SetPartition::from_permutation(&g);
        let pt = tilde_unchecked(&pi, &pos);
        let mut weight = BigRational::zero();
        for a in enumerate_pi_invariant(&pi, limits)? {
            if a.join(&b)? != top {
                continue;
            }
            let at = tilde_partition(&a, &pos);
            let key = (pt.clone(), at);
            let c = match rel_cache.get(&key) {
                Some(c) => c.clone(),
                None => {
                    let c = relative_cumulant(&key.0, &key.1, limits)?.eval(&x)?;
                    rel_cache.insert(key, c.clone());
                    c
                }
            };
            weight += c;
        }
        if !weight.is_zero() {
            total += weight * traces.trace_pi(&g, &d_at);
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::second_order::words::Letter;
    use rand::{Rng, SeedableRng};

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn lim() -> Limits {
        Limits::default()
    }

    fn word(letters: &[(usize, i8)]) -> TraceWordSpec {
        TraceWordSpec::single(letters).unwrap()
    }

    fn powers(r: i64) -> TraceWordSpec {
        let e = if r > 0 { 1 } else { -1 };
        word(&vec![(0, e); r.unsigned_abs() as usize])
    }

    fn ids(n: u64) -> Vec<ExactMatrix> {
        vec![ExactMatrix::identity(n as usize)]
    }

    #[test]
    fn moment_examples() {
        for n in 1..=4u64 {
            let uu = word(&[(0, 1), (0, -1)]);
            assert_eq!(exact_mixed_moment(&uu, &ids(n), n, &lim()).unwrap(), q(n as i64));
            let two = TraceWordSpec::merge([&powers(1), &powers(-1)]).unwrap();
            assert_eq!(exact_mixed_moment(&two, &ids(n), n, &lim()).unwrap(), q(1));
        }
        let sq = TraceWordSpec::merge([&powers(2), &powers(-2)]).unwrap();
        assert_eq!(exact_mixed_moment(&sq, &ids(2), 2, &lim()).unwrap(), q(2));
        assert_eq!(entrywise_moment_oracle(&sq, &ids(2), 2, &lim()).unwrap(), q(2));
        // E|Tr U^2|^2 = min(2, N)
        assert_eq!(exact_mixed_moment(&sq, &ids(3), 3, &lim()).unwrap(), q(2));
        assert!(exact_mixed_moment(&sq, &ids(1), 1, &lim()).is_err());
        assert_eq!(exact_mixed_moment(&powers(1), &ids(2), 2, &lim()).unwrap(), q(0));
        assert!(exact_mixed_moment(&word(&[(1, 1)]), &ids(2), 2, &lim()).is_err());
        assert!(exact_mixed_moment(&powers(1), &ids(2), 3, &lim()).is_err());
    }

    #[test]
    fn oracle_examples() {
        let two = TraceWordSpec::merge([&powers(1), &powers(-1)]).unwrap();
        assert_eq!(entrywise_moment_oracle(&two, &ids(2), 2, &lim()).unwrap(), q(1));
        assert_eq!(entrywise_moment_oracle(&powers(1), &ids(2), 2, &lim()).unwrap(), q(0));
        assert!(entrywise_moment_oracle(&two, &ids(4), 4, &lim())
            .unwrap_err()
            .is_cap_exceeded());
    }

    pub(crate) fn random_spec(rng: &mut impl Rng, n_mats: usize) -> TraceWordSpec {
        let half = rng.random_range(1..=3usize);
        let mut eps: Vec<i8> = [vec![1; half], vec![-1; half]].concat();
        use rand::seq::SliceRandom;
        eps.shuffle(rng);
        let len = eps.len();
        let mut lengths = Vec::new();
        let mut left = len;
        while left > 0 {
            let m = rng.random_range(1..=left);
            lengths.push(m);
            left -= m;
        }
        let letters = eps
            .into_iter()
            .map(|e| Letter::new(rng.random_range(0..n_mats), e).unwrap())
            .collect();
        TraceWordSpec::new(lengths, letters).unwrap()
    }

    pub(crate) fn random_matrices(rng: &mut impl Rng, count: usize, n: usize) -> Vec<ExactMatrix> {
        (0..count)
            .map(|_| {
                let rows: Vec<Vec<i64>> = (0..n)
                    .map(|_| (0..n).map(|_| rng.random_range(-2..=2)).collect())
                    .collect();
                ExactMatrix::from_i64_rows(&rows).unwrap()
            })
            .collect()
    }

    #[test]
    fn oracle_agreement_randomized() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut nonzero = 0;
        for case in 0..24 {
            let big_n = if case % 2 == 0 { 2 } else { 3 };
            let spec = random_spec(&mut rng, 2);
            if (big_n as usize) < spec.len() / 2 {
                continue;
            }
            let d = random_matrices(&mut rng, 2, big_n as usize);
            let a = exact_mixed_moment(&spec, &d, big_n, &lim()).unwrap();
            let b = entrywise_moment_oracle(&spec, &d, big_n, &lim()).unwrap();
            assert_eq!(a, b, "case {case}: {spec:?}");
            nonzero += usize::from(!a.is_zero());
        }
        assert!(nonzero > 5);
    }

    #[test]
    fn cumulant_examples() {
        for n in 1..=4u64 {
            let k = exact_cumulant(&[powers(1), powers(-1)], &ids(n), n, &lim()).unwrap();
            assert_eq!(k, q(1));
            let k = exact_cumulant(&[powers(1), powers(1)], &ids(n), n, &lim()).unwrap();
            assert_eq!(k, q(0));
        }
        // Tr(U²), Tr(U*), Tr(U*): the joint moment already vanishes for N ≥ 2
        let specs = [powers(2), powers(-1), powers(-1)];
        let vals: Vec<_> = [3u64, 6, 12]
            .iter()
            .map(|&n| exact_cumulant(&specs, &ids(n), n, &lim()).unwrap())
            .collect();
        assert!(vals
            .windows(2)
            .all(|w| num_traits::Signed::abs(&w[1]) <= num_traits::Signed::abs(&w[0])));
        let five = vec![powers(1); 5];
        assert!(exact_cumulant(&five, &ids(3), 3, &lim()).unwrap_err().is_cap_exceeded());
    }

    #[test]
    fn relative_cumulant_expansion_matches_inversion() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 12 {
            let spec = random_spec(&mut rng, 2);
            if spec.num_groups() != 2 || !spec.is_balanced() {
                continue;
            }
            let big_n = rng.random_range(3..=4u64);
            let d = random_matrices(&mut rng, 2, big_n as usize);
            let parts = [spec.group(0), spec.group(1)];
            let by_inversion = exact_cumulant(&parts, &d, big_n, &lim()).unwrap();
            let by_expansion = cumulant_by_relative_cumulants(&spec, &d, big_n, &lim()).unwrap();
            assert_eq!(by_inversion, by_expansion, "{spec:?}");
            checked += 1;
        }
        // three observables as well
        let spec = TraceWordSpec::merge([&powers(2), &powers(-1), &powers(-1)]).unwrap();
        let parts = [spec.group(0), spec.group(1), spec.group(2)];
        for n in [3u64, 4] {
            assert_eq!(
                exact_cumulant(&parts, &ids(n), n, &lim()).unwrap(),
                cumulant_by_relative_cumulants(&spec, &ids(n), n, &lim()).unwrap()
            );
        }
    }

    #[test]
    fn tilde_partition_ranks() {
        let a = SetPartition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let t = tilde_partition(&a, &[0, 2]);
        assert_eq!(t, SetPartition::discrete(2));
    }
}
