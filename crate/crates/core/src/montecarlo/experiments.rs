//! Desk-scale experiments comparing sampled cumulants with their limits.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::second_order::{ds_covariance, reduced_word_covariance, ReducedWord, TraceWordSpec};
use crate::weingarten::weingarten_values_at;
use crate::Limits;

use super::estimate::{CumulantEstimate, MIN_SAMPLES};
use super::sample::{sample_gue, sample_haar_unitary, RngConfig, Samples};

/// Default acceptance band in standard errors.
pub const SIGMA_BAND: f64 = 4.0;

/// Sampling parameters embedded in every report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McConfig {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub rng: &'static str,
}

impl McConfig {
    pub fn new(n: usize, samples: usize, seed: u64) -> Self {
        McConfig {
            n,
            samples,
            seed,
            rng: RngConfig::ALGORITHM,
        }
    }

    fn rng(&self) -> RngConfig {
        RngConfig::new(self.seed)
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::invalid("N must be positive"));
        }
        if self.samples < MIN_SAMPLES {
            return Err(Error::invalid(format!(
                "need at least {MIN_SAMPLES} samples, got {}",
                self.samples
            )));
        }
        Ok(())
    }
}

/// One estimate compared against its target.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub label: String,
    pub estimate: f64,
    pub estimate_imag: f64,
    pub std_error: f64,
    pub target: f64,
    pub sigmas: f64,
    /// Accepted deviation: `max(SIGMA_BAND · std_error, absolute floor)`.
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRow {
    pub fn new(label: impl Into<String>, est: &CumulantEstimate, target: f64, floor: f64) -> Self {
        let t = Complex64::new(target, 0.0);
        let tolerance = (SIGMA_BAND * est.std_error).max(floor);
        CheckRow {
            label: label.into(),
            estimate: est.value.re,
            estimate_imag: est.value.im,
            std_error: est.std_error,
            target,
            sigmas: est.sigmas(t),
            tolerance,
            pass: (est.value - t).norm() <= tolerance,
        }
    }
}

/// A statistic reported with an optional bound on its magnitude.
#[derive(Clone, Debug, Serialize)]
pub struct Diagnostic {
    pub label: String,
    pub value: f64,
    pub std_error: f64,
    pub bound: Option<f64>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub experiment: String,
    pub config: McConfig,
    pub notes: Vec<String>,
    pub rows: Vec<CheckRow>,
    pub diagnostics: Vec<Diagnostic>,
    pub pass: bool,
}

impl Report {
    fn new(
        experiment: &str,
        config: McConfig,
        notes: Vec<String>,
        rows: Vec<CheckRow>,
        diagnostics: Vec<Diagnostic>,
    ) -> Self {
        let pass = rows.iter().all(|r| r.pass) && diagnostics.iter().all(|d| d.pass);
        Report {
            experiment: experiment.into(),
            config,
            notes,
            rows,
            diagnostics,
            pass,
        }
    }

    pub fn row(&self, label: &str) -> Option<&CheckRow> {
        self.rows.iter().find(|r| r.label == label)
    }
}

/// `U^0, U^1, …, U^max`.
fn powers(u: &DMatrix<Complex64>, max: usize) -> Vec<DMatrix<Complex64>> {
    let n = u.nrows();
    let mut out = vec![DMatrix::identity(n, n)];
    for k in 1..=max {
        let next = if k == 1 { u.clone() } else { &out[k - 1] * u };
        out.push(next);
    }
    out
}

/// `k̂₂(Tr U^r, Tr U^s)` for all `0 < |r|, |s| ≤ max_power` against
/// `|r| δ_{r,−s}`.
pub fn experiment_ds(max_power: usize, config: &McConfig) -> Result<Report> {
    config.validate()?;
    if max_power == 0 {
        return Err(Error::invalid("max_power must be positive"));
    }
    let n = config.n;
    // observable 2(r−1) is Tr U^r, 2(r−1)+1 is Tr U^{−r}
    let data = Samples::collect(config.samples, 2 * max_power, &config.rng(), |g, row| {
        let u = sample_haar_unitary(n, g);
        let p = powers(&u, max_power);
        for r in 1..=max_power {
            let t = p[r].trace();
            row[2 * (r - 1)] = t;
            row[2 * (r - 1) + 1] = t.conj();
        }
    });
    let exps: Vec<i64> = (1..=max_power as i64).flat_map(|r| [r, -r]).collect();
    let mut rows = Vec::new();
    for i in 0..exps.len() {
        for j in i..exps.len() {
            let (r, s) = (exps[i], exps[j]);
            let est = data.k2(i, j)?;
            let target = ds_covariance(r, s)? as f64;
            rows.push(CheckRow::new(format!("k2(Tr U^{r}, Tr U^{s})"), &est, target, 0.0));
        }
    }
    Ok(Report::new(
        "ds",
        config.clone(),
        vec!["target |r|·δ(r,−s); band 4σ".into()],
        rows,
        vec![],
    ))
}

/// Matrix of a reduced word given the sampled unitaries.
fn word_matrix(
    w: &ReducedWord,
    cache: &mut HashMap<(usize, i64), DMatrix<Complex64>>,
    us: &[DMatrix<Complex64>],
) -> DMatrix<Complex64> {
    let mut acc: Option<DMatrix<Complex64>> = None;
    for &(i, k) in w.letters() {
        let m = cache
            .entry((i, k))
            .or_insert_with(|| {
                let base = if k > 0 { us[i].clone() } else { us[i].adjoint() };
                let p = powers(&base, k.unsigned_abs() as usize);
                p[k.unsigned_abs() as usize].clone()
            })
            .clone();
        acc = Some(match acc {
            None => m,
            Some(a) => a * m,
        });
    }
    acc.expect("reduced words are non-empty")
}

/// Covariances of `Tr(w)` over independent Haar unitaries (one per matrix
/// id) against the rotation-matching count, with skewness and excess
/// kurtosis of the real and imaginary parts. `|skew| ≤ skew_bound` is
/// required; kurtosis is reported only.
pub fn experiment_reduced_words(words: &[ReducedWord], config: &McConfig, skew_bound: f64) -> Result<Report> {
    config.validate()?;
    if words.is_empty() {
        return Err(Error::invalid("word list is empty"));
    }
    let n = config.n;
    let ids = words
        .iter()
        .flat_map(|w| w.letters().iter().map(|&(i, _)| i))
        .max()
        .unwrap_or(0)
        + 1;
    let data = Samples::collect(config.samples, words.len(), &config.rng(), |g, row| {
        let us: Vec<DMatrix<Complex64>> = (0..ids).map(|_| sample_haar_unitary(n, g)).collect();
        let mut cache = HashMap::new();
        for (slot, w) in row.iter_mut().zip(words) {
            *slot = word_matrix(w, &mut cache, &us).trace();
        }
    });
    let label = |w: &ReducedWord| {
        w.letters()
            .iter()
            .map(|(i, k)| format!("U{}^{k}", i + 1))
            .collect::<Vec<_>>()
            .join("")
    };
    let mut rows = Vec::new();
    for a in 0..words.len() {
        for b in a..words.len() {
            // k₂(Tr w_a, conj Tr w_b) = k₂(Tr w_a, Tr w_b⁻¹)
            let conj = data.batched_conj_k2(a, b)?;
            let target = reduced_word_covariance(&words[a], &words[b].inverse()) as f64;
            rows.push(CheckRow::new(
                format!("k2(Tr {}, conj Tr {})", label(&words[a]), label(&words[b])),
                &conj,
                target,
                0.0,
            ));
            let plain = data.k2(a, b)?;
            let target = reduced_word_covariance(&words[a], &words[b]) as f64;
            rows.push(CheckRow::new(
                format!("k2(Tr {}, Tr {})", label(&words[a]), label(&words[b])),
                &plain,
                target,
                0.0,
            ));
        }
    }
    let mut diagnostics = Vec::new();
    for (a, w) in words.iter().enumerate() {
        for (imag, part) in [(false, "Re"), (true, "Im")] {
            let (skew, kurt) = data.shape(a, imag)?;
            diagnostics.push(Diagnostic {
                label: format!("skewness {part} Tr {}", label(w)),
                value: skew.value.re,
                std_error: skew.std_error,
                bound: Some(skew_bound),
                pass: skew.value.re.abs() < skew_bound,
            });
            diagnostics.push(Diagnostic {
                label: format!("excess kurtosis {part} Tr {}", label(w)),
                value: kurt.value.re,
                std_error: kurt.std_error,
                bound: None,
                pass: true,
            });
        }
    }
    Ok(Report::new(
        "reduced-words",
        config.clone(),
        vec![
            "target: number of cyclic matchings between the two reduced words; band 4σ".into(),
            format!("Gaussianity: |skewness| < {skew_bound} required, excess kurtosis reported only"),
        ],
        rows,
        diagnostics,
    ))
}

impl Samples {
    fn batched_conj_k2(&self, i: usize, j: usize) -> Result<CumulantEstimate> {
        let rows: Vec<Vec<Complex64>> = (0..self.count())
            .map(|t| vec![self.get(t, i), self.get(t, j).conj()])
            .collect();
        Samples::from_rows(&rows).k2(0, 1)
    }
}

/// Coefficients (ascending) of `P_n` with `P₀ = 2`, `P₁ = x`,
/// `P_{k+1} = x P_k − P_{k−1}`, i.e. `P_n(x) = 2 T_n(x/2)` for `n ≥ 1`.
pub fn chebyshev_coeffs(n: usize) -> Vec<i64> {
    let mut prev = vec![2i64];
    let mut cur = vec![0i64, 1];
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let mut next = vec![0i64; cur.len() + 1];
        for (k, &c) in cur.iter().enumerate() {
            next[k + 1] += c;
        }
        for (k, &c) in prev.iter().enumerate() {
            next[k] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `P_n(A)` by the three-term recurrence on matrices.
pub fn chebyshev_matrix(a: &DMatrix<Complex64>, n: usize) -> DMatrix<Complex64> {
    let dim = a.nrows();
    let id = DMatrix::<Complex64>::identity(dim, dim);
    let mut prev = &id * Complex64::new(2.0, 0.0);
    if n == 0 {
        return prev;
    }
    let mut cur = a.clone();
    for _ in 1..n {
        let next = a * &cur - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `Tr A^k` for `k = 0..=max` using only `A^j` with `j ≤ ⌈max/2⌉`, via
/// `Tr A^{i+j} = Σ (A^i)_{ab} (A^j)_{ba}`.
pub fn power_traces(a: &DMatrix<Complex64>, max: usize) -> Vec<Complex64> {
    let half = max.div_ceil(2);
    let p = powers(a, half);
    (0..=max)
        .map(|k| {
            let i = k.min(half);
            let j = k - i;
            p[i].component_mul(&p[j].transpose()).sum()
        })
        .collect()
}

/// `k̂₂(Tr P_n(A), Tr P_m(A))` for GUE `A` against `n δ_{nm}`, accepted
/// within `max(4σ, floor)`.
pub fn experiment_chebyshev(max_degree: usize, config: &McConfig, floor: f64) -> Result<Report> {
    config.validate()?;
    if max_degree == 0 {
        return Err(Error::invalid("max_degree must be positive"));
    }
    let n = config.n;
    let coeffs: Vec<Vec<i64>> = (1..=max_degree).map(chebyshev_coeffs).collect();
    let data = Samples::collect(config.samples, max_degree, &config.rng(), |g, row| {
        let a = sample_gue(n, g);
        let tr = power_traces(&a, max_degree);
        for (slot, c) in row.iter_mut().zip(&coeffs) {
            *slot = c.iter().zip(&tr).map(|(&ck, t)| t * ck as f64).sum();
        }
    });
    let mut rows = Vec::new();
    for i in 0..max_degree {
        for j in i..max_degree {
            let est = data.k2(i, j)?;
            let target = if i == j { (i + 1) as f64 } else { 0.0 };
            rows.push(CheckRow::new(
                format!("k2(Tr T_{}, Tr T_{})", i + 1, j + 1),
                &est,
                target,
                floor,
            ));
        }
    }
    Ok(Report::new(
        "chebyshev",
        config.clone(),
        vec![
            "T_n(x) = 2·cos(n·arccos(x/2)) on [−2, 2]: T_0 = 2, T_1 = x, T_{n+1} = x·T_n − T_{n−1}".into(),
            "GUE normalised to the semicircle on [−2, 2]; target n·δ(n,m)".into(),
            format!("band max(4σ, {floor})"),
            "only the Gaussian potential is sampled; other potentials are not covered".into(),
        ],
        rows,
        vec![],
    ))
}

/// `E(U₁₁U₂₂ Ū_{1π(1)} Ū_{2π(2)})` for both `π ∈ S₂` against `Wg(N, π)`.
pub fn experiment_weingarten(config: &McConfig) -> Result<Report> {
    config.validate()?;
    let n = config.n;
    if n < 2 {
        return Err(Error::invalid("N must be at least 2"));
    }
    let wg = weingarten_values_at(2, n as u64, &Limits::default())?;
    let data = Samples::collect(config.samples, 2, &config.rng(), |g, row| {
        let u = sample_haar_unitary(n, g);
        let d = u[(0, 0)] * u[(1, 1)];
        row[0] = d * u[(0, 0)].conj() * u[(1, 1)].conj();
        row[1] = d * u[(0, 1)].conj() * u[(1, 0)].conj();
    });
    let rows = [("identity", vec![1usize, 1]), ("transposition", vec![2])]
        .iter()
        .enumerate()
        .map(|(i, (name, t))| {
            let target = wg[t].to_f64().unwrap_or(f64::NAN);
            Ok(CheckRow::new(format!("Wg({name})"), &data.k1(i)?, target, 0.0))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report::new(
        "weingarten",
        config.clone(),
        vec!["E(U11 U22 conj(U1π(1)) conj(U2π(2))) against Wg(N, π); band 4σ".into()],
        rows,
        vec![],
    ))
}

/// Sample mean of `∏ traces` for the word structure of `spec` with the
/// given deterministic matrices and Haar `U` of size `N`.
pub fn empirical_mixed_moment(
    spec: &TraceWordSpec,
    d: &[DMatrix<Complex64>],
    config: &McConfig,
) -> Result<CumulantEstimate> {
    config.validate()?;
    let n = config.n;
    if let Some(max) = spec.max_d_index() {
        if max >= d.len() {
            return Err(Error::invalid(format!(
                "letter refers to D{max} but only {} matrices were given",
                d.len()
            )));
        }
    }
    if d.iter().any(|m| m.nrows() != n || m.ncols() != n) {
        return Err(Error::invalid(format!("matrices must be {n}×{n}")));
    }
    let ranges = spec.group_ranges();
    let letters = spec.letters();
    let data = Samples::collect(config.samples, 1, &config.rng(), |g, row| {
        let u = sample_haar_unitary(n, g);
        let ua = u.adjoint();
        let mut prod = Complex64::new(1.0, 0.0);
        for r in &ranges {
            let mut acc = DMatrix::<Complex64>::identity(n, n);
            for l in &letters[r.clone()] {
                acc = acc * &d[l.d] * if l.eps == 1 { &u } else { &ua };
            }
            prod *= acc.trace();
        }
        row[0] = prod;
    });
    data.k1(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::second_order::{exact_mixed_moment, ExactMatrix};
    use num_traits::ToPrimitive;

    #[test]
    fn chebyshev_polynomials() {
        assert_eq!(chebyshev_coeffs(0), vec![2]);
        assert_eq!(chebyshev_coeffs(1), vec![0, 1]);
        assert_eq!(chebyshev_coeffs(2), vec![-2, 0, 1]);
        assert_eq!(chebyshev_coeffs(3), vec![0, -3, 0, 1]);
        assert_eq!(chebyshev_coeffs(4), vec![2, 0, -4, 0, 1]);
        // P_n(2 cos θ) = 2 cos nθ
        for n in 1..8 {
            let c = chebyshev_coeffs(n);
            for theta in [0.3f64, 1.1, 2.5] {
                let x = 2.0 * theta.cos();
                let v: f64 = c.iter().enumerate().map(|(k, &ck)| ck as f64 * x.powi(k as i32)).sum();
                assert!((v - 2.0 * (n as f64 * theta).cos()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn trace_paths_agree() {
        let mut g = RngConfig::new(4).stream(0);
        let a = sample_gue(6, &mut g);
        let tr = power_traces(&a, 5);
        for n in 1..=5 {
            let via_rec = chebyshev_matrix(&a, n).trace();
            let via_coeffs: Complex64 = chebyshev_coeffs(n).iter().zip(&tr).map(|(&c, t)| t * c as f64).sum();
            assert!((via_rec - via_coeffs).norm() < 1e-9);
        }
        // eigenvalue cross-check
        let eig = a.clone().symmetric_eigen();
        for n in 1..=5 {
            let c = chebyshev_coeffs(n);
            let s: f64 = eig
                .eigenvalues
                .iter()
                .map(|&x| {
                    c.iter()
                        .enumerate()
                        .map(|(k, &ck)| ck as f64 * x.powi(k as i32))
                        .sum::<f64>()
                })
                .sum();
            assert!((s - chebyshev_matrix(&a, n).trace().re).abs() < 1e-8);
        }
    }

    #[test]
    fn haar_second_moment_of_entry() {
        let cfg = McConfig::new(8, 100_000, 11);
        let data = Samples::collect(cfg.samples, 3, &cfg.rng(), |g, row| {
            let u = sample_haar_unitary(8, g);
            row[0] = Complex64::new(u[(0, 0)].norm_sqr(), 0.0);
            row[1] = u.trace();
            row[2] = u[(0, 0)];
        });
        let e = data.k1(0).unwrap();
        assert!(e.sigmas(Complex64::new(1.0 / 8.0, 0.0)) < 4.0, "{e:?}");
        let t = data.k1(1).unwrap();
        assert!(t.sigmas(Complex64::new(0.0, 0.0)) < 4.0, "{t:?}");
        let t = data.k1(2).unwrap();
        assert!(t.sigmas(Complex64::new(0.0, 0.0)) < 4.0, "{t:?}");
    }

    #[test]
    fn wrong_phase_convention_is_detected() {
        // multiplying each column by the phase of its first entry mimics a
        // QR routine with a different normalisation; E[U₁₁] is then biased
        let data = Samples::collect(20_000, 2, &RngConfig::new(3), |g, row| {
            let u = sample_haar_unitary(4, g);
            let phase = u[(0, 0)].conj() / u[(0, 0)].norm();
            row[0] = u[(0, 0)] * phase;
            row[1] = u[(0, 0)];
        });
        assert!(data.k1(0).unwrap().sigmas(Complex64::new(0.0, 0.0)) > 10.0);
        assert!(data.k1(1).unwrap().sigmas(Complex64::new(0.0, 0.0)) < 4.0);
    }

    #[test]
    fn gue_moments() {
        let n = 200;
        let data = Samples::collect(200, 3, &RngConfig::new(8), |g, row| {
            let a = sample_gue(n, g);
            let tr = power_traces(&a, 4);
            for k in 0..3 {
                row[k] = tr[[1, 2, 4][k]] / n as f64;
            }
        });
        for (k, target) in [(0, 0.0), (1, 1.0), (2, 2.0)] {
            let e = data.k1(k).unwrap();
            assert!(
                e.sigmas(Complex64::new(target, 0.0)) < 4.0 || (e.value.re - target).abs() < 0.02,
                "{k}: {e:?}"
            );
        }
    }

    #[test]
    fn small_n_moments_match_exact_values() {
        let two = |a: &[(usize, i8)], b: &[(usize, i8)]| {
            TraceWordSpec::merge([&TraceWordSpec::single(a).unwrap(), &TraceWordSpec::single(b).unwrap()]).unwrap()
        };
        let specs = [
            two(&[(0, 1)], &[(1, -1)]),
            two(&[(0, 1), (1, 1)], &[(0, -1), (1, -1)]),
            TraceWordSpec::single(&[(0, 1), (1, -1), (0, 1), (1, -1)]).unwrap(),
            two(&[(1, 1), (0, -1), (1, 1)], &[(0, -1)]),
        ];
        let d = [
            ExactMatrix::from_i64_rows(&[vec![1, 2, 0], vec![0, -1, 1], vec![2, 0, 1]]).unwrap(),
            ExactMatrix::from_i64_rows(&[vec![0, 1, 1], vec![1, 0, -2], vec![1, 1, 0]]).unwrap(),
        ];
        let dc: Vec<_> = d.iter().map(ExactMatrix::to_complex).collect();
        for (k, spec) in specs.iter().enumerate() {
            let exact = exact_mixed_moment(spec, &d, 3, &Limits::default())
                .unwrap()
                .to_f64()
                .unwrap();
            let est = empirical_mixed_moment(spec, &dc, &McConfig::new(3, 100_000, 20 + k as u64)).unwrap();
            assert!(
                est.sigmas(Complex64::new(exact, 0.0)) < 4.0,
                "spec {k}: exact {exact}, {est:?}"
            );
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let cfg = McConfig::new(6, 2000, 5);
        let a = experiment_ds(2, &cfg).unwrap();
        let b = experiment_ds(2, &cfg).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.rows.len(), 10);
        assert!(a.row("k2(Tr U^1, Tr U^-1)").is_some());
        assert!(experiment_ds(2, &McConfig::new(6, 10, 5)).is_err());
    }
}
