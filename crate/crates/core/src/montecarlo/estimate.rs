//! Cumulant estimators with batch-means standard errors.

use std::ops::Range;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

use super::sample::{RngConfig, Samples};

/// Number of contiguous batches used for standard errors.
pub const BATCHES: usize = 20;
/// Smallest sample count accepted by the estimators.
pub const MIN_SAMPLES: usize = 100;

/// A point estimate with its batch-means standard error. For complex
/// values the error is `sqrt(σ_re² + σ_im²)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CumulantEstimate {
    pub value: Complex64,
    pub std_error: f64,
    pub sample_count: usize,
}

impl CumulantEstimate {
    /// `|value − target| / std_error`; `0` for an exact hit with zero error.
    pub fn sigmas(&self, target: Complex64) -> f64 {
        let d = (self.value - target).norm();
        if d == 0.0 {
            0.0
        } else {
            d / self.std_error
        }
    }
}

impl Samples {
    fn check(&self) -> Result<()> {
        if self.count() < MIN_SAMPLES {
            return Err(Error::invalid(format!(
                "need at least {MIN_SAMPLES} samples, got {}",
                self.count()
            )));
        }
        Ok(())
    }

    fn column_in(&self, i: usize, r: &Range<usize>) -> impl Iterator<Item = Complex64> + '_ {
        r.clone().map(move |s| self.get(s, i))
    }

    fn mean_in(&self, i: usize, r: &Range<usize>) -> Complex64 {
        self.column_in(i, r).sum::<Complex64>() / r.len() as f64
    }

    /// Evaluates `stat` on the full sample and on each batch.
    fn batched<F>(&self, stat: F) -> Result<CumulantEstimate>
    where
        F: Fn(&Range<usize>) -> Complex64,
    {
        self.check()?;
        let n = self.count();
        let value = stat(&(0..n));
        let parts: Vec<Complex64> = (0..BATCHES)
            .map(|b| stat(&(b * n / BATCHES..(b + 1) * n / BATCHES)))
            .collect();
        let m = parts.iter().sum::<Complex64>() / BATCHES as f64;
        let var = parts.iter().map(|x| (x - m).norm_sqr()).sum::<f64>() / (BATCHES - 1) as f64;
        Ok(CumulantEstimate {
            value,
            std_error: (var / BATCHES as f64).sqrt(),
            sample_count: n,
        })
    }

    /// `k̂₁`: the sample mean.
    pub fn k1(&self, i: usize) -> Result<CumulantEstimate> {
        self.batched(|r| self.mean_in(i, r))
    }

    /// Unbiased `k̂₂ = Σ (x − x̄)(y − ȳ) / (n − 1)`, without conjugation.
    pub fn k2(&self, i: usize, j: usize) -> Result<CumulantEstimate> {
        self.batched(|r| {
            let (mx, my) = (self.mean_in(i, r), self.mean_in(j, r));
            let s: Complex64 = r.clone().map(|t| (self.get(t, i) - mx) * (self.get(t, j) - my)).sum();
            s / (r.len() - 1) as f64
        })
    }

    /// Joint k-statistic `k̂₃ = n Σ (x − x̄)(y − ȳ)(z − z̄) / ((n − 1)(n − 2))`,
    /// unbiased for the third joint cumulant.
    pub fn k3(&self, i: usize, j: usize, k: usize) -> Result<CumulantEstimate> {
        self.batched(|r| {
            let (mx, my, mz) = (self.mean_in(i, r), self.mean_in(j, r), self.mean_in(k, r));
            let s: Complex64 = r
                .clone()
                .map(|t| (self.get(t, i) - mx) * (self.get(t, j) - my) * (self.get(t, k) - mz))
                .sum();
            let n = r.len() as f64;
            s * n / ((n - 1.0) * (n - 2.0))
        })
    }

    /// Sample skewness and excess kurtosis of a real projection of
    /// observable `i` (`imag` selects the imaginary part). Zero for a
    /// constant observable.
    pub fn shape(&self, i: usize, imag: bool) -> Result<(CumulantEstimate, CumulantEstimate)> {
        let proj = |z: Complex64| if imag { z.im } else { z.re };
        let moments = |r: &Range<usize>| {
            let xs: Vec<f64> = self.column_in(i, r).map(proj).collect();
            let n = xs.len() as f64;
            let m = xs.iter().sum::<f64>() / n;
            let c = |p: i32| xs.iter().map(|x| (x - m).powi(p)).sum::<f64>() / n;
            let (m2, m3, m4) = (c(2), c(3), c(4));
            if m2 == 0.0 {
                (0.0, 0.0)
            } else {
                (m3 / m2.powf(1.5), m4 / (m2 * m2) - 3.0)
            }
        };
        let skew = self.batched(|r| Complex64::new(moments(r).0, 0.0))?;
        let kurt = self.batched(|r| Complex64::new(moments(r).1, 0.0))?;
        Ok((skew, kurt))
    }
}

/// `k̂₁`, all `k̂₂` and the requested `k̂₃` of a set of observables.
#[derive(Clone, Debug, Serialize)]
pub struct CumulantTable {
    pub k1: Vec<CumulantEstimate>,
    pub k2: Vec<Vec<CumulantEstimate>>,
    pub k3: Vec<([usize; 3], CumulantEstimate)>,
}

impl Samples {
    pub fn cumulant_table(&self, triples: &[[usize; 3]]) -> Result<CumulantTable> {
        let w = self.width();
        if let Some(t) = triples.iter().find(|t| t.iter().any(|&x| x >= w)) {
            return Err(Error::invalid(format!("triple {t:?} out of range for {w} observables")));
        }
        Ok(CumulantTable {
            k1: (0..w).map(|i| self.k1(i)).collect::<Result<_>>()?,
            k2: (0..w)
                .map(|i| (0..w).map(|j| self.k2(i, j)).collect::<Result<_>>())
                .collect::<Result<_>>()?,
            k3: triples
                .iter()
                .map(|t| Ok((*t, self.k3(t[0], t[1], t[2])?)))
                .collect::<Result<_>>()?,
        })
    }
}

/// Observable on a sampled matrix.
pub type Observable<'a> = &'a (dyn Fn(&DMatrix<Complex64>) -> Complex64 + Sync);

/// Draws `samples` matrices from `sampler`, evaluates every observable on
/// each, and returns `k̂₁`, `k̂₂` for all pairs and `k̂₃` for `triples`.
pub fn empirical_cumulants<S>(
    observables: &[Observable<'_>],
    sampler: S,
    samples: usize,
    rng: &RngConfig,
    triples: &[[usize; 3]],
) -> Result<CumulantTable>
where
    S: Fn(&mut ChaCha8Rng) -> DMatrix<Complex64> + Sync,
{
    if samples < MIN_SAMPLES {
        return Err(Error::invalid(format!(
            "need at least {MIN_SAMPLES} samples, got {samples}"
        )));
    }
    let data = Samples::collect(samples, observables.len(), rng, |g, row| {
        let m = sampler(g);
        for (slot, f) in row.iter_mut().zip(observables) {
            *slot = f(&m);
        }
    });
    data.cumulant_table(triples)
}
