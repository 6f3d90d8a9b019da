//! Random matrix samplers and reproducible sample streams.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Samples drawn from one generator stream before moving to the next.
pub const CHUNK: usize = 1024;

/// Seed plus the fixed generator layout: chunk `c` of a run draws from
/// `ChaCha8Rng::seed_from_u64(seed)` with stream id `c`, so results do not
/// depend on the number of worker threads.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngConfig {
    pub seed: u64,
}

impl RngConfig {
    pub const ALGORITHM: &'static str = "ChaCha8Rng, stream id = chunk index, 1024 samples per chunk";

    pub fn new(seed: u64) -> Self {
        RngConfig { seed }
    }

    /// Generator for chunk `chunk`.
    pub fn stream(&self, chunk: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(chunk);
        rng
    }
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Complex64 {
    let x: f64 = rng.sample(StandardNormal);
    let y: f64 = rng.sample(StandardNormal);
    Complex64::new(x * scale, y * scale)
}

/// `N × N` matrix of i.i.d. standard complex Gaussians (`E|z|² = 1`).
pub fn sample_ginibre<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    DMatrix::from_fn(n, n, |_, _| complex_gaussian(rng, s))
}

/// Haar-distributed unitary from the QR factorisation of a Ginibre matrix.
pub fn sample_haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    assert!(n >= 1, "matrix size must be positive");
    haar_from_ginibre(sample_ginibre(n, rng))
}

/// `Q · diag(r_jj / |r_jj|)` for `G = QR`, so that `U* G` is upper
/// triangular with positive diagonal. This normal form is what makes `U`
/// Haar distributed; without it the law of `Q` depends on the phase
/// convention of the QR routine.
pub fn haar_from_ginibre(g: DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = g.nrows();
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let norm = d.norm();
        let phase = if norm > 0.0 { d / norm } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// GUE matrix normalised so that the spectrum approaches the semicircle on
/// `[−2, 2]`: off-diagonal entries have `E|a_ij|² = 1/N`, the diagonal is
/// real with variance `1/N`.
pub fn sample_gue<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    assert!(n >= 1, "matrix size must be positive");
    let nf = n as f64;
    let off = (2.0 * nf).sqrt().recip();
    let diag = nf.sqrt().recip();
    let mut a = DMatrix::zeros(n, n);
    for i in 0..n {
        let x: f64 = rng.sample(StandardNormal);
        a[(i, i)] = Complex64::new(x * diag, 0.0);
        for j in i + 1..n {
            let z = complex_gaussian(rng, off);
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
        }
    }
    a
}

/// `samples × width` complex observations stored row by row.
#[derive(Clone, Debug)]
pub struct Samples {
    pub(crate) data: Vec<Complex64>,
    pub(crate) width: usize,
}

impl Samples {
    /// Runs `draw` once per sample; `draw` writes `width` observables into
    /// the slice it is given. Chunks run in parallel and are merged in
    /// chunk order.
    pub fn collect<F>(samples: usize, width: usize, rng: &RngConfig, draw: F) -> Samples
    where
        F: Fn(&mut ChaCha8Rng, &mut [Complex64]) + Sync,
    {
        let chunks = samples.div_ceil(CHUNK);
        let parts: Vec<Vec<Complex64>> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let count = CHUNK.min(samples - c * CHUNK);
                let mut g = rng.stream(c as u64);
                let mut out = vec![Complex64::new(0.0, 0.0); count * width];
                for row in out.chunks_mut(width.max(1)) {
                    draw(&mut g, row);
                }
                out
            })
            .collect();
        Samples {
            data: parts.concat(),
            width,
        }
    }

    /// Wraps existing observations given as equal-length rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Samples {
        let width = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == width), "ragged rows");
        Samples {
            data: rows.concat(),
            width,
        }
    }

    pub fn count(&self) -> usize {
        self.data.len().checked_div(self.width).unwrap_or(0)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, sample: usize, observable: usize) -> Complex64 {
        self.data[sample * self.width + observable]
    }
}
