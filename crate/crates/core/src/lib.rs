//! Exact Weingarten calculus for Haar unitary matrices together with the
//! combinatorics of (annular) non-crossing permutations it rests on.
//!
//! The crate is organised bottom-up:
//!
//! * [`perm`]: permutations, cycles, the length function and the standard
//!   cycles `γ_{m₁,…,m_k}`.
//! * [`partition`]: set partitions, joins, Möbius functions and classical
//!   cumulants by Möbius inversion.
//! * [`noncrossing`]: non-crossing and annular non-crossing permutations and
//!   the ε-alternating permutations with their `(α, β)` parametrisation.
//! * [`poly`], [`ratfunc`]: exact integer polynomials and rational functions
//!   in a formal variable `N`, with expansions at `N = ∞`.
//! * [`weingarten`]: `Wg(N, π)` by exact Gram inversion, its leading
//!   coefficients `μ`, `μ₂`, and relative cumulants.
//! * [`second_order`]: exact finite-`N` trace moments and cumulants, and the
//!   large-`N` covariance of traces of words in `U`, `U*` and a free family.
//! * [`montecarlo`]: Haar/GUE sampling and cumulant estimation with error
//!   bars, plus the reproducible experiments.
//! * [`cli`]: the `unifluct` command line front end.

pub mod cli;
pub mod error;
pub mod montecarlo;
pub mod noncrossing;
pub mod partition;
pub mod perm;
pub mod poly;
pub mod ratfunc;
pub mod second_order;
pub mod weingarten;

pub use error::{Error, Result};
pub use noncrossing::EpsilonVector;
pub use partition::SetPartition;
pub use perm::Permutation;
pub use poly::PolynomialZ;
pub use ratfunc::{OneOverNSeries, RationalFunctionN};

use num_rational::BigRational;

/// Exact rational number used for every exact result in the crate.
pub type Exact = BigRational;

/// Size caps for the exponential-cost routines.
///
/// Every capped operation fails with [`Error::CapExceeded`] instead of
/// truncating. Raising `weingarten_n` beyond 6 is possible but the Gram
/// matrix grows with the number of integer partitions of `n` and its
/// entries with `n!`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Limits {
    /// Largest `n` for which `Wg(N, ·)` on `S_n` is computed.
    pub weingarten_n: usize,
    /// Largest size for filtering all of `S_n` (NC(n), S_NC(m, n)).
    pub enumerate_n: usize,
    /// Largest `n` for enumerating all set partitions of `[n]`.
    pub partitions_n: usize,
    /// Largest `l` for enumerating `S^{(ε)}_{2l}` through `S_l × S_l`.
    pub epsilon_l: usize,
    /// Largest number of observables in a joint cumulant.
    pub cumulant_r: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            weingarten_n: 5,
            enumerate_n: 10,
            partitions_n: 12,
            epsilon_l: 5,
            cumulant_r: 6,
        }
    }
}
