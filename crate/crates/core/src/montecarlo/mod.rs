//! Sampling Haar unitaries and GUE matrices and estimating trace cumulants
//! with batch-means error bars.

pub mod estimate;
pub mod experiments;
pub mod sample;

pub use estimate::{empirical_cumulants, CumulantEstimate, CumulantTable, Observable};
pub use experiments::{
    chebyshev_coeffs, chebyshev_matrix, empirical_mixed_moment, experiment_chebyshev, experiment_ds,
    experiment_reduced_words, experiment_weingarten, power_traces, CheckRow, Diagnostic, McConfig, Report,
};
pub use sample::{haar_from_ginibre, sample_ginibre, sample_gue, sample_haar_unitary, RngConfig, Samples};
