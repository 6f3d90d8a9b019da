//! Traces of words in Haar unitaries and deterministic matrices: exact
//! moments and cumulants at finite `N`, the limiting second-order
//! covariance, and second-order freeness.

pub mod free;
pub mod limit;
pub mod moments;
pub mod space;
pub mod words;

pub use free::{reduced_word_covariance, second_order_free_covariance, ReducedWord, Tagged};
pub use limit::{ds_covariance, limit_k2};
pub use moments::{cumulant_by_relative_cumulants, entrywise_moment_oracle, exact_cumulant, exact_mixed_moment};
pub use space::{
    phi1_extension, phi2_extension, phi2_extension_recursive, DerivationOrder, FnSpace, HaarUnitarySpace,
    SecondOrderSpace, TableSpace, UnitSpace,
};
pub use words::{trace_pi, ExactMatrix, Letter, SquareMatrix, TraceWordSpec};
