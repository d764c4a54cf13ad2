//! Gaussian behaviour of the summand count: growth constants, exact and
//! sampled moments, and normality diagnostics.

pub mod constants;
pub mod exact;
pub mod normality;
pub mod sampling;
pub mod simulate;

pub use constants::{
    constants, constants_with_digits, dominant_terms, GaussianStats, GaussianStatsRecord,
};
pub use exact::{estimate_offsets, exact_stats, exact_stats_many, ExactStats, OffsetEstimate};
pub use normality::{
    exact_normality, ks_statistic, sample_normality, NormalityReport, NormalityThresholds,
};
pub use sampling::{sample_uniform, UniformBelow};
pub use simulate::{simulate, SimulationResult};
