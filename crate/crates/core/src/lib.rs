//! (n,m)-bin sequences and their legal decompositions.
//!
//! Integers are split into alternating bins of sizes `n` and `m`; a legal
//! decomposition never uses two terms from the same bin or from adjacent
//! bins. This crate generates the unique sequence that makes such
//! decompositions exist and be unique, decomposes arbitrary integers,
//! counts decompositions by number of summands, and studies the limiting
//! Gaussian behaviour of that count.

pub mod algebra;
pub mod cli;
pub mod config;
pub mod counting;
pub mod decimal;
pub mod decomp;
pub mod error;
pub mod params;
pub mod real;
pub mod report;
pub mod sequence;
pub mod stats;

pub use config::Budgets;
pub use decomp::{
    check_bijection, decompose, decompose_cached, enumerate_legal, is_legal, Decomposition,
};
pub use error::{Error, Result};
pub use params::{BinLocation, BinParams, SubBin};
pub use real::Real;
pub use report::{VerificationReport, Violation};
pub use sequence::BinSequence;
