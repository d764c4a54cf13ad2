//! Work budgets and numeric defaults.
//!
//! Every budget can be overridden through an environment variable so that
//! long runs can be unlocked without recompiling:
//!
//! | variable              | field                 |
//! |-----------------------|-----------------------|
//! | `NMBIN_MAX_TERMS`     | `max_terms`           |
//! | `NMBIN_ENUM_BUDGET`   | `enumerate_work`      |
//! | `NMBIN_TABLE_CELLS`   | `table_cells`         |
//! | `NMBIN_SIM_BUDGET`    | `simulate_work`       |
//! | `NMBIN_LP_PIVOTS`     | `lp_pivots`           |
//! | `NMBIN_PRECISION`     | `precision_bits`      |

use std::env;

/// Default working precision for high-precision reals, in bits.
pub const DEFAULT_PRECISION_BITS: usize = 200;

/// Default precision for the Gaussian constants, in decimal digits.
pub const DEFAULT_CONSTANT_DIGITS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Largest number of sequence terms a [`crate::BinSequence`] may cache.
    pub max_terms: usize,
    /// Search-tree nodes visited by the brute-force decomposition enumerator.
    pub enumerate_work: u64,
    /// Cells of a triangular count table.
    pub table_cells: u64,
    /// `k * samples` for Monte Carlo runs.
    pub simulate_work: u64,
    /// Simplex pivots per feasibility problem.
    pub lp_pivots: u64,
    pub precision_bits: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_terms: 2_000_000,
            enumerate_work: 1 << 24,
            table_cells: 8_000_000,
            simulate_work: 50_000_000,
            lp_pivots: 100_000,
            precision_bits: DEFAULT_PRECISION_BITS,
        }
    }
}

impl Budgets {
    /// Defaults overridden by any `NMBIN_*` variables that parse.
    pub fn from_env() -> Self {
        let mut b = Budgets::default();
        if let Some(v) = read_env("NMBIN_MAX_TERMS") {
            b.max_terms = v as usize;
        }
        if let Some(v) = read_env("NMBIN_ENUM_BUDGET") {
            b.enumerate_work = v;
        }
        if let Some(v) = read_env("NMBIN_TABLE_CELLS") {
            b.table_cells = v;
        }
        if let Some(v) = read_env("NMBIN_SIM_BUDGET") {
            b.simulate_work = v;
        }
        if let Some(v) = read_env("NMBIN_LP_PIVOTS") {
            b.lp_pivots = v;
        }
        if let Some(v) = read_env("NMBIN_PRECISION") {
            b.precision_bits = v as usize;
        }
        b
    }
}

fn read_env(key: &str) -> Option<u64> {
    env::var(key)
        .ok()
        .and_then(|s| s.trim().replace('_', "").parse().ok())
}
