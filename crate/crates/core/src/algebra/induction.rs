//! Symbolic form of the induction showing that no multiple of
//! `y^{2s} - (s+1) y^s + p` has PLR shape.
//!
//! Write the multiplier as `q_0 + ... + q_k y^k` and the product coefficients as
//! `c_i = q_{i-2s} - (s+1) q_{i-s} + p q_i`. Assuming `c_i <= 0` below the leading
//! term, let `t` be the lowest index with `q_t != 0`. The chain
//! `q_t, q_{t+s}, q_{t+2s}, ...` is shown negative and non-increasing, which the
//! first coefficient past `k` on that chain then contradicts.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::params::BinParams;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionStep {
    pub name: String,
    pub derivation: Vec<String>,
    /// Condition on `(s, p)` needed by the step, with its verdict.
    pub requires: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum InductionOutcome {
    Proved {
        s: u64,
        p: u64,
        steps: Vec<InductionStep>,
    },
    DoesNotApply {
        s: u64,
        p: u64,
        steps: Vec<InductionStep>,
        failed_step: String,
    },
}

impl InductionOutcome {
    pub fn applies(&self) -> bool {
        matches!(self, InductionOutcome::Proved { .. })
    }

    pub fn steps(&self) -> &[InductionStep] {
        match self {
            InductionOutcome::Proved { steps, .. }
            | InductionOutcome::DoesNotApply { steps, .. } => steps,
        }
    }
}

fn ratio_text(num: u64, den: u64) -> String {
    let r = Ratio::new(num, den);
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Builds the trace for the characteristic polynomial of `params`.
///
/// The result speaks only about multiples of that polynomial; it says nothing
/// about the sequence when the polynomial is reducible.
pub fn appendix_induction_check(params: BinParams) -> InductionOutcome {
    let (s, p) = (params.s(), params.p());
    let s1 = s + 1;
    let up = ratio_text(s1, p);
    let step = ratio_text(s, p);
    let steps = vec![
        InductionStep {
            name: "base j=0".into(),
            derivation: vec![
                format!("c_t = q_(t-{}) - {s1} q_(t-{s}) + {p} q_t = {p} q_t", 2 * s),
                format!("{p} q_t = c_t < 0"),
                format!("q_t < 0 = q_(t-{s})"),
            ],
            requires: format!("p = {p} > 0"),
            holds: p > 0,
        },
        InductionStep {
            name: "base j=1".into(),
            derivation: vec![
                format!("c_(t+{s}) = q_(t-{s}) - {s1} q_t + {p} q_(t+{s}) <= 0"),
                format!("{p} q_(t+{s}) <= {s1} q_t"),
                format!("q_(t+{s}) <= {up} q_t <= q_t"),
            ],
            requires: format!("(s+1)/p = {up} >= 1"),
            holds: s1 >= p,
        },
        InductionStep {
            name: "inductive step".into(),
            derivation: vec![
                format!(
                    "c_(t+{s}j) = q_(t+{s}j-{}) - {s1} q_(t+{s}j-{s}) + {p} q_(t+{s}j) <= 0",
                    2 * s
                ),
                format!(
                    "{p} q_(t+{s}j) <= {s1} q_(t+{s}j-{s}) - q_(t+{s}j-{})",
                    2 * s
                ),
                format!("{p} q_(t+{s}j) <= {s1} q_(t+{s}j-{s}) - q_(t+{s}j-{s})"),
                format!("q_(t+{s}j) <= {step} q_(t+{s}j-{s}) <= q_(t+{s}j-{s})"),
            ],
            requires: format!("s/p = {step} >= 1"),
            holds: s >= p,
        },
        InductionStep {
            name: "contradiction".into(),
            derivation: vec![
                format!("choose j* with k < t+{s}j* < k+{}", 2 * s),
                format!(
                    "c_(t+{s}j*) = q_(t+{s}j*-{}) - {s1} q_(t+{s}j*-{s}) <= 0",
                    2 * s
                ),
                format!(
                    "q_(t+{s}j*-{}) <= {s1} q_(t+{s}j*-{s}) < q_(t+{s}j*-{s})",
                    2 * s
                ),
                "contradicts the chain being non-increasing".into(),
            ],
            requires: format!("s+1 = {s1} > 1"),
            holds: true,
        },
    ];
    match steps.iter().find(|st| !st.holds) {
        None => InductionOutcome::Proved { s, p, steps },
        Some(st) => {
            let failed_step = st.name.clone();
            InductionOutcome::DoesNotApply {
                s,
                p,
                steps,
                failed_step,
            }
        }
    }
}
