use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// A single failed identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Which identity failed, e.g. `"single"` or `"family:a0"`.
    pub rule: String,
    /// The index (or value) the identity was evaluated at.
    pub index: u64,
    #[serde(with = "crate::decimal::bigint")]
    pub expected: BigInt,
    #[serde(with = "crate::decimal::bigint")]
    pub actual: BigInt,
}

/// Outcome of a finite verification. Violations are data, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    /// Number of individual identities evaluated.
    pub checked: u64,
    pub violations: Vec<Violation>,
    /// Free-form findings that do not map onto an expected/actual pair.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>) -> Self {
        VerificationReport {
            check: check.into(),
            checked: 0,
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.notes.is_empty()
    }

    pub(crate) fn expect_eq(&mut self, rule: &str, index: u64, expected: BigInt, actual: BigInt) {
        self.checked += 1;
        if expected != actual {
            self.violations.push(Violation {
                rule: rule.to_string(),
                index,
                expected,
                actual,
            });
        }
    }

    pub(crate) fn fail(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
        self.notes.extend(other.notes);
    }
}

impl std::fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {} ({} checked, {} violations)",
            self.check,
            self.checked,
            self.violations.len() + self.notes.len()
        )?;
        for v in self.violations.iter().take(10) {
            write!(
                f,
                "\n  {} at {}: expected {}, got {}",
                v.rule, v.index, v.expected, v.actual
            )?;
        }
        for n in self.notes.iter().take(10) {
            write!(f, "\n  {n}")?;
        }
        Ok(())
    }
}
