use thiserror::Error;

/// Errors produced by the library. Verification failures are not errors;
/// they are returned as data in a [`crate::report::VerificationReport`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: n and m must be positive (got n={n}, m={m})")]
    InvalidParams { n: u64, m: u64 },

    #[error("{what}: requested {requested} exceeds the configured limit of {limit}")]
    Resource {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn resource(
        what: &'static str,
        requested: impl Into<u128>,
        limit: impl Into<u128>,
    ) -> Self {
        Error::Resource {
            what,
            requested: requested.into(),
            limit: limit.into(),
        }
    }
}
