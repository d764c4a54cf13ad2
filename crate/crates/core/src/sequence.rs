//! Generation of (n,m)-bin sequences.
//!
//! The first bin-pair is `1, 2, ..., n + m`. Every later term obeys the step
//! rule `a_x = a_{x-1} + a_{x-1-f(x-1)}`. The two-term recurrence
//! `a_x = (s+1) a_{x-s} - p a_{x-2s}` and the per-sub-bin family identities
//! are consequences that the `verify_*` methods check against the cache.

use num_bigint::{BigInt, BigUint};

use crate::config::Budgets;
use crate::error::{Error, Result};
use crate::params::BinParams;
use crate::report::VerificationReport;

/// Lazily extended cache of exact sequence terms.
///
/// Extension takes `&mut self`; once the cache covers every index a caller
/// needs, the sequence can be shared read-only across threads.
#[derive(Debug, Clone)]
pub struct BinSequence {
    params: BinParams,
    terms: Vec<BigUint>,
    max_terms: usize,
}

impl BinSequence {
    pub fn new(params: BinParams) -> Self {
        Self::with_limit(params, Budgets::default().max_terms)
    }

    /// A sequence whose cache may hold at most `max_terms` terms.
    pub fn with_limit(params: BinParams, max_terms: usize) -> Self {
        let s = params.s() as usize;
        let mut terms = Vec::with_capacity(2 * s);
        terms.extend((1..=params.s()).take(max_terms).map(BigUint::from));
        BinSequence {
            params,
            terms,
            max_terms,
        }
    }

    pub fn params(&self) -> BinParams {
        self.params
    }

    /// Number of cached terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[BigUint] {
        &self.terms
    }

    /// The cached term `a_x`, without extending.
    pub fn get(&self, x: u64) -> Option<&BigUint> {
        usize::try_from(x).ok().and_then(|i| self.terms.get(i))
    }

    /// Makes sure `a_0 ..= a_x` are cached.
    pub fn extend_to(&mut self, x: u64) -> Result<()> {
        let want = usize::try_from(x)
            .ok()
            .and_then(|x| x.checked_add(1))
            .filter(|&w| w <= self.max_terms)
            .ok_or_else(|| Error::resource("sequence index", x + 1, self.max_terms as u64))?;
        if want <= self.terms.len() {
            return Ok(());
        }
        self.terms.reserve(want - self.terms.len());
        while self.terms.len() < want {
            let x = self.terms.len() as u64;
            let prev = x - 1;
            let back = (prev - self.params.f_of(prev)) as usize;
            let next = &self.terms[prev as usize] + &self.terms[back];
            self.terms.push(next);
        }
        Ok(())
    }

    /// `a_x`, extending the cache as needed.
    pub fn term(&mut self, x: u64) -> Result<&BigUint> {
        self.extend_to(x)?;
        Ok(&self.terms[x as usize])
    }

    /// Extends the cache until it holds a term strictly greater than `z`
    /// and returns the index of that term.
    pub fn extend_past(&mut self, z: &BigUint) -> Result<u64> {
        while self.terms.last().is_some_and(|t| t <= z) {
            let next = self.terms.len() as u64;
            self.extend_to(next)?;
        }
        Ok(self.terms.partition_point(|t| t <= z) as u64)
    }

    /// Checks the three per-sub-bin identities for every `1 <= k < k_max`:
    ///
    /// ```text
    /// a_{s(k+1)}     = a_{sk+s-1}       + a_{sk}
    /// a_{s(k+1)+i}   = a_{s(k+1)+i-1}   + a_{sk+n}     1 <= i <= n
    /// a_{s(k+1)+j}   = a_{s(k+1)+j-1}   + a_{s(k+1)}   n+1 <= j <= s-1
    /// ```
    pub fn verify_family_recurrences(&mut self, k_max: u64) -> Result<VerificationReport> {
        let mut report = VerificationReport::new("family recurrences");
        if k_max < 1 {
            return Err(Error::Domain("k_max must be at least 1".into()));
        }
        let (n, s) = (self.params.n(), self.params.s());
        self.extend_to(s * k_max + s - 1)?;
        let a = |x: u64| BigInt::from(self.terms[x as usize].clone());
        for k in 1..k_max {
            let base = s * (k + 1);
            report.expect_eq("family:a0", base, a(s * k + s - 1) + a(s * k), a(base));
            for i in 1..=n {
                let x = base + i;
                report.expect_eq("family:ai", x, a(x - 1) + a(s * k + n), a(x));
            }
            for j in n + 1..s {
                let x = base + j;
                report.expect_eq("family:aj", x, a(x - 1) + a(base), a(x));
            }
        }
        Ok(report)
    }

    /// Checks `a_x = (s+1) a_{x-s} - p a_{x-2s}` for `2s <= x <= x_max`.
    pub fn verify_single_recurrence(&mut self, x_max: u64) -> Result<VerificationReport> {
        let mut report = VerificationReport::new("single recurrence");
        let (s, p) = (self.params.s(), self.params.p());
        if x_max < 2 * s {
            return Err(Error::Domain(format!(
                "x_max must be at least 2s = {}",
                2 * s
            )));
        }
        self.extend_to(x_max)?;
        for x in 2 * s..=x_max {
            let expected = BigInt::from((s + 1) * &self.terms[(x - s) as usize])
                - BigInt::from(p * &self.terms[(x - 2 * s) as usize]);
            report.expect_eq(
                "single",
                x,
                expected,
                BigInt::from(self.terms[x as usize].clone()),
            );
        }
        Ok(report)
    }
}
