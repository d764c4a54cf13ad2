use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::poly::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum EisensteinOutcome {
    /// `prime` divides every non-leading coefficient, not the leading one,
    /// and its square does not divide the constant term.
    Witness {
        prime: u64,
    },
    NoWitness {
        prime_bound: u64,
    },
    /// Only monic polynomials are searched.
    NotApplicable,
}

impl EisensteinOutcome {
    pub fn prime(&self) -> Option<u64> {
        match self {
            EisensteinOutcome::Witness { prime } => Some(*prime),
            _ => None,
        }
    }
}

fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            for j in (i * i..=n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &p)| p.then_some(i as u64))
        .collect()
}

pub fn satisfies_eisenstein(poly: &IntPolynomial, q: u64) -> bool {
    let q = BigInt::from(q);
    let coeffs = poly.coeffs();
    let (lead, rest) = coeffs.split_last().expect("nonzero polynomial");
    if rest.is_empty() || (lead % &q).is_zero() {
        return false;
    }
    if !rest.iter().all(|c| (c % &q).is_zero()) {
        return false;
    }
    !(&coeffs[0] % (&q * &q)).is_zero()
}

/// Smallest prime `<= prime_bound` certifying irreducibility over `Q` by
/// Eisenstein's criterion.
pub fn eisenstein_witness(poly: &IntPolynomial, prime_bound: u64) -> EisensteinOutcome {
    if !poly.is_monic() {
        return EisensteinOutcome::NotApplicable;
    }
    primes_up_to(prime_bound)
        .into_iter()
        .find(|&q| satisfies_eisenstein(poly, q))
        .map_or(EisensteinOutcome::NoWitness { prime_bound }, |prime| {
            EisensteinOutcome::Witness { prime }
        })
}
