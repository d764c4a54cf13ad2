//! Exact mean, variance and skewness of the summand count, and estimates of
//! the constant offsets in `mean = C k + d`, `variance = C' k + d'`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::counting::{moments_at, MomentIter, MomentSeries};
use crate::error::{Error, Result};
use crate::params::BinParams;
use crate::real::Real;
use crate::stats::constants::{constants, dominant_terms};

/// Working precision used when exact rationals are compared with reals.
const BITS: usize = 256;

#[derive(Debug, Clone, PartialEq)]
pub struct ExactStats {
    pub k: u64,
    pub mean: BigRational,
    pub variance: BigRational,
    /// Third central moment.
    pub central3: BigRational,
}

impl ExactStats {
    pub fn from_moments(ms: &MomentSeries) -> Self {
        let s = &ms.s;
        let mean = BigRational::new(ms.m.clone(), s.clone());
        let variance = BigRational::new(&ms.q * s - &ms.m * &ms.m, s * s);
        let central3 = BigRational::new(
            &ms.t * s * s - BigInt::from(3) * &ms.m * &ms.q * s
                + BigInt::from(2) * &ms.m * &ms.m * &ms.m,
            s * s * s,
        );
        ExactStats {
            k: ms.k,
            mean,
            variance,
            central3,
        }
    }

    pub fn mean_real(&self) -> Real {
        Real::from_ratio(&self.mean, BITS)
    }

    pub fn variance_real(&self) -> Real {
        Real::from_ratio(&self.variance, BITS)
    }

    pub fn mean_f64(&self) -> f64 {
        self.mean_real().to_f64()
    }

    pub fn variance_f64(&self) -> f64 {
        self.variance_real().to_f64()
    }

    /// `E[(Y - mu)^3] / sigma^3`; zero for a degenerate distribution.
    pub fn skewness(&self) -> f64 {
        let var = self.variance_real();
        if var.is_zero() {
            return 0.0;
        }
        let sd3 = var.sqrt().powi(3);
        (Real::from_ratio(&self.central3, BITS) / sd3).to_f64()
    }
}

/// Exact mean and variance of the summand count over `[0, a_{sk})`.
pub fn exact_stats(params: BinParams, k: u64) -> Result<ExactStats> {
    if k < 1 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    Ok(ExactStats::from_moments(&moments_at(params, k)))
}

/// Exact statistics at each requested `k` from a single pass over the
/// moment recurrence. `ks` need not be sorted.
pub fn exact_stats_many(params: BinParams, ks: &[u64]) -> Result<Vec<ExactStats>> {
    if ks.contains(&0) {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let mut sorted: Vec<u64> = ks.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut found = Vec::with_capacity(sorted.len());
    let mut wanted = sorted.iter().peekable();
    for ms in MomentIter::new(params) {
        let Some(&&next) = wanted.peek() else { break };
        if ms.k == next {
            found.push(ExactStats::from_moments(&ms));
            wanted.next();
        }
    }
    Ok(ks
        .iter()
        .map(|k| found[sorted.binary_search(k).unwrap()].clone())
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OffsetEstimate {
    pub ks: Vec<u64>,
    /// `mu_k - C k` at each `k`.
    pub mean_offsets: Vec<f64>,
    /// `sigma_k^2 - C' k` at each `k`.
    pub variance_offsets: Vec<f64>,
    /// Offsets at the largest `k`.
    pub d: f64,
    pub d_prime: f64,
    /// Largest spread of the offsets over the range.
    pub d_drift: f64,
    pub d_prime_drift: f64,
    /// Least-squares slope of `mu_k` against `k`.
    pub mean_slope: f64,
    pub variance_slope: f64,
    /// `q_1'(1) / q_1(1)` by central differences, when requested.
    pub d_analytic: Option<f64>,
    pub d_prime_analytic: Option<f64>,
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let num: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}

fn spread(v: &[f64]) -> f64 {
    let max = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = v.iter().cloned().fold(f64::INFINITY, f64::min);
    max - min
}

/// Fits the constant offsets `d`, `d'` over `ks` (at least three values).
/// With `analytic` set, also evaluates `d = q_1'(1) / q_1(1)` and
/// `d' = d/dy (y q_1'/q_1)` at `y = 1` by central differences of step `1e-6`.
pub fn estimate_offsets(params: BinParams, ks: &[u64], analytic: bool) -> Result<OffsetEstimate> {
    if ks.len() < 3 {
        return Err(Error::Domain("need at least three values of k".into()));
    }
    let mut ks = ks.to_vec();
    ks.sort_unstable();
    ks.dedup();
    if ks.len() < 3 {
        return Err(Error::Domain(
            "need at least three distinct values of k".into(),
        ));
    }
    let stats = exact_stats_many(params, &ks)?;
    let g = constants(params);
    let bits = g.c.precision();
    let mut mean_offsets = Vec::new();
    let mut variance_offsets = Vec::new();
    for st in &stats {
        let k = Real::from_u64(st.k, bits);
        mean_offsets.push((st.mean_real() - &k * &g.c).to_f64());
        variance_offsets.push((st.variance_real() - &k * &g.c_prime).to_f64());
    }
    let xs: Vec<f64> = ks.iter().map(|&k| k as f64).collect();
    let means: Vec<f64> = stats.iter().map(|s| s.mean_f64()).collect();
    let vars: Vec<f64> = stats.iter().map(|s| s.variance_f64()).collect();
    let (d_analytic, d_prime_analytic) = if analytic {
        let (d, dp) = offsets_from_dominant_term(params, 1e-6);
        (Some(d), Some(dp))
    } else {
        (None, None)
    };
    Ok(OffsetEstimate {
        d: *mean_offsets.last().unwrap(),
        d_prime: *variance_offsets.last().unwrap(),
        d_drift: spread(&mean_offsets),
        d_prime_drift: spread(&variance_offsets),
        mean_slope: slope(&xs, &means),
        variance_slope: slope(&xs, &vars),
        ks,
        mean_offsets,
        variance_offsets,
        d_analytic,
        d_prime_analytic,
    })
}

/// `(q_1'(1)/q_1(1), q_1'/q_1 + q_1''/q_1 - (q_1'/q_1)^2)` at `y = 1` from
/// central differences of `q_1` with step `h`, evaluated at 256 bits.
pub fn offsets_from_dominant_term(params: BinParams, h: f64) -> (f64, f64) {
    let h = crate::real::parse_decimal_ratio(&format!("{h:e}")).expect("finite step");
    let one = BigRational::from_integer(1.into());
    let q = |y: &BigRational| dominant_terms(params, y, BITS).q1;
    let q_minus = q(&(&one - &h));
    let q_mid = q(&one);
    let q_plus = q(&(&one + &h));
    let h = Real::from_ratio(&h, BITS);
    let two = Real::from_u64(2, BITS);
    let d1 = (&q_plus - &q_minus) / (&two * &h);
    let d2 = (&q_plus - &two * &q_mid + &q_minus) / (&h * &h);
    let r1 = &d1 / &q_mid;
    let r2 = &d2 / &q_mid;
    let d = r1.clone();
    let d_prime = &r1 + &r2 - &r1 * &r1;
    (d.to_f64(), d_prime.to_f64())
}
