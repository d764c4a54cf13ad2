use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::Result;
use crate::params::BinParams;
use crate::stats::exact::exact_stats;
use crate::stats::simulate::SimulationResult;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalityThresholds {
    /// Asymptotic KS coefficient; `1.63` is the 1% critical value.
    pub ks_coefficient: f64,
    /// Multiplier on `ks_coefficient / sqrt(N)`.
    pub ks_safety: f64,
    pub max_abs_skewness: f64,
}

impl Default for NormalityThresholds {
    fn default() -> Self {
        NormalityThresholds {
            ks_coefficient: 1.63,
            ks_safety: 3.0,
            max_abs_skewness: 0.25,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Exact,
    Sample,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalityReport {
    pub source: Source,
    pub params: BinParams,
    pub k: u64,
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub ks_statistic: Option<f64>,
    pub ks_threshold: Option<f64>,
    pub passed: bool,
}

/// Skewness of the exact summand-count distribution at `k`.
pub fn exact_normality(
    params: BinParams,
    k: u64,
    thresholds: &NormalityThresholds,
) -> Result<NormalityReport> {
    let st = exact_stats(params, k)?;
    let skewness = st.skewness();
    Ok(NormalityReport {
        source: Source::Exact,
        params,
        k,
        mean: st.mean_f64(),
        variance: st.variance_f64(),
        skewness,
        ks_statistic: None,
        ks_threshold: None,
        passed: skewness.abs() <= thresholds.max_abs_skewness,
    })
}

/// One-sample Kolmogorov-Smirnov distance between the empirical CDF of an
/// integer-valued histogram and `Normal(mean, sd)`.
///
/// The empirical CDF is constant on `[c, c+1)`, so the supremum is attained
/// at the left or right end of one of those steps.
pub fn ks_statistic(histogram: &std::collections::BTreeMap<u32, u64>, mean: f64, sd: f64) -> f64 {
    let total: u64 = histogram.values().sum();
    if total == 0 || sd.is_nan() || sd <= 0.0 {
        return 1.0;
    }
    let normal = Normal::new(mean, sd).expect("valid normal parameters");
    let n = total as f64;
    let mut cumulative = 0u64;
    let mut d: f64 = 0.0;
    for (&c, &f) in histogram {
        let below = cumulative as f64 / n;
        cumulative += f;
        let at = cumulative as f64 / n;
        let phi = normal.cdf(c as f64);
        let phi_next = normal.cdf(c as f64 + 1.0);
        // just left of c the ECDF is `below`; on [c, c+1) it is `at`
        d = d
            .max((phi - below).abs())
            .max((at - phi).abs())
            .max((at - phi_next).abs());
    }
    d
}

/// Sample skewness and KS distance against `Normal(sample mean, sample sd)`.
pub fn sample_normality(
    result: &SimulationResult,
    thresholds: &NormalityThresholds,
) -> NormalityReport {
    let n = result.sample_count as f64;
    let mean = result.sample_mean;
    let sd = result.sample_variance.sqrt();
    let m3: f64 = result
        .histogram
        .iter()
        .map(|(&c, &f)| f as f64 * (c as f64 - mean).powi(3))
        .sum::<f64>()
        / n;
    let m2 = result
        .histogram
        .iter()
        .map(|(&c, &f)| f as f64 * (c as f64 - mean).powi(2))
        .sum::<f64>()
        / n;
    let skewness = if m2 > 0.0 { m3 / m2.powf(1.5) } else { 0.0 };
    let ks = ks_statistic(&result.histogram, mean, sd);
    let threshold = thresholds.ks_safety * thresholds.ks_coefficient / n.sqrt();
    NormalityReport {
        source: Source::Sample,
        params: result.params,
        k: result.k,
        mean,
        variance: result.sample_variance,
        skewness,
        ks_statistic: Some(ks),
        ks_threshold: Some(threshold),
        passed: ks < threshold && skewness.abs() <= thresholds.max_abs_skewness,
    }
}
