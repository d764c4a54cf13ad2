use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::config::DEFAULT_CONSTANT_DIGITS;
use crate::params::BinParams;
use crate::real::Real;

/// Binary precision that carries `digits` decimal digits plus guard bits.
pub fn bits_for_digits(digits: usize) -> usize {
    digits * 3322 / 1000 + 32
}

/// Growth constants of the summand-count mean and variance.
///
/// With `beta = sqrt((1 + s)^2 - 4p)`, the mean grows like `C k` with
/// `C = (beta - 1) / beta` and the variance like `C' k` with
/// `C' = (s (1 + s) - 4p) / beta^3`.
#[derive(Debug, Clone)]
pub struct GaussianStats {
    pub params: BinParams,
    pub beta: Real,
    pub c: Real,
    pub c_prime: Real,
    pub k: Option<u64>,
}

pub fn constants(params: BinParams) -> GaussianStats {
    constants_with_digits(params, DEFAULT_CONSTANT_DIGITS)
}

pub fn constants_with_digits(params: BinParams, digits: usize) -> GaussianStats {
    let bits = bits_for_digits(digits);
    let (s, p) = (params.s(), params.p());
    let beta = Real::from_u64((1 + s) * (1 + s) - 4 * p, bits).sqrt();
    let one = Real::one(bits);
    assert!(beta > one, "beta must exceed 1");
    let c = (&beta - &one) / &beta;
    let beta3 = beta.powi(3);
    let c_prime = Real::from_u64(s * (1 + s) - 4 * p, bits) / &beta3;
    GaussianStats {
        params,
        beta,
        c,
        c_prime,
        k: None,
    }
}

impl GaussianStats {
    pub fn at(mut self, k: u64) -> Self {
        self.k = Some(k);
        self
    }

    pub fn predicted_mean(&self) -> Option<Real> {
        self.k
            .map(|k| Real::from_u64(k, self.c.precision()) * &self.c)
    }

    pub fn predicted_variance(&self) -> Option<Real> {
        self.k
            .map(|k| Real::from_u64(k, self.c_prime.precision()) * &self.c_prime)
    }

    /// `C'` through the intermediate form `(beta^2 - 1 - s) / beta^3`.
    pub fn c_prime_alt(&self) -> Real {
        let bits = self.beta.precision();
        let num = &self.beta * &self.beta - Real::from_u64(1 + self.params.s(), bits);
        num / self.beta.powi(3)
    }

    /// Plain-data view with reals rendered to `digits` significant digits.
    pub fn record(&self, digits: usize) -> GaussianStatsRecord {
        GaussianStatsRecord {
            n: self.params.n(),
            m: self.params.m(),
            beta: self.beta.to_decimal_string(digits),
            c: self.c.to_decimal_string(digits),
            c_prime: self.c_prime.to_decimal_string(digits),
            k: self.k,
            predicted_mean: self.predicted_mean().map(|v| v.to_fixed(6)),
            predicted_variance: self.predicted_variance().map(|v| v.to_fixed(6)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussianStatsRecord {
    pub n: u64,
    pub m: u64,
    pub beta: String,
    pub c: String,
    pub c_prime: String,
    pub k: Option<u64>,
    pub predicted_mean: Option<String>,
    pub predicted_variance: Option<String>,
}

/// The two terms of `g_k(y) = q_1 alpha_1^k + q_2 alpha_2^k`.
///
/// `alpha_i(y) = 2 p y^2 / (1 + s y + (-1)^i sqrt(D))` and
/// `q_i(y) = (-1)^(i+1) alpha_i(y) / sqrt(D)`, where
/// `D = (1 + s y)^2 - 4 p y^2`.
#[derive(Debug, Clone)]
pub struct DominantTerms {
    pub alpha1: Real,
    pub alpha2: Real,
    pub q1: Real,
    pub q2: Real,
}

pub fn dominant_terms(params: BinParams, y: &BigRational, bits: usize) -> DominantTerms {
    let y = Real::from_ratio(y, bits);
    let s = Real::from_u64(params.s(), bits);
    let p = Real::from_u64(params.p(), bits);
    let a = Real::one(bits) + &s * &y;
    let y2 = &y * &y;
    let disc = &a * &a - Real::from_u64(4, bits) * &p * &y2;
    let root = disc.sqrt();
    let num = Real::from_u64(2, bits) * &p * &y2;
    let alpha1 = &num / (&a - &root);
    let alpha2 = &num / (&a + &root);
    let q1 = &alpha1 / &root;
    let q2 = -(&alpha2 / &root);
    DominantTerms {
        alpha1,
        alpha2,
        q1,
        q2,
    }
}

/// Predicted value `C * k` rounded to six decimals, as printed in reports.
pub fn predicted_mean_fixed(params: BinParams, k: u64) -> String {
    constants(params)
        .at(k)
        .predicted_mean()
        .unwrap()
        .to_fixed(6)
}
