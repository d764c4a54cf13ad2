use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decomp::summand_count_cached;
use crate::error::{Error, Result};
use crate::params::BinParams;
use crate::real::Real;
use crate::sequence::BinSequence;
use crate::stats::sampling::UniformBelow;

/// Samples per independent random stream. Stream `i` covers samples
/// `i * STREAM_LEN ..`, so the result does not depend on the worker count.
pub const STREAM_LEN: u64 = 1024;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationResult {
    pub params: BinParams,
    pub k: u64,
    pub sample_count: u64,
    pub seed: u64,
    pub sample_mean: f64,
    /// Unbiased (divisor `N - 1`).
    pub sample_variance: f64,
    /// Summand count -> number of samples.
    pub histogram: BTreeMap<u32, u64>,
    /// Exact `sum Y` and `sum Y^2` over the sample.
    pub sum: u64,
    #[serde(with = "crate::decimal::biguint")]
    pub sum_squares: BigUint,
    /// Wall-clock time. Not serialised, so that reruns are byte-identical.
    #[serde(skip)]
    pub elapsed: f64,
}

#[derive(Default)]
struct Tally {
    histogram: BTreeMap<u32, u64>,
}

impl Tally {
    fn add(&mut self, count: u32) {
        *self.histogram.entry(count).or_default() += 1;
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (c, f) in other.histogram {
            *self.histogram.entry(c).or_default() += f;
        }
        self
    }
}

impl SimulationResult {
    fn from_histogram(
        params: BinParams,
        k: u64,
        seed: u64,
        histogram: BTreeMap<u32, u64>,
        elapsed: f64,
    ) -> Self {
        let sample_count: u64 = histogram.values().sum();
        let sum: u64 = histogram.iter().map(|(&c, &f)| c as u64 * f).sum();
        let sum_squares: BigUint = histogram
            .iter()
            .map(|(&c, &f)| BigUint::from(c as u64 * c as u64) * f)
            .sum();
        let n = BigRational::from_integer(sample_count.into());
        let s1 = BigRational::from_integer(sum.into());
        let s2 = BigRational::from_integer(sum_squares.clone().into());
        let (mean, variance) = if sample_count == 0 {
            (0.0, 0.0)
        } else {
            let mean = &s1 / &n;
            let var = if sample_count > 1 {
                let one = BigRational::from_integer(1.into());
                (&s2 - &s1 * &s1 / &n) / (&n - one)
            } else {
                BigRational::from_integer(0.into())
            };
            (
                Real::from_ratio(&mean, 128).to_f64(),
                Real::from_ratio(&var, 128).to_f64(),
            )
        };
        SimulationResult {
            params,
            k,
            sample_count,
            seed,
            sample_mean: mean,
            sample_variance: variance,
            histogram,
            sum,
            sum_squares,
            elapsed,
        }
    }

    /// Tallies the given integers instead of random draws. Every value must
    /// be below `a_{sk}`, which must be cached.
    pub fn from_values<'a>(
        seq: &BinSequence,
        k: u64,
        values: impl IntoIterator<Item = &'a BigUint>,
    ) -> Result<Self> {
        let terms = cover(seq, k)?;
        let bound = &terms[terms.len() - 1];
        let mut tally = Tally::default();
        for v in values {
            if v >= bound {
                return Err(Error::Domain(format!(
                    "{v} is not below a_{{sk}} = {bound}"
                )));
            }
            tally.add(summand_count_cached(terms, seq.params(), v));
        }
        Ok(Self::from_histogram(
            seq.params(),
            k,
            0,
            tally.histogram,
            0.0,
        ))
    }

    /// `summands,frequency` rows with a header line.
    pub fn histogram_csv(&self) -> String {
        let mut out = String::from("summands,frequency\n");
        for (c, f) in &self.histogram {
            let _ = writeln!(out, "{c},{f}");
        }
        out
    }
}

/// Cached terms `a_0 ..= a_{sk}`.
fn cover(seq: &BinSequence, k: u64) -> Result<&[BigUint]> {
    let idx = seq.params().s() * k;
    if seq.get(idx).is_none() {
        return Err(Error::Domain(format!(
            "a_{idx} is not cached; extend the sequence before simulating"
        )));
    }
    Ok(&seq.terms()[..=idx as usize])
}

/// Draws `sample_count` uniform integers from `[0, a_{sk})`, decomposes each
/// and tallies the number of summands.
///
/// Deterministic for a fixed seed: samples are split into streams of
/// [`STREAM_LEN`], stream `i` uses ChaCha8 seeded with `seed` on stream `i`,
/// and the merge only adds counts.
pub fn simulate(
    seq: &BinSequence,
    k: u64,
    sample_count: u64,
    seed: u64,
    work_budget: u64,
) -> Result<SimulationResult> {
    let work = k as u128 * sample_count as u128;
    if work > work_budget as u128 {
        return Err(Error::resource(
            "simulation work (k * samples)",
            work,
            work_budget,
        ));
    }
    if k == 0 || sample_count == 0 {
        return Err(Error::Domain("k and sample count must be positive".into()));
    }
    let start = Instant::now();
    let terms = cover(seq, k)?;
    let params = seq.params();
    let sampler = UniformBelow::new(terms[terms.len() - 1].clone())?;
    let streams = sample_count.div_ceil(STREAM_LEN);
    let tally = (0..streams)
        .into_par_iter()
        .map(|stream| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(stream);
            let len = STREAM_LEN.min(sample_count - stream * STREAM_LEN);
            let mut tally = Tally::default();
            for _ in 0..len {
                let z = sampler.sample(&mut rng);
                tally.add(summand_count_cached(terms, params, &z));
            }
            tally
        })
        .reduce(Tally::default, Tally::merge);
    let elapsed = start.elapsed().as_secs_f64();
    Ok(SimulationResult::from_histogram(
        params,
        k,
        seed,
        tally.histogram,
        elapsed,
    ))
}
