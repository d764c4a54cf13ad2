use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::sequence::BinSequence;

/// Exact uniform sampler on `[0, bound)` by rejection: draw
/// `bits(bound - 1)` uniform bits and retry while the draw is `>= bound`.
#[derive(Debug, Clone)]
pub struct UniformBelow {
    bound: BigUint,
    bits: u64,
}

impl UniformBelow {
    pub fn new(bound: BigUint) -> Result<Self> {
        if bound.is_zero() {
            return Err(Error::Domain("sampling bound must be positive".into()));
        }
        let bits = (&bound - BigUint::one()).bits();
        Ok(UniformBelow { bound, bits })
    }

    pub fn bound(&self) -> &BigUint {
        &self.bound
    }

    /// Returns the sample together with the number of rejected draws.
    pub fn sample_counting<R: Rng + ?Sized>(&self, rng: &mut R) -> (BigUint, u32) {
        let mut rejected = 0;
        loop {
            let v = rng.gen_biguint(self.bits);
            if v < self.bound {
                return (v, rejected);
            }
            rejected += 1;
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BigUint {
        self.sample_counting(rng).0
    }
}

/// A uniform integer from `[0, a_{sk})`; `a_{sk}` must already be cached.
pub fn sample_uniform<R: Rng + ?Sized>(seq: &BinSequence, k: u64, rng: &mut R) -> Result<BigUint> {
    let idx = seq.params().s() * k;
    let bound = seq.get(idx).ok_or_else(|| {
        Error::Domain(format!("a_{idx} is not cached; extend the sequence first"))
    })?;
    Ok(UniformBelow::new(bound.clone())?.sample(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::BinParams;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_bound_is_uniform() {
        let mut seq = BinSequence::new(BinParams::new(2, 3).unwrap());
        seq.extend_to(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let draws = 60_000;
        let mut counts = [0u32; 6];
        for _ in 0..draws {
            let v = sample_uniform(&seq, 1, &mut rng).unwrap();
            counts[usize::try_from(&v).unwrap()] += 1;
        }
        let expected = draws as f64 / 6.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        // 5 degrees of freedom, 99.9% quantile is 20.5
        assert!(chi2 < 20.5, "chi2 = {chi2}, counts = {counts:?}");
    }

    #[test]
    fn fixed_seed_reproduces() {
        let s = UniformBelow::new(BigUint::from(10u32).pow(40)).unwrap();
        let a: Vec<_> = {
            let mut rng = ChaCha8Rng::seed_from_u64(99);
            (0..20).map(|_| s.sample(&mut rng)).collect()
        };
        let b: Vec<_> = {
            let mut rng = ChaCha8Rng::seed_from_u64(99);
            (0..20).map(|_| s.sample(&mut rng)).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn power_of_two_never_rejects() {
        let s = UniformBelow::new(BigUint::one() << 100u32).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            assert_eq!(s.sample_counting(&mut rng).1, 0);
        }
        let one = UniformBelow::new(BigUint::one()).unwrap();
        assert_eq!(one.sample_counting(&mut rng), (BigUint::zero(), 0));
    }

    #[test]
    fn zero_bound_rejected() {
        assert!(UniformBelow::new(BigUint::zero()).is_err());
    }

    #[test]
    fn uncached_bound_is_an_error() {
        let seq = BinSequence::new(BinParams::new(2, 3).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(sample_uniform(&seq, 3, &mut rng).is_err());
    }
}
