//! Legal decompositions: greedy construction, legality test, and a
//! brute-force enumerator used as a uniqueness oracle.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::BinParams;
use crate::report::VerificationReport;
use crate::sequence::BinSequence;

/// A legal decomposition, stored as strictly decreasing sequence indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Decomposition {
    pub params: BinParams,
    indices: Vec<u64>,
}

impl Decomposition {
    /// Wraps `indices` after sorting them in decreasing order. Legality is
    /// not checked here; see [`Decomposition::is_legal`].
    pub fn from_indices(params: BinParams, mut indices: Vec<u64>) -> Self {
        indices.sort_unstable_by(|a, b| b.cmp(a));
        Decomposition { params, indices }
    }

    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    /// Number of summands.
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn is_legal(&self) -> bool {
        is_legal(self.params, &self.indices)
    }

    /// The summands `a_j`, largest first. Every index must be cached.
    pub fn summands<'a>(&'a self, seq: &'a BinSequence) -> impl Iterator<Item = &'a BigUint> + 'a {
        self.indices
            .iter()
            .map(move |&j| seq.get(j).expect("decomposition index beyond cached terms"))
    }

    pub fn value(&self, seq: &BinSequence) -> BigUint {
        self.summands(seq).sum()
    }
}

/// Whether `indices` (in any order) form a legal decomposition: all
/// distinct, and after sorting in decreasing order each index lies outside
/// the exclusion window `j - f(j) ..= j` of its predecessor.
pub fn is_legal(params: BinParams, indices: &[u64]) -> bool {
    let mut sorted = indices.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    sorted
        .windows(2)
        .all(|w| params.next_admissible(w[0]).is_some_and(|cap| w[1] <= cap))
}

/// Greedy decomposition of `z`, extending `seq` as far as needed.
pub fn decompose(seq: &mut BinSequence, z: &BigUint) -> Result<Decomposition> {
    seq.extend_past(z)?;
    decompose_cached(seq, z)
}

/// Greedy decomposition of `z` using only cached terms. Fails with a
/// domain error when no cached term exceeds `z`.
pub fn decompose_cached(seq: &BinSequence, z: &BigUint) -> Result<Decomposition> {
    let params = seq.params();
    let terms = seq.terms();
    if terms.last().is_none_or(|t| t <= z) && !z.is_zero() {
        return Err(Error::Domain(format!(
            "{z} is not below the largest cached term; extend the sequence first"
        )));
    }
    let mut indices = Vec::new();
    let mut rest = z.clone();
    let mut cap = terms.len();
    while !rest.is_zero() {
        let j = terms[..cap].partition_point(|t| *t <= rest);
        assert!(j > 0, "greedy decomposition stalled with remainder {rest}");
        let j = j - 1;
        rest -= &terms[j];
        indices.push(j as u64);
        match params.next_admissible(j as u64) {
            Some(next) => cap = next as usize + 1,
            None => {
                assert!(rest.is_zero(), "greedy decomposition ran out of indices");
            }
        }
    }
    Ok(Decomposition { params, indices })
}

/// Number of summands in the decomposition of `z`, without materialising
/// the index list. `z` must be below the largest cached term.
pub(crate) fn summand_count_cached(terms: &[BigUint], params: BinParams, z: &BigUint) -> u32 {
    let mut count = 0;
    let mut rest = z.clone();
    let mut cap = terms.len();
    while !rest.is_zero() {
        let j = terms[..cap].partition_point(|t| *t <= rest);
        assert!(j > 0, "greedy decomposition stalled");
        let j = j - 1;
        rest -= &terms[j];
        count += 1;
        match params.next_admissible(j as u64) {
            Some(next) => cap = next as usize + 1,
            None => assert!(rest.is_zero(), "greedy decomposition ran out of indices"),
        }
    }
    count
}

/// Every legal decomposition whose indices are all below `s * k`, paired
/// with its value. The empty decomposition (value 0) is included.
///
/// Each visited search node costs one unit of `work_budget`.
pub fn enumerate_legal(
    seq: &mut BinSequence,
    k: u64,
    work_budget: u64,
) -> Result<Vec<(Decomposition, BigUint)>> {
    let params = seq.params();
    let limit = params.s() * k;
    if limit > 0 {
        seq.extend_to(limit - 1)?;
    }
    let terms = seq.terms();
    let mut out = Vec::new();
    let mut work = 0u64;
    // (index list, value, exclusive upper bound for the next index)
    let mut stack: Vec<(Vec<u64>, BigUint, u64)> = vec![(Vec::new(), BigUint::zero(), limit)];
    while let Some((idx, value, bound)) = stack.pop() {
        work += 1;
        if work > work_budget {
            return Err(Error::resource("enumeration work", work, work_budget));
        }
        for j in 0..bound {
            let next_bound = params.next_admissible(j).map_or(0, |c| c + 1);
            let mut child = idx.clone();
            child.push(j);
            stack.push((child, &value + &terms[j as usize], next_bound));
        }
        out.push((
            Decomposition {
                params,
                indices: idx,
            },
            value,
        ));
    }
    Ok(out)
}

/// Checks that the enumerated legal decompositions below `s * k` hit every
/// integer in `[0, a_{sk})` exactly once.
pub fn check_bijection(
    seq: &mut BinSequence,
    k: u64,
    work_budget: u64,
) -> Result<VerificationReport> {
    let all = enumerate_legal(seq, k, work_budget)?;
    let bound = seq.term(seq.params().s() * k)?.clone();
    let mut report = VerificationReport::new(format!("bijection {} k={k}", seq.params()));
    let size = bound
        .to_usize()
        .filter(|&b| b as u64 <= work_budget)
        .ok_or_else(|| Error::resource("bijection range", u64::MAX, work_budget))?;
    let mut hits = vec![0u32; size];
    for (d, v) in &all {
        report.checked += 1;
        if !d.is_legal() {
            report.fail(format!(
                "enumerated illegal decomposition {:?}",
                d.indices()
            ));
        }
        match v.to_usize().filter(|&v| v < size) {
            Some(v) => hits[v] += 1,
            None => report.fail(format!("value {v} outside [0, {bound})")),
        }
    }
    for (v, &h) in hits.iter().enumerate() {
        match h {
            1 => {}
            0 => report.fail(format!("value {v} has no legal decomposition")),
            _ => report.fail(format!("value {v} has {h} legal decompositions")),
        }
    }
    Ok(report)
}

/// Tally of enumerated decompositions by summand count.
pub fn tally_by_count(all: &[(Decomposition, BigUint)]) -> Vec<u64> {
    let mut tally = Vec::new();
    for (d, _) in all {
        if tally.len() <= d.len() {
            tally.resize(d.len() + 1, 0);
        }
        tally[d.len()] += 1;
    }
    tally
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const BUDGET: u64 = 1 << 24;

    fn seq(n: u64, m: u64) -> BinSequence {
        BinSequence::new(BinParams::new(n, m).unwrap())
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn legality_examples() {
        let bp = BinParams::new(2, 3).unwrap();
        assert!(!is_legal(bp, &[44, 40]));
        assert!(is_legal(bp, &[44, 39]));
        assert!(is_legal(bp, &[]));
        assert!(!is_legal(bp, &[7, 7]));
        // order does not matter
        assert!(is_legal(bp, &[39, 44]));
    }

    #[test]
    fn decompose_2018() {
        let mut s = seq(2, 3);
        let d = decompose(&mut s, &big(2018)).unwrap();
        assert_eq!(d.indices(), &[23, 15, 1]);
        let summands: Vec<_> = d.summands(&s).cloned().collect();
        assert_eq!(summands, vec![big(1872), big(144), big(2)]);
        assert!(d.is_legal());
    }

    #[test]
    fn decompose_zero_is_empty() {
        for (n, m) in [(1, 1), (2, 3), (5, 4)] {
            let mut s = seq(n, m);
            assert!(decompose(&mut s, &big(0)).unwrap().is_empty());
        }
    }

    #[test]
    fn zeckendorf_100() {
        let mut s = seq(1, 1);
        let d = decompose(&mut s, &big(100)).unwrap();
        assert_eq!(d.indices(), &[9, 4, 2]);
        assert_eq!(d.value(&s), big(100));
        assert!(d.is_legal());
    }

    #[test]
    fn cached_decompose_needs_cover() {
        let mut s = seq(2, 3);
        s.extend_to(5).unwrap();
        assert!(decompose_cached(&s, &big(6)).is_err());
        assert_eq!(decompose_cached(&s, &big(5)).unwrap().indices(), &[4]);
    }

    #[test]
    fn enumerate_small() {
        let mut s = seq(1, 1);
        let mut vals: Vec<_> = enumerate_legal(&mut s, 1, BUDGET)
            .unwrap()
            .into_iter()
            .map(|(_, v)| v)
            .collect();
        vals.sort();
        assert_eq!(vals, vec![big(0), big(1), big(2)]);

        let mut s = seq(2, 3);
        assert_eq!(enumerate_legal(&mut s, 1, BUDGET).unwrap().len(), 6);
        let all = enumerate_legal(&mut s, 2, BUDGET).unwrap();
        assert_eq!(all.len(), 30);
    }

    #[test]
    fn enumerate_respects_budget() {
        let mut s = seq(2, 3);
        assert!(matches!(
            enumerate_legal(&mut s, 4, 100),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn bijections() {
        for (n, m, k) in [(2, 3, 3), (1, 1, 4), (3, 2, 2)] {
            let r = check_bijection(&mut seq(n, m), k, BUDGET).unwrap();
            assert!(r.passed(), "{r}");
        }
        let mut s = seq(2, 3);
        let r = check_bijection(&mut s, 3, BUDGET).unwrap();
        assert_eq!(r.checked, 144);
    }

    #[test]
    fn greedy_matches_enumeration() {
        for (n, m) in [(1, 1), (1, 2), (2, 1), (2, 3), (3, 2), (4, 1)] {
            let mut s = seq(n, m);
            let all = enumerate_legal(&mut s, 3, BUDGET).unwrap();
            for (d, v) in &all {
                assert!(d.len() as u64 <= 3);
                assert_eq!(&decompose(&mut s, v).unwrap(), d);
            }
        }
    }

    proptest! {
        #[test]
        fn round_trip(n in 1u64..5, m in 1u64..5, z in 0u64..5_000_000) {
            let mut s = seq(n, m);
            let d = decompose(&mut s, &big(z)).unwrap();
            prop_assert!(d.is_legal());
            prop_assert_eq!(d.value(&s), big(z));
            let count = summand_count_cached(s.terms(), s.params(), &big(z));
            prop_assert_eq!(count as usize, d.len());
        }
    }
}
