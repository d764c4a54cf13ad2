use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The bin sizes `(n, m)` together with `s = n + m` and `p = n * m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct BinParams {
    n: u64,
    m: u64,
    s: u64,
    p: u64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    n: u64,
    m: u64,
}

impl TryFrom<RawParams> for BinParams {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        BinParams::new(raw.n, raw.m)
    }
}

impl From<BinParams> for RawParams {
    fn from(p: BinParams) -> Self {
        RawParams { n: p.n, m: p.m }
    }
}

impl BinParams {
    pub fn new(n: u64, m: u64) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidParams { n, m });
        }
        let s = n.checked_add(m).ok_or(Error::InvalidParams { n, m })?;
        let p = n.checked_mul(m).ok_or(Error::InvalidParams { n, m })?;
        Ok(BinParams { n, m, s, p })
    }

    /// Size of the first sub-bin of every bin-pair.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Size of the second sub-bin of every bin-pair.
    pub fn m(&self) -> u64 {
        self.m
    }

    /// Length of a bin-pair, `n + m`.
    pub fn s(&self) -> u64 {
        self.s
    }

    /// `n * m`.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Number of immediately preceding terms that a summand `a_j` excludes.
    ///
    /// With `i = j mod (n + m)`, this is `m + i` when `a_j` sits in the
    /// n-sub-bin and `i` when it sits in the m-sub-bin.
    pub fn f_of(&self, j: u64) -> u64 {
        let i = j % self.s;
        if i < self.n {
            self.m + i
        } else {
            i
        }
    }

    pub fn locate(&self, x: u64) -> BinLocation {
        let k = x / self.s;
        let i = x % self.s;
        if i < self.n {
            BinLocation {
                k,
                sub: SubBin::NBin,
                offset: i,
            }
        } else {
            BinLocation {
                k,
                sub: SubBin::MBin,
                offset: i - self.n,
            }
        }
    }

    /// Largest index that may follow `a_j` in a legal decomposition, or
    /// `None` when `a_j` must be the smallest summand.
    pub fn next_admissible(&self, j: u64) -> Option<u64> {
        j.checked_sub(self.f_of(j) + 1)
    }
}

impl std::fmt::Display for BinParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.n, self.m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubBin {
    NBin,
    MBin,
}

/// Position of a sequence index inside the bin structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinLocation {
    /// Index of the bin-pair `B_k`.
    pub k: u64,
    pub sub: SubBin,
    /// 0-based position inside the sub-bin.
    pub offset: u64,
}

impl std::fmt::Display for BinLocation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sub = match self.sub {
            SubBin::NBin => "n",
            SubBin::MBin => "m",
        };
        write!(f, "B{}.{}[{}]", self.k, sub, self.offset)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_zero_sizes() {
        assert_eq!(
            BinParams::new(0, 3),
            Err(Error::InvalidParams { n: 0, m: 3 })
        );
        assert!(BinParams::new(2, 0).is_err());
    }

    #[test]
    fn derived_scalars() {
        let bp = BinParams::new(2, 3).unwrap();
        assert_eq!((bp.s(), bp.p()), (5, 6));
    }

    #[test]
    fn f_for_two_three() {
        let bp = BinParams::new(2, 3).unwrap();
        let f: Vec<u64> = (0..10).map(|j| bp.f_of(j)).collect();
        assert_eq!(f, vec![3, 4, 2, 3, 4, 3, 4, 2, 3, 4]);
        assert_eq!(bp.f_of(44), 4);
    }

    #[test]
    fn f_for_fibonacci() {
        let bp = BinParams::new(1, 1).unwrap();
        assert_eq!(bp.f_of(0), 1);
        assert_eq!(bp.f_of(1), 1);
    }

    #[test]
    fn locate_examples() {
        let bp = BinParams::new(2, 3).unwrap();
        assert_eq!(
            bp.locate(44),
            BinLocation {
                k: 8,
                sub: SubBin::MBin,
                offset: 2
            }
        );
        assert_eq!(
            bp.locate(0),
            BinLocation {
                k: 0,
                sub: SubBin::NBin,
                offset: 0
            }
        );
        let bp = BinParams::new(3, 2).unwrap();
        assert_eq!(
            bp.locate(7),
            BinLocation {
                k: 1,
                sub: SubBin::NBin,
                offset: 2
            }
        );
    }

    #[test]
    fn exclusion_window_at_start() {
        let bp = BinParams::new(2, 3).unwrap();
        assert_eq!(bp.next_admissible(44), Some(39));
        assert_eq!(bp.next_admissible(3), None);
    }

    #[test]
    fn serde_validates() {
        assert!(serde_json::from_str::<BinParams>(r#"{"n":0,"m":1}"#).is_err());
        let bp: BinParams = serde_json::from_str(r#"{"n":4,"m":1}"#).unwrap();
        assert_eq!(bp.s(), 5);
    }

    proptest! {
        #[test]
        fn f_is_periodic(n in 1u64..8, m in 1u64..8, j in 0u64..80) {
            let bp = BinParams::new(n, m).unwrap();
            prop_assert_eq!(bp.f_of(j), bp.f_of(j + bp.s()));
            prop_assert!(bp.f_of(j) < bp.s());
        }

        #[test]
        fn locate_round_trips(n in 1u64..8, m in 1u64..8, x in 0u64..10_000) {
            let bp = BinParams::new(n, m).unwrap();
            let loc = bp.locate(x);
            let base = loc.k * bp.s();
            let back = match loc.sub {
                SubBin::NBin => { prop_assert!(loc.offset < n); base + loc.offset }
                SubBin::MBin => { prop_assert!(loc.offset < m); base + n + loc.offset }
            };
            prop_assert_eq!(back, x);
        }
    }
}
