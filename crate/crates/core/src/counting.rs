//! Exact distribution of the number of summands.
//!
//! `p[k][c]` counts the integers in `[0, a_{sk})` whose legal decomposition
//! has exactly `c` summands. Two independent constructions are provided: the
//! direct three-term recurrence over `(k, c)`, and a generic inversion of
//! the bivariate series `1 / (1 - x - s x y + p x^2 y^2)`.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::config::Budgets;
use crate::error::{Error, Result};
use crate::params::BinParams;
use crate::real::Real;

/// Triangular table `p[k][c]` for `0 <= c <= k <= k_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    params: BinParams,
    rows: Vec<Vec<BigUint>>,
}

fn check_cells(k_max: u64, limit: u64) -> Result<()> {
    let cells = (k_max as u128 + 1) * (k_max as u128 + 2) / 2;
    if cells > limit as u128 {
        return Err(Error::resource("count table cells", cells, limit));
    }
    Ok(())
}

/// Builds the table from the recurrence
/// `p[k][c] = p[k-1][c] + s p[k-1][c-1] - p p[k-2][c-2]` for `k >= 2`.
pub fn build_table(params: BinParams, k_max: u64) -> Result<CountTable> {
    build_table_limited(params, k_max, Budgets::default().table_cells)
}

pub fn build_table_limited(params: BinParams, k_max: u64, cell_limit: u64) -> Result<CountTable> {
    check_cells(k_max, cell_limit)?;
    let s = BigUint::from(params.s());
    let p = BigUint::from(params.p());
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(k_max as usize + 1);
    rows.push(vec![BigUint::one()]);
    if k_max >= 1 {
        rows.push(vec![BigUint::one(), s.clone()]);
    }
    for k in 2..=k_max as usize {
        let row: Vec<BigUint> = (0..=k)
            .map(|c| {
                let mut v = rows[k - 1].get(c).cloned().unwrap_or_default();
                if c >= 1 {
                    v += &s * &rows[k - 1][c - 1];
                }
                if c >= 2 {
                    if let Some(prev) = rows[k - 2].get(c - 2) {
                        v -= &p * prev;
                    }
                }
                v
            })
            .collect();
        rows.push(row);
    }
    Ok(CountTable { params, rows })
}

/// Polynomial in `y` with integer coefficients, lowest degree first.
type YPoly = Vec<BigInt>;

fn poly_mul(a: &YPoly, b: &YPoly) -> YPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_assign(acc: &mut YPoly, rhs: &YPoly) {
    if acc.len() < rhs.len() {
        acc.resize(rhs.len(), BigInt::zero());
    }
    for (a, b) in acc.iter_mut().zip(rhs) {
        *a += b;
    }
}

/// Coefficients of `x^0 ..= x^k_max` in `1 / D(x, y)`, where `den[i]` is the
/// coefficient of `x^i` in `D` and `den[0]` must be the constant `1`.
fn invert_x_series(den: &[YPoly], k_max: usize) -> Result<Vec<YPoly>> {
    if den.first().map(|d0| d0.as_slice()) != Some(&[BigInt::one()][..]) {
        return Err(Error::Domain("series constant term must be 1".into()));
    }
    let mut out: Vec<YPoly> = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let mut acc: YPoly = if k == 0 {
            vec![BigInt::one()]
        } else {
            Vec::new()
        };
        for (i, d) in den.iter().enumerate().skip(1) {
            if i > k {
                break;
            }
            let neg: YPoly = poly_mul(d, &out[k - i]).into_iter().map(|c| -c).collect();
            poly_add_assign(&mut acc, &neg);
        }
        while acc.last().is_some_and(|c| c.is_zero()) {
            acc.pop();
        }
        out.push(acc);
    }
    Ok(out)
}

/// Builds the table by expanding the generating function
/// `1 / (1 - x - s x y + p x^2 y^2)` as a power series in `x`.
pub fn expand_f(params: BinParams, k_max: u64) -> Result<CountTable> {
    expand_f_limited(params, k_max, Budgets::default().table_cells)
}

pub fn expand_f_limited(params: BinParams, k_max: u64, cell_limit: u64) -> Result<CountTable> {
    check_cells(k_max, cell_limit)?;
    let s = BigInt::from(params.s());
    let p = BigInt::from(params.p());
    let den: Vec<YPoly> = vec![
        vec![BigInt::one()],
        vec![BigInt::from(-1), -s],
        vec![BigInt::zero(), BigInt::zero(), p],
    ];
    let series = invert_x_series(&den, k_max as usize)?;
    let mut rows = Vec::with_capacity(series.len());
    for (k, poly) in series.into_iter().enumerate() {
        let mut row = vec![BigUint::zero(); k + 1];
        for (c, coef) in poly.into_iter().enumerate() {
            if c > k {
                if !coef.is_zero() {
                    return Err(Error::Domain(format!(
                        "nonzero coefficient beyond c = k at k={k}"
                    )));
                }
                continue;
            }
            row[c] = coef
                .to_biguint()
                .ok_or_else(|| Error::Domain(format!("negative count at k={k}, c={c}")))?;
        }
        rows.push(row);
    }
    Ok(CountTable { params, rows })
}

impl CountTable {
    pub fn params(&self) -> BinParams {
        self.params
    }

    pub fn k_max(&self) -> u64 {
        self.rows.len() as u64 - 1
    }

    pub fn row(&self, k: u64) -> Option<&[BigUint]> {
        self.rows.get(k as usize).map(|r| r.as_slice())
    }

    /// `p[k][c]`, or zero outside the table's triangle.
    pub fn get(&self, k: u64, c: u64) -> BigUint {
        self.rows
            .get(k as usize)
            .and_then(|r| r.get(c as usize))
            .cloned()
            .unwrap_or_default()
    }

    pub fn row_sum(&self, k: u64) -> Option<BigUint> {
        self.row(k).map(|r| r.iter().sum())
    }

    /// `g_k(y) = sum_c p[k][c] y^c`, evaluated exactly.
    pub fn eval_row(&self, k: u64, y: &BigRational) -> Option<BigRational> {
        let row = self.row(k)?;
        let mut acc = BigRational::zero();
        for coef in row.iter().rev() {
            acc = acc * y + BigRational::from_integer(BigInt::from(coef.clone()));
        }
        Some(acc)
    }

    /// Power-sum moments of row `k`, summed directly over the table.
    pub fn moments_direct(&self, k: u64) -> Option<MomentSeries> {
        let row = self.row(k)?;
        let mut m = MomentSeries::zero(k);
        for (c, v) in row.iter().enumerate() {
            let c = BigInt::from(c);
            let v = BigInt::from(v.clone());
            m.s += &v;
            m.m += &c * &v;
            m.q += &c * &c * &v;
            m.t += &c * &c * &c * &v;
        }
        Some(m)
    }

    /// `k,c,p` rows with a header line; counts are decimal strings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,c,p\n");
        for (k, row) in self.rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                let _ = writeln!(out, "{k},{c},{v}");
            }
        }
        out
    }
}

/// Power sums `sum_c c^r p[k][c]` for `r = 0..=3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentSeries {
    pub k: u64,
    #[serde(with = "crate::decimal::bigint")]
    pub s: BigInt,
    #[serde(with = "crate::decimal::bigint")]
    pub m: BigInt,
    #[serde(with = "crate::decimal::bigint")]
    pub q: BigInt,
    #[serde(with = "crate::decimal::bigint")]
    pub t: BigInt,
}

impl MomentSeries {
    fn zero(k: u64) -> Self {
        MomentSeries {
            k,
            s: BigInt::zero(),
            m: BigInt::zero(),
            q: BigInt::zero(),
            t: BigInt::zero(),
        }
    }

    fn as_array(&self) -> [&BigInt; 4] {
        [&self.s, &self.m, &self.q, &self.t]
    }
}

/// Streams [`MomentSeries`] for `k = 0, 1, 2, ...` in O(1) big-integer
/// operations per step.
///
/// Multiplying the table recurrence by `c^r` and summing over `c` gives, with
/// `m_k^(r) = sum_c c^r p[k][c]`,
///
/// ```text
/// m_k^(r) = m_{k-1}^(r) + s sum_j C(r,j) m_{k-1}^(j) - p sum_j C(r,j) 2^(r-j) m_{k-2}^(j)
/// ```
///
/// which holds from `k = 1` on when the moments at `k = -1` are read as zero.
#[derive(Debug, Clone)]
pub struct MomentIter {
    s: BigInt,
    p: BigInt,
    k: u64,
    prev: Option<MomentSeries>,
    prev2: Option<MomentSeries>,
}

const BINOM: [[u32; 4]; 4] = [[1, 0, 0, 0], [1, 1, 0, 0], [1, 2, 1, 0], [1, 3, 3, 1]];

impl MomentIter {
    pub fn new(params: BinParams) -> Self {
        MomentIter {
            s: BigInt::from(params.s()),
            p: BigInt::from(params.p()),
            k: 0,
            prev: None,
            prev2: None,
        }
    }
}

impl Iterator for MomentIter {
    type Item = MomentSeries;

    fn next(&mut self) -> Option<MomentSeries> {
        let k = self.k;
        let next = match &self.prev {
            None => MomentSeries {
                k: 0,
                s: BigInt::one(),
                ..MomentSeries::zero(0)
            },
            Some(prev) => {
                let a = prev.as_array();
                let b = self.prev2.as_ref().map(|m| m.as_array());
                let mut out: [BigInt; 4] = Default::default();
                for (r, slot) in out.iter_mut().enumerate() {
                    let mut v = a[r].clone();
                    for j in 0..=r {
                        let binom = BINOM[r][j];
                        v += &self.s * binom * a[j];
                        if let Some(b) = &b {
                            v -= &self.p * (binom << (r - j)) * b[j];
                        }
                    }
                    *slot = v;
                }
                let [s, m, q, t] = out;
                MomentSeries { k, s, m, q, t }
            }
        };
        self.prev2 = self.prev.take();
        self.prev = Some(next.clone());
        self.k += 1;
        Some(next)
    }
}

/// Moments for every `k` in `0..=k_max`.
pub fn moments(params: BinParams, k_max: u64) -> Vec<MomentSeries> {
    MomentIter::new(params).take(k_max as usize + 1).collect()
}

/// Moments at a single `k`, keeping only two rows in memory.
pub fn moments_at(params: BinParams, k: u64) -> MomentSeries {
    MomentIter::new(params)
        .nth(k as usize)
        .expect("moment iterator is unbounded")
}

/// Closed form of `g_k(y) = sum_c p[k][c] y^c`:
///
/// ```text
/// g_k(y) = ((A + sqrt(D)) / 2)^(k+1) - ((A - sqrt(D)) / 2)^(k+1)) / sqrt(D)
/// A = 1 + s y,   D = A^2 - 4 p y^2
/// ```
///
/// `(A ± sqrt(D)) / 2` are the reciprocals of the two roots in `x` of the
/// generating function's denominator. Evaluated with `bits` of precision
/// plus guard bits.
pub fn g_closed_form(params: BinParams, k: u64, y: &BigRational, bits: usize) -> Result<Real> {
    if !y.is_positive() {
        return Err(Error::Domain(format!("y must be positive, got {y}")));
    }
    let s = BigRational::from_integer(params.s().into());
    let p = BigRational::from_integer(params.p().into());
    let a = BigRational::one() + &s * y;
    let disc = &a * &a - BigRational::from_integer(4.into()) * p * y * y;
    assert!(
        disc.is_positive(),
        "discriminant must be positive for y > 0"
    );
    let work = bits + 64;
    let root = Real::from_ratio(&disc, work).sqrt();
    let a = Real::from_ratio(&a, work);
    let two = Real::from_u64(2, work);
    let big = (&a + &root) / &two;
    let small = (&a - &root) / &two;
    let g = (big.powi(k + 1) - small.powi(k + 1)) / root;
    Ok(g.with_precision(bits))
}
