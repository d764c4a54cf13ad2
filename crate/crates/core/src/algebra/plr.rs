//! Degree-bounded check of whether a polynomial has a multiple of
//! positive-linear-recurrence shape `y^d - sum c_i y^i` with every `c_i >= 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lp::{maximize, LinearProgram, LpOutcome};
use super::poly::IntPolynomial;
use crate::error::{Error, Result};

pub const DEFAULT_DEGREE_BOUND: usize = 30;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PlrVerdict {
    /// No real multiplier makes the product PLR-shaped at this degree.
    Infeasible,
    /// A real multiplier exists. `strict` is true when every non-leading
    /// coefficient of the product is negative; otherwise only boundary
    /// solutions were found and the degree is inconclusive.
    FeasibleReal {
        #[serde(with = "crate::decimal::ratio_vec")]
        multiplier: Vec<BigRational>,
        #[serde(with = "crate::decimal::ratio_vec")]
        product: Vec<BigRational>,
        #[serde(with = "crate::decimal::ratio")]
        margin: BigRational,
        strict: bool,
    },
}

impl PlrVerdict {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, PlrVerdict::Infeasible)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeVerdict {
    pub degree: usize,
    #[serde(flatten)]
    pub verdict: PlrVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlrReport {
    pub polynomial: String,
    pub coefficients: IntPolynomial,
    pub degree_bound: usize,
    pub verdicts: Vec<DegreeVerdict>,
}

impl PlrReport {
    pub fn all_infeasible(&self) -> bool {
        self.verdicts.iter().all(|v| v.verdict.is_infeasible())
    }
}

/// Coefficients of `q . poly` where `q` is given lowest degree first.
pub fn multiply_rational(q: &[BigRational], poly: &IntPolynomial) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); q.len() + poly.degree()];
    for (j, qj) in q.iter().enumerate() {
        for (i, c) in poly.coeffs().iter().enumerate() {
            out[i + j] += qj * BigRational::from_integer(c.clone());
        }
    }
    out
}

/// Solves the feasibility problem at a single target degree `d`.
///
/// Variables are the free multiplier coefficients `q_0 .. q_{r-1}` (split into
/// positive and negative parts, with `q_r = 1`) and a margin `t` in `[0, 1]`.
/// Each non-leading product coefficient must be at most `-t`; `t` is maximised.
pub fn plr_at_degree(poly: &IntPolynomial, d: usize, pivot_budget: u64) -> Result<PlrVerdict> {
    let deg = poly.degree();
    if !poly.is_monic() {
        return Err(Error::Domain("polynomial must be monic".into()));
    }
    if d < deg {
        return Err(Error::Domain(format!(
            "target degree {d} is below degree {deg}"
        )));
    }
    let r = d - deg;
    let nvars = 2 * r + 1;
    let t_col = 2 * r;
    let rat = |v: BigInt| BigRational::from_integer(v);
    let one = BigRational::one();

    let mut objective = vec![BigRational::zero(); nvars];
    objective[t_col] = one.clone();
    let mut constraints = Vec::with_capacity(d + 1);
    for i in 0..d {
        let mut row = vec![BigRational::zero(); nvars];
        for j in 0..r {
            if i >= j && i - j <= deg {
                let c = rat(poly.coeff(i - j));
                row[2 * j] = c.clone();
                row[2 * j + 1] = -c;
            }
        }
        row[t_col] = one.clone();
        let fixed = if i >= r {
            poly.coeff(i - r)
        } else {
            BigInt::zero()
        };
        constraints.push((row, rat(-fixed)));
    }
    let mut cap = vec![BigRational::zero(); nvars];
    cap[t_col] = one.clone();
    constraints.push((cap, one.clone()));

    let lp = LinearProgram {
        objective,
        constraints,
    };
    match maximize(&lp, pivot_budget)? {
        LpOutcome::Infeasible => Ok(PlrVerdict::Infeasible),
        LpOutcome::Unbounded => unreachable!("margin is capped at one"),
        LpOutcome::Optimal { x, value } => {
            let mut multiplier: Vec<BigRational> =
                (0..r).map(|j| &x[2 * j] - &x[2 * j + 1]).collect();
            multiplier.push(one);
            let product = multiply_rational(&multiplier, poly);
            Ok(PlrVerdict::FeasibleReal {
                multiplier,
                product,
                strict: value.is_positive(),
                margin: value,
            })
        }
    }
}

/// Runs [`plr_at_degree`] for every degree from `deg(poly)` to `degree_bound`.
/// The pivot budget applies to each degree separately.
pub fn plr_shape_feasible(
    poly: &IntPolynomial,
    degree_bound: usize,
    pivot_budget: u64,
) -> Result<PlrReport> {
    if degree_bound < poly.degree() {
        return Err(Error::Domain(format!(
            "degree bound {degree_bound} is below degree {}",
            poly.degree()
        )));
    }
    if !poly.is_monic() {
        return Err(Error::Domain("polynomial must be monic".into()));
    }
    let verdicts = (poly.degree()..=degree_bound)
        .into_par_iter()
        .map(|degree| {
            plr_at_degree(poly, degree, pivot_budget)
                .map(|verdict| DegreeVerdict { degree, verdict })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PlrReport {
        polynomial: poly.to_string(),
        coefficients: poly.clone(),
        degree_bound,
        verdicts,
    })
}
