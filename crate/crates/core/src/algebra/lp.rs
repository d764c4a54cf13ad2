//! Dense two-phase simplex over exact rationals, with Bland's rule.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// `maximize objective . x` subject to `A x <= b` and `x >= 0`.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    pub objective: Vec<BigRational>,
    pub constraints: Vec<(Vec<BigRational>, BigRational)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal {
        x: Vec<BigRational>,
        value: BigRational,
    },
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    basis: Vec<usize>,
    pivots: u64,
    budget: u64,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) -> Result<()> {
        self.pivots += 1;
        if self.pivots > self.budget {
            return Err(Error::resource("simplex pivots", self.pivots, self.budget));
        }
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        self.rhs[r] /= &p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][col].is_zero() {
                continue;
            }
            let f = self.rows[i][col].clone();
            for (v, pv) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        self.basis[r] = col;
        Ok(())
    }

    /// Runs simplex iterations for `maximize cost . x` over columns for which
    /// `allowed` holds.
    fn optimize(&mut self, cost: &[BigRational], allowed: &dyn Fn(usize) -> bool) -> Result<Step> {
        let ncols = cost.len();
        loop {
            // reduced cost c_j - c_B B^-1 A_j, entering column by Bland's rule
            let entering = (0..ncols).filter(|&j| allowed(j)).find(|&j| {
                let mut rc = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        rc -= &cost[b] * &self.rows[i][j];
                    }
                }
                rc.is_positive()
            });
            let Some(col) = entering else {
                return Ok(Step::Optimal);
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((row, _)) = leave else {
                return Ok(Step::Unbounded);
            };
            self.pivot(row, col)?;
        }
    }

    fn value_of(&self, col: usize) -> BigRational {
        self.basis
            .iter()
            .position(|&b| b == col)
            .map_or_else(BigRational::zero, |i| self.rhs[i].clone())
    }
}

/// Solves `lp` exactly. At most `pivot_budget` pivots are performed.
pub fn maximize(lp: &LinearProgram, pivot_budget: u64) -> Result<LpOutcome> {
    let n = lp.objective.len();
    let m = lp.constraints.len();
    for (a, _) in &lp.constraints {
        if a.len() != n {
            return Err(Error::Domain(
                "constraint width does not match objective".into(),
            ));
        }
    }
    let artificial_rows: Vec<usize> = (0..m)
        .filter(|&i| lp.constraints[i].1.is_negative())
        .collect();
    let n_art = artificial_rows.len();
    let ncols = n + m + n_art;
    let zero = BigRational::zero();
    let one = BigRational::from_integer(1.into());

    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for (i, (a, b)) in lp.constraints.iter().enumerate() {
        let mut row = vec![zero.clone(); ncols];
        let flip = b.is_negative();
        for (j, v) in a.iter().enumerate() {
            row[j] = if flip { -v.clone() } else { v.clone() };
        }
        row[n + i] = if flip { -one.clone() } else { one.clone() };
        if flip {
            let art = n + m + artificial_rows.iter().position(|&r| r == i).unwrap();
            row[art] = one.clone();
            basis.push(art);
            rhs.push(-b.clone());
        } else {
            basis.push(n + i);
            rhs.push(b.clone());
        }
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis,
        pivots: 0,
        budget: pivot_budget,
    };

    if n_art > 0 {
        let mut cost = vec![zero.clone(); ncols];
        for c in cost.iter_mut().skip(n + m) {
            *c = -one.clone();
        }
        match t.optimize(&cost, &|_| true)? {
            Step::Optimal => {}
            Step::Unbounded => unreachable!("phase one objective is bounded by zero"),
        }
        let infeasibility: BigRational = (n + m..ncols).map(|j| t.value_of(j)).sum();
        if infeasibility.is_positive() {
            return Ok(LpOutcome::Infeasible);
        }
        // drive zero-valued artificials out of the basis
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= n + m {
                match (0..n + m).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(col) => t.pivot(i, col)?,
                    None => {
                        // redundant constraint
                        t.rows.remove(i);
                        t.rhs.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    let mut cost = vec![zero.clone(); ncols];
    cost[..n].clone_from_slice(&lp.objective);
    match t.optimize(&cost, &|j| j < n + m)? {
        Step::Unbounded => Ok(LpOutcome::Unbounded),
        Step::Optimal => {
            let x: Vec<BigRational> = (0..n).map(|j| t.value_of(j)).collect();
            let value = x.iter().zip(&lp.objective).map(|(a, b)| a * b).sum();
            Ok(LpOutcome::Optimal { x, value })
        }
    }
}
