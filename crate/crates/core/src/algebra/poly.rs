use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::BinParams;

/// Polynomial in `y` with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPolynomial {
    #[serde(with = "crate::decimal::bigint_vec")]
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Trailing zero coefficients are dropped; the zero polynomial is rejected.
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::Domain("the zero polynomial has no degree".into()));
        }
        Ok(IntPolynomial { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().unwrap()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    /// Coefficient of `y^i`, zero outside the stored range.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial { coeffs: out }
    }

    pub fn eval(&self, y: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * y + c)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("y")?,
                _ => write!(f, "y^{i}")?,
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial `y^{2s} - (s+1) y^s + p` of the two-term
/// recurrence `a_x = (s+1) a_{x-s} - p a_{x-2s}`.
pub fn char_poly(params: BinParams) -> IntPolynomial {
    let s = params.s() as usize;
    let mut coeffs = vec![BigInt::zero(); 2 * s + 1];
    coeffs[0] = BigInt::from(params.p());
    coeffs[s] = -BigInt::from(params.s() + 1);
    coeffs[2 * s] = BigInt::one();
    IntPolynomial { coeffs }
}
