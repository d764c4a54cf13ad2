//! Fixed-precision binary floating point for the closed-form expressions.
//!
//! A thin wrapper over `dashu_float::FBig` that pins every intermediate
//! result to a caller-chosen number of bits. Exact inputs (integers and
//! rationals from `num`) are converted once at the boundary.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::round::mode::HalfAway;
use dashu_float::{Context, FBig};
use dashu_int::{IBig, UBig};
use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;

type Float = FBig<HalfAway, 2>;

#[derive(Clone, Debug)]
pub struct Real {
    v: Float,
    bits: usize,
}

fn to_ubig(x: &BigUint) -> UBig {
    UBig::from_le_bytes(&x.to_bytes_le())
}

fn to_ibig(x: &BigInt) -> IBig {
    let mag = IBig::from(to_ubig(x.magnitude()));
    if x.sign() == Sign::Minus {
        -mag
    } else {
        mag
    }
}

impl Real {
    fn wrap(v: Float, bits: usize) -> Self {
        Real {
            v: v.with_precision(bits).value(),
            bits,
        }
    }

    fn ctx(&self, other: &Real) -> (Context<HalfAway>, usize) {
        let bits = self.bits.max(other.bits);
        (Context::new(bits), bits)
    }

    /// Rounds to `bits` of precision.
    pub fn with_precision(self, bits: usize) -> Self {
        Self::wrap(self.v, bits)
    }

    pub fn precision(&self) -> usize {
        self.bits
    }

    pub fn from_u64(v: u64, bits: usize) -> Self {
        Self::wrap(Float::from(UBig::from(v)), bits)
    }

    pub fn from_i64(v: i64, bits: usize) -> Self {
        Self::wrap(Float::from(IBig::from(v)), bits)
    }

    pub fn from_biguint(v: &BigUint, bits: usize) -> Self {
        Self::wrap(Float::from(to_ubig(v)), bits)
    }

    pub fn from_bigint(v: &BigInt, bits: usize) -> Self {
        Self::wrap(Float::from(to_ibig(v)), bits)
    }

    /// Nearest representable value to an exact rational.
    pub fn from_ratio(v: &BigRational, bits: usize) -> Self {
        let num = Self::from_bigint(v.numer(), bits + 64);
        let den = Self::from_bigint(v.denom(), bits + 64);
        let q = num / den;
        Self::wrap(q.v, bits)
    }

    pub fn zero(bits: usize) -> Self {
        Self::from_u64(0, bits)
    }

    pub fn one(bits: usize) -> Self {
        Self::from_u64(1, bits)
    }

    pub fn sqrt(&self) -> Self {
        let ctx = Context::<HalfAway>::new(self.bits);
        Real {
            v: ctx.sqrt(self.v.repr()).value(),
            bits: self.bits,
        }
    }

    pub fn powi(&self, exp: u64) -> Self {
        let ctx = Context::<HalfAway>::new(self.bits);
        Real {
            v: ctx.powi(self.v.repr(), IBig::from(exp)).value(),
            bits: self.bits,
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn is_negative(&self) -> bool {
        self.v.repr().significand() < &IBig::ZERO
    }

    pub fn is_zero(&self) -> bool {
        self.v.repr().significand() == &IBig::ZERO
    }

    pub fn to_f64(&self) -> f64 {
        self.v.to_f64().value()
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let dec = self
            .v
            .clone()
            .with_base_and_precision::<10>(digits.max(1))
            .value();
        dec.to_string()
    }

    /// Decimal rendering with exactly `places` digits after the point.
    pub fn to_fixed(&self, places: usize) -> String {
        let whole_digits = {
            let f = self.to_f64().abs();
            if f >= 1.0 {
                f.log10().floor() as usize + 1
            } else {
                1
            }
        };
        let dec = self
            .v
            .clone()
            .with_base_and_precision::<10>(whole_digits + places + 4)
            .value();
        format!("{dec:.places$}")
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.partial_cmp(&other.v)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // roughly 0.30103 decimal digits per bit
        let digits = (self.bits * 30103 / 100_000).max(1);
        f.write_str(&self.to_decimal_string(digits))
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            v: -self.v,
            bits: self.bits,
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $ctx_method:ident) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                let (ctx, bits) = self.ctx(rhs);
                Real {
                    v: ctx.$ctx_method(self.v.repr(), rhs.v.repr()).value(),
                    bits,
                }
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

/// Parses a decimal literal such as `0.9`, `-2`, or `1.1e-3` into an
/// exact rational.
pub fn parse_decimal_ratio(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}0").parse().ok()?;
    let digits = digits / 10;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Some(r)
}
