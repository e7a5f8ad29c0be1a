//! Fixed-point ball arithmetic.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::symbols::Rational;

const LOG10_2: f64 = std::f64::consts::LOG10_2;

/// A real number known to lie in `[mid - rad, mid + rad] · 2^-bits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxReal {
    mid: BigInt,
    rad: BigUint,
    bits: u32,
}

/// `round(n / d)` for `d > 0`, ties away from zero.
pub(crate) fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_mod_floor(d);
    if (r << 1u32) >= *d {
        q + 1
    } else {
        q
    }
}

fn div_ceil_u(n: &BigUint, d: &BigUint) -> BigUint {
    let (q, r) = n.div_rem(d);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

/// Natural log of a positive big integer, accurate to double precision.
fn ln_big(x: &BigUint) -> f64 {
    let b = x.bits();
    if b <= 1000 {
        return x.to_f64().unwrap_or(f64::MAX).ln();
    }
    let shift = b - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::MAX);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

impl ApproxReal {
    pub fn new(mid: BigInt, rad: BigUint, bits: u32) -> Self {
        ApproxReal { mid, rad, bits }
    }

    pub fn zero(bits: u32) -> Self {
        ApproxReal::new(BigInt::zero(), BigUint::zero(), bits)
    }

    pub fn from_integer(n: impl Into<BigInt>, bits: u32) -> Self {
        ApproxReal::new(n.into() << bits, BigUint::zero(), bits)
    }

    /// Nearest fixed-point value to `r`, with a one-unit radius unless exact.
    pub fn from_rational(r: &Rational, bits: u32) -> Self {
        let num = r.numer() << bits;
        let exact = (&num % r.denom()).is_zero();
        let mid = div_round(&num, r.denom());
        let rad = if exact { BigUint::zero() } else { BigUint::one() };
        ApproxReal::new(mid, rad, bits)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn mid_raw(&self) -> &BigInt {
        &self.mid
    }

    pub fn rad_raw(&self) -> &BigUint {
        &self.rad
    }

    /// Midpoint as an exact rational.
    pub fn mid_rational(&self) -> Rational {
        Rational::new(self.mid.clone(), BigInt::one() << self.bits)
    }

    /// Radius as an exact rational.
    pub fn rad_rational(&self) -> Rational {
        Rational::new(BigInt::from(self.rad.clone()), BigInt::one() << self.bits)
    }

    pub fn to_f64(&self) -> f64 {
        let mag = self.mid.magnitude();
        let shift = mag.bits().saturating_sub(64);
        let top = (mag >> shift).to_f64().unwrap_or(0.0);
        let v = top * 2f64.powi(shift as i32 - self.bits as i32);
        if self.mid.is_negative() {
            -v
        } else {
            v
        }
    }

    /// `log10` of the radius; `-inf` for an exact value.
    pub fn rad_log10(&self) -> f64 {
        if self.rad.is_zero() {
            return f64::NEG_INFINITY;
        }
        ln_big(&self.rad) / std::f64::consts::LN_10 - self.bits as f64 * LOG10_2
    }

    /// `log10` of an upper bound on the absolute value; `-inf` for exact zero.
    pub fn abs_upper_log10(&self) -> f64 {
        let m = self.mid.magnitude() + &self.rad;
        if m.is_zero() {
            return f64::NEG_INFINITY;
        }
        ln_big(&m) / std::f64::consts::LN_10 - self.bits as f64 * LOG10_2
    }

    /// True if the ball certainly excludes zero.
    pub fn is_nonzero(&self) -> bool {
        self.mid.magnitude() > &self.rad
    }

    /// True if `x` lies within the ball widened by `tol`.
    pub fn contains_f64(&self, x: f64, tol: f64) -> bool {
        let rad = if self.rad.is_zero() {
            0.0
        } else {
            10f64.powf(self.rad_log10())
        };
        (self.to_f64() - x).abs() <= rad + tol
    }

    fn check(&self, other: &ApproxReal) {
        assert_eq!(self.bits, other.bits, "mixed fixed-point precisions");
    }

    pub fn add(&self, other: &ApproxReal) -> ApproxReal {
        self.check(other);
        ApproxReal::new(&self.mid + &other.mid, &self.rad + &other.rad, self.bits)
    }

    pub fn sub(&self, other: &ApproxReal) -> ApproxReal {
        self.check(other);
        ApproxReal::new(&self.mid - &other.mid, &self.rad + &other.rad, self.bits)
    }

    pub fn neg(&self) -> ApproxReal {
        ApproxReal::new(-&self.mid, self.rad.clone(), self.bits)
    }

    pub fn mul(&self, other: &ApproxReal) -> ApproxReal {
        self.check(other);
        let one = BigInt::one() << self.bits;
        let mid = div_round(&(&self.mid * &other.mid), &one);
        let spread = self.mid.magnitude() * &other.rad
            + other.mid.magnitude() * &self.rad
            + &self.rad * &other.rad;
        let rad = div_ceil_u(&spread, &(BigUint::one() << self.bits)) + 1u32;
        ApproxReal::new(mid, rad, self.bits)
    }

    /// Multiplication by an exact rational.
    pub fn scale(&self, r: &Rational) -> ApproxReal {
        let mid = div_round(&(&self.mid * r.numer()), r.denom());
        let rad = div_ceil_u(
            &(&self.rad * r.numer().magnitude()),
            r.denom().magnitude(),
        ) + 1u32;
        ApproxReal::new(mid, rad, self.bits)
    }

    /// Division; fails if the divisor's ball contains zero.
    pub fn div(&self, other: &ApproxReal) -> Result<ApproxReal> {
        self.check(other);
        if !other.is_nonzero() {
            return Err(Error::Precondition("division by a ball containing zero".into()));
        }
        let one = BigInt::one() << self.bits;
        let mid = div_round(&(&self.mid * &one), &other.mid);
        let b = other.mid.magnitude();
        let spread = (&self.rad * b + self.mid.magnitude() * &other.rad) << self.bits;
        let den = b * (b - &other.rad);
        let rad = div_ceil_u(&spread, &den) + 1u32;
        Ok(ApproxReal::new(mid, rad, self.bits))
    }

    /// Widens the radius by `extra` units of the last place.
    pub fn widen(&self, extra: &BigUint) -> ApproxReal {
        ApproxReal::new(self.mid.clone(), &self.rad + extra, self.bits)
    }

    /// Re-expresses the value at a lower precision.
    pub fn truncate_bits(&self, bits: u32) -> ApproxReal {
        match bits.cmp(&self.bits) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => ApproxReal::new(
                &self.mid << (bits - self.bits),
                &self.rad << (bits - self.bits),
                bits,
            ),
            Ordering::Less => {
                let d = BigInt::one() << (self.bits - bits);
                let mid = div_round(&self.mid, &d);
                let rad = div_ceil_u(&self.rad, d.magnitude()) + 1u32;
                ApproxReal::new(mid, rad, bits)
            }
        }
    }

    /// Decimal rendering of the midpoint with `digits` digits after the point.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10).pow(digits as u32);
        let v = div_round(&(&self.mid * &scale), &(BigInt::one() << self.bits));
        let neg = v.sign() == Sign::Minus;
        let s = v.magnitude().to_string();
        let s = format!("{:0>width$}", s, width = digits + 1);
        let (int, frac) = s.split_at(s.len() - digits);
        format!("{}{}.{}", if neg { "-" } else { "" }, int, frac)
    }
}

impl fmt::Display for ApproxReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.bits as f64 * LOG10_2) as usize).clamp(1, 40);
        write!(f, "{} ± 1e{:.1}", self.to_decimal(digits), self.rad_log10())
    }
}
