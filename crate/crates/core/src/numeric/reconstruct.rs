//! Rational reconstruction by continued fractions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::approx::ApproxReal;
use crate::error::{Error, Result};
use crate::symbols::Rational;

/// The unique rational with denominator at most `max_den` inside the ball `x`.
///
/// Requires the radius to be below `1 / (2 max_den^2)`, which makes the answer
/// unique and guarantees it is a convergent of the midpoint. Returns `Ok(None)`
/// when no such rational exists.
pub fn rational_reconstruct(x: &ApproxReal, max_den: &BigInt) -> Result<Option<Rational>> {
    if !max_den.is_positive() {
        return Err(Error::Precondition("denominator bound must be positive".into()));
    }
    let rad = x.rad_rational();
    let limit = Rational::new(BigInt::one(), max_den * max_den * 2);
    if rad >= limit {
        let den_log10 = max_den.to_string().len() as f64 - 1.0;
        return Err(Error::InsufficientPrecision {
            bound_log10: x.rad_log10(),
            den_log10,
        });
    }
    let target = x.mid_rational();
    // Convergents h_n / k_n of the exact midpoint.
    let (mut num, mut den) = (target.numer().clone(), target.denom().clone());
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    while !den.is_zero() {
        let (a, r) = num.div_mod_floor(&den);
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        if &k_next > max_den {
            break;
        }
        let cand = Rational::new(h_next.clone(), k_next.clone());
        if (&cand - &target).abs() <= rad {
            return Ok(Some(cand));
        }
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        num = std::mem::replace(&mut den, r);
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::frac;
    use num_bigint::BigUint;

    fn ball(value: Rational, rad_bits: u32) -> ApproxReal {
        let bits = 200;
        let exact = ApproxReal::from_rational(&value, bits);
        ApproxReal::new(
            exact.mid_raw() + BigInt::from(12345),
            BigUint::one() << (bits - rad_bits),
            bits,
        )
    }

    #[test]
    fn recovers_simple_fractions() {
        let bound = BigInt::from(1_000_000);
        assert_eq!(
            rational_reconstruct(&ball(frac(5, 2), 66), &bound).unwrap(),
            Some(frac(5, 2))
        );
        assert_eq!(
            rational_reconstruct(&ball(frac(1, 12), 66), &bound).unwrap(),
            Some(frac(1, 12))
        );
        assert_eq!(
            rational_reconstruct(&ball(frac(-691, 2730), 66), &bound).unwrap(),
            Some(frac(-691, 2730))
        );
        assert_eq!(
            rational_reconstruct(&ball(frac(0, 1), 66), &bound).unwrap(),
            Some(frac(0, 1))
        );
    }

    #[test]
    fn distinguishes_failure_modes() {
        let bound = BigInt::from(1_000_000);
        // Too wide a ball for the requested bound.
        assert!(matches!(
            rational_reconstruct(&ball(frac(5, 2), 20), &bound),
            Err(Error::InsufficientPrecision { .. })
        ));
        // A value whose denominator exceeds the bound.
        let wide = ball(frac(1, 1_000_003), 80);
        assert_eq!(rational_reconstruct(&wide, &bound).unwrap(), None);
    }
}
