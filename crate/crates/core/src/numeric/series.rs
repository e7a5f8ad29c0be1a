//! Euler–Maclaurin evaluation of every single and double zeta value of one weight.
//!
//! With a cutoff `M`, write `h(σ) = M^{σ-1} ζ_H(σ, M)` for the normalised
//! Hurwitz tail, whose Euler–Maclaurin series is
//! `1/(σ-1) + 1/(2M) + Σ_i B_2i/(2i)! (σ)_{2i-1} M^{-2i}` with remainder bounded
//! by the first omitted term. Then
//!
//! ```text
//! ζ(s)   = H^{(s)}_{M-1} + h(s) M^{1-s}
//! ζ(q,p) = Σ_{m<n<M} m^-p n^-q + H^{(p)}_{M-1} h(q) M^{1-q}
//!        + M^{2-k} [h(k-1)/(q-1) + Σ_i t_i(q) h(k+2i-1)] - h(k) M^{1-k}/2
//! ```
//!
//! where the bracket sums the Euler–Maclaurin expansion of the inner tail
//! `Σ_{n>m} n^-q` against `m^-p` for `m >= M`, and `t_i(q)` are the same
//! correction coefficients as for `h(q)`.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use super::approx::{div_round, ApproxReal};
use crate::error::{Error, Result};
use crate::relations::bernoulli;
use crate::symbols::Rational;

/// Every double zeta `ζ(q, k-q)` and single zeta `ζ(s)`, `s <= k`, at one precision.
#[derive(Debug, Clone)]
pub struct WeightTable {
    pub k: u32,
    pub bits: u32,
    dz: Vec<ApproxReal>,
    zeta: Vec<ApproxReal>,
}

impl WeightTable {
    /// `ζ(q, k-q)` for `2 <= q <= k-1`.
    pub fn dz(&self, q: u32) -> Option<&ApproxReal> {
        if q < 2 || q + 1 > self.k {
            return None;
        }
        self.dz.get(q as usize)
    }

    /// `ζ(s)` for `2 <= s <= k`.
    pub fn zeta(&self, s: u32) -> Option<&ApproxReal> {
        if s < 2 || s > self.k {
            return None;
        }
        self.zeta.get(s as usize)
    }
}

/// Correction terms `t_i(σ) = B_2i/(2i)! (σ)_{2i-1} M^{-2i}` in fixed point.
struct Corrections {
    terms: Vec<ApproxReal>,
    /// Bound on the first omitted term.
    tail: BigUint,
}

struct Context {
    bits: u32,
    m: u64,
    /// `ρ_i = B_{2i+2} / (B_2i (2i+1)(2i+2))` in fixed point, radius one unit.
    ratios: Vec<BigInt>,
    h: HashMap<u32, ApproxReal>,
    corrections: HashMap<u32, Corrections>,
}

impl Context {
    fn new(bits: u32, m: u64) -> Self {
        Context {
            bits,
            m,
            ratios: Vec::new(),
            h: HashMap::new(),
            corrections: HashMap::new(),
        }
    }

    fn ratio(&mut self, i: usize) -> BigInt {
        while self.ratios.len() < i {
            let j = self.ratios.len() + 1;
            let r = bernoulli(2 * j + 2)
                / (bernoulli(2 * j) * Rational::from_integer(BigInt::from((2 * j + 1) * (2 * j + 2))));
            let fixed = div_round(&(r.numer() << self.bits), r.denom());
            self.ratios.push(fixed);
        }
        self.ratios[i - 1].clone()
    }

    fn corrections(&mut self, sigma: u32) -> Result<&Corrections> {
        if !self.corrections.contains_key(&sigma) {
            let c = self.compute_corrections(sigma)?;
            self.corrections.insert(sigma, c);
        }
        Ok(&self.corrections[&sigma])
    }

    fn compute_corrections(&mut self, sigma: u32) -> Result<Corrections> {
        let bits = self.bits;
        let m2 = BigInt::from(self.m) * self.m;
        let one = BigInt::one() << bits;
        // t_1 = σ / (12 M^2), one rounding.
        let mut t = div_round(&(&one * sigma), &(&m2 * 12));
        let mut err: u64 = 1;
        let mut terms = Vec::new();
        let mut i: u64 = 1;
        loop {
            if t.magnitude().bits() <= 2 {
                let tail = t.magnitude() + BigUint::from(err);
                return Ok(Corrections { terms, tail });
            }
            terms.push(ApproxReal::new(t.clone(), BigUint::from(err), bits));
            // t_{i+1} = t_i ρ_i (σ+2i-1)(σ+2i) / M^2
            let f_num = BigInt::from((sigma as u64 + 2 * i - 1) * (sigma as u64 + 2 * i));
            let rho = self.ratio(i as usize);
            // |B_{2i+2}| / |B_2i| < (2i+1)(2i+2)/(4π^2), so |ρ_i| < 1/39.
            let growth = f_num.to_f64().unwrap_or(f64::MAX) / (39.0 * m2.to_f64().unwrap_or(f64::MAX));
            if growth.is_nan() || growth >= 0.5 {
                return Err(Error::Precondition(format!(
                    "Euler-Maclaurin cutoff {} too small for exponent {sigma}",
                    self.m
                )));
            }
            let prod = div_round(&(&t * &rho), &one);
            t = div_round(&(prod * &f_num), &m2);
            // |ρ| f < 1/2, so the inherited error shrinks; each rounding adds at most
            // one unit before the factor f and one after it.
            let f_ceil = (f_num.to_f64().unwrap_or(f64::MAX) / m2.to_f64().unwrap_or(f64::MAX))
                .ceil() as u64;
            err = err + 2 * f_ceil + 2;
            i += 1;
        }
    }

    /// `h(σ) = M^{σ-1} ζ_H(σ, M)`.
    fn h(&mut self, sigma: u32) -> Result<ApproxReal> {
        if let Some(v) = self.h.get(&sigma) {
            return Ok(v.clone());
        }
        let bits = self.bits;
        let mut acc = ApproxReal::from_rational(
            &(Rational::new(BigInt::one(), BigInt::from(sigma - 1))
                + Rational::new(BigInt::one(), BigInt::from(2 * self.m))),
            bits,
        );
        let corr = self.corrections(sigma)?;
        for t in &corr.terms {
            acc = acc.add(t);
        }
        let acc = acc.widen(&corr.tail);
        self.h.insert(sigma, acc.clone());
        Ok(acc)
    }
}

fn inv_power(m: u64, e: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(m).pow(e))
}

/// Euler–Maclaurin cutoff used for weight `k` at `bits` of precision.
pub fn cutoff(k: u32, bits: u32) -> u64 {
    bits as u64 / 2 + 2 * k as u64 + 16
}

/// Evaluates all single and double zeta values of weight `k`.
pub fn weight_table(k: u32, bits: u32) -> Result<WeightTable> {
    if k < 2 {
        return Err(Error::Precondition(format!("weight {k} has no convergent values")));
    }
    let m = cutoff(k, bits);
    let mu = m as usize;
    let one = BigInt::one() << bits;
    let mut ctx = Context::new(bits, m);

    // pow[s][n] = floor(2^bits / n^s), error below one unit.
    let mut pow: Vec<Vec<BigInt>> = vec![Vec::new(); k as usize + 1];
    for row in pow.iter_mut().skip(1) {
        row.reserve(mu);
        row.push(BigInt::zero());
    }
    for n in 1..mu {
        let mut p = BigInt::from(n);
        for row in pow.iter_mut().skip(1) {
            row.push(&one / &p);
            p *= n;
        }
    }

    // Single zetas.
    let mut zeta = vec![ApproxReal::zero(bits); k as usize + 1];
    for s in 2..=k {
        let head: BigInt = pow[s as usize][1..].iter().sum();
        let head = ApproxReal::new(head, BigUint::from(m), bits);
        let tail = ctx.h(s)?.scale(&inv_power(m, s - 1));
        zeta[s as usize] = head.add(&tail);
    }

    // Double zetas.
    let mut dz = vec![ApproxReal::zero(bits); k as usize];
    for p in 1..k.saturating_sub(1) {
        let q = k - p;
        let pw_p = &pow[p as usize];
        let pw_q = &pow[q as usize];
        let mut harmonic = BigInt::zero();
        let mut acc = BigInt::zero();
        for n in 1..mu {
            // acc += n^-q H^{(p)}_{n-1}; harmonic becomes H^{(p)}_n.
            acc += &pw_q[n] * &harmonic;
            harmonic += &pw_p[n];
        }
        let head = ApproxReal::new(div_round(&acc, &one), BigUint::from(22 * m + 2), bits);
        let h_full = ApproxReal::new(harmonic, BigUint::from(m), bits);
        let cross = h_full.mul(&ctx.h(q)?).scale(&inv_power(m, q - 1));

        let mut bracket = ctx.h(k - 1)?.scale(&Rational::new(BigInt::one(), BigInt::from(q - 1)));
        let corr_terms: Vec<ApproxReal> = ctx.corrections(q)?.terms.clone();
        let corr_tail = ctx.corrections(q)?.tail.clone();
        for (idx, t) in corr_terms.iter().enumerate() {
            let sigma = k + 2 * (idx as u32 + 1) - 1;
            bracket = bracket.add(&t.mul(&ctx.h(sigma)?));
        }
        // h(σ) <= 2, so the omitted terms contribute at most twice the first one.
        let bracket = bracket.widen(&(corr_tail * 2u32));
        let far = bracket
            .scale(&inv_power(m, k - 2))
            .sub(&ctx.h(k)?.scale(&Rational::new(
                BigInt::one(),
                BigInt::from(2) * BigInt::from(m).pow(k - 1),
            )));
        dz[q as usize] = head.add(&cross).add(&far);
    }

    Ok(WeightTable { k, bits, dz, zeta })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_weight_values() {
        let t = weight_table(4, 200).unwrap();
        let z2 = t.zeta(2).unwrap();
        assert!(z2.contains_f64(std::f64::consts::PI.powi(2) / 6.0, 1e-15));
        assert!(z2.rad_log10() < -45.0);
        let z4 = t.zeta(4).unwrap();
        assert!(z4.contains_f64(std::f64::consts::PI.powi(4) / 90.0, 1e-15));
        let z31 = t.dz(3).unwrap();
        assert!(z31.contains_f64(std::f64::consts::PI.powi(4) / 360.0, 1e-15));
        let z22 = t.dz(2).unwrap();
        assert!(z22.contains_f64(std::f64::consts::PI.powi(4) / 120.0, 1e-15));
    }

    #[test]
    fn euler_identity_at_weight_three() {
        let t = weight_table(3, 300).unwrap();
        let diff = t.dz(2).unwrap().sub(t.zeta(3).unwrap());
        assert!(diff.abs_upper_log10() < -80.0, "{diff}");
    }

    #[test]
    fn out_of_range_lookups() {
        let t = weight_table(6, 100).unwrap();
        assert!(t.dz(1).is_none());
        assert!(t.dz(6).is_none());
        assert!(t.zeta(7).is_none());
    }
}
