//! Low-precision direct summation of Tornheim series, used as a cross-check of
//! the exact expansion.
//!
//! The square `n, m <= N` is summed term by term. The two strips where one index
//! exceeds `N` and the corner where both do are replaced by integrals from
//! `a = N + 1/2` (midpoint rule), which after the substitutions `x = a/t` and
//! `y = x·s` become integrals of smooth functions over `[0, 1]` evaluated by
//! Gauss–Legendre quadrature.

use crate::error::{Error, Result};

/// A double-precision estimate with an error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectEstimate {
    pub value: f64,
    pub error: f64,
}

/// Gauss–Legendre nodes and weights on `[0, 1]`.
pub(crate) fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push(((1.0 - x) / 2.0, w / 2.0));
    }
    out
}

fn quad(nodes: &[(f64, f64)], f: impl Fn(f64) -> f64) -> f64 {
    nodes.iter().map(|&(x, w)| w * f(x)).sum()
}

/// Direct evaluation of `T(r,q,p)` over the square `n, m <= n_max` plus
/// integral tails.
pub fn tornheim_direct(r: u32, q: u32, p: u32, n_max: usize) -> Result<DirectEstimate> {
    if r + q < 2 || r + p < 2 || r + q + p < 3 {
        return Err(Error::InvalidSymbol(format!("T({r},{q},{p}) diverges")));
    }
    if n_max < 100 {
        return Err(Error::Precondition("direct summation needs n_max >= 100".into()));
    }
    let n = n_max;
    let (r, q, p) = (r as i32, q as i32, p as i32);
    let inv = |base: usize, e: i32| (base as f64).powi(-e);
    let sum_pow: Vec<f64> = (0..=2 * n).map(|s| if s == 0 { 0.0 } else { inv(s, r) }).collect();
    let pow_q: Vec<f64> = (0..=n).map(|i| if i == 0 { 0.0 } else { inv(i, q) }).collect();
    let pow_p: Vec<f64> = (0..=n).map(|i| if i == 0 { 0.0 } else { inv(i, p) }).collect();

    let mut square = 0.0;
    for i in 1..=n {
        let row = &sum_pow[i + 1..=i + n];
        let mut lanes = [0.0f64; 4];
        let chunks = row.chunks_exact(4).zip(pow_p[1..].chunks_exact(4));
        for (s, m) in chunks {
            for l in 0..4 {
                lanes[l] += s[l] * m[l];
            }
        }
        let done = n - n % 4;
        let mut rest = 0.0;
        for j in done + 1..=n {
            rest += sum_pow[i + j] * pow_p[j];
        }
        square += pow_q[i] * (lanes.iter().sum::<f64>() + rest);
    }

    let nodes = gauss_legendre(24);
    let a = n as f64 + 0.5;
    let w = (r + q + p) as f64;
    // Σ_{m<=N} m^-p Σ_{x>N} (x+m)^-r x^-q  ≈  Σ_m m^-p a^{1-q-r} ∫ t^{q+r-2} (1 + (m/a) t)^-r dt
    let strip = |own: i32, other: &[f64]| -> f64 {
        let pre = a.powi(1 - own - r);
        (1..=n)
            .map(|m| {
                let c = m as f64 / a;
                other[m] * pre * quad(&nodes, |t| t.powi(own + r - 2) * (1.0 + c * t).powi(-r))
            })
            .sum()
    };
    let strip_n = strip(q, &pow_p);
    let strip_m = strip(p, &pow_q);
    let corner = a.powf(2.0 - w) / (w - 2.0)
        * (quad(&nodes, |v| v.powi(q + r - 2) * (1.0 + v).powi(-r))
            + quad(&nodes, |v| v.powi(p + r - 2) * (1.0 + v).powi(-r)));

    let value = square + strip_n + strip_m + corner;
    // The midpoint defect of a tail with logarithmic derivative at most w/a is
    // about w^2/(24 a^2) of the tail; we allow twice that. The square sum
    // carries the rounding of N^2 double additions.
    let tails = strip_n.abs() + strip_m.abs() + corner.abs();
    let error = (w * w + 4.0) * tails / (12.0 * a * a) + 1e-16 * (n as f64) * square.abs() + 1e-15;
    Ok(DirectEstimate { value, error })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrature_is_exact_for_polynomials() {
        let nodes = gauss_legendre(8);
        let integral = quad(&nodes, |x| x.powi(7) + 3.0 * x * x);
        assert!((integral - (1.0 / 8.0 + 1.0)).abs() < 1e-14);
    }

    #[test]
    fn tornheim_one_one_one_is_twice_zeta_three() {
        let est = tornheim_direct(1, 1, 1, 2000).unwrap();
        let z3 = 1.202_056_903_159_594_3;
        assert!((est.value - 2.0 * z3).abs() <= est.error + 1e-12, "{est:?}");
        assert!(est.error < 1e-8, "{est:?}");
    }

    #[test]
    fn rejects_divergent() {
        assert!(tornheim_direct(1, 0, 1, 1000).is_err());
    }
}
