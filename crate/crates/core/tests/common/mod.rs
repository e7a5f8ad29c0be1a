//! Independent reference computations shared by the integration tests and the
//! acceptance harness. Nothing here calls into the library's numerics or
//! combinatorics.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A double-precision reference value with an error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Reference {
    pub value: f64,
    pub error: f64,
}

/// Cutoff for the brute-force partial sums.
pub const N: usize = 20_000;

/// Composite Simpson rule on `[0, 1]` with `n` (even) panels.
fn simpson(n: usize, f: impl Fn(f64) -> f64) -> f64 {
    let h = 1.0 / n as f64;
    let mut s = f(0.0) + f(1.0);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(i as f64 * h);
    }
    s * h / 3.0
}

/// `ζ(q, p) = Σ_{n>m>0} n^-q m^-p` by summing `n <= N` directly and replacing
/// the rest by midpoint integrals from `a = N + 1/2`.
pub fn double_zeta(q: u32, p: u32) -> Reference {
    let (qi, pi) = (q as i32, p as i32);
    let mut harmonic = 0.0; // Σ_{m<n} m^-p
    let mut head = 0.0;
    for n in 1..=N {
        let x = n as f64;
        head += harmonic * x.powi(-qi);
        harmonic += x.powi(-pi);
    }
    let a = N as f64 + 0.5;
    // n > N, m <= N.
    let strip = harmonic * a.powi(1 - qi) / (q as f64 - 1.0);
    // n > m > N: Σ_m m^-p (m+1/2)^{1-q}/(q-1), then x = a/t.
    let corner = a.powi(1 - pi) / (q as f64 - 1.0)
        * simpson(2000, |t| t.powi(pi + qi - 3) * (a + t / 2.0).powi(1 - qi));
    let w = (q + p) as f64;
    let tails = strip.abs() + corner.abs();
    Reference {
        value: head + strip + corner,
        error: (w * w + 4.0) * tails / (12.0 * a * a) + 2.0 * N as f64 * f64::EPSILON * head,
    }
}

/// `T(r, q, p) = Σ_{n,m>0} (n+m)^-r n^-q m^-p` over the square `n, m <= N`
/// plus strip and corner integrals.
pub fn tornheim(r: u32, q: u32, p: u32) -> Reference {
    let (ri, qi, pi) = (r as i32, q as i32, p as i32);
    let sum_pow: Vec<f64> = (0..=2 * N).map(|s| if s == 0 { 0.0 } else { (s as f64).powi(-ri) }).collect();
    let pow_p: Vec<f64> = (0..=N).map(|m| if m == 0 { 0.0 } else { (m as f64).powi(-pi) }).collect();
    let mut square = 0.0;
    for n in 1..=N {
        let mut row = 0.0;
        for m in 1..=N {
            row += sum_pow[n + m] * pow_p[m];
        }
        square += row * (n as f64).powi(-qi);
    }
    let a = N as f64 + 0.5;
    // Σ_{m<=N} m^-other Σ_{x>N} (x+m)^-r x^-own, with x = a/t.
    let strip = |own: i32, other: i32| -> f64 {
        (1..=N)
            .map(|m| {
                let c = m as f64 / a;
                (m as f64).powi(-other)
                    * a.powi(1 - own - ri)
                    * simpson(40, |t| t.powi(own + ri - 2) * (1.0 + c * t).powi(-ri))
            })
            .sum()
    };
    let s1 = strip(qi, pi);
    let s2 = strip(pi, qi);
    // Both indices beyond N: split the square at the diagonal and integrate
    // the radial variable in closed form.
    let w = (r + q + p) as f64;
    let corner = a.powf(2.0 - w) / (w - 2.0)
        * (simpson(400, |v| v.powi(ri + pi - 2) * (1.0 + v).powi(-ri))
            + simpson(400, |v| v.powi(ri + qi - 2) * (1.0 + v).powi(-ri)));
    let tails = s1.abs() + s2.abs() + corner.abs();
    Reference {
        value: square + s1 + s2 + corner,
        // Each row and the sum over rows accumulate at most 2N roundings.
        error: (w * w + 4.0) * tails / (12.0 * a * a) + 4.0 * N as f64 * f64::EPSILON * square,
    }
}

/// Bernoulli numbers `B_0..=B_n` (with `B_1 = +1/2`) by the Akiyama–Tanigawa
/// algorithm.
pub fn bernoulli_table(n: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut a: Vec<BigRational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(BigRational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            let diff = &a[j - 1] - &a[j];
            a[j - 1] = diff * BigRational::from_integer(BigInt::from(j));
        }
        out.push(a[0].clone());
    }
    out
}

/// `C(n, k)` by Pascal's triangle.
pub fn pascal(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![BigInt::one(); i + 1];
        for j in 1..i {
            row[j] = &prev[j - 1] + &prev[j];
        }
        rows.push(row);
    }
    rows
}

/// `dim M_k` as the number of monomials `E4^a E6^b` of weight `k`.
pub fn modular_forms_dim(k: u32) -> u32 {
    if k % 2 == 1 {
        return 0;
    }
    (0..=k / 4).filter(|a| (k - 4 * a) % 6 == 0).count() as u32
}

/// `ζ(2n) / π^{2n} = (-1)^{n+1} B_2n 2^{2n-1} / (2n)!`.
pub fn zeta_even_over_pi_power(n: usize, bern: &[BigRational]) -> BigRational {
    let mut fact = BigInt::one();
    for i in 1..=2 * n {
        fact *= i;
    }
    let two = BigInt::one() << (2 * n - 1);
    let v = &bern[2 * n] * BigRational::new(two, fact);
    if n % 2 == 0 {
        -v
    } else {
        v
    }
}

/// `π` to `digits` decimals as a rational, by Machin's formula.
pub fn pi_rational(digits: u32) -> BigRational {
    let scale = BigInt::from(10).pow(digits + 10);
    let arctan_inv = |x: u32| -> BigInt {
        // Σ (-1)^k / ((2k+1) x^{2k+1}), fixed point.
        let x2 = BigInt::from(x) * x;
        let mut term = &scale / x;
        let mut sum = BigInt::zero();
        let mut k: u32 = 0;
        while !term.is_zero() {
            let t = &term / (2 * k + 1);
            if k % 2 == 0 {
                sum += t;
            } else {
                sum -= t;
            }
            term /= &x2;
            k += 1;
        }
        sum
    };
    let pi = (arctan_inv(5) * 16) - (arctan_inv(239) * 4);
    BigRational::new(pi, scale)
}

/// `|x - y| <= tol` for exact rationals.
pub fn close(x: &BigRational, y: &BigRational, tol: &BigRational) -> bool {
    (x - y).abs() <= *tol
}
