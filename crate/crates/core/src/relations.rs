//! Generators for the primitive relations among double zeta values, Tornheim
//! series and products of zeta values.
//!
//! Every constructor returns a [`Relation`] whose left-hand side is canonical and
//! weight-homogeneous. The label records the constructor and its arguments so
//! reduction traces can name the relation they used.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::symbols::{rat, FormalSum, QuotientMode, Rational, Relation, Symbol};

/// Exact binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn sign(e: u32) -> Rational {
    if e % 2 == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

static BERNOULLI_EVEN: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();

/// Even-index Bernoulli numbers `B_2, B_4, ..., B_2n` from the tangent numbers.
fn tangent_bernoulli(n: usize) -> Vec<Rational> {
    // Tangent numbers T_1..T_n via the in-place Brent-Harvey recurrence.
    let mut t: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    if n >= 1 {
        t[1] = BigInt::one();
    }
    for k in 2..=n {
        t[k] = &t[k - 1] * (k - 1);
    }
    for k in 2..=n {
        for j in k..=n {
            t[j] = &t[j - 1] * (j - k) + &t[j] * (j - k + 2);
        }
    }
    (1..=n)
        .map(|k| {
            let four_k = BigInt::one() << (2 * k);
            let num = BigInt::from(2 * k) * &t[k];
            let den = &four_k * (&four_k - 1);
            let b = Rational::new(num, den);
            if k % 2 == 1 {
                b
            } else {
                -b
            }
        })
        .collect()
}

/// Exact Bernoulli number `B_n` (with `B_1 = -1/2`). Even indices are memoized.
pub fn bernoulli(n: usize) -> Rational {
    match n {
        0 => return rat(1),
        1 => return Rational::new((-1).into(), 2.into()),
        _ if n % 2 == 1 => return Rational::zero(),
        _ => {}
    }
    let half = n / 2;
    let cache = BERNOULLI_EVEN.get_or_init(|| Mutex::new(Vec::new()));
    let mut guard = cache.lock().expect("bernoulli cache poisoned");
    if guard.len() < half {
        let target = (half * 2).max(64);
        *guard = tangent_bernoulli(target);
    }
    guard[half - 1].clone()
}

/// `ζ(2n) / π^{2n}` as an exact rational.
fn even_zeta_pi_ratio(n2: u32) -> Rational {
    let b = bernoulli(n2 as usize).abs();
    let two_pow = BigInt::one() << n2;
    let fact: BigInt = (1..=n2 as u64).map(BigInt::from).product();
    b * Rational::new(two_pow, fact * 2)
}

/// The rational `q` with `ζ(a) ζ(k-a) = q ζ(k)` for even `a` and `k-a`.
pub fn even_product_ratio(a: u32, k: u32) -> Result<Rational> {
    if a < 2 || k < a + 2 || a % 2 == 1 || (k - a) % 2 == 1 {
        return Err(Error::Precondition(format!(
            "even_product_ratio({a},{k}) needs a and k-a even and >= 2"
        )));
    }
    Ok(even_zeta_pi_ratio(a) * even_zeta_pi_ratio(k - a) / even_zeta_pi_ratio(k))
}

fn canon(sym: Symbol) -> Result<Symbol> {
    sym.canonicalize()
}

/// Euler's formula `2ζ(k-1,1) = (k-1)ζ(k) - Σ_{j=2}^{k-2} ζ(j)ζ(k-j)`.
pub fn euler_top(k: u32) -> Result<Relation> {
    if k < 3 {
        return Err(Error::Precondition(format!("euler_top needs k >= 3, got {k}")));
    }
    let mut lhs = FormalSum::single(Symbol::DZ(k - 1, 1), rat(2));
    lhs.add_term(Symbol::Z(k), -rat(k as i64 - 1))?;
    for j in 2..=k.saturating_sub(2) {
        lhs.add_term(canon(Symbol::P(j, k - j))?, rat(1))?;
    }
    Ok(Relation::new(lhs, QuotientMode::Exact, format!("euler_top({k})")))
}

/// Harmonic product `ζ(a)ζ(b) = ζ(a,b) + ζ(b,a) + ζ(a+b)`.
pub fn stuffle(a: u32, b: u32) -> Result<Relation> {
    if a < 2 || b < 2 {
        return Err(Error::Precondition(format!(
            "stuffle({a},{b}) needs both indices >= 2"
        )));
    }
    let lhs = FormalSum::from_terms([
        (canon(Symbol::P(a, b))?, rat(1)),
        (Symbol::DZ(a, b), rat(-1)),
        (Symbol::DZ(b, a), rat(-1)),
        (Symbol::Z(a + b), rat(-1)),
    ])?;
    Ok(Relation::new(lhs, QuotientMode::Exact, format!("stuffle({a},{b})")))
}

/// One step of the partial-fraction recursion
/// `T(r,q,p) = T(r+1,q-1,p) + T(r+1,q,p-1)`.
pub fn tornheim_recursion(r: u32, q: u32, p: u32) -> Result<Relation> {
    if r < 1 || q < 1 || p < 1 {
        return Err(Error::Precondition(format!(
            "tornheim_recursion({r},{q},{p}) needs r, q, p >= 1"
        )));
    }
    let lhs = FormalSum::from_terms([
        (canon(Symbol::T(r, q, p))?, rat(1)),
        (canon(Symbol::T(r + 1, q - 1, p))?, rat(-1)),
        (canon(Symbol::T(r + 1, q, p - 1))?, rat(-1)),
    ])?;
    Ok(Relation::new(
        lhs,
        QuotientMode::Exact,
        format!("tornheim_recursion({r},{q},{p})"),
    ))
}

/// Exact expansion of `T(r,q,p)` into double zeta values of the same weight.
///
/// Iterating the recursion down to the boundary counts lattice paths: a path
/// that exhausts `q` first while `b` of `p` remain contributes to `ζ(k-b, b)`
/// and there are `C(q+p-b-1, q-1)` of them.
pub fn tornheim_expand(r: u32, q: u32, p: u32) -> Result<FormalSum> {
    if r < 1 || q + p < 1 || ((q == 0 || p == 0) && r < 2) {
        return Err(Error::Precondition(format!(
            "tornheim_expand({r},{q},{p}): need r >= 1, q+p >= 1, and r >= 2 on the boundary"
        )));
    }
    if q == 0 {
        return Ok(FormalSum::single(Symbol::DZ(r, p), rat(1)));
    }
    if p == 0 {
        return Ok(FormalSum::single(Symbol::DZ(r, q), rat(1)));
    }
    let k = r + q + p;
    let mut out = FormalSum::new();
    for b in 1..=p {
        let c = binomial((q + p - b - 1) as u64, (q - 1) as u64);
        out.add_term(Symbol::DZ(k - b, b), Rational::from_integer(c))?;
    }
    for b in 1..=q {
        let c = binomial((q + p - b - 1) as u64, (p - 1) as u64);
        out.add_term(Symbol::DZ(k - b, b), Rational::from_integer(c))?;
    }
    Ok(out)
}

/// Expands every Tornheim symbol of a sum into double zeta values.
pub fn expand_tornheim_terms(sum: &FormalSum) -> Result<FormalSum> {
    let mut out = FormalSum::new();
    for (sym, c) in sum.iter() {
        match *sym {
            Symbol::T(r, q, p) => out.add_scaled(c, &tornheim_expand(r, q, p)?)?,
            s => out.add_term(s, c.clone())?,
        }
    }
    Ok(out)
}

/// The signed cyclic sum `(-1)^r T(r,q,p) + (-1)^q T(q,p,r) + (-1)^p T(p,r,q)`
/// kept in Tornheim symbols; lies in `Q ζ(k)` when the weight `k` is even
/// (and trivially at `k = 3`). At odd weight `k >= 5` the sum generally also
/// involves products and the `Q ζ(k)` claim does not hold.
pub fn cyclic_tornheim(r: u32, q: u32, p: u32) -> Result<Relation> {
    if r < 1 || q < 1 || p < 1 {
        return Err(Error::Precondition(format!(
            "cyclic({r},{q},{p}) needs all indices >= 1"
        )));
    }
    let lhs = FormalSum::from_terms([
        (canon(Symbol::T(r, q, p))?, sign(r)),
        (canon(Symbol::T(q, p, r))?, sign(q)),
        (canon(Symbol::T(p, r, q))?, sign(p)),
    ])?;
    Ok(Relation::new(
        lhs,
        QuotientMode::ModZetaK,
        format!("cyclic({r},{q},{p})"),
    ))
}

/// [`cyclic_tornheim`] with each Tornheim series expanded into double zetas.
pub fn cyclic(r: u32, q: u32, p: u32) -> Result<Relation> {
    let rel = cyclic_tornheim(r, q, p)?;
    Ok(Relation::new(
        expand_tornheim_terms(&rel.lhs)?,
        QuotientMode::ModZetaK,
        rel.label,
    ))
}

/// `T(r,q,p) - (-1)^p Σ_{j=1}^{r-1} C(p+r-j-2, p-1) ζ(j+1, k-j-1) ∈ PZ_k`,
/// with the Tornheim term kept symbolic.
pub fn boyadzhiev_mod(r: u32, q: u32, p: u32) -> Result<Relation> {
    if p < 2 {
        return Err(Error::Precondition(format!(
            "boyadzhiev_mod({r},{q},{p}): need p >= 2"
        )));
    }
    if r < 1 {
        return Err(Error::Precondition(format!(
            "boyadzhiev_mod({r},{q},{p}): need r >= 1"
        )));
    }
    if q + r < 2 {
        return Err(Error::Precondition(format!(
            "boyadzhiev_mod({r},{q},{p}): need q + r >= 2"
        )));
    }
    let k = r + q + p;
    let mut lhs = FormalSum::single(canon(Symbol::T(r, q, p))?, rat(1));
    let s = -sign(p);
    for j in 1..r {
        let c = binomial((p + r - j - 2) as u64, (p - 1) as u64);
        lhs.add_term(Symbol::DZ(j + 1, k - j - 1), &s * Rational::from_integer(c))?;
    }
    Ok(Relation::new(
        lhs,
        QuotientMode::ModPZ,
        format!("boyadzhiev_mod({r},{q},{p})"),
    ))
}

/// `T(a,b,1) - T(a-1,b,2) + T(a,b-1,2) = 0`, the recursion rearranged to trade
/// a last index of 1 for last index 2.
pub fn torn_p1_rewrite(a: u32, b: u32) -> Result<Relation> {
    if a < 2 || b < 1 {
        return Err(Error::Precondition(format!(
            "torn_p1_rewrite({a},{b}) needs a >= 2 and b >= 1"
        )));
    }
    let lhs = FormalSum::from_terms([
        (canon(Symbol::T(a, b, 1))?, rat(1)),
        (canon(Symbol::T(a - 1, b, 2))?, rat(-1)),
        (canon(Symbol::T(a, b - 1, 2))?, rat(1)),
    ])?;
    Ok(Relation::new(
        lhs,
        QuotientMode::Exact,
        format!("torn_p1_rewrite({a},{b})"),
    ))
}

/// For odd `3 <= r <= k-3` and even `k`:
/// `2ζ(r,k-r) + (k-r)ζ(r-1,k-r+1) + Σ_{j=1}^{r-3} C(k-j-2,k-r-1) ζ(j+1,k-j-1) ∈ PZ_k`.
pub fn descent(r: u32, k: u32) -> Result<Relation> {
    if k % 2 == 1 || r % 2 == 0 || r < 3 || r + 3 > k {
        return Err(Error::Precondition(format!(
            "descent({r},{k}) needs k even, r odd and 3 <= r <= k-3"
        )));
    }
    let mut lhs = FormalSum::from_terms([
        (Symbol::DZ(r, k - r), rat(2)),
        (Symbol::DZ(r - 1, k - r + 1), rat((k - r) as i64)),
    ])?;
    for j in 1..=r - 3 {
        let c = binomial((k - j - 2) as u64, (k - r - 1) as u64);
        lhs.add_term(Symbol::DZ(j + 1, k - j - 1), Rational::from_integer(c))?;
    }
    Ok(Relation::new(lhs, QuotientMode::ModPZ, format!("descent({r},{k})")))
}

/// `Σ_{j odd, 3<=j<=k-1} ζ(j,k-j) = ζ(k)/4` for even `k >= 4`.
pub fn gkz_sum(k: u32) -> Result<Relation> {
    if k < 4 || k % 2 == 1 {
        return Err(Error::Precondition(format!("gkz_sum needs even k >= 4, got {k}")));
    }
    let mut lhs = FormalSum::new();
    for j in (3..k).step_by(2) {
        lhs.add_term(Symbol::DZ(j, k - j), rat(1))?;
    }
    lhs.add_term(Symbol::Z(k), Rational::new((-1).into(), 4.into()))?;
    Ok(Relation::new(lhs, QuotientMode::Exact, format!("gkz_sum({k})")))
}

/// Replaces every `P(a,b)` with both factors even by its rational multiple of `Z(k)`.
pub fn merge_even_products(sum: &FormalSum) -> Result<FormalSum> {
    let mut out = FormalSum::new();
    for (sym, c) in sum.iter() {
        match *sym {
            Symbol::P(a, b) if a % 2 == 0 && b % 2 == 0 => {
                out.add_term(Symbol::Z(a + b), c * even_product_ratio(a, a + b)?)?
            }
            s => out.add_term(s, c.clone())?,
        }
    }
    Ok(out)
}

/// Every exact relation of weight `k` the generators above produce:
/// Euler's formula, all stuffle products, the sum formula (even `k`), all
/// recursion steps and all `torn_p1_rewrite` instances.
pub fn exact_relations_of_weight(k: u32) -> Result<Vec<Relation>> {
    let mut out = Vec::new();
    if k >= 3 {
        out.push(euler_top(k)?);
    }
    for a in 2..=k / 2 {
        if k - a >= 2 {
            out.push(stuffle(a, k - a)?);
        }
    }
    if k >= 4 && k % 2 == 0 {
        out.push(gkz_sum(k)?);
    }
    for r in 1..k {
        for q in 1..k - r {
            let p = k - r - q;
            if p >= 1 && q >= p {
                out.push(tornheim_recursion(r, q, p)?);
            }
        }
    }
    for a in 2..k {
        let b = k - a - 1;
        if b >= 1 {
            out.push(torn_p1_rewrite(a, b)?);
        }
    }
    Ok(out)
}

/// Rebuilds a relation from its label, e.g. `"boyadzhiev_mod(5,0,7)"`.
pub fn from_label(label: &str) -> Result<Relation> {
    let bad = || Error::Parse(format!("malformed relation label {label:?}"));
    let open = label.find('(').ok_or_else(bad)?;
    let inner = label[open + 1..].strip_suffix(')').ok_or_else(bad)?;
    let args = inner
        .split(',')
        .map(|a| a.trim().parse::<u32>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    match (&label[..open], args.as_slice()) {
        ("euler_top", [k]) => euler_top(*k),
        ("stuffle", [a, b]) => stuffle(*a, *b),
        ("tornheim_recursion", [r, q, p]) => tornheim_recursion(*r, *q, *p),
        ("cyclic", [r, q, p]) => cyclic_tornheim(*r, *q, *p),
        ("boyadzhiev_mod", [r, q, p]) => boyadzhiev_mod(*r, *q, *p),
        ("torn_p1_rewrite", [a, b]) => torn_p1_rewrite(*a, *b),
        ("descent", [r, k]) => descent(*r, *k),
        ("gkz_sum", [k]) => gkz_sum(*k),
        _ => Err(bad()),
    }
}
