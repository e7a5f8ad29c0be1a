//! Exact linear algebra over the rationals, the exact relation system of one
//! weight, spanning sets of `DZ_k` by `ζ(odd,odd)` and the linear equations
//! among the `ζ(odd,odd)`.
//!
//! The exact system of weight `k` collects the harmonic products, Euler's
//! formula, the sum formula and enough cyclic Tornheim relations (with their
//! `ζ(k)` coefficient reconstructed numerically) to cut the column space down to
//! `dim DZ_k`. Row selection runs modulo a large prime; the selected rows are
//! then reduced exactly.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::{rational_reconstruct, Evaluator};
use crate::reduce::{dim_bounds, mf_dim};
use crate::relations::{cyclic, euler_top, expand_tornheim_terms, gkz_sum, merge_even_products, stuffle};
use crate::symbols::{FormalSum, QuotientMode, Rational, Relation, Symbol};

// ---------------------------------------------------------------------------
// Dense rational matrices

/// Rows in reduced row echelon form, built one row at a time.
#[derive(Debug, Clone)]
struct Echelon {
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new() -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn reduce(&self, v: &mut [Rational]) {
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            if v[piv].is_zero() {
                continue;
            }
            let f = v[piv].clone();
            for (j, x) in row.iter().enumerate().skip(piv) {
                if !x.is_zero() {
                    v[j] -= &f * x;
                }
            }
        }
    }

    /// Adds `v` to the row space; returns false if it was already there.
    fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        self.reduce(&mut v);
        let Some(piv) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[piv].recip();
        for x in v.iter_mut().skip(piv) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[piv].is_zero() {
                continue;
            }
            let f = row[piv].clone();
            for (j, x) in v.iter().enumerate().skip(piv) {
                if !x.is_zero() {
                    row[j] -= &f * x;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(piv);
        true
    }

    /// Rows sorted by pivot column.
    fn sorted(&self) -> (Vec<Vec<Rational>>, Vec<usize>) {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivots[i]);
        (
            idx.iter().map(|&i| self.rows[i].clone()).collect(),
            idx.iter().map(|&i| self.pivots[i]).collect(),
        )
    }
}

/// A matrix of exact rationals, optionally with named columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    /// Column labels; empty for anonymous columns.
    pub column_basis: Vec<Symbol>,
    pub rows: Vec<Vec<Rational>>,
    ncols: usize,
}

impl RationalMatrix {
    pub fn new(column_basis: Vec<Symbol>, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let ncols = column_basis.len();
        Self::checked(column_basis, rows, ncols)
    }

    /// A matrix with anonymous columns.
    pub fn from_rows(ncols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        Self::checked(Vec::new(), rows, ncols)
    }

    fn checked(column_basis: Vec<Symbol>, rows: Vec<Vec<Rational>>, ncols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::Dimension(format!(
                "row of length {} in a matrix with {ncols} columns",
                bad.len()
            )));
        }
        Ok(RationalMatrix {
            column_basis,
            rows,
            ncols,
        })
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new();
        for r in &self.rows {
            e.insert(r.clone());
        }
        e
    }

    /// Reduced row echelon form (zero rows dropped) and its pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let (rows, pivots) = self.echelon().sorted();
        (
            RationalMatrix {
                column_basis: self.column_basis.clone(),
                rows,
                ncols: self.ncols,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.echelon().rows.len()
    }

    /// A basis of `{v : M v = 0}`; each vector's first nonzero entry is 1.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (rref, pivots) = self.rref();
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Rational::zero(); self.ncols];
            v[free] = Rational::one();
            for (row, &piv) in rref.rows.iter().zip(&pivots) {
                v[piv] = -row[free].clone();
            }
            let lead = v.iter().find(|x| !x.is_zero()).cloned().expect("free entry is 1");
            let inv = lead.recip();
            out.push(v.into_iter().map(|x| x * &inv).collect());
        }
        out
    }

    /// Coefficients `x` with `Σ x_i · row_i = target`, if any.
    pub fn solve(&self, target: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if target.len() != self.ncols {
            return Err(Error::Dimension(format!(
                "target of length {} for {} columns",
                target.len(),
                self.ncols
            )));
        }
        let n = self.rows.len();
        // Row-reduce [M | I] on the left block, then reduce [target | 0].
        let mut e = Echelon::new();
        for (i, r) in self.rows.iter().enumerate() {
            let mut v = r.clone();
            v.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            e.insert_left(v, self.ncols);
        }
        let mut t: Vec<Rational> = target.to_vec();
        t.extend((0..n).map(|_| Rational::zero()));
        e.reduce(&mut t);
        if t[..self.ncols].iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        Ok(Some(t[self.ncols..].iter().map(|x| -x.clone()).collect()))
    }
}

impl Echelon {
    /// Like [`Echelon::insert`] but only pivots within the first `left` columns.
    fn insert_left(&mut self, mut v: Vec<Rational>, left: usize) -> bool {
        self.reduce(&mut v);
        let Some(piv) = v[..left].iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[piv].recip();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[piv].is_zero() {
                continue;
            }
            let f = row[piv].clone();
            for (j, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    row[j] -= &f * x;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(piv);
        true
    }
}

// ---------------------------------------------------------------------------
// Rank selection modulo a prime

const PRIME: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn to_mod(x: &Rational) -> Option<u64> {
    let p = BigInt::from(PRIME);
    let n = x.numer().mod_floor(&p).to_u64()?;
    let d = x.denom().mod_floor(&p).to_u64()?;
    if d == 0 {
        return None;
    }
    Some(mulmod(n, powmod(d, PRIME - 2)))
}

/// Echelon basis over `GF(p)`, used only to decide linear independence.
struct ModEchelon {
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModEchelon {
    fn reduce(&self, v: &mut [u64]) {
        for (piv, row) in &self.rows {
            let f = v[*piv];
            if f == 0 {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if *r != 0 {
                    *x = (*x + PRIME - mulmod(f, *r)) % PRIME;
                }
            }
        }
    }

    fn independent(&self, v: &[u64]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().any(|x| *x != 0)
    }

    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        self.reduce(&mut v);
        let Some(piv) = v.iter().position(|x| *x != 0) else {
            return false;
        };
        let inv = powmod(v[piv], PRIME - 2);
        for x in v.iter_mut() {
            *x = mulmod(*x, inv);
        }
        for (_, row) in self.rows.iter_mut() {
            let f = row[piv];
            if f != 0 {
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = (*x + PRIME - mulmod(f, *r)) % PRIME;
                }
            }
        }
        self.rows.push((piv, v));
        true
    }
}

// ---------------------------------------------------------------------------
// Normal forms and numerical lifting

/// Expands Tornheim symbols and rewrites products of two even zetas as
/// multiples of `ζ(k)`.
pub fn normal_form(x: &FormalSum) -> Result<FormalSum> {
    let mut canon = FormalSum::new();
    for (s, c) in x.iter() {
        canon.add_term(s.canonicalize()?, c.clone())?;
    }
    merge_even_products(&expand_tornheim_terms(&canon)?)
}

fn ten_pow(e: u32) -> BigInt {
    BigInt::from(10).pow(e)
}

/// Reconstructs `c` with `x ≡ c ζ(k)` from `digits`-digit numerics and checks
/// `x - c ζ(k)` at twice the precision.
fn lift_zeta_coefficient(ev: &Evaluator, x: &FormalSum, k: u32, digits: u32, label: &str) -> Result<Rational> {
    let value = ev.eval(x, digits)?;
    let zk = ev.zeta_single(k, digits)?;
    let ratio = value.div(&zk)?;
    let c = rational_reconstruct(&ratio, &ten_pow(digits / 3))?
        .ok_or_else(|| Error::NoRational(format!("{label} at {digits} digits")))?;
    let mut exact = x.clone();
    exact.add_term(Symbol::Z(k), -c.clone())?;
    check_exact(ev, &exact, 2 * digits, label)?;
    Ok(c)
}

/// Fails with [`Error::Reverification`] unless `|x| < 10^-(digits-15)` relative
/// to its largest term.
fn check_exact(ev: &Evaluator, x: &FormalSum, digits: u32, label: &str) -> Result<()> {
    let e = ev.evaluate(x, digits)?;
    let threshold = e.max_term_log10.max(0.0) - (digits - 15) as f64;
    let residual = e.value.abs_upper_log10();
    if residual < threshold {
        Ok(())
    } else {
        Err(Error::Reverification {
            label: label.to_string(),
            residual_log10: residual,
        })
    }
}

// ---------------------------------------------------------------------------
// The exact system of one weight

/// Exact relations of weight `k` whose span has the maximal rank
/// `#DZ columns - ⌊(k-2)/6⌋`, kept in reduced row echelon form over the column
/// basis `DZ(k-1,1), ..., DZ(2,k-2), Z(k), P(3,k-3), P(5,k-5), ...`.
#[derive(Debug, Clone)]
pub struct ExactSystem {
    k: u32,
    columns: Vec<Symbol>,
    index: HashMap<Symbol, usize>,
    echelon: Echelon,
    relations: Vec<Relation>,
}

/// Column basis of the exact system of weight `k`.
pub fn column_basis(k: u32) -> Vec<Symbol> {
    let mut cols: Vec<Symbol> = (2..k).rev().map(|q| Symbol::DZ(q, k - q)).collect();
    cols.push(Symbol::Z(k));
    cols.extend((3..=k / 2).step_by(2).map(|a| Symbol::P(a, k - a)));
    cols
}

impl ExactSystem {
    /// Assembles the system for even `k >= 4`, evaluating with `ev`.
    pub fn build_with(ev: &Evaluator, k: u32) -> Result<Self> {
        let bounds = dim_bounds(k)?;
        if k < 4 {
            return Err(Error::Precondition(format!("no double zeta values of weight {k}")));
        }
        let columns = column_basis(k);
        let index: HashMap<Symbol, usize> =
            columns.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let n_dz = (k - 2) as usize;
        let target = n_dz - bounds.dm_bound as usize;

        let mut sys = ExactSystem {
            k,
            columns,
            index,
            echelon: Echelon::new(),
            relations: Vec::new(),
        };
        let mut selector = ModEchelon { rows: Vec::new() };
        let dz_mod = |sys: &ExactSystem, x: &FormalSum| -> Result<Vec<u64>> {
            let v = sys.vector(x)?;
            v[..n_dz]
                .iter()
                .map(|c| to_mod(c).ok_or_else(|| Error::Reduction("denominator divisible by the prime".into())))
                .collect()
        };

        let mut exact = vec![euler_top(k)?, gkz_sum(k)?];
        for a in 2..=k / 2 {
            exact.push(stuffle(a, k - a)?);
        }
        for rel in exact {
            let lhs = normal_form(&rel.lhs)?;
            if selector.insert(dz_mod(&sys, &lhs)?) {
                sys.relations.push(Relation::new(lhs, QuotientMode::Exact, rel.label));
            }
        }

        let mut digits = (3 * k).max(60);
        'search: for p in 1..=k / 3 {
            for q in p..=(k - p) / 2 {
                let r = k - p - q;
                if selector.rows.len() >= target {
                    break 'search;
                }
                let rel = cyclic(r, q, p)?;
                let lhs = rel.lhs.clone();
                let v = dz_mod(&sys, &lhs)?;
                if !selector.independent(&v) {
                    continue;
                }
                let c = loop {
                    match lift_zeta_coefficient(ev, &lhs, k, digits, &rel.label) {
                        Ok(c) => break c,
                        Err(Error::NoRational(_) | Error::Reverification { .. } | Error::InsufficientPrecision { .. })
                            if digits < 4000 =>
                        {
                            digits *= 2;
                        }
                        Err(e) => return Err(e),
                    }
                };
                let mut exact_lhs = lhs;
                exact_lhs.add_term(Symbol::Z(k), -c)?;
                selector.insert(v);
                let mut lifted = Relation::new(exact_lhs, QuotientMode::Exact, rel.label);
                lifted.numerically_lifted = true;
                sys.relations.push(lifted);
            }
        }
        if selector.rows.len() < target {
            return Err(Error::RankDeficient(k));
        }

        let mut echelon = Echelon::new();
        for rel in &sys.relations {
            echelon.insert(sys.vector(&rel.lhs)?);
        }
        sys.echelon = echelon;
        if sys.echelon.pivots.iter().any(|&p| p >= n_dz) {
            return Err(Error::Dimension(format!(
                "weight {k}: relations among products alone"
            )));
        }
        Ok(sys)
    }

    pub fn build(k: u32) -> Result<Self> {
        Self::build_with(&Evaluator::new(), k)
    }

    pub fn weight(&self) -> u32 {
        self.k
    }

    pub fn columns(&self) -> &[Symbol] {
        &self.columns
    }

    pub fn rank(&self) -> usize {
        self.echelon.rows.len()
    }

    /// The exact relations spanning the row space.
    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Double zeta columns that are not pivots: a basis of `DZ_k / PZ_k`.
    pub fn free_dz(&self) -> Vec<Symbol> {
        let n_dz = (self.k - 2) as usize;
        (0..n_dz)
            .filter(|c| !self.echelon.pivots.contains(c))
            .map(|c| self.columns[c])
            .collect()
    }

    /// The rows in echelon form as a matrix over the column basis.
    pub fn matrix(&self) -> RationalMatrix {
        let (rows, _) = self.echelon.sorted();
        RationalMatrix::new(self.columns.clone(), rows).expect("rows match columns")
    }

    fn vector(&self, x: &FormalSum) -> Result<Vec<Rational>> {
        let x = normal_form(x)?;
        let mut v = vec![Rational::zero(); self.columns.len()];
        for (s, c) in x.iter() {
            let i = self.index.get(s).ok_or_else(|| {
                Error::Dimension(format!("{s} is not a column of weight {}", self.k))
            })?;
            v[*i] = c.clone();
        }
        Ok(v)
    }

    fn sum(&self, v: &[Rational]) -> FormalSum {
        FormalSum::from_terms(
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (self.columns[i], c.clone())),
        )
        .expect("columns share one weight")
    }

    /// The unique representative of `x` modulo the row space: a combination of
    /// free double zetas, `ζ(k)` and odd products.
    pub fn remainder(&self, x: &FormalSum) -> Result<FormalSum> {
        let mut v = self.vector(x)?;
        self.echelon.reduce(&mut v);
        Ok(self.sum(&v))
    }

    /// The exact element `π ∈ PZ_k` with `x ≡ π`; fails if `x` is not in `PZ_k`
    /// modulo the known relations.
    pub fn pz_part(&self, x: &FormalSum) -> Result<FormalSum> {
        let rem = self.remainder(x)?;
        if rem.iter().any(|(s, _)| !s.is_product_part()) {
            return Err(Error::Reduction(format!(
                "{x} does not lie in PZ_{}: remainder {rem}",
                self.k
            )));
        }
        Ok(rem)
    }
}

static SYSTEMS: OnceLock<Mutex<HashMap<u32, Arc<ExactSystem>>>> = OnceLock::new();

/// The exact system of weight `k`, built once per process.
pub fn exact_system_with(ev: &Evaluator, k: u32) -> Result<Arc<ExactSystem>> {
    let cache = SYSTEMS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().expect("system cache poisoned").get(&k) {
        return Ok(s.clone());
    }
    let sys = Arc::new(ExactSystem::build_with(ev, k)?);
    cache
        .lock()
        .expect("system cache poisoned")
        .insert(k, sys.clone());
    Ok(sys)
}

pub fn exact_system(k: u32) -> Result<Arc<ExactSystem>> {
    exact_system_with(&Evaluator::new(), k)
}

/// Turns a `ModZetaK` or `ModPZ` relation into an exact one by supplying its
/// `ζ(k)` and product terms, re-verified at twice the precision.
///
/// `ModZetaK` coefficients come from a one-dimensional reconstruction at
/// `digits` digits with denominators below `10^⌊digits/3⌋`. `ModPZ` product
/// parts come from the exact system of the weight. Products of two even zetas
/// are expressed through `ζ(k)`.
pub fn lift_with(ev: &Evaluator, rel: &Relation, digits: u32) -> Result<Relation> {
    let lhs = normal_form(&rel.lhs)?;
    let Some(k) = lhs.weight() else {
        return Ok(Relation::new(lhs, QuotientMode::Exact, rel.label.clone()));
    };
    let exact = match rel.mode {
        QuotientMode::Exact => return Ok(Relation::new(lhs, QuotientMode::Exact, rel.label.clone())),
        QuotientMode::ModZetaK => {
            let dz = lhs.without_product_part();
            let c = lift_zeta_coefficient(ev, &dz, k, digits, &rel.label)?;
            let mut out = dz;
            out.add_term(Symbol::Z(k), -c)?;
            out
        }
        QuotientMode::ModPZ => {
            if k % 2 == 1 {
                return Err(Error::Precondition(format!(
                    "product lifts need even weight, got {k}"
                )));
            }
            let dz = lhs.without_product_part();
            let pz = exact_system_with(ev, k)?.pz_part(&dz)?;
            let out = dz.sum_add(&pz.sum_scale(&-Rational::one()))?;
            check_exact(ev, &out, 2 * digits, &rel.label)?;
            out
        }
    };
    let mut out = Relation::new(exact, QuotientMode::Exact, rel.label.clone());
    out.numerically_lifted = true;
    Ok(out)
}

/// [`lift_with`] using a fresh evaluation context.
pub fn lift_mod_relation_to_exact(rel: &Relation, digits: u32) -> Result<Relation> {
    lift_with(&Evaluator::new(), rel, digits)
}

// ---------------------------------------------------------------------------
// Spanning sets and equations among ζ(odd, odd)

/// Combinations of `ζ(odd,odd)` spanning `DZ_k`, in three families.
pub fn spanning_set_dz(k: u32) -> Result<Vec<FormalSum>> {
    if k % 2 == 1 || k < 4 {
        return Err(Error::Precondition(format!(
            "weight must be even and at least 4, got {k}"
        )));
    }
    let one = Rational::one;
    let mut out = Vec::new();
    let edge = k.div_ceil(3);
    for j in (3..=edge).step_by(2) {
        out.push(FormalSum::single(Symbol::DZ(j, k - j), one()));
    }
    for j in (1..=edge).step_by(2) {
        out.push(FormalSum::single(Symbol::DZ(k - j, j), one()));
    }
    let start = (k + 5) / 3;
    for j in (start..=k / 2).filter(|j| j % 2 == 1) {
        out.push(FormalSum::from_terms([
            (Symbol::DZ(j, k - j), one()),
            (Symbol::DZ(k - j, j), one()),
        ])?);
    }
    let expected = (k / 2 - mf_dim(k)) as usize;
    if out.len() != expected {
        return Err(Error::Dimension(format!(
            "weight {k}: spanning set has {} elements, expected {expected}",
            out.len()
        )));
    }
    Ok(out)
}

/// `Σ_j c_j ζ(j, k-j) = 0` over odd `j`, with `c_i ≠ c_{k-i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddOddEquation {
    pub k: u32,
    pub i: u32,
    /// Coprime integer coefficients keyed by odd `j` in `[3, k-1]`; zeros omitted.
    pub coefficients: BTreeMap<u32, BigInt>,
}

impl OddOddEquation {
    pub fn coefficient(&self, j: u32) -> BigInt {
        self.coefficients.get(&j).cloned().unwrap_or_default()
    }

    pub fn to_formal_sum(&self) -> FormalSum {
        FormalSum::from_terms(
            self.coefficients
                .iter()
                .map(|(j, c)| (Symbol::DZ(*j, self.k - *j), Rational::from_integer(c.clone()))),
        )
        .expect("one weight")
    }

    pub fn relation(&self) -> Relation {
        Relation::new(
            self.to_formal_sum(),
            QuotientMode::Exact,
            format!("oddodd({},{})", self.k, self.i),
        )
    }

    /// Checks the coefficient pattern: nonzero, `c_i ≠ c_{k-i}`, and
    /// `c_j = c_{k-j}` for the other odd `j` with `⌊(k+5)/3⌋ <= j < k/2`.
    pub fn has_pattern(&self) -> bool {
        if self.coefficients.is_empty() || self.coefficient(self.i) == self.coefficient(self.k - self.i) {
            return false;
        }
        symmetric_range(self.k)
            .filter(|j| *j != self.i)
            .all(|j| self.coefficient(j) == self.coefficient(self.k - j))
    }
}

impl fmt::Display for OddOddEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0", self.to_formal_sum())
    }
}

/// Odd `j` with `⌊(k+5)/3⌋ <= j < k/2`.
fn symmetric_range(k: u32) -> impl Iterator<Item = u32> {
    ((k + 5) / 3..k.div_ceil(2)).filter(move |j| j % 2 == 1 && 2 * j < k)
}

fn normalize_integer(v: &BTreeMap<u32, Rational>) -> BTreeMap<u32, BigInt> {
    let lcm = v
        .values()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: BTreeMap<u32, BigInt> = v
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| (*j, (c * Rational::from_integer(lcm.clone())).to_integer()))
        .collect();
    let g = ints.values().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = match ints.values().next() {
        Some(c) if c.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter().map(|(j, c)| (j, c / &g * &sign)).collect()
}

/// One equation `Σ c_j ζ(j,k-j) = 0` for every odd `i` with
/// `⌊(k+5)/3⌋ <= i < k/2`, normalized to coprime integers with the
/// lowest-index coefficient positive.
pub fn nontrivial_equations_with(ev: &Evaluator, k: u32) -> Result<Vec<OddOddEquation>> {
    if k % 2 == 1 || k < 4 {
        return Err(Error::Precondition(format!(
            "weight must be even and at least 4, got {k}"
        )));
    }
    let expected = mf_dim(k).saturating_sub(1) as usize;
    let targets: Vec<u32> = symmetric_range(k).collect();
    if targets.len() != expected {
        return Err(Error::Dimension(format!(
            "weight {k}: {} distinguished indices for {expected} equations",
            targets.len()
        )));
    }
    if expected == 0 {
        return Ok(Vec::new());
    }
    let sys = exact_system_with(ev, k)?;
    let odd: Vec<u32> = (3..k).step_by(2).collect();
    // Columns of `reps` are the normal forms of ζ(j, k-j) modulo all relations.
    let reps: Vec<Vec<Rational>> = odd
        .iter()
        .map(|&j| {
            let mut v = sys.vector(&FormalSum::single(Symbol::DZ(j, k - j), Rational::one()))?;
            sys.echelon.reduce(&mut v);
            Ok(v)
        })
        .collect::<Result<_>>()?;
    let width = sys.columns.len();
    let transposed: Vec<Vec<Rational>> = (0..width)
        .map(|c| reps.iter().map(|r| r[c].clone()).collect())
        .collect();
    let relations = RationalMatrix::from_rows(odd.len(), transposed)?.nullspace();
    if relations.len() != expected {
        return Err(Error::Dimension(format!(
            "weight {k}: {} relations among ζ(odd,odd), expected {expected}",
            relations.len()
        )));
    }
    let pos = |j: u32| odd.iter().position(|x| *x == j).expect("odd index");
    let differences: Vec<Vec<Rational>> = relations
        .iter()
        .map(|r| targets.iter().map(|&i| &r[pos(i)] - &r[pos(k - i)]).collect())
        .collect();
    let diff_matrix = RationalMatrix::from_rows(targets.len(), differences)?;

    let mut out = Vec::new();
    for (t, &i) in targets.iter().enumerate() {
        let unit: Vec<Rational> = (0..targets.len())
            .map(|s| if s == t { Rational::one() } else { Rational::zero() })
            .collect();
        let x = diff_matrix.solve(&unit)?.ok_or_else(|| {
            Error::Dimension(format!("weight {k}: no equation distinguishing index {i}"))
        })?;
        let mut c: BTreeMap<u32, Rational> = BTreeMap::new();
        for (xl, r) in x.iter().zip(&relations) {
            for (idx, &j) in odd.iter().enumerate() {
                *c.entry(j).or_insert_with(Rational::zero) += xl * &r[idx];
            }
        }
        out.push(OddOddEquation {
            k,
            i,
            coefficients: normalize_integer(&c),
        });
    }
    Ok(out)
}

pub fn nontrivial_equations(k: u32) -> Result<Vec<OddOddEquation>> {
    nontrivial_equations_with(&Evaluator::new(), k)
}
