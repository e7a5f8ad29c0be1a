//! Symbol alphabet, exact scalars and formal linear combinations.
//!
//! Every quantity the engine manipulates is a [`FormalSum`]: a finite map from
//! [`Symbol`]s to exact rationals. Relations are formal sums asserted to vanish
//! in one of the ambient spaces named by [`QuotientMode`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// One atom of the alphabet.
///
/// The derived ordering (variant first, then indices) is the iteration order of
/// every [`FormalSum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// Double zeta value `ζ(q,p) = Σ_{n>m>0} n^-q m^-p`.
    DZ(u32, u32),
    /// Tornheim double series `T(r,q,p) = Σ_{n,m>0} (n+m)^-r n^-q m^-p`.
    T(u32, u32, u32),
    /// Single zeta value `ζ(k)`.
    Z(u32),
    /// Product `ζ(a)ζ(b)`.
    P(u32, u32),
}

impl Symbol {
    pub fn weight(&self) -> u32 {
        match *self {
            Symbol::DZ(q, p) => q + p,
            Symbol::T(r, q, p) => r + q + p,
            Symbol::Z(k) => k,
            Symbol::P(a, b) => a + b,
        }
    }

    /// Brings a symbol into canonical form.
    ///
    /// Tornheim symbols are ordered so the middle index is the larger one, and a
    /// zero middle or last index is rewritten to the boundary double zeta value.
    /// Products are sorted.
    pub fn canonicalize(self) -> Result<Symbol> {
        match self {
            Symbol::DZ(q, p) => {
                if q < 2 || p < 1 {
                    return Err(Error::InvalidSymbol(format!(
                        "DZ({q},{p}) diverges: need q >= 2 and p >= 1"
                    )));
                }
                Ok(self)
            }
            Symbol::T(r, q, p) => {
                if r < 1 || q + p < 1 {
                    return Err(Error::InvalidSymbol(format!(
                        "T({r},{q},{p}) needs r >= 1 and q+p >= 1"
                    )));
                }
                let (hi, lo) = if q >= p { (q, p) } else { (p, q) };
                if lo == 0 {
                    if r < 2 {
                        return Err(Error::InvalidSymbol(format!(
                            "T({r},{q},{p}) has a zero index with r = 1; the boundary value diverges"
                        )));
                    }
                    return Ok(Symbol::DZ(r, hi));
                }
                Ok(Symbol::T(r, hi, lo))
            }
            Symbol::Z(k) => {
                if k < 2 {
                    return Err(Error::InvalidSymbol(format!("Z({k}) diverges")));
                }
                Ok(self)
            }
            Symbol::P(a, b) => {
                if a < 2 || b < 2 {
                    return Err(Error::InvalidSymbol(format!(
                        "P({a},{b}) needs both factors >= 2"
                    )));
                }
                Ok(Symbol::P(a.min(b), a.max(b)))
            }
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonicalize().map(|c| c == *self).unwrap_or(false)
    }

    /// Tag used by the JSON encoding.
    pub fn tag(&self) -> &'static str {
        match self {
            Symbol::DZ(..) => "DZ",
            Symbol::T(..) => "T",
            Symbol::Z(..) => "Z",
            Symbol::P(..) => "P",
        }
    }

    pub fn args(&self) -> Vec<u32> {
        match *self {
            Symbol::DZ(q, p) => vec![q, p],
            Symbol::T(r, q, p) => vec![r, q, p],
            Symbol::Z(k) => vec![k],
            Symbol::P(a, b) => vec![a, b],
        }
    }

    /// Inverse of [`Symbol::tag`] and [`Symbol::args`]. Does not canonicalize.
    pub fn from_parts(tag: &str, args: &[u32]) -> Result<Symbol> {
        let sym = match (tag, args) {
            ("DZ", [q, p]) => Symbol::DZ(*q, *p),
            ("T", [r, q, p]) => Symbol::T(*r, *q, *p),
            ("Z", [k]) => Symbol::Z(*k),
            ("P", [a, b]) => Symbol::P(*a, *b),
            _ => {
                return Err(Error::Parse(format!(
                    "unknown symbol {tag} with {} arguments",
                    args.len()
                )))
            }
        };
        Ok(sym)
    }

    /// True for products and single zetas, i.e. the atoms spanning `PZ_k`.
    pub fn is_product_part(&self) -> bool {
        matches!(self, Symbol::Z(_) | Symbol::P(..))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args = self
            .args()
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",");
        write!(f, "{}({})", self.tag(), args)
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Symbol> {
        let s = s.trim();
        let open = s
            .find('(')
            .ok_or_else(|| Error::Parse(format!("malformed symbol {s:?}")))?;
        if !s.ends_with(')') {
            return Err(Error::Parse(format!("malformed symbol {s:?}")));
        }
        let args = s[open + 1..s.len() - 1]
            .split(',')
            .map(|a| {
                a.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad index in {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Symbol::from_parts(&s[..open], &args)
    }
}

/// Ambient space a relation or reduction lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuotientMode {
    /// The relation holds as an identity of real numbers.
    Exact,
    /// The left-hand side is a rational multiple of `ζ(k)`.
    ModZetaK,
    /// The left-hand side lies in the span of `ζ(k)` and the products `ζ(j)ζ(k-j)`.
    ModPZ,
}

impl QuotientMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            QuotientMode::Exact => "Exact",
            QuotientMode::ModZetaK => "ModZetaK",
            QuotientMode::ModPZ => "ModPZ",
        }
    }
}

impl fmt::Display for QuotientMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for QuotientMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Exact" => Ok(QuotientMode::Exact),
            "ModZetaK" => Ok(QuotientMode::ModZetaK),
            "ModPZ" => Ok(QuotientMode::ModPZ),
            _ => Err(Error::Parse(format!("unknown quotient mode {s:?}"))),
        }
    }
}

/// A finite Q-linear combination of symbols of a single weight.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FormalSum {
    terms: BTreeMap<Symbol, Rational>,
}

impl FormalSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(sym: Symbol, coeff: Rational) -> Self {
        let mut s = Self::new();
        if !coeff.is_zero() {
            s.terms.insert(sym, coeff);
        }
        s
    }

    /// Builds a sum from `(symbol, coefficient)` pairs, merging repeats.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Symbol, Rational)>,
    {
        let mut s = Self::new();
        for (sym, c) in terms {
            s.add_term(sym, c)?;
        }
        Ok(s)
    }

    /// `None` for the empty sum, which is compatible with every weight.
    pub fn weight(&self) -> Option<u32> {
        self.terms.keys().next().map(Symbol::weight)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, sym: &Symbol) -> Rational {
        self.terms.get(sym).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Rational)> {
        self.terms.iter()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.terms.keys()
    }

    fn check_weight(&self, w: u32) -> Result<()> {
        match self.weight() {
            Some(own) if own != w => Err(Error::MixedWeight {
                expected: own,
                found: w,
            }),
            _ => Ok(()),
        }
    }

    /// Adds `coeff * sym`, dropping the entry if it cancels.
    pub fn add_term(&mut self, sym: Symbol, coeff: Rational) -> Result<()> {
        if coeff.is_zero() {
            return Ok(());
        }
        self.check_weight(sym.weight())?;
        let slot = self.terms.entry(sym).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&sym);
        }
        Ok(())
    }

    pub fn remove(&mut self, sym: &Symbol) -> Rational {
        self.terms.remove(sym).unwrap_or_else(Rational::zero)
    }

    /// `self + c * other`.
    pub fn add_scaled(&mut self, c: &Rational, other: &FormalSum) -> Result<()> {
        if c.is_zero() || other.is_empty() {
            return Ok(());
        }
        if let Some(w) = other.weight() {
            self.check_weight(w)?;
        }
        for (sym, v) in &other.terms {
            self.add_term(*sym, c * v)?;
        }
        Ok(())
    }

    pub fn sum_add(&self, other: &FormalSum) -> Result<FormalSum> {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), other)?;
        Ok(out)
    }

    pub fn sum_scale(&self, c: &Rational) -> FormalSum {
        if c.is_zero() {
            return FormalSum::new();
        }
        FormalSum {
            terms: self
                .terms
                .iter()
                .map(|(s, v)| (*s, v * c))
                .collect(),
        }
    }

    /// Replaces every occurrence of `sym` by `repl`, distributing its coefficient.
    pub fn substitute(&self, sym: &Symbol, repl: &FormalSum) -> Result<FormalSum> {
        if let Some(w) = repl.weight() {
            if w != sym.weight() {
                return Err(Error::MixedWeight {
                    expected: sym.weight(),
                    found: w,
                });
            }
        }
        let mut out = self.clone();
        let c = out.remove(sym);
        out.add_scaled(&c, repl)?;
        Ok(out)
    }

    /// Drops every `Z` and `P` term, i.e. projects to the class modulo `PZ_k`.
    pub fn without_product_part(&self) -> FormalSum {
        FormalSum {
            terms: self
                .terms
                .iter()
                .filter(|(s, _)| !s.is_product_part())
                .map(|(s, v)| (*s, v.clone()))
                .collect(),
        }
    }

    /// Keeps only `Z` and `P` terms.
    pub fn product_part(&self) -> FormalSum {
        FormalSum {
            terms: self
                .terms
                .iter()
                .filter(|(s, _)| s.is_product_part())
                .map(|(s, v)| (*s, v.clone()))
                .collect(),
        }
    }

    pub fn into_terms(self) -> BTreeMap<Symbol, Rational> {
        self.terms
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (sym, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{sym}")?;
        }
        Ok(())
    }
}

/// A formal sum asserted to vanish in the space named by `mode`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lhs: FormalSum,
    pub mode: QuotientMode,
    pub label: String,
    /// Set when the product part was reconstructed from numerics.
    pub numerically_lifted: bool,
}

impl Relation {
    pub fn new(lhs: FormalSum, mode: QuotientMode, label: impl Into<String>) -> Self {
        Relation {
            lhs,
            mode,
            label: label.into(),
            numerically_lifted: false,
        }
    }

    pub fn weight(&self) -> Option<u32> {
        self.lhs.weight()
    }

    /// Solves the relation for `target` modulo its quotient: returns `R` with
    /// `target ≡ R`. Product-part terms are dropped unless the relation is exact.
    pub fn solve_for(&self, target: &Symbol) -> Result<FormalSum> {
        let c = self.lhs.coeff(target);
        if c.is_zero() {
            return Err(Error::Reduction(format!(
                "{} does not involve {target}",
                self.label
            )));
        }
        let mut rest = self.lhs.clone();
        rest.remove(target);
        if self.mode != QuotientMode::Exact {
            rest = rest.without_product_part();
        }
        Ok(rest.sum_scale(&(-c.recip())))
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tail = match self.mode {
            QuotientMode::Exact => " = 0".to_string(),
            QuotientMode::ModZetaK => format!(" in Q*Z({})", self.weight().unwrap_or(0)),
            QuotientMode::ModPZ => format!(" in PZ_{}", self.weight().unwrap_or(0)),
        };
        write!(f, "[{}] {}{}", self.label, self.lhs, tail)
    }
}
