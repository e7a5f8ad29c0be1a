//! JSON and LaTeX encodings and persisted reduction tables.
//!
//! Rationals are always serialized as `{"num": "...", "den": "..."}` decimal
//! strings so that arbitrary precision survives any JSON parser.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactsys::OddOddEquation;
use crate::reduce::{epsilon_string, generator_set, parse_epsilon, GeneratorSet, ReductionResult, Reducer, TraceStep};
use crate::symbols::{FormalSum, QuotientMode, Rational, Relation, Symbol};

/// Version of the persisted table layout.
pub const SCHEMA_VERSION: u32 = 1;

/// A type with a stable JSON representation.
pub trait JsonCodec: Sized {
    type Repr: Serialize + DeserializeOwned;

    fn to_repr(&self) -> Self::Repr;
    fn from_repr(repr: Self::Repr) -> Result<Self>;

    fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_repr())?)
    }

    fn from_json(s: &str) -> Result<Self> {
        Self::from_repr(serde_json::from_str(s)?)
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.parse()
        .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

/// `{"num": "-9", "den": "2"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRepr {
    pub num: String,
    pub den: String,
}

impl JsonCodec for Rational {
    type Repr = RationalRepr;

    fn to_repr(&self) -> RationalRepr {
        RationalRepr {
            num: self.numer().to_string(),
            den: self.denom().to_string(),
        }
    }

    fn from_repr(r: RationalRepr) -> Result<Self> {
        let den = parse_int(&r.den)?;
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Rational::new(parse_int(&r.num)?, den))
    }
}

/// `{"sym": "DZ", "args": [2, 10]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolRepr {
    pub sym: String,
    pub args: Vec<u32>,
}

impl JsonCodec for Symbol {
    type Repr = SymbolRepr;

    fn to_repr(&self) -> SymbolRepr {
        SymbolRepr {
            sym: self.tag().to_string(),
            args: self.args(),
        }
    }

    fn from_repr(r: SymbolRepr) -> Result<Self> {
        let sym = Symbol::from_parts(&r.sym, &r.args)?;
        sym.canonicalize()?;
        Ok(sym)
    }
}

/// One term `{"sym": "DZ", "args": [2, 10], "num": "-9", "den": "2"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRepr {
    pub sym: String,
    pub args: Vec<u32>,
    pub num: String,
    pub den: String,
}

impl JsonCodec for FormalSum {
    type Repr = Vec<TermRepr>;

    fn to_repr(&self) -> Vec<TermRepr> {
        self.iter()
            .map(|(s, c)| TermRepr {
                sym: s.tag().to_string(),
                args: s.args(),
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect()
    }

    fn from_repr(terms: Vec<TermRepr>) -> Result<Self> {
        let mut out = FormalSum::new();
        for t in terms {
            let sym = Symbol::from_repr(SymbolRepr { sym: t.sym, args: t.args })?;
            let c = Rational::from_repr(RationalRepr { num: t.num, den: t.den })?;
            out.add_term(sym, c)?;
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationRepr {
    pub label: String,
    pub mode: String,
    pub lhs: Vec<TermRepr>,
    #[serde(default)]
    pub numerically_lifted: bool,
}

impl JsonCodec for Relation {
    type Repr = RelationRepr;

    fn to_repr(&self) -> RelationRepr {
        RelationRepr {
            label: self.label.clone(),
            mode: self.mode.as_str().to_string(),
            lhs: self.lhs.to_repr(),
            numerically_lifted: self.numerically_lifted,
        }
    }

    fn from_repr(r: RelationRepr) -> Result<Self> {
        let mut rel = Relation::new(FormalSum::from_repr(r.lhs)?, r.mode.parse()?, r.label);
        rel.numerically_lifted = r.numerically_lifted;
        Ok(rel)
    }
}

/// One reduction as stored in a table: generators are implied by the table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryRepr {
    pub input: SymbolRepr,
    pub coeffs: Vec<TermRepr>,
    pub mode: String,
    pub trace: Vec<String>,
}

/// A self-contained reduction: a table entry plus its generator set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionRepr {
    pub weight: u32,
    pub epsilon: String,
    pub generators: Vec<SymbolRepr>,
    #[serde(flatten)]
    pub entry: EntryRepr,
}

fn parse_trace_step(s: &str) -> Result<TraceStep> {
    let (label, sym) = s
        .split_once(" -> ")
        .ok_or_else(|| Error::Parse(format!("malformed trace step {s:?}")))?;
    Ok(TraceStep {
        label: label.to_string(),
        symbol: sym.parse()?,
    })
}

fn entry_repr(r: &ReductionResult) -> EntryRepr {
    EntryRepr {
        input: r.input.to_repr(),
        coeffs: r.coefficients.to_repr(),
        mode: r.mode.as_str().to_string(),
        trace: r.trace.iter().map(|s| s.to_string()).collect(),
    }
}

fn entry_from_repr(e: EntryRepr, generators: &GeneratorSet) -> Result<ReductionResult> {
    let coefficients = FormalSum::from_repr(e.coeffs)?;
    if let Some(g) = coefficients.symbols().find(|g| !generators.contains(g)) {
        return Err(Error::Parse(format!("{g} is not a generator of {generators}")));
    }
    Ok(ReductionResult {
        input: Symbol::from_repr(e.input)?,
        generators: generators.clone(),
        coefficients,
        mode: e.mode.parse()?,
        trace: e
            .trace
            .iter()
            .map(|s| parse_trace_step(s))
            .collect::<Result<_>>()?,
    })
}

impl JsonCodec for ReductionResult {
    type Repr = ReductionRepr;

    fn to_repr(&self) -> ReductionRepr {
        ReductionRepr {
            weight: self.generators.weight(),
            epsilon: self.generators.epsilon_string(),
            generators: self.generators.members().iter().map(|g| g.to_repr()).collect(),
            entry: entry_repr(self),
        }
    }

    fn from_repr(r: ReductionRepr) -> Result<Self> {
        let gens = generator_set(r.weight, &parse_epsilon(&r.epsilon)?)?;
        check_generator_order(&gens, &r.generators)?;
        entry_from_repr(r.entry, &gens)
    }
}

fn check_generator_order(gens: &GeneratorSet, listed: &[SymbolRepr]) -> Result<()> {
    let expected: Vec<SymbolRepr> = gens.members().iter().map(|g| g.to_repr()).collect();
    if expected != listed {
        return Err(Error::Parse(format!(
            "generator list does not match {gens}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationTermRepr {
    pub j: u32,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationRepr {
    pub k: u32,
    pub i: u32,
    pub coefficients: Vec<EquationTermRepr>,
}

impl JsonCodec for OddOddEquation {
    type Repr = EquationRepr;

    fn to_repr(&self) -> EquationRepr {
        EquationRepr {
            k: self.k,
            i: self.i,
            coefficients: self
                .coefficients
                .iter()
                .map(|(j, c)| EquationTermRepr { j: *j, c: c.to_string() })
                .collect(),
        }
    }

    fn from_repr(r: EquationRepr) -> Result<Self> {
        let mut coefficients = BTreeMap::new();
        for t in r.coefficients {
            if t.j % 2 == 0 || t.j < 3 || t.j >= r.k {
                return Err(Error::Parse(format!("index {} is not odd in [3, {}]", t.j, r.k - 1)));
            }
            let c = parse_int(&t.c)?;
            if !c.is_zero() {
                coefficients.insert(t.j, c);
            }
        }
        Ok(OddOddEquation { k: r.k, i: r.i, coefficients })
    }
}

// ---------------------------------------------------------------------------
// LaTeX

/// `\zeta(q,p)`, `T(r,q,p)`, `\zeta(k)`, `\zeta(a)\zeta(b)`.
pub fn symbol_latex(s: &Symbol) -> String {
    match s {
        Symbol::DZ(q, p) => format!("\\zeta({q},{p})"),
        Symbol::T(r, q, p) => format!("T({r},{q},{p})"),
        Symbol::Z(k) => format!("\\zeta({k})"),
        Symbol::P(a, b) if a == b => format!("\\zeta({a})^2"),
        Symbol::P(a, b) => format!("\\zeta({a})\\zeta({b})"),
    }
}

fn rational_latex(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

/// A signed sum such as `2\zeta(3,9) - \frac{9}{2}\zeta(2,10)`; `0` if empty.
pub fn sum_latex(x: &FormalSum) -> String {
    let mut out = String::new();
    for (i, (s, c)) in x.iter().enumerate() {
        let mag = c.abs();
        match (i, c.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if !mag.is_one() {
            out.push_str(&rational_latex(&mag));
        }
        out.push_str(&symbol_latex(s));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn space_latex(mode: QuotientMode, k: u32) -> Option<String> {
    match mode {
        QuotientMode::Exact => None,
        QuotientMode::ModZetaK => Some(format!("\\mathbb{{Q}}\\zeta({k})")),
        QuotientMode::ModPZ => Some(format!("\\mathcal{{PZ}}_{{{k}}}")),
    }
}

pub fn relation_latex(rel: &Relation) -> String {
    let k = rel.weight().unwrap_or(0);
    match space_latex(rel.mode, k) {
        None => format!("{} = 0", sum_latex(&rel.lhs)),
        Some(space) => format!("{} \\in {space}", sum_latex(&rel.lhs)),
    }
}

/// `\zeta(3,9) \equiv -\frac{9}{2}\zeta(2,10) \pmod{\mathcal{PZ}_{12}}`.
pub fn reduction_latex(r: &ReductionResult) -> String {
    format!(
        "{} \\equiv {} \\pmod{{\\mathcal{{PZ}}_{{{}}}}}",
        symbol_latex(&r.input),
        sum_latex(&r.coefficients),
        r.generators.weight()
    )
}

pub fn equation_latex(e: &OddOddEquation) -> String {
    format!("{} = 0", sum_latex(&e.to_formal_sum()))
}

// ---------------------------------------------------------------------------
// Persisted tables

/// Every reduction of one weight onto one generator set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub schema: u32,
    pub weight: u32,
    pub epsilon: String,
    pub generators: Vec<SymbolRepr>,
    pub entries: Vec<EntryRepr>,
}

impl TableFile {
    /// Reduces every `ζ(j, k-j)`, `2 <= j <= k-1`.
    pub fn build(k: u32, epsilon: &[u8]) -> Result<Self> {
        let mut engine = Reducer::new(k, epsilon)?;
        let entries = (2..k)
            .map(|j| engine.reduce(j, k - j).map(|r| entry_repr(&r)))
            .collect::<Result<_>>()?;
        Ok(TableFile {
            schema: SCHEMA_VERSION,
            weight: k,
            epsilon: epsilon_string(epsilon),
            generators: engine.generators().members().iter().map(|g| g.to_repr()).collect(),
            entries,
        })
    }

    /// Decodes the entries back into reductions.
    pub fn reductions(&self) -> Result<Vec<ReductionResult>> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported table schema {}", self.schema)));
        }
        let gens = generator_set(self.weight, &parse_epsilon(&self.epsilon)?)?;
        check_generator_order(&gens, &self.generators)?;
        self.entries
            .iter()
            .map(|e| entry_from_repr(e.clone(), &gens))
            .collect()
    }

    pub fn file_name(&self) -> String {
        table_file_name(self.weight, &self.epsilon)
    }
}

/// `dzv_k{k}_e{bits}.json`.
pub fn table_file_name(k: u32, epsilon: &str) -> String {
    format!("dzv_k{k}_e{epsilon}.json")
}

/// What [`write_table`] did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableStatus {
    Written,
    Validated,
}

/// Writes `table` into `dir` atomically. An existing file is validated against
/// `table` instead, unless `force` is set.
pub fn write_table(dir: &Path, table: &TableFile, force: bool) -> Result<(PathBuf, TableStatus)> {
    let path = dir.join(table.file_name());
    if path.exists() && !force {
        let stored: TableFile = serde_json::from_str(&fs::read_to_string(&path)?)?;
        if &stored != table {
            return Err(Error::TableMismatch(path.display().to_string()));
        }
        return Ok((path, TableStatus::Validated));
    }
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    serde_json::to_writer_pretty(&mut tmp, table)?;
    tmp.write_all(b"\n")?;
    tmp.as_file().sync_all()?;
    tmp.persist(&path).map_err(|e| Error::Io(e.error))?;
    Ok((path, TableStatus::Written))
}

/// Reads and decodes a table file.
pub fn read_table(path: &Path) -> Result<TableFile> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}
