//! Rigorous high-precision evaluation of single, double and Tornheim zeta
//! values, rational reconstruction and relation verification.
//!
//! Precision is always passed explicitly as a number of decimal digits; values
//! are computed with 15 guard digits and carry a rigorous error radius.

mod approx;
mod direct;
mod reconstruct;
mod series;
mod verify;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

pub use approx::ApproxReal;
pub use direct::{tornheim_direct, DirectEstimate};
pub use reconstruct::rational_reconstruct;
pub use series::{cutoff, weight_table, WeightTable};
pub use verify::{verify_relation, VerifyReport};

use crate::error::{Error, Result};
use crate::relations::tornheim_expand;
use crate::symbols::{FormalSum, Symbol};

/// Smallest precision any public entry point accepts.
pub const MIN_DIGITS: u32 = 10;

/// Guard digits added to every requested precision.
pub const GUARD_DIGITS: u32 = 15;

/// Binary working precision for `digits` decimal digits plus guard digits.
pub fn digits_to_bits(digits: u32) -> u32 {
    ((digits + GUARD_DIGITS) as f64 * std::f64::consts::LOG2_10).ceil() as u32
}

/// Rejects precisions below [`MIN_DIGITS`].
pub fn check_digits(digits: u32) -> Result<()> {
    if digits < MIN_DIGITS {
        return Err(Error::Precondition(format!(
            "digits below minimum ({MIN_DIGITS})"
        )));
    }
    Ok(())
}

/// Decimal digits in the largest coefficient of `x` (numerator or denominator).
fn coefficient_digits(x: &FormalSum) -> u32 {
    x.iter()
        .map(|(_, c)| c.numer().bits().max(c.denom().bits()))
        .max()
        .map_or(0, |b| (b as f64 * std::f64::consts::LOG10_2).ceil() as u32)
}

/// An evaluated formal sum together with its largest term magnitude.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub value: ApproxReal,
    /// `log10` of the largest `|c · value(symbol)|` over the terms.
    pub max_term_log10: f64,
}

/// Evaluation context caching one [`WeightTable`] per weight and precision.
#[derive(Debug, Default)]
pub struct Evaluator {
    tables: Mutex<HashMap<(u32, u32), Arc<WeightTable>>>,
}

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    /// All single and double zeta values of weight `k` at `digits` digits.
    pub fn table(&self, k: u32, digits: u32) -> Result<Arc<WeightTable>> {
        check_digits(digits)?;
        let bits = digits_to_bits(digits);
        if let Some(t) = self.tables.lock().expect("table cache poisoned").get(&(k, bits)) {
            return Ok(t.clone());
        }
        let t = Arc::new(weight_table(k, bits)?);
        self.tables
            .lock()
            .expect("table cache poisoned")
            .insert((k, bits), t.clone());
        Ok(t)
    }

    /// Drops every cached table.
    pub fn clear(&self) {
        self.tables.lock().expect("table cache poisoned").clear();
    }

    pub fn zeta_single(&self, s: u32, digits: u32) -> Result<ApproxReal> {
        if s < 2 {
            return Err(Error::InvalidSymbol(format!("Z({s}) diverges")));
        }
        Ok(self.table(s, digits)?.zeta(s).expect("in range").clone())
    }

    pub fn zeta_double(&self, q: u32, p: u32, digits: u32) -> Result<ApproxReal> {
        Symbol::DZ(q, p).canonicalize()?;
        Ok(self.table(q + p, digits)?.dz(q).expect("in range").clone())
    }

    /// Primary path: the exact expansion into double zetas.
    pub fn tornheim(&self, r: u32, q: u32, p: u32, digits: u32) -> Result<ApproxReal> {
        Symbol::T(r, q, p).canonicalize()?;
        self.eval(&tornheim_expand(r, q, p)?, digits)
    }

    pub fn symbol(&self, sym: &Symbol, digits: u32) -> Result<ApproxReal> {
        let table = self.table(sym.weight(), digits)?;
        self.symbol_in(&table, sym, digits)
    }

    fn symbol_in(&self, table: &WeightTable, sym: &Symbol, digits: u32) -> Result<ApproxReal> {
        match sym.canonicalize()? {
            Symbol::DZ(q, _) => Ok(table.dz(q).expect("in range").clone()),
            Symbol::Z(s) => Ok(table.zeta(s).expect("in range").clone()),
            Symbol::P(a, b) => Ok(table
                .zeta(a)
                .expect("in range")
                .mul(table.zeta(b).expect("in range"))),
            Symbol::T(r, q, p) => self.tornheim(r, q, p, digits),
        }
    }

    /// Evaluates a formal sum, tracking the largest term magnitude.
    ///
    /// Terms are computed with extra working digits to absorb the size of the
    /// coefficients, so the result is accurate to `digits` regardless of
    /// cancellation among large terms.
    pub fn evaluate(&self, x: &FormalSum, digits: u32) -> Result<Evaluation> {
        check_digits(digits)?;
        let bits = digits_to_bits(digits);
        let Some(k) = x.weight() else {
            return Ok(Evaluation {
                value: ApproxReal::zero(bits),
                max_term_log10: f64::NEG_INFINITY,
            });
        };
        let work = digits + coefficient_digits(x);
        let table = self.table(k, work)?;
        let mut value = ApproxReal::zero(digits_to_bits(work));
        let mut max_term = f64::NEG_INFINITY;
        for (sym, c) in x.iter() {
            let term = self.symbol_in(&table, sym, work)?.scale(c);
            max_term = max_term.max(term.abs_upper_log10());
            value = value.add(&term);
        }
        Ok(Evaluation {
            value: value.truncate_bits(bits),
            max_term_log10: max_term,
        })
    }

    pub fn eval(&self, x: &FormalSum, digits: u32) -> Result<ApproxReal> {
        Ok(self.evaluate(x, digits)?.value)
    }
}

/// `ζ(s)` to within `10^-digits`.
pub fn zeta_single(s: u32, digits: u32) -> Result<ApproxReal> {
    Evaluator::new().zeta_single(s, digits)
}

/// `ζ(q, p)` to within `10^-digits`.
pub fn zeta_double(q: u32, p: u32, digits: u32) -> Result<ApproxReal> {
    Evaluator::new().zeta_double(q, p, digits)
}

/// `T(r, q, p)` to within `10^-digits`, via the exact expansion.
pub fn tornheim(r: u32, q: u32, p: u32, digits: u32) -> Result<ApproxReal> {
    Evaluator::new().tornheim(r, q, p, digits)
}

/// Evaluates a weight-homogeneous formal sum.
pub fn eval_formal(x: &FormalSum, digits: u32) -> Result<ApproxReal> {
    Evaluator::new().eval(x, digits)
}
