//! Exact reduction and numerical certification of double zeta values of even
//! weight.
//!
//! * [`symbols`] — the symbol alphabet, exact rationals and formal sums.
//! * [`relations`] — primitive relations among double zetas, Tornheim series
//!   and products of zeta values.
//! * [`reduce`] — reduction of any `ζ(q,p)` onto a generator set modulo products.
//! * [`exactsys`] — exact linear algebra, spanning sets and the equations among
//!   `ζ(odd,odd)`.
//! * [`numeric`] — rigorous high-precision evaluation and rational reconstruction.
//! * [`io`] — JSON and LaTeX encodings and persisted reduction tables.

pub mod error;
pub mod exactsys;
pub mod io;
pub mod numeric;
pub mod reduce;
pub mod relations;
pub mod symbols;

pub use error::{Error, Result};
pub use symbols::{FormalSum, QuotientMode, Rational, Relation, Symbol};
