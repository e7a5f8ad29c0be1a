use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),

    #[error("mixed weights: sum has weight {expected}, term has weight {found}")]
    MixedWeight { expected: u32, found: u32 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("reduction failed: {0}")]
    Reduction(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("insufficient precision: error bound {bound_log10:.1} (log10) too large for denominators up to 10^{den_log10:.0}")]
    InsufficientPrecision { bound_log10: f64, den_log10: f64 },

    #[error("no rational with denominator below the bound matches {0}")]
    NoRational(String),

    #[error("re-verification failed for {label}: residual 10^{residual_log10:.1}")]
    Reverification { label: String, residual_log10: f64 },

    #[error("exact relation system for weight {0} did not reach full rank")]
    RankDeficient(u32),

    #[error("stored table {0} does not match the recomputed reductions")]
    TableMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
