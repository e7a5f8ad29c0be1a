//! Numerical certificates for relations.

use super::{check_digits, Evaluator};
use crate::error::{Error, Result};
use crate::exactsys::lift_with;
use crate::symbols::{FormalSum, QuotientMode, Relation};

/// Outcome of checking one relation numerically.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub label: String,
    pub mode: QuotientMode,
    /// `log10` of the certified bound on `|lhs|` (after lifting, for quotient modes).
    pub residual_log10: f64,
    /// `log10` of the pass threshold at `digits`.
    pub threshold_log10: f64,
    /// Residual and threshold at twice the precision, for quotient modes.
    pub reverify: Option<(f64, f64)>,
    pub pass: bool,
    pub digits: u32,
    /// Reconstructed `ζ(k)` and product coefficients, for quotient modes.
    pub coefficients: Option<FormalSum>,
    /// Why a quotient-mode relation could not be lifted, if it could not.
    pub note: Option<String>,
}

/// Residual bound and relative threshold for an exact relation.
fn exact_check(ev: &Evaluator, lhs: &FormalSum, digits: u32, slack: u32) -> Result<(f64, f64)> {
    let e = ev.evaluate(lhs, digits)?;
    let scale = e.max_term_log10.max(0.0);
    Ok((e.value.abs_upper_log10(), scale - (digits - slack) as f64))
}

impl Evaluator {
    /// Certifies `rel` at `digits` digits.
    ///
    /// Exact relations must evaluate below `10^-(digits-10)` times the largest
    /// term. Quotient-mode relations are first lifted to exact ones by
    /// reconstructing their product part; the lift must then pass at `digits`
    /// and below `10^-(2 digits - 15)` (relative) at twice the precision.
    pub fn verify(&self, rel: &Relation, digits: u32) -> Result<VerifyReport> {
        check_digits(digits)?;
        let mut report = VerifyReport {
            label: rel.label.clone(),
            mode: rel.mode,
            residual_log10: f64::INFINITY,
            threshold_log10: f64::NEG_INFINITY,
            reverify: None,
            pass: false,
            digits,
            coefficients: None,
            note: None,
        };
        if rel.mode == QuotientMode::Exact {
            let (res, thr) = exact_check(self, &rel.lhs, digits, 10)?;
            report.residual_log10 = res;
            report.threshold_log10 = thr;
            report.pass = res < thr;
            return Ok(report);
        }
        let lifted = match lift_with(self, rel, digits) {
            Ok(l) => l,
            Err(
                e @ (Error::NoRational(_)
                | Error::InsufficientPrecision { .. }
                | Error::Reverification { .. }
                | Error::RankDeficient(_)
                | Error::Reduction(_)),
            ) => {
                report.note = Some(e.to_string());
                if let Error::Reverification { residual_log10, .. } = e {
                    report.residual_log10 = residual_log10;
                }
                return Ok(report);
            }
            Err(e) => return Err(e),
        };
        let (res, thr) = exact_check(self, &lifted.lhs, digits, 10)?;
        let (res2, thr2) = exact_check(self, &lifted.lhs, 2 * digits, 15)?;
        report.residual_log10 = res;
        report.threshold_log10 = thr;
        report.reverify = Some((res2, thr2));
        report.coefficients = Some(lifted.lhs.product_part());
        report.pass = res < thr && res2 < thr2;
        Ok(report)
    }
}

/// [`Evaluator::verify`] with a fresh evaluation context.
pub fn verify_relation(rel: &Relation, digits: u32) -> Result<VerifyReport> {
    Evaluator::new().verify(rel, digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::{descent, euler_top, gkz_sum, stuffle};
    use crate::symbols::{rat, Symbol};

    #[test]
    fn exact_relations_pass() {
        let ev = Evaluator::new();
        for rel in [euler_top(6).unwrap(), gkz_sum(12).unwrap(), stuffle(3, 9).unwrap()] {
            let r = ev.verify(&rel, 40).unwrap();
            assert!(r.pass, "{r:?}");
            assert!(r.residual_log10 < -30.0);
        }
    }

    #[test]
    fn false_relation_fails() {
        let mut lhs = gkz_sum(12).unwrap().lhs;
        lhs.add_term(Symbol::DZ(2, 10), rat(1)).unwrap();
        let rel = Relation::new(lhs, QuotientMode::Exact, "broken");
        assert!(!verify_relation(&rel, 40).unwrap().pass);
    }

    #[test]
    fn descent_lifts_and_reverifies() {
        let r = verify_relation(&descent(3, 12).unwrap(), 50).unwrap();
        assert!(r.pass, "{r:?}");
        let (res2, _) = r.reverify.unwrap();
        assert!(res2 < -80.0);
        assert!(r.coefficients.unwrap().iter().all(|(s, _)| s.is_product_part()));
    }

    #[test]
    fn low_precision_rejected() {
        assert!(verify_relation(&euler_top(6).unwrap(), 5).is_err());
    }
}
