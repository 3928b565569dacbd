//! The catalog of identities and the machinery that checks them.
//!
//! Each identity pairs a closed-form left side with a right-hand series
//! program. Planning picks the truncation from the series' convergence
//! class; verification evaluates both sides and compares the gap with the
//! certified bound, or with a tolerance for the double series whose outer
//! sums converge only conditionally.

mod brute;
mod catalog;
mod double;
pub mod expr;
mod plan;
mod series;

use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use brute::{brute_double_sum, BruteSum, BruteVariant};
pub use catalog::{
    identity, list_identities, ConvergenceClass, DoubleKernel, Identity, IdentitySummary, RhsProgram, Tolerance,
};
pub use double::{double_series, mobius_cot, DoubleEstimate};
pub use plan::{plan_for, plan_with_terms, TruncationPlan, VerifyConfig};
pub use series::RhsValue;

use crate::error::{Error, Result};
use crate::mp::{PrecisionContext, Real, MAX_DIGITS, MIN_DIGITS};

/// The left side of `id` at the precision of `ctx`.
///
/// ```
/// use zeta_identities::registry::evaluate_lhs;
/// use zeta_identities::PrecisionContext;
///
/// let ctx = PrecisionContext::new(20).unwrap();
/// let v = evaluate_lhs("T4C1:case11(a=6)", &ctx).unwrap();
/// assert_eq!(v.to_decimal(10), "4.000000000");
/// ```
pub fn evaluate_lhs(id: &str, ctx: &PrecisionContext) -> Result<Real> {
    identity(id)?.lhs.eval(ctx)
}

/// The truncation plan for `id` under the default configuration.
pub fn plan_truncation(id: &str, digits: u32) -> Result<TruncationPlan> {
    check_digits(digits)?;
    Ok(plan_for(identity(id)?, digits, &VerifyConfig::default()))
}

/// A plan cutting the single series of `id` after `terms` terms.
pub fn plan_fixed(id: &str, digits: u32, terms: usize) -> Result<TruncationPlan> {
    check_digits(digits)?;
    plan_with_terms(identity(id)?, digits, terms).ok_or_else(|| Error::Usage(format!("{id} is not a single series")))
}

/// The right side of `id` truncated as `plan` says. Double series come back
/// rounded from double precision, with the registered tolerance as `bound`.
pub fn evaluate_rhs(id: &str, plan: &TruncationPlan, ctx: &PrecisionContext) -> Result<RhsValue> {
    let ident = identity(id)?;
    match ident.rhs {
        RhsProgram::MobiusCot | RhsProgram::Double { .. } => {
            let est = estimate(ident, plan)?;
            Ok(RhsValue { value: Real::from_f64(est.value, ctx), bound: f64::NAN, terms: est.inner_terms })
        }
        ref p => series::evaluate(p, plan, ctx),
    }
}

fn estimate(ident: &Identity, plan: &TruncationPlan) -> Result<DoubleEstimate> {
    match ident.rhs {
        RhsProgram::MobiusCot => mobius_cot(plan.outer_terms),
        RhsProgram::Double { kernel, g, f, inner_ratio, .. } => double_series(kernel, g, f, plan.outer_terms, inner_ratio),
        _ => Err(Error::Usage(format!("{} is not a double series", ident.id))),
    }
}

fn check_digits(digits: u32) -> Result<()> {
    if !(MIN_DIGITS..=MAX_DIGITS).contains(&digits) {
        return Err(Error::Config(format!("digits must lie in {MIN_DIGITS}..={MAX_DIGITS}, got {digits}")));
    }
    Ok(())
}

/// Outcome of one verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// The gap is inside a certified bound.
    Verified,
    /// The gap is inside the estimated tolerance of an uncertified plan.
    Consistent,
    Fail,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::Consistent => "consistent",
            Status::Fail => "fail",
        })
    }
}

/// What a verification found. Numbers are decimal strings so that nothing
/// passes through binary floating point on the way out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub title: String,
    pub paper_ref: String,
    pub digits_requested: u32,
    pub lhs: String,
    pub rhs: String,
    pub abs_diff: String,
    pub error_bound: String,
    pub terms_used: u64,
    pub elapsed_ms: u64,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<String>,
}

/// Verifies `id` at `digits` with the default configuration.
///
/// ```
/// use zeta_identities::registry::{verify, Status};
///
/// let r = verify("CLR", 30).unwrap();
/// assert_eq!(r.status, Status::Verified);
/// ```
pub fn verify(id: &str, digits: u32) -> Result<VerificationReport> {
    verify_with(id, digits, &VerifyConfig::default())
}

/// Verifies `id`; an unknown id or out-of-range digits is an error, anything
/// that goes wrong during evaluation becomes a failed report.
pub fn verify_with(id: &str, digits: u32, config: &VerifyConfig) -> Result<VerificationReport> {
    check_digits(digits)?;
    let plan = plan_for(identity(id)?, digits, config);
    verify_plan(id, &plan, config)
}

/// Verifies `id` under a plan chosen by the caller.
pub fn verify_plan(id: &str, plan: &TruncationPlan, config: &VerifyConfig) -> Result<VerificationReport> {
    check_digits(plan.digits)?;
    let ident = identity(id)?;
    let digits = plan.digits;
    let start = Instant::now();
    let mut report = VerificationReport {
        id: ident.id.clone(),
        title: ident.title.clone(),
        paper_ref: ident.paper_ref.clone(),
        digits_requested: digits,
        lhs: String::new(),
        rhs: String::new(),
        abs_diff: String::new(),
        error_bound: String::new(),
        terms_used: 0,
        elapsed_ms: 0,
        status: Status::Fail,
        diagnostics: None,
    };
    if let Err(e) = fill(ident, plan, config, &mut report) {
        report.status = Status::Fail;
        report.diagnostics = Some(e.to_string());
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn sci(x: f64, ctx: &PrecisionContext) -> String {
    if x.is_finite() {
        Real::from_f64(x, ctx).to_decimal(3)
    } else {
        "inf".into()
    }
}

fn fill(ident: &Identity, plan: &TruncationPlan, config: &VerifyConfig, report: &mut VerificationReport) -> Result<()> {
    let show = PrecisionContext::new(MIN_DIGITS)?;
    if plan.guaranteed {
        let ctx = PrecisionContext::new(plan.eval_digits())?;
        let lhs = ident.lhs.eval(&ctx)?;
        let rhs = series::evaluate(&ident.rhs, plan, &ctx)?;
        let diff = (&lhs - &rhs.value).abs();
        // every term carries a few units of the working precision
        let rounding = (rhs.terms as f64 + 100.0) * ctx.working_eps() * lhs.to_f64().abs().max(1.0);
        let bound = rhs.bound + rounding;
        report.lhs = lhs.to_decimal(ctx.digits() as usize);
        report.rhs = rhs.value.to_decimal(ctx.digits() as usize);
        report.abs_diff = diff.to_decimal(3);
        report.error_bound = sci(bound, &show);
        report.terms_used = rhs.terms as u64;
        report.status = if diff.to_f64() <= bound { Status::Verified } else { Status::Fail };
        if plan.achievable_digits < plan.digits {
            report.diagnostics = Some(format!(
                "series ceiling reached; certified to {} of {} digits",
                plan.achievable_digits, plan.digits
            ));
        }
    } else {
        let ctx = PrecisionContext::new(plan.digits)?;
        let lhs = ident.lhs.eval(&ctx)?;
        let est = estimate(ident, plan)?;
        let tol = ident.tolerance.ok_or_else(|| Error::Usage(format!("{} has no tolerance", ident.id)))?;
        let tol = Tolerance { value: config.tolerance.unwrap_or(tol.value), ..tol };
        let window = tol.absolute_for(lhs.to_f64());
        let diff = (lhs.to_f64() - est.value).abs();
        report.lhs = lhs.to_decimal(ctx.digits() as usize);
        report.rhs = Real::from_f64(est.value, &ctx).to_decimal(16);
        report.abs_diff = sci(diff, &show);
        report.error_bound = sci(window, &show);
        report.terms_used = est.inner_terms as u64;
        report.status = if diff <= window { Status::Consistent } else { Status::Fail };
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clr_at_thirty_digits() {
        let r = verify("CLR", 30).unwrap();
        assert_eq!(r.status, Status::Verified, "{r:?}");
        assert!(r.lhs.starts_with("1.20205690315959428539973816"));
    }

    #[test]
    fn report_json_round_trips() {
        let r = verify("T1C:k=1", 15).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&s).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
        assert!(!s.contains("diagnostics"));
    }

    #[test]
    fn unknown_ids_and_bad_digits_are_errors() {
        assert!(matches!(verify("NOPE", 20), Err(Error::Usage(_))));
        assert!(matches!(verify("CLR", 5), Err(Error::Config(_))));
    }

    #[test]
    fn lhs_values() {
        let ctx = PrecisionContext::new(25).unwrap();
        let v = evaluate_lhs("T1:k=1", &ctx).unwrap();
        let pi4 = Real::pi(&ctx).powi(4);
        let want = &pi4 / 36i64 + &pi4 / 90i64;
        assert!((v - want).abs().to_f64() < 1e-30);
    }
}
