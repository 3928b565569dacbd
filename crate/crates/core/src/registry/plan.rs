use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::catalog::{Identity, RhsProgram};
use crate::arith::FunctionId;
use crate::kernels::{b_peak, cot_bound_constant};
use crate::mp::{MAX_DIGITS, MIN_DIGITS};

/// Knobs shared by planning and verification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    /// Table length available to the double series.
    pub sieve_limit: usize,
    /// Most terms a polynomially convergent series may use.
    pub series_ceiling: usize,
    /// Replaces the registered tolerance of estimate-class identities.
    pub tolerance: Option<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { sieve_limit: 1_000_000, series_ceiling: 100_000, tolerance: None }
    }
}

/// How far each series is taken, and what that buys.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncationPlan {
    pub digits: u32,
    pub series_terms: usize,
    /// Outer terms of a double series; zero for single series.
    pub outer_terms: usize,
    /// Error allowed to each quadrature; zero when there is none.
    pub quadrature_error: f64,
    pub guaranteed: bool,
    /// Bound on everything the truncations discard; an estimate when not guaranteed.
    pub truncation_bound: f64,
    /// Digits the truncation supports, at most `digits`.
    pub achievable_digits: u32,
}

impl TruncationPlan {
    /// Precision the two sides are evaluated at: enough for the achievable
    /// digits and a little more, never more than requested.
    pub fn eval_digits(&self) -> u32 {
        (self.achievable_digits + 3).min(self.digits).clamp(MIN_DIGITS, MAX_DIGITS)
    }
}

// cheap kernels are allowed the full ceiling, digamma ones a fifth of it
const DIGAMMA_SHARE: usize = 5;

/// Bound on the discarded part of a single series cut after `n` terms.
pub(crate) fn tail_bound(program: &RhsProgram, n: f64) -> f64 {
    match *program {
        RhsProgram::CotSeries { k } => {
            // the 1/n part is summed exactly, and |a_k(n) - 1/n| <= B_k
            let q = (4 * k - 1) as f64;
            cot_bound_constant(k) * n.powf(1.0 - q) / (q - 1.0)
        }
        RhsProgram::AlphaSeries { k } => {
            // |alpha_k(n)| <= 8k q^n/(1-q)^2, q = e^{-2 pi sin(pi/2k)}
            let q = (-2.0 * PI * (PI / (2.0 * k as f64)).sin()).exp();
            4.0 * PI * q.powf(n + 1.0) / (1.0 - q).powi(3)
        }
        RhsProgram::Clr => {
            let q = (-2.0 * PI).exp();
            2.0 * q.powf(n + 1.0) / (1.0 - q).powi(2)
        }
        RhsProgram::DigammaSeries { k, l } => {
            // |b_{k,l}(n) - main| <= 2 peak/n after the main term is summed exactly
            let p = (4 * k - 2 * l - 1) as f64;
            2.0 * b_peak(k, l) * n.powf(-p) / p
        }
        RhsProgram::BetaSeries => 2.0 * b_peak(2, 1) * n.powf(-5.0) / 5.0,
        RhsProgram::OmegaSeries { k } => {
            // |c_k(n)| <= ln n + 2
            let p = (4 * k + 1) as f64;
            n.powf(1.0 - p) * ((n.ln() + 2.0) / (p - 1.0) + 1.0 / (p - 1.0).powi(2))
        }
        RhsProgram::AlphaOmega => {
            // |alpha(n) + pi/(3 sqrt 3)| <= 2/(3n) + (pi/sqrt 3) 2 q^n/(1 - q), q = e^{-pi sqrt 3}
            let q = (-PI * 3f64.sqrt()).exp();
            4.0 / 15.0 * n.powf(-5.0) + 4.0 * PI / 3f64.sqrt() * q.powf(n + 1.0) / (1.0 - q).powi(2)
        }
        _ => 0.0,
    }
}

fn smallest_terms(program: &RhsProgram, target: f64, ceiling: usize) -> usize {
    let ok = |n: usize| tail_bound(program, n as f64) <= target;
    if !ok(ceiling) {
        return ceiling;
    }
    let mut hi = 1;
    while !ok(hi) {
        hi *= 2;
    }
    let mut lo = hi / 2;
    // ok(hi), !ok(lo) unless lo == 0
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi.min(ceiling).max(1)
}

fn digits_of(bound: f64, digits: u32) -> u32 {
    if bound <= 0.0 {
        return digits;
    }
    ((-bound.log10()).floor().max(0.0) as u32).min(digits)
}

/// The finite-support functions whose inner sums need no cut.
pub(crate) fn support_of(f: FunctionId) -> Option<usize> {
    match f {
        FunctionId::DeltaOne => Some(1),
        FunctionId::DividesA(a) => Some(a as usize),
        _ => None,
    }
}

/// Plans one identity at `digits` under `config`.
pub fn plan_for(identity: &Identity, digits: u32, config: &VerifyConfig) -> TruncationPlan {
    let target = 0.5 * 10f64.powi(-(digits as i32));
    let single = |terms: usize| {
        let bound = tail_bound(&identity.rhs, terms as f64);
        TruncationPlan {
            digits,
            series_terms: terms,
            outer_terms: 0,
            quadrature_error: 0.0,
            guaranteed: true,
            truncation_bound: bound,
            achievable_digits: digits_of(2.0 * bound, digits),
        }
    };
    let ceiling = config.series_ceiling.max(10);
    match &identity.rhs {
        p @ (RhsProgram::CotSeries { .. } | RhsProgram::AlphaSeries { .. } | RhsProgram::Clr) => {
            single(smallest_terms(p, target, ceiling))
        }
        p @ (RhsProgram::DigammaSeries { .. }
        | RhsProgram::BetaSeries
        | RhsProgram::OmegaSeries { .. }
        | RhsProgram::AlphaOmega) => single(smallest_terms(p, target, (ceiling / DIGAMMA_SHARE).max(10))),
        RhsProgram::GIntegral { .. } | RhsProgram::FIntegral { .. } => TruncationPlan {
            digits,
            series_terms: 0,
            outer_terms: 0,
            quadrature_error: target / 2.0,
            guaranteed: true,
            truncation_bound: 0.0,
            achievable_digits: digits,
        },
        RhsProgram::MobiusCot => TruncationPlan {
            digits,
            series_terms: 1,
            outer_terms: config.sieve_limit,
            quadrature_error: 0.0,
            guaranteed: false,
            truncation_bound: f64::NAN,
            achievable_digits: 0,
        },
        RhsProgram::Double { f, inner_ratio, outer_cap, .. } => {
            let outer = match support_of(*f) {
                Some(_) => config.sieve_limit.min(*outer_cap),
                None => (config.sieve_limit / inner_ratio).min(*outer_cap),
            }
            .max(1);
            TruncationPlan {
                digits,
                series_terms: inner_ratio * outer,
                outer_terms: outer,
                quadrature_error: 0.0,
                guaranteed: false,
                truncation_bound: f64::NAN,
                achievable_digits: 0,
            }
        }
    }
}

/// A plan that cuts a single series after exactly `terms` terms, carrying
/// the bound for that cut. `None` for the quadrature forms and double series.
pub fn plan_with_terms(identity: &Identity, digits: u32, terms: usize) -> Option<TruncationPlan> {
    match identity.rhs {
        RhsProgram::CotSeries { .. }
        | RhsProgram::AlphaSeries { .. }
        | RhsProgram::Clr
        | RhsProgram::DigammaSeries { .. }
        | RhsProgram::BetaSeries
        | RhsProgram::OmegaSeries { .. }
        | RhsProgram::AlphaOmega => {
            let terms = terms.max(1);
            let bound = tail_bound(&identity.rhs, terms as f64);
            Some(TruncationPlan {
                digits,
                series_terms: terms,
                outer_terms: 0,
                quadrature_error: 0.0,
                guaranteed: true,
                truncation_bound: bound,
                achievable_digits: digits_of(2.0 * bound, digits),
            })
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::identity;

    fn plan(id: &str, digits: u32) -> TruncationPlan {
        plan_for(identity(id).unwrap(), digits, &VerifyConfig::default())
    }

    #[test]
    fn clr_needs_a_dozen_terms() {
        let p = plan("CLR", 30);
        assert!(p.guaranteed);
        assert!((10..=16).contains(&p.series_terms), "{}", p.series_terms);
        assert!(p.truncation_bound <= 0.5e-30);
    }

    #[test]
    fn cotangent_series_hits_the_ceiling() {
        let p = plan("T1:k=1", 30);
        assert_eq!(p.series_terms, 100_000);
        assert!(p.guaranteed);
        assert!((6..=10).contains(&p.achievable_digits), "{}", p.achievable_digits);
        let p = plan("T1:k=3", 30);
        assert!(p.series_terms < 100_000);
        assert_eq!(p.achievable_digits, 30);
    }

    #[test]
    fn conditional_plans_are_estimates() {
        let p = plan("T4C1:case1", 20);
        assert!(!p.guaranteed);
        assert_eq!(p.outer_terms, 1_000_000);
        let p = plan("T4C1:case3", 20);
        assert!(!p.guaranteed);
        assert_eq!(p.outer_terms, 4000);
    }

    #[test]
    fn fixed_cuts_carry_their_bound() {
        let p = plan_with_terms(identity("T3:k=1").unwrap(), 20, 1000).unwrap();
        assert_eq!(p.series_terms, 1000);
        // 1000^{-4} (ln 1000 + 2)/4 + 1000^{-4}/16
        assert!((p.truncation_bound / 2.27e-12 - 1.0).abs() < 0.01, "{}", p.truncation_bound);
        assert!(plan_with_terms(identity("T2C2:m=0").unwrap(), 20, 10).is_none());
    }

    #[test]
    fn bounds_decrease() {
        for id in ["T1:k=2", "T2:k=3,l=4", "T2C1", "T3:k=1", "T3C1", "T1C:k=2"] {
            let prog = &identity(id).unwrap().rhs;
            let a = tail_bound(prog, 10.0);
            let b = tail_bound(prog, 20.0);
            assert!(b < a && b > 0.0, "{id}");
        }
    }
}
