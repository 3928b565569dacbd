//! Extended-precision right-hand sides: single series and the quadrature forms.

use rayon::prelude::*;

use super::catalog::RhsProgram;
use super::plan::TruncationPlan;
use crate::error::{Error, Result};
use crate::kernels::{
    a_k_with, alpha_fn, alpha_k, b_kl_with, beta_fn, c_k_with, fm_gm, series_constant, FamilyKind, SeriesConstant, RootSystem,
};
use crate::mp::{PrecisionContext, Real};
use crate::specfun::{bernoulli, integrate_exp_weight, zeta_int, QuadratureSpec, TailEnvelope};

/// A right-hand side value, the bound on what its truncations discard, and
/// the number of terms (or quadrature panels) that went into it.
#[derive(Debug, Clone)]
pub struct RhsValue {
    pub value: Real,
    pub bound: f64,
    pub terms: usize,
}

const CHUNK: usize = 64;

// sum_{n=1}^{N} term(n), chunked so the grouping never depends on thread count
fn series(n: usize, ctx: &PrecisionContext, term: impl Fn(u64) -> Result<Real> + Sync) -> Result<Real> {
    let idx: Vec<u64> = (1..=n as u64).collect();
    let parts: Vec<Result<Real>> = idx
        .par_chunks(CHUNK)
        .map(|c| {
            let mut acc = Real::zero(ctx);
            for &i in c {
                acc = acc + term(i)?;
            }
            Ok(acc)
        })
        .collect();
    let mut total = Real::zero(ctx);
    for p in parts {
        total = total + p?;
    }
    Ok(total)
}

fn inv_pow(n: u64, p: u32, ctx: &PrecisionContext) -> Real {
    Real::from_i64(n as i64, ctx).powi(-(p as i32))
}

fn bern(n: usize, ctx: &PrecisionContext) -> Result<Real> {
    Ok(Real::from_rational(&bernoulli(n)?, ctx))
}

pub(crate) fn evaluate(program: &RhsProgram, plan: &TruncationPlan, ctx: &PrecisionContext) -> Result<RhsValue> {
    let n = plan.series_terms;
    let pi = Real::pi(ctx);
    let bound = plan.truncation_bound;
    let done = |value: Real| Ok(RhsValue { value, bound, terms: n });
    match *program {
        RhsProgram::CotSeries { k } => {
            let rs = RootSystem::new(k, ctx)?;
            let p = 4 * k - 1;
            let sum = series(n, ctx, |i| {
                let w = Real::from_i64(i as i64, ctx);
                Ok((a_k_with(&rs, &w, ctx)?.value - w.recip()) * inv_pow(i, p, ctx))
            })?;
            done(sum + zeta_int(p as i64 + 1, ctx)?)
        }
        RhsProgram::AlphaSeries { k } => {
            let p = 4 * k - 1;
            let s0 = (&pi / (2 * k as i64)).sin();
            let head = &(&pi * &zeta_int(p as i64, ctx)?) / &(&s0 * k as i64);
            let sum = series(n, ctx, |i| Ok(alpha_k(k, i, ctx)? * inv_pow(i, p, ctx)))?;
            done(head + &(&pi * &sum) / (2 * k as i64))
        }
        RhsProgram::Clr => {
            let two_pi = &pi * 2i64;
            let sum = series(n, ctx, |i| {
                let e = (&two_pi * i as i64).exp() - 1i64;
                Ok(inv_pow(i, 3, ctx) / e)
            })?;
            done(&(&pi.powi(3) * 7i64) / 180i64 - &(sum * 2i64))
        }
        RhsProgram::DigammaSeries { k, l } => {
            let rs = RootSystem::new(k, ctx)?;
            let p = 4 * k - 2 * l - 1;
            let main = &pi / &(&(&pi * (l + 1) as i64) / (2 * k as i64)).sin() / k as i64;
            let sum = series(n, ctx, |i| {
                let w = Real::from_i64(i as i64, ctx);
                Ok((b_kl_with(&rs, l, &w, ctx)?.value - &main) * inv_pow(i, p, ctx))
            })?;
            done(sum + &main * &zeta_int(p as i64, ctx)?)
        }
        RhsProgram::BetaSeries => {
            let main = pi.half();
            let sum = series(n, ctx, |i| Ok((-beta_fn(i, ctx)? - &main) * inv_pow(i, 5, ctx)))?;
            done(sum + &main * &zeta_int(5, ctx)?)
        }
        RhsProgram::OmegaSeries { k } => {
            let rs = RootSystem::new(k, ctx)?;
            let p = 4 * k + 1;
            done(series(n, ctx, |i| {
                let w = Real::from_i64(i as i64, ctx);
                Ok(c_k_with(&rs, &w, ctx)?.value * inv_pow(i, p, ctx))
            })?)
        }
        RhsProgram::AlphaOmega => {
            let r3 = Real::from_i64(3, ctx).sqrt()?;
            let shift = &pi / &(&r3 * 3i64);
            let sum = series(n, ctx, |i| Ok((alpha_fn(i, ctx)? + &shift) * inv_pow(i, 5, ctx)))?;
            let z5 = zeta_int(5, ctx)?;
            let z6 = zeta_int(6, ctx)?;
            let s = series_constant(SeriesConstant::S, ctx)?;
            // 2 sum alpha/n^5 = 2 sum (alpha + pi/(3 sqrt 3))/n^5 - (2 pi/(3 sqrt 3)) zeta(5)
            let head = &(&shift * 4i64) * &z5 - &(&(&z6 * 2i64) / 3i64) + s;
            done(head + sum * 2i64)
        }
        RhsProgram::GIntegral { m } => {
            let mut head = &pi.half() * &zeta_int(5, ctx)? + series_constant(SeriesConstant::S0, ctx)?;
            for r in 0..=m as usize {
                let c = &bern(4 * r + 2, ctx)? * &zeta_int(4 * r as i64 + 7, ctx)? / (2 * r as i64 + 1);
                head = if r % 2 == 0 { head - c } else { head + c };
            }
            integral_form(head, FamilyKind::G, m, plan, ctx)
        }
        RhsProgram::FIntegral { m } => {
            let r3 = Real::from_i64(3, ctx).sqrt()?;
            let mut head = &(&pi * 4i64) / &(&r3 * 3i64) * zeta_int(5, ctx)? + series_constant(SeriesConstant::S, ctx)?;
            for r in 0..=m as usize {
                head = head + &bern(6 * r + 4, ctx)? * &zeta_int(6 * r as i64 + 9, ctx)? / (3 * r as i64 + 2);
            }
            integral_form(head, FamilyKind::F, m, plan, ctx)
        }
        RhsProgram::MobiusCot | RhsProgram::Double { .. } => {
            Err(Error::Usage("double series are estimated in double precision, not here".into()))
        }
    }
}

// head + (-1)^m int_0^inf K_m(t)/(e^{2 pi t} - 1) dt
fn integral_form(head: Real, kind: FamilyKind, m: u32, plan: &TruncationPlan, ctx: &PrecisionContext) -> Result<RhsValue> {
    let target = plan.quadrature_error;
    // G_m(t) <= 4 zeta(4m+7) t^{4m+1}, F_m(t) <= 4 zeta(6m+9) t^{6m+3},
    // and 1/(e^{2 pi t} - 1) <= 1.002 e^{-2 pi t} past t = 1
    let (lead, power) = match kind {
        FamilyKind::G => (zeta_int(4 * m as i64 + 7, ctx)?.to_f64(), 4 * m + 1),
        FamilyKind::F => (zeta_int(6 * m as i64 + 9, ctx)?.to_f64(), 6 * m + 3),
    };
    let envelope = TailEnvelope::new(4.0 * lead * 1.002, power as f64, 1.0);
    let cut = envelope.cut_for(target / 2.0);
    let two_pi = Real::pi(ctx) * 2i64;
    let per_point = target / (4.0 * cut);
    let integrand = move |t: &Real| -> Result<Real> {
        let x = (&two_pi * t).exp() - 1i64;
        let tol = (per_point * (2.0 * std::f64::consts::PI * t.to_f64()).exp_m1()).max(1e-300);
        let (v, _) = fm_gm(kind, m, t, tol, ctx)?;
        Ok(v / x)
    };
    let spec = QuadratureSpec::new(integrand, target, envelope);
    let q = integrate_exp_weight(&spec, ctx)?;
    let value = if m.is_multiple_of(2) { head + q.value } else { head - q.value };
    // the quadrature budget plus the per-point truncation of K_m
    Ok(RhsValue { value, bound: target * 1.25, terms: q.panels })
}
