//! Integrals over `(0, inf)` against the weight `1/(e^{2 pi t} - 1)`.
//!
//! The finite part `(0, T]` is split into panels of width 1/2, each summed by
//! Gauss-Legendre and checked against its two halves. The discarded tail is
//! bounded through a [`TailEnvelope`].

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mp::{Complex, PrecisionContext, Real};

const PANEL_WIDTH: f64 = 0.5;
const MAX_DEPTH: u32 = 12;

/// `|integrand(t)| <= c * t^power * e^{-2 pi t}` for `t >= valid_from`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailEnvelope {
    pub c: f64,
    pub power: f64,
    pub valid_from: f64,
}

impl TailEnvelope {
    pub fn new(c: f64, power: f64, valid_from: f64) -> Self {
        TailEnvelope { c, power, valid_from }
    }

    /// `int_T^inf c t^p e^{-2 pi t} dt <= c T^p e^{-2 pi T} / (2 pi - p/T)`,
    /// or infinity when `T` is outside the envelope's range.
    pub fn tail_bound(&self, t: f64) -> f64 {
        let two_pi = 2.0 * std::f64::consts::PI;
        let rate = two_pi - self.power.max(0.0) / t;
        if t < self.valid_from || rate <= 0.0 {
            return f64::INFINITY;
        }
        (self.c.ln() + self.power * t.ln() - two_pi * t - rate.ln()).exp()
    }

    /// Smallest multiple of the panel width whose tail bound is below `budget`.
    pub fn cut_for(&self, budget: f64) -> f64 {
        let mut t = (self.valid_from.max(PANEL_WIDTH) / PANEL_WIDTH).ceil() * PANEL_WIDTH;
        while self.tail_bound(t) > budget {
            t += PANEL_WIDTH;
        }
        t
    }
}

pub type Integrand<'a> = Arc<dyn Fn(&Real) -> Result<Real> + Send + Sync + 'a>;

pub struct QuadratureSpec<'a> {
    pub integrand: Integrand<'a>,
    pub target_abs_error: f64,
    /// Overrides the cut chosen from the envelope.
    pub truncation_point: Option<f64>,
    pub envelope: TailEnvelope,
}

impl<'a> QuadratureSpec<'a> {
    pub fn new(
        integrand: impl Fn(&Real) -> Result<Real> + Send + Sync + 'a,
        target_abs_error: f64,
        envelope: TailEnvelope,
    ) -> Self {
        QuadratureSpec { integrand: Arc::new(integrand), target_abs_error, truncation_point: None, envelope }
    }
}

/// Value together with the error budget it was computed under.
#[derive(Debug, Clone)]
pub struct QuadratureResult {
    pub value: Real,
    pub tail_bound: f64,
    pub truncation_point: f64,
    pub panels: usize,
}

fn order_for(ctx: &PrecisionContext) -> usize {
    (0.6 * ctx.working_digits() as f64).ceil() as usize + 10
}

type Rule = Arc<Vec<(Real, Real)>>;

// Nodes and weights on [-1, 1], by Newton on P_n from the usual cosine guesses.
fn gauss_legendre(n: usize, ctx: &PrecisionContext) -> Rule {
    static RULES: OnceLock<Mutex<HashMap<(usize, usize), Rule>>> = OnceLock::new();
    let map = RULES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = map.lock().expect("gl rules").get(&(n, ctx.bits())) {
        return r.clone();
    }
    let work = ctx.raised(5);
    let eps_log = work.working_eps().log10();
    let mut rule = Vec::with_capacity(n);
    for i in 1..=n {
        let guess = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut x = Real::from_f64(guess, &work);
        let mut dp;
        loop {
            let (p, d) = legendre(n, &x, &work);
            dp = d;
            let dx = &p / &dp;
            x = &x - &dx;
            if dx.is_zero() || dx.log10_abs() < eps_log - 2.0 {
                dp = legendre(n, &x, &work).1;
                break;
            }
        }
        let w = Real::from_i64(2, &work) / ((Real::one(&work) - x.square()) * dp.square());
        rule.push((x.at(ctx), w.at(ctx)));
    }
    let rule = Arc::new(rule);
    map.lock().expect("gl rules").insert((n, ctx.bits()), rule.clone());
    rule
}

// (P_n(x), P_n'(x))
fn legendre(n: usize, x: &Real, ctx: &PrecisionContext) -> (Real, Real) {
    let mut p0 = Real::one(ctx);
    let mut p1 = x.clone();
    for j in 2..=n as i64 {
        let p2 = (x * &p1 * (2 * j - 1) - &p0 * (j - 1)) / j;
        p0 = p1;
        p1 = p2;
    }
    let d = (&p0 - &(x * &p1)) * n as i64 / (Real::one(ctx) - x.square());
    (p1, d)
}

fn panel(f: &Integrand, rule: &Rule, a: &Real, b: &Real, ctx: &PrecisionContext) -> Result<Real> {
    let mid = (a + b).half();
    let half = (b - a).half();
    let mut s = Real::zero(ctx);
    for (x, w) in rule.iter() {
        let t = &mid + &(&half * x);
        s = s + f(&t)? * w;
    }
    Ok(s * &half)
}

struct Panels<'s, 'a> {
    f: &'s Integrand<'a>,
    rule: Rule,
    ctx: PrecisionContext,
}

impl Panels<'_, '_> {
    fn one(&self, a: &Real, b: &Real) -> Result<Real> {
        panel(self.f, &self.rule, a, b, &self.ctx)
    }
}

fn adaptive(p: &Panels, a: &Real, b: &Real, whole: Real, tol: f64, depth: u32) -> Result<Real> {
    let mid = (a + b).half();
    let left = p.one(a, &mid)?;
    let right = p.one(&mid, b)?;
    let halves = &left + &right;
    let diff = (&halves - &whole).abs();
    if diff.is_zero() || diff.to_f64() <= tol {
        return Ok(halves);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::Numerical(format!(
            "panel [{:.4}, {:.4}] did not settle: halves differ by {:.3e}, tolerance {tol:.3e}",
            a.to_f64(),
            b.to_f64(),
            diff.to_f64()
        )));
    }
    let l = adaptive(p, a, &mid, left, tol / 2.0, depth + 1)?;
    let r = adaptive(p, &mid, b, right, tol / 2.0, depth + 1)?;
    Ok(l + r)
}

/// `int_0^inf integrand(t) dt` with absolute error at most the requested target.
///
/// Half of the budget goes to the tail beyond the cut, half to the panels.
///
/// ```
/// use zeta_identities::mp::{PrecisionContext, Real};
/// use zeta_identities::specfun::{integrate_exp_weight, QuadratureSpec, TailEnvelope};
///
/// let ctx = PrecisionContext::new(20).unwrap();
/// let two_pi = Real::pi(&ctx) * 2i64;
/// let spec = QuadratureSpec::new(
///     move |t: &Real| Ok(t / ((t * &two_pi).exp() - 1i64)),
///     1e-20,
///     TailEnvelope::new(1.01, 1.0, 1.0),
/// );
/// let got = integrate_exp_weight(&spec, &ctx).unwrap();
/// let want = Real::ratio(1, 24, &ctx);
/// assert!((got.value - want).abs().to_f64() < 1e-20);
/// ```
pub fn integrate_exp_weight(spec: &QuadratureSpec, ctx: &PrecisionContext) -> Result<QuadratureResult> {
    let target = spec.target_abs_error;
    if !(target > 0.0) {
        return Err(Error::Usage(format!("quadrature target must be positive, got {target}")));
    }
    let cut = match spec.truncation_point {
        Some(t) => t,
        None => spec.envelope.cut_for(target / 2.0),
    };
    let tail = spec.envelope.tail_bound(cut);
    if tail > target / 2.0 {
        return Err(Error::Usage(format!("truncation at {cut} leaves a tail of {tail:.3e}, above half of {target:.3e}")));
    }
    let panels = (cut / PANEL_WIDTH).ceil() as usize;
    let rule = gauss_legendre(order_for(ctx), ctx);
    let tol = target / 2.0 / panels as f64;
    let p = Panels { f: &spec.integrand, rule, ctx: *ctx };
    let parts: Vec<Result<Real>> = (0..panels)
        .into_par_iter()
        .map(|i| {
            let a = Real::ratio(i as i64, 2, ctx);
            let b = Real::ratio(i as i64 + 1, 2, ctx);
            let whole = p.one(&a, &b)?;
            adaptive(&p, &a, &b, whole, tol, 0)
        })
        .collect();
    let mut value = Real::zero(ctx);
    for p in parts {
        value = value + p?;
    }
    Ok(QuadratureResult { value: value.finite("quadrature")?, tail_bound: tail, truncation_point: cut, panels })
}

/// `j_M(z) = int_0^inf t^{2M+1}/(e^{2 pi t} - 1) dt/(t^2 + z^2)`, the remainder
/// integral of the asymptotic digamma expansion.
pub fn j_remainder(m: u32, z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    if m < 1 {
        return Err(Error::Usage("j_M needs M >= 1".into()));
    }
    if z.re.is_zero() && !z.im.is_zero() {
        return Err(Error::Domain(format!("t^2 + z^2 vanishes on the path for z = {z}")));
    }
    let z2 = z.square();
    let two_pi = Real::pi(ctx) * 2i64;
    let pw = 2 * m as i32 + 1;
    let target = ctx.working_eps();
    let env = TailEnvelope::new(8.0 / 3.0, 2.0 * m as f64 - 1.0, f64::max(2.0 * z.abs().to_f64(), 1.0));
    // 1/(t^2 + z^2) = conj(d)/|d|^2, one real integral per component
    let part = |imag: bool| {
        let z2 = z2.clone();
        let two_pi = two_pi.clone();
        QuadratureSpec::new(
            move |t: &Real| {
                let d = &z2 + &t.square();
                let g = t.powi(pw) / ((t * &two_pi).exp() - 1i64) / d.norm_sqr();
                Ok(if imag { -(g * &d.im) } else { g * &d.re })
            },
            target,
            env,
        )
    };
    let re = integrate_exp_weight(&part(false), ctx)?.value;
    let im = integrate_exp_weight(&part(true), ctx)?.value;
    Ok(Complex::new(re, im))
}
