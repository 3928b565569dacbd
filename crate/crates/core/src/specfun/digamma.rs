//! The digamma function on the complex plane.
//!
//! The production path reflects into the right half-plane, shifts by the
//! recurrence until the asymptotic series converges fast enough, then sums
//! the Stirling-type expansion. [`digamma_oracle`] is a slow, independent
//! route through the Weierstrass product series used to cross-check it.

use super::bernoulli::bernoulli_real;
use super::cot::pi_cot_pi;
use super::gamma_const::euler_gamma;
use crate::error::{Error, Result};
use crate::mp::{Complex, PrecisionContext, Real};

/// Effective radius the recurrence shifts up to before the asymptotic series
/// takes over.
pub fn shift_threshold(ctx: &PrecisionContext) -> f64 {
    f64::max(20.0, 0.8 * ctx.digits() as f64)
}

fn check_pole(z: &Complex) -> Result<()> {
    if z.im.is_zero() && !z.re.is_positive() {
        let f = z.re.to_f64();
        let nearest = Real::from_f64(f.round(), &PrecisionContext::default());
        if (&z.re - &nearest).is_zero() {
            return Err(Error::Pole(format!("digamma at {}", f.round())));
        }
    }
    Ok(())
}

/// `|z| cos(arg(z)/2)`, the radius that governs the asymptotic remainder.
fn effective_radius(z: &Complex) -> f64 {
    let r = z.abs().to_f64();
    let x = z.re.to_f64();
    (r * (r + x) / 2.0).max(0.0).sqrt()
}

/// `psi(z)` with absolute error below `10^-digits`.
///
/// ```
/// use zeta_identities::mp::{Complex, PrecisionContext, Real};
/// use zeta_identities::specfun::{digamma, euler_gamma};
///
/// let ctx = PrecisionContext::new(30).unwrap();
/// let psi1 = digamma(&Complex::one(&ctx), &ctx).unwrap();
/// assert_eq!(psi1.re.to_decimal(20), (-euler_gamma(&ctx)).to_decimal(20));
/// ```
pub fn digamma(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    check_pole(z)?;
    let z = Complex::new(z.re.at(ctx), z.im.at(ctx));
    if z.re.is_negative() {
        let w = -&z;
        let base = digamma_right(&w, ctx)?;
        let refl = pi_cot_pi(&w, ctx)?;
        return (&(&base + &w.recip()) + &refl).finite("digamma");
    }
    digamma_right(&z, ctx)?.finite("digamma")
}

/// Real-argument convenience.
pub fn digamma_real(x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    Ok(digamma(&Complex::real(x.clone()), ctx)?.re)
}

fn digamma_right(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let target = shift_threshold(ctx);
    let mut acc = Complex::zero(ctx);
    let mut w = z.clone();
    while effective_radius(&w) < target {
        acc = &acc - &w.recip();
        w = &w + 1i64;
    }
    let (series, _) = asymptotic_until(&w, ctx.working_eps(), ctx)?;
    Ok(&series + &acc)
}

// ln w - 1/(2w) - sum B_2m/(2m w^2m), stopping once the next term, inflated
// by the sector factor sec^{2m}(arg/2), drops below eps
fn asymptotic_until(w: &Complex, eps: f64, ctx: &PrecisionContext) -> Result<(Complex, usize)> {
    let rho = effective_radius(w);
    let mut out = &w.ln()? - &w.recip().scale(&Real::ratio(1, 2, ctx));
    let inv2 = w.recip().square();
    let mut pw = inv2.clone();
    let log_eps = eps.log10();
    let mut m = 1usize;
    loop {
        let b = bernoulli_real(2 * m, ctx);
        let coef = &b / (2 * m as i64);
        let bound = coef.log10_abs() - (2 * m) as f64 * rho.log10();
        if bound < log_eps {
            return Ok((out, m - 1));
        }
        if m > 200 {
            return Err(Error::Numerical(format!(
                "asymptotic digamma series did not reach 1e{log_eps:.0} at radius {rho:.3}"
            )));
        }
        out = &out - &pw.scale(&coef);
        pw = &pw * &inv2;
        m += 1;
    }
}

/// The truncated expansion `ln z - 1/(2z) - sum_{m<=M} B_2m/(2m z^2m)`
/// without any shifting. Only meaningful for `Re z > 0`.
pub fn digamma_asymptotic(z: &Complex, terms: usize, ctx: &PrecisionContext) -> Result<Complex> {
    let mut out = &z.ln()? - &z.recip().scale(&Real::ratio(1, 2, ctx));
    let inv2 = z.recip().square();
    let mut pw = inv2.clone();
    for m in 1..=terms {
        let coef = bernoulli_real(2 * m, ctx) / (2 * m as i64);
        out = &out - &pw.scale(&coef);
        pw = &pw * &inv2;
    }
    Ok(out)
}

/// Independent evaluation from
/// `psi(z) = -gamma - 1/z + sum_{n<=N} (1/n - 1/(n+z))`, closed with the
/// tail `z/N - z(z+1)/(2N^2)`. The remaining error is about
/// `|z|^3/(3N^3)`. Test use only.
pub fn digamma_oracle(z: &Complex, ctx: &PrecisionContext, terms: u64) -> Result<Complex> {
    if terms < 10_000 {
        return Err(Error::Usage(format!("oracle needs at least 10^4 terms, got {terms}")));
    }
    check_pole(z)?;
    let z = Complex::new(z.re.at(ctx), z.im.at(ctx));
    let mut s = Complex::zero(ctx);
    for n in 1..=terms as i64 {
        let nr = Real::from_i64(n, ctx);
        let d = &z + &nr;
        // 1/n - 1/(n+z) = z / (n (n+z))
        s = &s + &(&z / &d.scale(&nr));
    }
    let nn = Real::from_i64(terms as i64, ctx);
    let tail = &(&z / &nn) - &(&(&z * &(&z + 1i64)) / &(nn.square() * 2i64));
    let g = euler_gamma(ctx);
    let out = &(&(&s + &tail) - &g) - &z.recip();
    out.finite("digamma oracle")
}
