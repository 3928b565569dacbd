//! Complex cotangent without intermediate overflow.

use crate::error::{Error, Result};
use crate::mp::{Complex, PrecisionContext, Real};

/// Beyond this `|Im z|` the exponential form is used.
pub const Y0: f64 = 30.0;

/// `cot(x + iy)`.
///
/// For moderate `|y|` this is `(sin 2x - i sinh 2y) / (2(sinh^2 y + sin^2 x))`.
/// For `|y| > 30` it switches to `-i sgn(y) (1 + q)/(1 - q)` with
/// `q = e^{-2|y|}(cos 2x + i sgn(y) sin 2x)`, the closed form of the
/// geometric series in `q`.
///
/// ```
/// use zeta_identities::mp::{Complex, PrecisionContext, Real};
/// use zeta_identities::specfun::cot_complex;
///
/// let ctx = PrecisionContext::new(20).unwrap();
/// let half_pi = Real::pi(&ctx).half();
/// let c = cot_complex(&Complex::real(half_pi), &ctx).unwrap();
/// assert!(c.re.abs().to_f64() < 1e-25 && c.im.is_zero());
/// ```
pub fn cot_complex(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let x = z.re.at(ctx);
    let y = z.im.at(ctx);
    let yf = y.to_f64();
    if yf.abs() > Y0 {
        let two_x = &x * 2i64;
        let e = (-(y.abs() * 2i64)).exp();
        let sgn = if yf > 0.0 { 1i64 } else { -1i64 };
        let q = Complex::new(&e * two_x.cos(), &e * two_x.sin() * sgn);
        let ratio = (&q + 1i64) / (Complex::one(ctx) - &q);
        // -i * sgn * ratio
        let out = Complex::new(&ratio.im * sgn, -(&ratio.re * sgn));
        return Ok(out);
    }
    let sx = x.sin();
    let cx = x.cos();
    let (sh, ch) = y.sinh_cosh();
    let den = (sh.square() + sx.square()) * 2i64;
    if den.is_zero() || den.log10_abs() < -2.0 * (ctx.working_digits() as f64 - 1.0) {
        return Err(Error::Pole(format!("cot at {}", z)));
    }
    let re = (sx * cx) * 2i64 / &den;
    let im = -((sh * ch) * 2i64 / &den);
    Complex::new(re, im).finite("cot")
}

/// `pi * cot(pi z)`, the form every kernel uses.
pub fn pi_cot_pi(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let pi = Real::pi(ctx);
    let w = z.scale(&pi);
    Ok(cot_complex(&w, ctx)?.scale(&pi))
}
