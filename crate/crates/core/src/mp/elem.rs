use super::complex::Complex;
use super::context::PrecisionContext;
use super::real::Real;
use crate::error::Result;

/// Elementary functions reachable through [`elem`].
#[derive(Debug, Clone)]
pub enum Elem {
    Exp,
    Log,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Sqrt,
    /// The angle `atan2(im, re)` of the argument, returned as a real.
    Atan2,
    /// Principal power with the given exponent.
    Power(Complex),
}

/// Evaluates an elementary function at context precision, principal branch.
///
/// ```
/// use zeta_identities::mp::{elem, Complex, Elem, PrecisionContext, Real};
///
/// let ctx = PrecisionContext::new(20).unwrap();
/// let minus_one = Complex::real(Real::from_i64(-1, &ctx));
/// let l = elem(Elem::Log, &minus_one, &ctx).unwrap();
/// assert!(l.re.is_zero());
/// assert_eq!(l.im.to_decimal(10), "3.141592654");
/// ```
pub fn elem(f: Elem, z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let z = Complex::new(z.re.at(ctx), z.im.at(ctx));
    let out = match f {
        Elem::Exp => z.exp(),
        Elem::Log => z.ln()?,
        Elem::Sin => z.sin(),
        Elem::Cos => z.cos(),
        Elem::Sinh => z.sinh(),
        Elem::Cosh => z.cosh(),
        Elem::Sqrt => z.sqrt(),
        Elem::Atan2 => Complex::real(z.arg()),
        Elem::Power(w) => z.pow(&w)?,
    };
    out.finite("elementary function")
}

/// Real-argument convenience over [`elem`].
pub fn elem_real(f: Elem, x: &Real, ctx: &PrecisionContext) -> Result<Complex> {
    elem(f, &Complex::real(x.clone()), ctx)
}

/// pi at context precision.
pub fn pi_const(ctx: &PrecisionContext) -> Real {
    Real::pi(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mp::Real;

    #[test]
    fn trivial_values() {
        let ctx = PrecisionContext::new(30).unwrap();
        let one = elem(Elem::Exp, &Complex::zero(&ctx), &ctx).unwrap();
        assert_eq!(one.re.to_decimal(30), "1.00000000000000000000000000000");
        assert!(one.im.is_zero());
        assert!(elem(Elem::Log, &Complex::zero(&ctx), &ctx).is_err());
        let half_pi = elem(Elem::Atan2, &Complex::from_f64(0.0, 2.0, &ctx), &ctx).unwrap();
        assert_eq!((half_pi.re * 2i64).to_decimal(20), pi_const(&ctx).to_decimal(20));
    }

    #[test]
    fn power_of_i() {
        // i^i = e^{-pi/2}
        let ctx = PrecisionContext::new(30).unwrap();
        let i = Complex::i(&ctx);
        let r = elem(Elem::Power(i.clone()), &i, &ctx).unwrap();
        let want = (-pi_const(&ctx).half()).exp();
        assert!((&r.re - &want).abs().to_f64() < 1e-38);
        assert!(r.im.abs().to_f64() < 1e-38);
    }

    #[test]
    fn sinh_at_pi_sqrt3_over_2() {
        // oracle: the defining power series summed term by term
        let ctx = PrecisionContext::new(25).unwrap();
        let x = pi_const(&ctx) * Real::from_i64(3, &ctx).sqrt().unwrap() / 2i64;
        let mut term = x.clone();
        let mut sum = x.clone();
        let x2 = x.square();
        for j in 1..80 {
            term = &term * &x2 / ((2 * j) * (2 * j + 1));
            sum = sum + &term;
        }
        let s = elem_real(Elem::Sinh, &x, &ctx).unwrap().re;
        assert!((&s - &sum).abs().to_f64() < 1e-30);
        assert_eq!(s.to_decimal(11), "7.5625544914");
    }
}
