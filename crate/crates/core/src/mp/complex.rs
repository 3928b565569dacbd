use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::context::PrecisionContext;
use super::real::Real;
use crate::error::{Error, Result};

/// Extended-precision complex scalar.
#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn real(re: Real) -> Self {
        let im = re.int_like(0);
        Complex { re, im }
    }

    pub fn zero(ctx: &PrecisionContext) -> Self {
        Complex { re: Real::zero(ctx), im: Real::zero(ctx) }
    }

    pub fn one(ctx: &PrecisionContext) -> Self {
        Complex { re: Real::one(ctx), im: Real::zero(ctx) }
    }

    pub fn i(ctx: &PrecisionContext) -> Self {
        Complex { re: Real::zero(ctx), im: Real::one(ctx) }
    }

    pub fn from_f64(re: f64, im: f64, ctx: &PrecisionContext) -> Self {
        Complex { re: Real::from_f64(re, ctx), im: Real::from_f64(im, ctx) }
    }

    /// `e^{i theta}` built from sine and cosine of the angle.
    pub fn cis(theta: &Real) -> Self {
        Complex { re: theta.cos(), im: theta.sin() }
    }

    pub fn polar(r: &Real, theta: &Real) -> Self {
        Complex { re: r * theta.cos(), im: r * theta.sin() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub(crate) fn finite(self, what: &str) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::Numerical(format!("{what}: non-finite result")))
        }
    }

    pub fn conj(&self) -> Self {
        Complex { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Real {
        self.re.square() + self.im.square()
    }

    pub fn abs(&self) -> Real {
        let (a, b) = (self.re.abs(), self.im.abs());
        let (big, small) = if a >= b { (a, b) } else { (b, a) };
        if big.is_zero() {
            return big;
        }
        let t = &small / &big;
        &big * (t.square() + 1i64).sqrt().expect("non-negative")
    }

    pub fn arg(&self) -> Real {
        Real::atan2(&self.im, &self.re)
    }

    pub fn scale(&self, k: &Real) -> Self {
        Complex { re: &self.re * k, im: &self.im * k }
    }

    pub fn mul_i(&self) -> Self {
        Complex { re: -&self.im, im: self.re.clone() }
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        Complex { re: &self.re / &d, im: -(&self.im / &d) }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, n: i32) -> Self {
        let mut base = self.clone();
        let mut e = n.unsigned_abs();
        let mut acc = Complex::real(self.re.int_like(1));
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    pub fn exp(&self) -> Self {
        Complex::polar(&self.re.exp(), &self.im)
    }

    /// Principal logarithm; the argument lies in `(-pi, pi]`.
    pub fn ln(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("log of zero".into()));
        }
        let re = self.norm_sqr().ln()?.half();
        Ok(Complex { re, im: self.arg() })
    }

    pub fn sin(&self) -> Self {
        let (sh, ch) = self.im.sinh_cosh();
        Complex { re: self.re.sin() * ch, im: self.re.cos() * sh }
    }

    pub fn cos(&self) -> Self {
        let (sh, ch) = self.im.sinh_cosh();
        Complex { re: self.re.cos() * ch, im: -(self.re.sin() * sh) }
    }

    pub fn sinh(&self) -> Self {
        let (sh, ch) = self.re.sinh_cosh();
        Complex { re: sh * self.im.cos(), im: ch * self.im.sin() }
    }

    pub fn cosh(&self) -> Self {
        let (sh, ch) = self.re.sinh_cosh();
        Complex { re: ch * self.im.cos(), im: sh * self.im.sin() }
    }

    /// Principal square root, branch cut along the negative real axis.
    pub fn sqrt(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let r = self.abs();
        if !self.re.is_negative() {
            let a = ((&r + &self.re).half()).sqrt().expect("non-negative");
            let b = (&self.im / &a).half();
            Complex { re: a, im: b }
        } else {
            let mut b = ((&r - &self.re).half()).sqrt().expect("non-negative");
            if self.im.is_negative() {
                b = -b;
            }
            let a = (&self.im / &b).half();
            Complex { re: a, im: b }
        }
    }

    /// Principal power `z^w = exp(w log z)`.
    pub fn pow(&self, w: &Complex) -> Result<Self> {
        if self.is_zero() {
            if w.re.is_positive() {
                return Ok(self.clone());
            }
            return Err(Error::Domain("zero raised to a power with non-positive real part".into()));
        }
        Ok((w * &self.ln()?).exp())
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex({:?}, {:?})", self.re, self.im)
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or_else(|| self.re.natural_digits());
        let im = self.im.to_decimal(sig);
        if let Some(stripped) = im.strip_prefix('-') {
            write!(f, "{} - {}i", self.re.to_decimal(sig), stripped)
        } else {
            write!(f, "{} + {}i", self.re.to_decimal(sig), im)
        }
    }
}

impl Add<&Complex> for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        Complex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub<&Complex> for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        Complex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul<&Complex> for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        Complex {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div<&Complex> for &Complex {
    type Output = Complex;
    fn div(self, rhs: &Complex) -> Complex {
        // scaled by the larger component of the divisor
        if rhs.re.abs() >= rhs.im.abs() {
            let t = &rhs.im / &rhs.re;
            let d = &rhs.re + &rhs.im * &t;
            Complex {
                re: (&self.re + &self.im * &t) / &d,
                im: (&self.im - &self.re * &t) / &d,
            }
        } else {
            let t = &rhs.re / &rhs.im;
            let d = &rhs.re * &t + &rhs.im;
            Complex {
                re: (&self.re * &t + &self.im) / &d,
                im: (&self.im * &t - &self.re) / &d,
            }
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Complex> for Complex {
            type Output = Complex;
            fn $m(self, rhs: Complex) -> Complex {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Complex> for Complex {
            type Output = Complex;
            fn $m(self, rhs: &Complex) -> Complex {
                (&self).$m(rhs)
            }
        }
        impl $tr<Complex> for &Complex {
            type Output = Complex;
            fn $m(self, rhs: Complex) -> Complex {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Add<&Real> for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Real) -> Complex {
        Complex { re: &self.re + rhs, im: self.im.clone() }
    }
}

impl Sub<&Real> for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Real) -> Complex {
        Complex { re: &self.re - rhs, im: self.im.clone() }
    }
}

impl Mul<&Real> for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Real) -> Complex {
        self.scale(rhs)
    }
}

impl Div<&Real> for &Complex {
    type Output = Complex;
    fn div(self, rhs: &Real) -> Complex {
        Complex { re: &self.re / rhs, im: &self.im / rhs }
    }
}

impl Mul<i64> for &Complex {
    type Output = Complex;
    fn mul(self, rhs: i64) -> Complex {
        Complex { re: &self.re * rhs, im: &self.im * rhs }
    }
}

impl Div<i64> for &Complex {
    type Output = Complex;
    fn div(self, rhs: i64) -> Complex {
        Complex { re: &self.re / rhs, im: &self.im / rhs }
    }
}

impl Add<i64> for &Complex {
    type Output = Complex;
    fn add(self, rhs: i64) -> Complex {
        Complex { re: &self.re + rhs, im: self.im.clone() }
    }
}

impl Sub<i64> for &Complex {
    type Output = Complex;
    fn sub(self, rhs: i64) -> Complex {
        Complex { re: &self.re - rhs, im: self.im.clone() }
    }
}

macro_rules! forward_scalar {
    ($tr:ident, $m:ident) => {
        impl $tr<i64> for Complex {
            type Output = Complex;
            fn $m(self, rhs: i64) -> Complex {
                (&self).$m(rhs)
            }
        }
    };
}

forward_scalar!(Add, add);
forward_scalar!(Sub, sub);
forward_scalar!(Mul, mul);
forward_scalar!(Div, div);

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: -self.re, im: -self.im }
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: -&self.re, im: -&self.im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64, y: f64, ctx: &PrecisionContext) -> Complex {
        Complex::from_f64(x, y, ctx)
    }

    #[test]
    fn division_matches_f64() {
        let ctx = PrecisionContext::new(20).unwrap();
        let a = c(1.5, -2.0, &ctx);
        for (x, y) in [(3.0, 0.5), (0.25, -4.0), (-1.0, 1.0)] {
            let q = (&a / &c(x, y, &ctx)).to_c64();
            let want = num_complex::Complex64::new(1.5, -2.0) / num_complex::Complex64::new(x, y);
            assert!((q - want).norm() < 1e-15);
        }
    }

    #[test]
    fn sqrt_principal_branch() {
        let ctx = PrecisionContext::new(20).unwrap();
        let r = c(-1.0, 0.0, &ctx).sqrt().to_c64();
        assert!((r - num_complex::Complex64::new(0.0, 1.0)).norm() < 1e-18);
        for (x, y) in [(-4.0, -1e-3), (3.0, 4.0), (-2.0, 5.0)] {
            let z = c(x, y, &ctx);
            let s = z.sqrt();
            assert!(!s.re.is_negative());
            assert!(((&s * &s) - z).abs().to_f64() < 1e-25);
        }
    }

    #[test]
    fn powi_and_recip() {
        let ctx = PrecisionContext::new(30).unwrap();
        let z = c(0.3, 0.7, &ctx);
        let p = z.powi(7);
        let q = z.powi(-7);
        assert!(((&p * &q) - Complex::one(&ctx)).abs().to_f64() < 1e-35);
        assert_eq!(z.powi(0).to_c64(), num_complex::Complex64::new(1.0, 0.0));
    }
}
