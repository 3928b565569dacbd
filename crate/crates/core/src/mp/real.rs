use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::context::PrecisionContext;
use crate::error::{Error, Result};

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

pub(crate) fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// A binary floating-point real carrying its own working precision in bits.
///
/// Binary operations run at the larger of the two operand precisions, so
/// values built from one [`PrecisionContext`] stay at that precision.
#[derive(Clone)]
pub struct Real {
    v: BigFloat,
    p: usize,
}

impl Real {
    pub fn precision_bits(&self) -> usize {
        self.p
    }

    pub fn zero(ctx: &PrecisionContext) -> Self {
        Real { v: BigFloat::from_i64(0, ctx.bits()), p: ctx.bits() }
    }

    pub fn one(ctx: &PrecisionContext) -> Self {
        Real::from_i64(1, ctx)
    }

    /// The integer `n` at the precision of `self`.
    pub(crate) fn int_like(&self, n: i64) -> Self {
        Real { v: BigFloat::from_i64(n, self.p), p: self.p }
    }

    pub fn from_i64(n: i64, ctx: &PrecisionContext) -> Self {
        Real { v: BigFloat::from_i64(n, ctx.bits()), p: ctx.bits() }
    }

    /// Exact conversion of the binary value of `x`.
    pub fn from_f64(x: f64, ctx: &PrecisionContext) -> Self {
        Real { v: BigFloat::from_f64(x, ctx.bits()), p: ctx.bits() }
    }

    /// `a / b` rounded to context precision.
    pub fn ratio(a: i64, b: i64, ctx: &PrecisionContext) -> Self {
        Real::from_i64(a, ctx) / b
    }

    pub fn from_bigint(n: &BigInt, ctx: &PrecisionContext) -> Self {
        let p = ctx.bits();
        if n.is_zero() {
            return Real::zero(ctx);
        }
        let words = n.magnitude().to_u64_digits();
        let sign = if n.is_negative() { Sign::Neg } else { Sign::Pos };
        let e = (words.len() * 64) as i32;
        let mut v = BigFloat::from_words(&words, sign, e);
        v.set_precision(p, RM).expect("precision within backend limits");
        Real { v, p }
    }

    pub fn from_rational(q: &BigRational, ctx: &PrecisionContext) -> Self {
        Real::from_bigint(q.numer(), ctx) / &Real::from_bigint(q.denom(), ctx)
    }

    /// Parses a decimal literal such as `-1.25e-3`.
    pub fn parse(s: &str, ctx: &PrecisionContext) -> Result<Self> {
        let p = ctx.bits();
        let v = with_consts(|cc| BigFloat::parse(s.trim(), Radix::Dec, p, RM, cc));
        let r = Real { v, p };
        r.finite(&format!("cannot parse {s:?}"))
    }

    pub fn pi(ctx: &PrecisionContext) -> Self {
        let p = ctx.bits();
        Real { v: with_consts(|cc| cc.pi(p, RM)), p }
    }

    pub(crate) fn pi_bits(p: usize) -> Self {
        Real { v: with_consts(|cc| cc.pi(p, RM)), p }
    }

    /// Same value at another context's precision.
    pub fn at(&self, ctx: &PrecisionContext) -> Self {
        let p = ctx.bits();
        let mut v = self.v.clone();
        v.set_precision(p, RM).expect("precision within backend limits");
        Real { v, p }
    }

    pub fn is_finite(&self) -> bool {
        !(self.v.is_nan() || self.v.is_inf())
    }

    pub(crate) fn finite(self, what: &str) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::Numerical(format!("{what}: non-finite result")))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.v.is_positive() && !self.v.is_zero()
    }

    pub fn abs(&self) -> Self {
        Real { v: self.v.abs(), p: self.p }
    }

    pub fn recip(&self) -> Self {
        Real { v: self.v.reciprocal(self.p, RM), p: self.p }
    }

    pub fn square(&self) -> Self {
        Real { v: self.v.mul(&self.v, self.p, RM), p: self.p }
    }

    pub fn powi(&self, n: i32) -> Self {
        let v = self.v.powi(n.unsigned_abs() as usize, self.p, RM);
        let r = Real { v, p: self.p };
        if n < 0 {
            r.recip()
        } else {
            r
        }
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::Domain("sqrt of a negative real".into()));
        }
        Ok(Real { v: self.v.sqrt(self.p, RM), p: self.p })
    }

    pub fn exp(&self) -> Self {
        let p = self.p;
        Real { v: with_consts(|cc| self.v.exp(p, RM, cc)), p }
    }

    pub fn ln(&self) -> Result<Self> {
        if !self.is_positive() {
            return Err(Error::Domain("log of a non-positive real".into()));
        }
        let p = self.p;
        Ok(Real { v: with_consts(|cc| self.v.ln(p, RM, cc)), p })
    }

    pub fn sin(&self) -> Self {
        let p = self.p;
        Real { v: with_consts(|cc| self.v.sin(p, RM, cc)), p }
    }

    pub fn cos(&self) -> Self {
        let p = self.p;
        Real { v: with_consts(|cc| self.v.cos(p, RM, cc)), p }
    }

    /// `(sinh x, cosh x)` from a single exponential.
    pub fn sinh_cosh(&self) -> (Self, Self) {
        let e = self.exp();
        let ei = e.recip();
        let c = (&e + &ei).half();
        let s = if self.abs().to_f64() < 0.25 {
            // e - 1/e cancels here
            let p = self.p;
            Real { v: with_consts(|cc| self.v.sinh(p, RM, cc)), p }
        } else {
            (&e - &ei).half()
        };
        (s, c)
    }

    pub fn sinh(&self) -> Self {
        self.sinh_cosh().0
    }

    pub fn cosh(&self) -> Self {
        self.sinh_cosh().1
    }

    pub fn atan(&self) -> Self {
        let p = self.p;
        Real { v: with_consts(|cc| self.v.atan(p, RM, cc)), p }
    }

    /// Angle of the point `(x, y)` in `(-pi, pi]`.
    pub fn atan2(y: &Real, x: &Real) -> Self {
        let p = y.p.max(x.p);
        if x.is_zero() {
            let h = Real::pi_bits(p).half();
            return if y.is_negative() {
                -h
            } else if y.is_zero() {
                Real { v: BigFloat::from_i64(0, p), p }
            } else {
                h
            };
        }
        if x.abs() >= y.abs() {
            let t = (y / x).atan();
            if x.is_positive() {
                t
            } else if y.is_negative() {
                t - Real::pi_bits(p)
            } else {
                t + Real::pi_bits(p)
            }
        } else {
            let h = Real::pi_bits(p).half();
            let t = (x / y).atan();
            if y.is_positive() {
                h - t
            } else {
                -h - t
            }
        }
    }

    /// `x^y` for `x > 0`.
    pub fn pow(&self, y: &Real) -> Result<Self> {
        Ok((y * &self.ln()?).exp())
    }

    pub fn half(&self) -> Self {
        let mut v = self.v.clone();
        if let Some(e) = v.exponent() {
            if !v.is_zero() {
                v.set_exponent(e - 1);
                return Real { v, p: self.p };
            }
        }
        Real { v: self.v.div(&BigFloat::from_i64(2, self.p), self.p, RM), p: self.p }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Nearest `f64`, truncated toward zero in the last bit.
    pub fn to_f64(&self) -> f64 {
        match self.v.as_raw_parts() {
            None => {
                if self.v.is_inf_pos() {
                    f64::INFINITY
                } else if self.v.is_inf_neg() {
                    f64::NEG_INFINITY
                } else {
                    f64::NAN
                }
            }
            Some((m, _, s, e, _)) => {
                let top = match m.last() {
                    Some(&w) if w != 0 => w,
                    _ => return 0.0,
                };
                let mag = top as f64 * pow2(e as i64 - 64);
                if s == Sign::Neg {
                    -mag
                } else {
                    mag
                }
            }
        }
    }

    /// `log10 |x|` to roughly f64 accuracy, for zero returns `-inf`.
    pub fn log10_abs(&self) -> f64 {
        match self.v.as_raw_parts() {
            Some((m, _, _, e, _)) => match m.last() {
                Some(&w) if w != 0 => {
                    ((w as f64).log2() - 64.0 + e as f64) * std::f64::consts::LOG10_2
                }
                _ => f64::NEG_INFINITY,
            },
            None => f64::NAN,
        }
    }

    /// Round to the nearest integer, ties to even.
    pub fn round_to_bigint(&self) -> BigInt {
        let r = self.v.round(0, RM);
        bigfloat_int_to_bigint(&r)
    }

    /// Decimal rendering with `sig` significant digits. Fixed notation is
    /// used for decimal exponents in `-5..21`, scientific otherwise.
    ///
    /// ```
    /// use zeta_identities::{PrecisionContext, Real};
    ///
    /// let ctx = PrecisionContext::new(40).unwrap();
    /// assert_eq!(Real::pi(&ctx).to_decimal(10), "3.141592654");
    /// assert_eq!(Real::ratio(-1, 8, &ctx).to_decimal(3), "-0.125");
    /// assert_eq!(Real::ratio(1, 3, &ctx).powi(20).to_decimal(4), "2.868e-10");
    /// ```
    pub fn to_decimal(&self, sig: usize) -> String {
        let sig = sig.max(1);
        if !self.is_finite() {
            return if self.v.is_nan() { "NaN".into() } else if self.v.is_inf_pos() { "inf".into() } else { "-inf".into() };
        }
        if self.is_zero() {
            return "0".into();
        }
        let p = self.p + 64;
        let ax = Real { v: self.v.abs(), p };
        let mut e10 = ax.log10_abs().floor() as i64;
        let lo = BigInt::from(10u32).pow(sig as u32 - 1);
        let hi = &lo * 10u32;
        let mut digits = BigInt::zero();
        for _ in 0..4 {
            let shift = sig as i64 - 1 - e10;
            let ten = Real { v: BigFloat::from_i64(10, p), p };
            let scale = ten.powi(shift as i32);
            digits = (&ax * &scale).round_to_bigint();
            if digits >= hi {
                e10 += 1;
            } else if digits < lo {
                e10 -= 1;
            } else {
                break;
            }
        }
        let ds = digits.to_string();
        let neg = if self.is_negative() { "-" } else { "" };
        let body = if (-5..21).contains(&e10) {
            if e10 >= 0 {
                let int_len = (e10 + 1) as usize;
                if int_len >= ds.len() {
                    format!("{}{}", ds, "0".repeat(int_len - ds.len()))
                } else {
                    format!("{}.{}", &ds[..int_len], &ds[int_len..])
                }
            } else {
                format!("0.{}{}", "0".repeat((-e10 - 1) as usize), ds)
            }
        } else if ds.len() == 1 {
            format!("{ds}e{e10}")
        } else {
            format!("{}.{}e{}", &ds[..1], &ds[1..], e10)
        };
        format!("{neg}{body}")
    }

    /// Decimal digits this value's precision supports.
    pub fn natural_digits(&self) -> usize {
        ((self.p.saturating_sub(8)) as f64 / std::f64::consts::LOG2_10).floor().max(1.0) as usize
    }
}

fn pow2(e: i64) -> f64 {
    if e > 1023 {
        f64::INFINITY
    } else if e < -1074 {
        0.0
    } else if e < -1022 {
        2f64.powi(-1022) * 2f64.powi((e + 1022) as i32)
    } else {
        2f64.powi(e as i32)
    }
}

fn bigfloat_int_to_bigint(v: &BigFloat) -> BigInt {
    let Some((m, _, s, e, _)) = v.as_raw_parts() else {
        return BigInt::zero();
    };
    let mut mag = BigUint::zero();
    for &w in m.iter().rev() {
        mag = (mag << 64u32) + BigUint::from(w);
    }
    if mag.is_zero() {
        return BigInt::zero();
    }
    let width = (m.len() * 64) as i64;
    let e = e as i64;
    let mag = if e >= width { mag << (e - width) as u64 } else { mag >> (width - e) as u64 };
    let i = BigInt::from(mag);
    if s == Sign::Neg {
        -i
    } else {
        i
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or_else(|| self.natural_digits());
        f.write_str(&self.to_decimal(sig))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_decimal(self.natural_digits()))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

macro_rules! real_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                let p = self.p.max(rhs.p);
                Real { v: self.v.$m(&rhs.v, p, RM), p }
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                (&self).$m(rhs)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                self.$m(&rhs)
            }
        }
        impl $tr<i64> for &Real {
            type Output = Real;
            fn $m(self, rhs: i64) -> Real {
                let r = Real { v: BigFloat::from_i64(rhs, self.p), p: self.p };
                self.$m(&r)
            }
        }
        impl $tr<i64> for Real {
            type Output = Real;
            fn $m(self, rhs: i64) -> Real {
                (&self).$m(rhs)
            }
        }
    };
}

real_binop!(Add, add);
real_binop!(Sub, sub);
real_binop!(Mul, mul);
real_binop!(Div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { v: self.v.neg(), p: self.p }
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { v: self.v.clone().neg(), p: self.p }
    }
}

impl std::iter::Sum for Real {
    fn sum<I: Iterator<Item = Real>>(mut iter: I) -> Real {
        let first = iter.next().expect("sum of an empty sequence of reals");
        iter.fold(first, |acc, x| acc + x)
    }
}
