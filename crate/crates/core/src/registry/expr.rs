use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::arith::{divisor_sum, FunctionId};
use crate::error::Result;
use crate::mp::{PrecisionContext, Real};
use crate::specfun::{dirichlet_beta, zeta_deriv, zeta_int};

/// A closed form built from `pi`, zeta values and derivatives, `L(s; chi_4)`,
/// divisor sums and rationals.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(i64),
    Rat(i64, i64),
    Pi,
    Zeta(u32),
    /// `zeta^{(k)}(s)` as `(k, s)`.
    ZetaDeriv(u32, u32),
    /// `L(s; chi_4)`; Catalan's constant at `s = 2`.
    Beta(u32),
    /// `sigma_k(a)` as `(k, a)`.
    Sigma(u32, u64),
    Sqrt(Box<Expr>),
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
    Neg(Box<Expr>),
    Quot(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

pub fn zeta(s: u32) -> Expr {
    Expr::Zeta(s)
}

pub fn int(n: i64) -> Expr {
    Expr::Int(n)
}

pub fn rat(a: i64, b: i64) -> Expr {
    Expr::Rat(a, b)
}

impl Expr {
    pub fn pow(self, n: i32) -> Expr {
        Expr::Pow(Box::new(self), n)
    }

    pub fn sqrt(self) -> Expr {
        Expr::Sqrt(Box::new(self))
    }

    /// ```
    /// use zeta_identities::registry::expr::{rat, zeta, Expr};
    /// use zeta_identities::PrecisionContext;
    ///
    /// let ctx = PrecisionContext::new(20).unwrap();
    /// // zeta(2)^2 + zeta(4) = 7 pi^4 / 180
    /// let lhs = zeta(2).pow(2) + zeta(4);
    /// let closed = rat(7, 180) * Expr::Pi.pow(4);
    /// let d = lhs.eval(&ctx).unwrap() - closed.eval(&ctx).unwrap();
    /// assert!(d.abs().to_f64() < 1e-25);
    /// ```
    pub fn eval(&self, ctx: &PrecisionContext) -> Result<Real> {
        Ok(match self {
            Expr::Int(n) => Real::from_i64(*n, ctx),
            Expr::Rat(a, b) => Real::ratio(*a, *b, ctx),
            Expr::Pi => Real::pi(ctx),
            Expr::Zeta(s) => zeta_int(*s as i64, ctx)?,
            Expr::ZetaDeriv(k, s) => zeta_deriv(*k, *s as i64, ctx)?,
            Expr::Beta(s) => dirichlet_beta(*s as i64, ctx)?,
            Expr::Sigma(k, a) => Real::from_bigint(&BigInt::from(divisor_sum(*a, *k)), ctx),
            Expr::Sqrt(e) => e.eval(ctx)?.sqrt()?,
            Expr::Sum(es) => {
                let mut acc = Real::zero(ctx);
                for e in es {
                    acc = acc + e.eval(ctx)?;
                }
                acc
            }
            Expr::Prod(es) => {
                let mut acc = Real::one(ctx);
                for e in es {
                    acc = acc * e.eval(ctx)?;
                }
                acc
            }
            Expr::Neg(e) => -e.eval(ctx)?,
            Expr::Quot(a, b) => a.eval(ctx)? / b.eval(ctx)?,
            Expr::Pow(e, n) => e.eval(ctx)?.powi(*n),
        })
    }

    fn atomic(&self) -> bool {
        !matches!(self, Expr::Sum(_) | Expr::Prod(_) | Expr::Neg(_) | Expr::Quot(..) | Expr::Rat(..))
            && !matches!(self, Expr::Int(n) if *n < 0)
    }
}

/// `L(s; f) = sum f(n)/n^s` in closed form, for the functions that have one.
pub fn dirichlet_series(f: FunctionId, s: u32) -> Option<Expr> {
    use FunctionId::*;
    Some(match f {
        DeltaOne => int(1),
        Unit => zeta(s),
        TauNu(v) => zeta(s).pow(v as i32),
        TwoPowOmega => zeta(s).pow(2) / zeta(2 * s),
        MuSquared => zeta(s) / zeta(2 * s),
        TauSquared => zeta(s).pow(4) / zeta(2 * s),
        SquareIndicator => zeta(2 * s),
        PhiOverN => zeta(s) / zeta(s + 1),
        LogPow(k) => {
            let d = Expr::ZetaDeriv(k, s);
            if k % 2 == 0 {
                d
            } else {
                -d
            }
        }
        R2Quarter => zeta(s) * Expr::Beta(s),
        // sum_{d | a} d^{1-s} = sigma_{s-1}(a)/a^{s-1}
        DividesA(a) => Expr::Sigma(s - 1, a) / int(a as i64).pow(s as i32 - 1),
        _ => return None,
    })
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |e: &Expr| if e.atomic() { format!("{e}") } else { format!("({e})") };
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Rat(a, b) => write!(f, "{a}/{b}"),
            Expr::Pi => write!(f, "pi"),
            Expr::Zeta(s) => write!(f, "zeta({s})"),
            Expr::ZetaDeriv(1, s) => write!(f, "zeta'({s})"),
            Expr::ZetaDeriv(k, s) => write!(f, "zeta^({k})({s})"),
            Expr::Beta(2) => write!(f, "G"),
            Expr::Beta(s) => write!(f, "L({s};chi4)"),
            Expr::Sigma(k, a) => write!(f, "sigma_{k}({a})"),
            Expr::Sqrt(e) => write!(f, "sqrt({e})"),
            Expr::Sum(es) => {
                for (i, e) in es.iter().enumerate() {
                    match (i, e) {
                        (0, _) => write!(f, "{e}")?,
                        (_, Expr::Neg(inner)) => write!(f, " - {}", wrap(inner))?,
                        _ => write!(f, " + {e}")?,
                    }
                }
                Ok(())
            }
            Expr::Prod(es) => {
                let parts: Vec<String> = es.iter().map(|e| if matches!(e, Expr::Sum(_) | Expr::Neg(_)) { format!("({e})") } else { format!("{e}") }).collect();
                write!(f, "{}", parts.join("*"))
            }
            Expr::Neg(e) => write!(f, "-{}", wrap(e)),
            Expr::Quot(a, b) => write!(f, "{}/{}", wrap(a), wrap(b)),
            Expr::Pow(e, n) => write!(f, "{}^{n}", wrap(e)),
        }
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        match self {
            Expr::Sum(mut v) => {
                v.push(rhs);
                Expr::Sum(v)
            }
            e => Expr::Sum(vec![e, rhs]),
        }
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        self + (-rhs)
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        match self {
            Expr::Prod(mut v) => {
                v.push(rhs);
                Expr::Prod(v)
            }
            e => Expr::Prod(vec![e, rhs]),
        }
    }
}

impl Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::Quot(Box::new(self), Box::new(rhs))
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}
