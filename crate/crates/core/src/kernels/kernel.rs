//! The cotangent and digamma kernels at positive real argument.

use std::f64::consts::PI;

use super::roots::RootSystem;
use crate::error::{Error, Result};
use crate::mp::{Complex, PrecisionContext, Real};
use crate::specfun::{digamma, pi_cot_pi, zeta_int, zeta_tail};

/// A kernel value with the bound that goes with it; what `bound` limits is
/// stated per kernel.
#[derive(Debug, Clone)]
pub struct KernelValue {
    pub value: Real,
    pub bound: f64,
    /// `|Im|` of the raw root sum before it was discarded.
    pub residue: f64,
}

// Roots i and n-1-i are conjugate for all three kernels. The full sum adds
// each term to its partner first and checks the imaginary leftovers; the
// half sum evaluates one root per pair and doubles the real part.
fn paired_real(
    n: usize,
    full: bool,
    term: impl Fn(usize) -> Result<Complex>,
    what: &str,
    ctx: &PrecisionContext,
) -> Result<(Real, f64)> {
    if !full {
        let mut acc = Real::zero(ctx);
        for i in 0..n.div_ceil(2) {
            let t = term(i)?.re;
            acc = if 2 * i + 1 == n { acc + t } else { acc + t * 2i64 };
        }
        return Ok((acc, 0.0));
    }
    let mut acc = Complex::zero(ctx);
    for i in 0..n.div_ceil(2) {
        let j = n - 1 - i;
        acc = if j == i { &acc + &term(i)? } else { &acc + &(&term(i)? + &term(j)?) };
    }
    let residue = acc.im.abs().to_f64();
    let scale = acc.re.abs().to_f64().max(1.0);
    if residue > 10f64.powi(2 - ctx.digits() as i32) * scale {
        return Err(Error::Numerical(format!("{what} left an imaginary part of {residue:.3e}")));
    }
    Ok((acc.re, residue))
}

fn positive(w: &Real, what: &str) -> Result<()> {
    if !w.is_positive() {
        return Err(Error::Domain(format!("{what} needs w > 0, got {w}")));
    }
    Ok(())
}

/// `(pi/k) sum_r 1.5/|sin((2r+1) pi/(2k))|`, the constant in
/// `|a_k(w) - 1/w| <= B_k min(1, w)`.
pub fn cot_bound_constant(k: u32) -> f64 {
    let kf = k as f64;
    let s: f64 = (0..k).map(|r| 1.5 / ((2 * r + 1) as f64 * PI / (2.0 * kf)).sin().abs()).sum();
    PI / kf * s
}

/// `lim a_k(w) = pi/(k sin(pi/(2k)))`; `a_k(w) - 1/w` lies in
/// `[A - 2/w, A]` for integer `w`, so `|a_k(n) - A| <= 1/n`.
pub fn a_main(k: u32) -> f64 {
    PI / (k as f64 * (PI / (2.0 * k as f64)).sin())
}

/// `a_k(w) = (1/k) sum_{r<k} pi eps_r cot(pi eps_r w)`, bound on `|a_k(w) - 1/w|`.
///
/// ```
/// use zeta_identities::kernels::a_k;
/// use zeta_identities::mp::{PrecisionContext, Real};
///
/// let ctx = PrecisionContext::new(20).unwrap();
/// let v = a_k(1, &Real::one(&ctx), &ctx).unwrap();
/// assert_eq!(v.value.to_decimal(15), "3.15334809493716");
/// ```
pub fn a_k(k: u32, w: &Real, ctx: &PrecisionContext) -> Result<KernelValue> {
    positive(w, "a_k")?;
    a_k_eval(&RootSystem::new(k, ctx)?, w, true, ctx)
}

/// [`a_k`] against a prebuilt root system, evaluating one root of each
/// conjugate pair; `residue` is then zero by construction.
pub fn a_k_with(rs: &RootSystem, w: &Real, ctx: &PrecisionContext) -> Result<KernelValue> {
    a_k_eval(rs, w, false, ctx)
}

fn a_k_eval(rs: &RootSystem, w: &Real, full: bool, ctx: &PrecisionContext) -> Result<KernelValue> {
    let k = rs.k as usize;
    let term = |i: usize| -> Result<Complex> {
        let e = &rs.eps[i];
        Ok(e * &pi_cot_pi(&e.scale(w), ctx)?)
    };
    let (sum, residue) = paired_real(k, full, term, "a_k", ctx)?;
    let wf = w.to_f64();
    Ok(KernelValue { value: sum / (k as i64), bound: cot_bound_constant(rs.k) * wf.min(1.0), residue })
}

fn b_range(k: u32, l: u32) -> Result<()> {
    if k < 1 || l < 1 || l + 2 > 2 * k {
        return Err(Error::Usage(format!("b_kl needs 1 <= l <= 2k-2, got k={k}, l={l}")));
    }
    Ok(())
}

/// `lim b_{k,l}(w) = pi/(k sin((l+1) pi/(2k)))`.
pub fn b_main(k: u32, l: u32) -> f64 {
    PI / (k as f64 * ((l + 1) as f64 * PI / (2.0 * k as f64)).sin())
}

/// `max_{u>0} u^l/(u^{2k}+1)`; `|b_{k,l}(w) - b_main| <= 2 b_peak/w`.
pub fn b_peak(k: u32, l: u32) -> f64 {
    let (kf, lf) = (k as f64, l as f64);
    let u = (lf / (2.0 * kf - lf)).powf(1.0 / (2.0 * kf));
    u.powf(lf) / (u.powf(2.0 * kf) + 1.0) * (1.0 + 1e-12)
}

/// `b_{k,l}(w) = ((-1)^{l+1}/k) sum_{r<2k} eps_r^{l+1} psi(w eps_r)`, bound on
/// `|b_{k,l}(w) - b_main(k, l)|`.
pub fn b_kl(k: u32, l: u32, w: &Real, ctx: &PrecisionContext) -> Result<KernelValue> {
    b_range(k, l)?;
    positive(w, "b_kl")?;
    b_kl_eval(&RootSystem::new(k, ctx)?, l, w, true, ctx)
}

/// [`b_kl`] against a prebuilt root system, one root per conjugate pair.
pub fn b_kl_with(rs: &RootSystem, l: u32, w: &Real, ctx: &PrecisionContext) -> Result<KernelValue> {
    b_range(rs.k, l)?;
    b_kl_eval(rs, l, w, false, ctx)
}

fn b_kl_eval(rs: &RootSystem, l: u32, w: &Real, full: bool, ctx: &PrecisionContext) -> Result<KernelValue> {
    let term = |i: usize| -> Result<Complex> {
        let e = &rs.eps[i];
        Ok(&e.powi(l as i32 + 1) * &digamma(&e.scale(w), ctx)?)
    };
    let (sum, residue) = paired_real(rs.eps.len(), full, term, "b_kl", ctx)?;
    let sign = if l % 2 == 1 { 1i64 } else { -1i64 };
    let value = sum * sign / (rs.k as i64);
    Ok(KernelValue { value, bound: 2.0 * b_peak(rs.k, l) / w.to_f64(), residue })
}

/// `lim c_k(w) = pi/((2k+1) sin(pi/(2k+1)))`; `c_k(w) - C` lies in `[0, 1/w]`.
pub fn c_main(k: u32) -> f64 {
    let m = (2 * k + 1) as f64;
    PI / (m * (PI / m).sin())
}

/// `c_k(w) = (1/(2k+1)) sum_{r<=2k} omega_r psi(-omega_r w)` with the bound
/// `ln w + 2` on `|c_k(w)|`.
pub fn c_k(k: u32, w: &Real, ctx: &PrecisionContext) -> Result<KernelValue> {
    positive(w, "c_k")?;
    c_k_eval(&RootSystem::new(k, ctx)?, w, true, ctx)
}

/// [`c_k`] against a prebuilt root system, one root per conjugate pair.
pub fn c_k_with(rs: &RootSystem, w: &Real, ctx: &PrecisionContext) -> Result<KernelValue> {
    c_k_eval(rs, w, false, ctx)
}

fn c_k_eval(rs: &RootSystem, w: &Real, full: bool, ctx: &PrecisionContext) -> Result<KernelValue> {
    let n = rs.omg.len();
    let term = |i: usize| -> Result<Complex> {
        let o = &rs.omg[i];
        Ok(o * &digamma(&(-o.scale(w)), ctx)?)
    };
    let (sum, residue) = paired_real(n, full, term, "c_k", ctx)?;
    let wf = w.to_f64();
    Ok(KernelValue { value: sum / (n as i64), bound: wf.ln().max(0.0) + 2.0, residue })
}

/// `alpha_k(n)` of the exponentially convergent form of `zeta^2(2k) + zeta(4k)`.
///
/// Numerator and denominator are both scaled by `4 e^{-2 pi n s(r)}`, so no
/// hyperbolic function is formed.
pub fn alpha_k(k: u32, n: u64, ctx: &PrecisionContext) -> Result<Real> {
    if k == 0 || n == 0 {
        return Err(Error::Usage("alpha_k needs k, n >= 1".into()));
    }
    let pi = Real::pi(ctx);
    let mut total = Real::zero(ctx);
    for r in 0..k as i64 {
        let theta = &pi * (2 * r + 1) / (2 * k as i64);
        let (c, s) = (theta.cos(), theta.sin());
        let x = &pi * n as i64;
        let arg = &(&x * &c) * 2i64;
        let q = (-(&(&x * &s) * 2i64)).exp(); // e^{-2 pi n s}
        let num = &(&c * &arg.sin()) + &(&s * &arg.cos()) - &(&s * &q);
        // sinh^2(pi n s) = (1 - q)^2 / (4q)
        let sn = (&x * &c).sin();
        let den = (Real::one(ctx) - &q).square() + &(&q * &sn.square()) * 4i64;
        total = total + &(&num * &q) * 4i64 / &den;
    }
    total.finite("alpha_k")
}

/// `beta(n) = Im(psi(n eps_0) + psi(-n eps_0))`, `eps_0 = e^{pi i/4}`.
pub fn beta_fn(n: u64, ctx: &PrecisionContext) -> Result<Real> {
    let e0 = RootSystem::new(2, ctx)?.eps[0].clone();
    let z = e0.scale(&Real::from_i64(n as i64, ctx));
    let s = &digamma(&z, ctx)? + &digamma(&-&z, ctx)?;
    Ok(s.im)
}

/// `beta(n)` rebuilt from `psi(n eps_0)` alone through the reflection formula:
/// `2 Im psi(n eps_0) - 1/(n sqrt 2) - pi (1 + (cos x - e^{-x})/(cosh x - cos x))`,
/// `x = pi n sqrt 2`.
pub fn beta_fn_reflected(n: u64, ctx: &PrecisionContext) -> Result<Real> {
    let e0 = RootSystem::new(2, ctx)?.eps[0].clone();
    let nr = Real::from_i64(n as i64, ctx);
    let psi = digamma(&e0.scale(&nr), ctx)?;
    let sqrt2 = Real::from_i64(2, ctx).sqrt()?;
    let pi = Real::pi(ctx);
    let x = &(&pi * &nr) * &sqrt2;
    Ok(&(&psi.im * 2i64) - &(&nr * &sqrt2).recip() - &(&pi * &(Real::one(ctx) + cos_ratio(&x, ctx)?)))
}

// (cos x - e^{-x})/(cosh x - cos x) with everything scaled by 2 e^{-x}
fn cos_ratio(x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    let q = (-x).exp();
    let c = x.cos();
    let num = &(&q * &c) * 2i64 - &(q.square() * 2i64);
    let den = Real::one(ctx) + &q.square() - &(&(&q * &c) * 2i64);
    (num / den).finite("cos ratio")
}

/// `alpha(n) = (2/3) Re(omega_0 psi(n omega_0)) - (1/3) psi(n)`, `omega_0 = e^{pi i/3}`.
pub fn alpha_fn(n: u64, ctx: &PrecisionContext) -> Result<Real> {
    let w0 = RootSystem::new(1, ctx)?.omg[0].clone();
    let nr = Real::from_i64(n as i64, ctx);
    let a = (&w0 * &digamma(&w0.scale(&nr), ctx)?).re;
    let p = digamma(&Complex::real(nr), ctx)?.re;
    Ok(&(&a * 2i64) / 3i64 - &(p / 3i64))
}

/// `alpha(n)` through `c_1(n) - 2/(3n) - (pi/sqrt 3)(1 + (-1)^n e^{-x}/phi_n(x))`,
/// `x = pi n sqrt(3)/2`, `phi_n = sinh` for even `n` and `cosh` for odd.
pub fn alpha_fn_via_c1(n: u64, ctx: &PrecisionContext) -> Result<Real> {
    let nr = Real::from_i64(n as i64, ctx);
    let c1 = c_k(1, &nr, ctx)?.value;
    let pi = Real::pi(ctx);
    let sqrt3 = Real::from_i64(3, ctx).sqrt()?;
    let x = (&(&pi * &nr) * &sqrt3).half();
    let corr = hyperbolic_tail(&x, n.is_multiple_of(2), ctx);
    let third = (&nr * 3i64).recip();
    Ok(&(&c1 - &(&third * 2i64)) - &(&(&pi / &sqrt3) * &(Real::one(ctx) + corr)))
}

// e^{-x}/sinh x for even n, -e^{-x}/cosh x for odd, as 2q/(1 -/+ q) with q = e^{-2x}
fn hyperbolic_tail(x: &Real, even: bool, ctx: &PrecisionContext) -> Real {
    let q = (-(x * 2i64)).exp();
    let one = Real::one(ctx);
    let v = if even { &(&q * 2i64) / &(&one - &q) } else { &(&q * 2i64) / &(&one + &q) };
    if even {
        v
    } else {
        -v
    }
}

/// Which of the two printed constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesConstant {
    /// `pi sum n^-5 (cos(pi n sqrt 2) - e^{-pi n sqrt 2})/(cosh(pi n sqrt 2) - cos(pi n sqrt 2))`
    S0,
    /// `(2 pi/sqrt 3) sum (-1)^n n^-5 e^{-x_n}/phi_n(x_n)`, `x_n = pi n sqrt(3)/2`
    S,
}

/// Sums either constant until the next term drops below the working epsilon.
///
/// ```
/// use zeta_identities::kernels::{series_constant, SeriesConstant};
/// use zeta_identities::PrecisionContext;
///
/// let ctx = PrecisionContext::new(10).unwrap();
/// assert_eq!(series_constant(SeriesConstant::S0, &ctx).unwrap().to_decimal(9), "-0.0204388172");
/// assert_eq!(series_constant(SeriesConstant::S, &ctx).unwrap().to_decimal(9), "-0.0312999121");
/// ```
pub fn series_constant(which: SeriesConstant, ctx: &PrecisionContext) -> Result<Real> {
    let work = ctx.raised(3);
    let pi = Real::pi(&work);
    let log_eps = work.working_eps().log10() - 1.0;
    let mut total = Real::zero(&work);
    let (root, scale) = match which {
        SeriesConstant::S0 => (Real::from_i64(2, &work).sqrt()?, pi.clone()),
        SeriesConstant::S => {
            let r3 = Real::from_i64(3, &work).sqrt()?;
            (r3.half(), &(&pi * 2i64) / &r3)
        }
    };
    for n in 1..100_000i64 {
        let x = &(&pi * n) * &root;
        let inner = match which {
            SeriesConstant::S0 => cos_ratio(&x, &work)?,
            SeriesConstant::S => hyperbolic_tail(&x, n % 2 == 0, &work),
        };
        let term = inner * Real::from_i64(n, &work).powi(-5);
        let small = term.is_zero() || term.log10_abs() < log_eps;
        total = total + term;
        if small {
            return Ok((scale * total).at(ctx));
        }
    }
    Err(Error::Numerical("constant series did not converge".into()))
}

/// Which of the two integrand families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// `F_m(t) = 4 sum (t/n)^{6m+9}/(n^6 + t^6)`
    F,
    /// `G_m(t) = 4 sum (t/n)^{4m+5}/(n^2 (n^4 + t^4))`
    G,
}

impl FamilyKind {
    /// `(q, e)`: each term is `4 t^q n^{-q-6}/(1 + (t/n)^e)`.
    fn shape(self, m: u32) -> (i32, i32) {
        match self {
            FamilyKind::F => (6 * m as i32 + 9, 6),
            FamilyKind::G => (4 * m as i32 + 5, 4),
        }
    }
}

/// `F_m(t)` or `G_m(t)` to absolute accuracy `tol`; returns the value and a
/// bound on what was left out.
///
/// Terms with `n <= N` are summed as they stand, where `N` is at least `2t`.
/// Past `N` the factor `1/(1 + (t/n)^e)` is expanded, which turns the rest
/// into an alternating series of zeta tails whose ratio is below `2^{-e}`.
/// For `t < 1/2` the whole sum is expanded and `N = 0`.
pub fn fm_gm(kind: FamilyKind, m: u32, t: &Real, tol: f64, ctx: &PrecisionContext) -> Result<(Real, f64)> {
    positive(t, "fm_gm")?;
    if !(tol > 0.0) {
        return Err(Error::Usage(format!("fm_gm needs a positive tolerance, got {tol}")));
    }
    let (q, e) = kind.shape(m);
    let s0 = (q + 6) as i64;
    let tf = t.to_f64();
    let te = t.powi(e);
    let n_direct = if tf < 0.5 {
        0
    } else {
        let em_start = (s0 as f64 + 6.0 * ctx.working_digits() as f64 + 30.0) / PI;
        (2.0 * tf).floor().max(em_start.ceil()) as i64
    };
    let mut total = Real::zero(ctx);
    for n in 1..=n_direct {
        let nr = Real::from_i64(n, ctx);
        let ne = nr.powi(e);
        total = total + nr.powi(-(s0 as i32)) * &ne / &(&ne + &te);
    }
    let scale = t.powi(q) * 4i64;
    let log_scale = scale.log10_abs();
    // every later expansion term is below the current one times this
    let log_ratio = e as f64 * (tf / (n_direct + 1) as f64).log10();
    let log_tol = tol.log10();
    let mut power = Real::one(ctx);
    for j in 0..400i64 {
        let s = s0 + e as i64 * j;
        let tail = if n_direct == 0 { zeta_int(s, ctx)? } else { zeta_tail(s, n_direct + 1, ctx)? };
        let term = &power * &tail;
        let size = log_scale + term.log10_abs() + log_ratio;
        total = if j % 2 == 0 { total + &term } else { total - &term };
        if term.is_zero() || size < log_tol {
            let bound = if term.is_zero() { 0.0 } else { 10f64.powf(size) };
            return Ok((scale * total, bound));
        }
        power = power * &te;
    }
    Err(Error::Numerical(format!("F/G family expansion did not settle at t = {tf}")))
}

/// Both sides of `sum_{m,n<=N} a_m a_n b_m/(b_m + b_n) = (sum a_n)^2 / 2`.
pub fn pair_sum_sides(a: &[Real], b: &[Real], ctx: &PrecisionContext) -> Result<(Real, Real)> {
    if a.len() != b.len() {
        return Err(Error::Usage("sequences must have equal length".into()));
    }
    if let Some(bad) = b.iter().find(|x| !x.is_positive()) {
        return Err(Error::Domain(format!("weights must be positive, got {bad}")));
    }
    let mut lhs = Real::zero(ctx);
    for (am, bm) in a.iter().zip(b) {
        let mut row = Real::zero(ctx);
        for (an, bn) in a.iter().zip(b) {
            row = row + an * &(bm / &(bm + bn));
        }
        lhs = lhs + am * &row;
    }
    let s: Real = a.iter().fold(Real::zero(ctx), |acc, x| acc + x);
    Ok((lhs, s.square().half()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{digamma_oracle, euler_gamma};

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::new(d).unwrap()
    }

    #[test]
    fn a1_is_pi_coth() {
        let c = ctx(25);
        let pi = Real::pi(&c);
        for w in [0.3, 1.0, 2.5, 40.0] {
            let wr = Real::from_f64(w, &c);
            let got = a_k(1, &wr, &c).unwrap();
            let (s, ch) = (&pi * &wr).sinh_cosh();
            let want = &pi * &(ch / s);
            assert!((&got.value - &want).abs().to_f64() < 1e-28, "w={w}");
            assert!(got.residue < 1e-30);
        }
        let big = a_k(1, &Real::from_i64(1000, &c), &c).unwrap();
        assert!((big.value - &pi).abs().to_f64() < 1e-28);
    }

    #[test]
    fn a_k_stays_in_its_envelopes() {
        let c = ctx(20);
        for k in 1..=4 {
            let main = a_main(k);
            for n in [1i64, 2, 5, 17, 100] {
                let v = a_k(k, &Real::from_i64(n, &c), &c).unwrap();
                let x = v.value.to_f64() - 1.0 / n as f64;
                assert!(x.abs() <= v.bound, "cotangent envelope k={k} n={n}");
                assert!(x <= main + 1e-15 && x >= main - 2.0 / n as f64 - 1e-15, "main-term envelope k={k} n={n}");
            }
        }
    }

    // (1/2) a_k(n) - 1/(2n) = sum_m n^{2k-1}/(m^{2k} + n^{2k})
    #[test]
    fn a_k_matches_its_defining_series() {
        let c = ctx(20);
        let big_m = 100_000u64;
        for k in 1..=3u32 {
            for n in [1u64, 3, 20] {
                let nf = n as f64;
                let mut s = 0.0;
                for m in (1..=big_m).rev() {
                    let u = m as f64 / nf;
                    s += 1.0 / (nf * (u.powi(2 * k as i32) + 1.0));
                }
                // tail ~ integral from M: (n^{2k-1}) M^{1-2k}/(2k-1)
                let tail = nf.powi(2 * k as i32 - 1) * (big_m as f64).powi(1 - 2 * k as i32) / (2 * k - 1) as f64;
                let v = a_k(k, &Real::from_i64(n as i64, &c), &c).unwrap().value.to_f64();
                let want = 0.5 * v - 0.5 / nf;
                assert!((s + tail - want).abs() < 1e-9 + tail * 0.01, "k={k} n={n}: {s} vs {want}");
            }
        }
    }

    #[test]
    fn half_sums_match_full_sums() {
        let c = ctx(25);
        for k in 1..=4u32 {
            let rs = RootSystem::new(k, &c).unwrap();
            for w in [0.7, 3.0, 11.5] {
                let wr = Real::from_f64(w, &c);
                let d = (a_k(k, &wr, &c).unwrap().value - a_k_with(&rs, &wr, &c).unwrap().value).abs();
                assert!(d.to_f64() < 1e-30, "a k={k}");
                let d = (c_k(k, &wr, &c).unwrap().value - c_k_with(&rs, &wr, &c).unwrap().value).abs();
                assert!(d.to_f64() < 1e-30, "c k={k}");
                if k >= 2 {
                    let d = (b_kl(k, 1, &wr, &c).unwrap().value - b_kl_with(&rs, 1, &wr, &c).unwrap().value).abs();
                    assert!(d.to_f64() < 1e-30, "b k={k}");
                }
            }
        }
    }

    #[test]
    fn b21_is_minus_beta() {
        let c = ctx(25);
        for n in [1u64, 2, 7] {
            let b = b_kl(2, 1, &Real::from_i64(n as i64, &c), &c).unwrap();
            let beta = beta_fn(n, &c).unwrap();
            assert!((&b.value + &beta).abs().to_f64() < 1e-23, "n={n}");
        }
    }

    #[test]
    fn b_against_oracle_digamma() {
        let c = ctx(12);
        let rs = RootSystem::new(3, &c).unwrap();
        let w = Real::from_i64(2, &c);
        let got = b_kl(3, 2, &w, &c).unwrap().value;
        let mut s = Complex::zero(&c);
        for e in &rs.eps {
            let psi = digamma_oracle(&e.scale(&w), &c, 100_000).unwrap();
            s = &s + &(&e.powi(3) * &psi);
        }
        let want = -(s.re / 3i64);
        assert!((got - want).abs().to_f64() < 1e-9);
    }

    #[test]
    fn b_stays_near_its_main_term() {
        let c = ctx(20);
        for (k, l) in [(2u32, 1u32), (3, 1), (3, 2), (3, 3), (3, 4)] {
            for n in [1i64, 4, 30, 500] {
                let v = b_kl(k, l, &Real::from_i64(n, &c), &c).unwrap();
                let d = (v.value.to_f64() - b_main(k, l)).abs();
                assert!(d <= v.bound, "k={k} l={l} n={n}: {d} > {}", v.bound);
                assert!(v.value.is_positive());
            }
        }
        assert!(matches!(b_kl(2, 3, &Real::from_i64(1, &c), &c), Err(Error::Usage(_))));
    }

    #[test]
    fn c_k_bounds() {
        let c = ctx(20);
        for k in 1..=3u32 {
            let rs = RootSystem::new(k, &c).unwrap();
            for n in (1..=1000i64).step_by(37) {
                let v = c_k_with(&rs, &Real::from_i64(n, &c), &c).unwrap();
                let x = v.value.to_f64();
                assert!(x.abs() <= v.bound, "eq-12 bound k={k} n={n}");
                let d = x - c_main(k);
                assert!(d >= -1e-15 && d <= 1.0 / n as f64 + 1e-15, "main term k={k} n={n}: {d}");
            }
        }
    }

    #[test]
    fn c1_decomposition_at_one() {
        // c_1(1) = (2/3) Re(omega_0 psi(-omega_0)) - (1/3) psi(1)
        let c = ctx(25);
        let w0 = RootSystem::new(1, &c).unwrap().omg[0].clone();
        let left = (&w0 * &digamma(&-&w0, &c).unwrap()).re;
        let want = &(&left * 2i64) / 3i64 + &(euler_gamma(&c) / 3i64);
        let got = c_k(1, &Real::one(&c), &c).unwrap().value;
        assert!((got - want).abs().to_f64() < 1e-23);
        let ten = c_k(1, &Real::from_i64(10, &c), &c).unwrap();
        assert!(ten.residue < 1e-23);
    }

    #[test]
    fn beta_two_paths() {
        let c = ctx(25);
        for n in 1..=100u64 {
            let a = beta_fn(n, &c).unwrap();
            let b = beta_fn_reflected(n, &c).unwrap();
            assert!((&a - &b).abs().to_f64() < 1e-23, "n={n}");
        }
        let far = beta_fn(1000, &c).unwrap().to_f64();
        // beta(n) = -pi/2 + B_2/n^2 + ...
        assert!((far + PI / 2.0 - 1.0 / 6.0 / 1e6).abs() < 1e-10);
    }

    #[test]
    fn alpha_two_paths() {
        let c = ctx(25);
        for n in [1u64, 2, 3, 10, 51] {
            let a = alpha_fn(n, &c).unwrap();
            let b = alpha_fn_via_c1(n, &c).unwrap();
            assert!((&a - &b).abs().to_f64() < 1e-23, "n={n}");
        }
        let n = 200.0;
        let far = alpha_fn(200, &c).unwrap().to_f64();
        let main = -PI / (3.0 * 3f64.sqrt()) - 1.0 / (6.0 * n);
        assert!((far - main).abs() < 1.0 / n.powi(4));
    }

    #[test]
    fn alpha_k_tends_to_zero() {
        let c = ctx(20);
        let a1 = alpha_k(1, 1, &c).unwrap();
        let pi = Real::pi(&c);
        // alpha_1(n) = 4/(e^{2 pi n} - 1)
        let want = Real::from_i64(4, &c) / ((&pi * 2i64).exp() - 1i64);
        assert!((a1 - want).abs().to_f64() < 1e-25);
        assert!(alpha_k(2, 30, &c).unwrap().abs().to_f64() < 1e-50);
        let lo = alpha_k(2, 1, &c).unwrap();
        let hi = alpha_k(2, 1, &ctx(40)).unwrap();
        assert!((lo - hi).abs().to_f64() < 1e-25);
    }

    #[test]
    fn first_s0_term_dominates() {
        let c = ctx(15);
        let x = &(Real::pi(&c)) * &Real::from_i64(2, &c).sqrt().unwrap();
        let first = &Real::pi(&c) * &cos_ratio(&x, &c).unwrap();
        assert!(first.is_negative());
        let total = series_constant(SeriesConstant::S0, &c).unwrap();
        assert!((&first - &total).abs().to_f64() < 0.1 * first.abs().to_f64());
    }

    #[test]
    fn families_positive_and_small_near_zero() {
        let c = ctx(20);
        let one = Real::one(&c);
        let (f0, tail) = fm_gm(FamilyKind::F, 0, &one, 1e-25, &c).unwrap();
        assert!(tail <= 1e-25);
        // first term is 4/2 = 2
        assert!(f0.to_f64() > 2.0 && f0.to_f64() < 2.01);
        let small = Real::parse("0.01", &c).unwrap();
        for m in 0..3 {
            let (g, _) = fm_gm(FamilyKind::G, m, &small, 1e-40, &c).unwrap();
            assert!(g.is_positive());
            // ~ 4 zeta(4m+11) t^{4m+5}
            let lead = 4.0 * 0.01f64.powi(4 * m as i32 + 5);
            assert!((g.to_f64() / lead - 1.0).abs() < 1e-3);
        }
        let (f1, _) = fm_gm(FamilyKind::F, 1, &Real::from_i64(2, &c), 1e-20, &c).unwrap();
        assert!(f1.is_positive() && f1.is_finite());
    }

    #[test]
    fn families_match_their_defining_sums() {
        let c = ctx(30);
        for (kind, m, t) in [(FamilyKind::G, 0, 0.3), (FamilyKind::G, 1, 3.0), (FamilyKind::F, 0, 0.7), (FamilyKind::F, 2, 12.5)] {
            let tr = Real::from_f64(t, &c);
            // the raw definition to n = 4000 leaves under 4 t^q 4000^{-q-5}
            let mut raw = Real::zero(&c);
            for n in 1..=4000i64 {
                let nr = Real::from_i64(n, &c);
                let ratio = (&tr / &nr).powi(kind.shape(m).0);
                let den = match kind {
                    FamilyKind::F => nr.powi(6) + tr.powi(6),
                    FamilyKind::G => nr.square() * (nr.powi(4) + tr.powi(4)),
                };
                raw = raw + ratio / den;
            }
            raw = raw * 4i64;
            let (v, bound) = fm_gm(kind, m, &tr, 1e-32, &c).unwrap();
            assert!(bound <= 1e-32);
            let gap = (&v - &raw).abs().to_f64();
            assert!(gap < 1e-30 * raw.to_f64().max(1.0), "{kind:?} m={m} t={t}: {gap:e}");
        }
    }

    #[test]
    fn pair_sum_small() {
        let c = ctx(30);
        let a: Vec<Real> = [0.5, -0.25, 1.0].iter().map(|x| Real::from_f64(*x, &c)).collect();
        let b: Vec<Real> = [1.0, 3.0, 0.5].iter().map(|x| Real::from_f64(*x, &c)).collect();
        let (l, r) = pair_sum_sides(&a, &b, &c).unwrap();
        assert!((l - r).abs().to_f64() < 1e-38);
    }
}
