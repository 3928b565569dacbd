//! Riemann zeta at integers, its derivatives, and the Dirichlet beta function.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::bernoulli::bernoulli_real;
use crate::error::{Error, Result};
use crate::mp::{PrecisionContext, Real};

type Memo = Mutex<HashMap<(i64, i64, usize), Real>>;

fn memo() -> &'static Memo {
    static M: OnceLock<Memo> = OnceLock::new();
    M.get_or_init(|| Mutex::new(HashMap::new()))
}

fn memoized(key: (i64, i64, usize), f: impl FnOnce() -> Result<Real>) -> Result<Real> {
    if let Some(v) = memo().lock().expect("zeta memo").get(&key) {
        return Ok(v.clone());
    }
    let v = f()?;
    memo().lock().expect("zeta memo").insert(key, v.clone());
    Ok(v)
}

/// `zeta(s)` for integer `s >= 2`.
///
/// Even arguments come from `(-1)^{k+1} B_2k (2 pi)^{2k} / (2 (2k)!)`, odd
/// ones from Euler-Maclaurin with `N = max(50, digits)`.
///
/// ```
/// use zeta_identities::mp::{PrecisionContext, Real};
/// use zeta_identities::specfun::zeta_int;
///
/// let ctx = PrecisionContext::new(30).unwrap();
/// assert_eq!(zeta_int(3, &ctx).unwrap().to_decimal(30), "1.20205690315959428539973816151");
/// let pi = Real::pi(&ctx);
/// let z2 = zeta_int(2, &ctx).unwrap();
/// assert!((z2 - pi.square() / 6i64).abs().to_f64() < 1e-38);
/// ```
pub fn zeta_int(s: i64, ctx: &PrecisionContext) -> Result<Real> {
    if s < 2 {
        return Err(Error::Usage(format!("zeta_int needs s >= 2, got {s}")));
    }
    memoized((0, s, ctx.bits()), || {
        if s % 2 == 0 {
            Ok(zeta_even(s, ctx))
        } else {
            zeta_odd(s, ctx)
        }
    })
}

fn zeta_even(s: i64, ctx: &PrecisionContext) -> Real {
    let k = s / 2;
    let b = bernoulli_real(s as usize, ctx);
    let two_pi = Real::pi(ctx) * 2i64;
    let mut fact = Real::one(ctx);
    for j in 2..=s {
        fact = fact * j;
    }
    let v = b * two_pi.powi(s as i32) / (fact * 2i64);
    if k % 2 == 0 {
        -v
    } else {
        v
    }
}

fn zeta_odd(s: i64, ctx: &PrecisionContext) -> Result<Real> {
    let n = i64::max(50, ctx.digits() as i64);
    em_sum(0, s, n, ctx).map(|(v, _)| v)
}

/// `zeta^{(k)}(s) = sum (-ln n)^k n^{-s}` for `k >= 1`, `s >= 2`.
///
/// Direct summation to `N = max(50, digits)` plus the exact tail integral and
/// Euler-Maclaurin derivative corrections.
pub fn zeta_deriv(k: u32, s: i64, ctx: &PrecisionContext) -> Result<Real> {
    if k == 0 || s < 2 {
        return Err(Error::Usage(format!("zeta_deriv needs k >= 1 and s >= 2, got k={k}, s={s}")));
    }
    let n = i64::max(50, ctx.digits() as i64);
    memoized((k as i64, s, ctx.bits()), || zeta_deriv_with(k, s, n, ctx).map(|(v, _)| v))
}

/// [`zeta_deriv`] with an explicit cut `N`; also returns the size of the
/// first omitted correction as an error estimate.
pub fn zeta_deriv_with(k: u32, s: i64, n: i64, ctx: &PrecisionContext) -> Result<(Real, f64)> {
    if k == 0 || s < 2 || n < 10 {
        return Err(Error::Usage(format!("zeta_deriv needs k >= 1, s >= 2, N >= 10; got k={k}, s={s}, N={n}")));
    }
    let (v, err) = em_sum(k, s, n, ctx)?;
    Ok((if k % 2 == 1 { -v } else { v }, err))
}

// sum_{n>=1} (ln n)^k n^{-s}: direct part below N, then
// int_N^inf + f(N)/2 - sum_j B_2j/(2j)! f^{(2j-1)}(N)
fn em_sum(k: u32, s: i64, n: i64, ctx: &PrecisionContext) -> Result<(Real, f64)> {
    let work = ctx.raised(5);
    let k = k as usize;
    let mut direct = Real::zero(&work);
    for j in 2..n {
        let jr = Real::from_i64(j, &work);
        let mut t = jr.powi(-(s as i32));
        if k > 0 {
            t = t * jr.ln()?.powi(k as i32);
        }
        direct = direct + t;
    }
    if k == 0 {
        direct = direct + 1i64;
    }

    let nr = Real::from_i64(n, &work);
    let l = nr.ln()?;
    let lpow: Vec<Real> = (0..=k as i32 + 1).map(|e| l.powi(e)).collect();
    let n_pow = nr.powi(-(s as i32));

    // integral I_k = N^{1-s} L^k/(s-1) + k/(s-1) I_{k-1}
    let sm1 = s - 1;
    let mut integral = &n_pow * &nr / sm1;
    for j in 1..=k {
        integral = (&n_pow * &nr * &lpow[j]) / sm1 + integral * (j as i64) / sm1;
    }

    // f(x) = x^{-a} P(ln x); f' = x^{-a-1} (P'(L) - a P(L))
    let mut poly: Vec<Real> = vec![Real::zero(&work); k + 1];
    poly[k] = Real::one(&work);
    let mut a = s;
    let eval = |p: &[Real]| -> Real {
        let mut acc = Real::zero(&work);
        for (e, c) in p.iter().enumerate() {
            if !c.is_zero() {
                acc = acc + c * &lpow[e];
            }
        }
        acc
    };
    let half_f = eval(&poly) * &n_pow / 2i64;
    let mut total = direct + integral + half_f;

    let log_eps = work.working_eps().log10();
    let mut x_pow = n_pow.clone(); // N^{-a}
    let mut fact = Real::one(&work); // (2j)!
    let mut last = f64::INFINITY;
    for j in 1..=200usize {
        // advance the derivative once to reach order 2j-1, twice afterwards
        let steps = if j == 1 { 1 } else { 2 };
        for _ in 0..steps {
            let mut next: Vec<Real> = vec![Real::zero(&work); poly.len()];
            for e in 0..poly.len() {
                next[e] = &next[e] - &(&poly[e] * a);
                if e > 0 {
                    next[e - 1] = &next[e - 1] + &(&poly[e] * e as i64);
                }
            }
            poly = next;
            a += 1;
            x_pow = x_pow / &nr;
        }
        fact = fact * ((2 * j - 1) * 2 * j) as i64;
        let term = bernoulli_real(2 * j, &work) * eval(&poly) * &x_pow / &fact;
        let size = term.log10_abs();
        total = total - &term;
        last = size;
        if size < log_eps - 2.0 {
            return Ok((total.at(ctx), 10f64.powf(size)));
        }
    }
    Err(Error::Numerical(format!("Euler-Maclaurin stalled at 1e{last:.1} for s={s}, N={n}")))
}

/// `sum_{x >= n} x^{-s}` for `s >= 2` and `n >= 1`.
///
/// Every term is added as a positive quantity, so a tail far below one keeps
/// its relative accuracy instead of coming out of `zeta(s)` minus a head.
/// Terms are summed directly until `x` reaches `(s + 6D)/pi`, with `D` the
/// working digits; Euler-Maclaurin closes the rest.
///
/// ```
/// use zeta_identities::mp::{PrecisionContext, Real};
/// use zeta_identities::specfun::{zeta_int, zeta_tail};
///
/// let ctx = PrecisionContext::new(30).unwrap();
/// let head = Real::one(&ctx) + Real::from_i64(2, &ctx).powi(-3);
/// let t = zeta_tail(3, 3, &ctx).unwrap();
/// assert!((t + head - zeta_int(3, &ctx).unwrap()).abs().to_f64() < 1e-35);
/// ```
pub fn zeta_tail(s: i64, n: i64, ctx: &PrecisionContext) -> Result<Real> {
    if s < 2 || n < 1 {
        return Err(Error::Usage(format!("zeta_tail needs s >= 2 and n >= 1, got s={s}, n={n}")));
    }
    let work = ctx.raised(5);
    let d = work.working_digits() as f64;
    let start = n.max(((s as f64 + 6.0 * d) / std::f64::consts::PI).ceil() as i64);
    let mut total = Real::zero(&work);
    for x in n..start {
        total = total + Real::from_i64(x, &work).powi(-(s as i32));
    }
    let nr = Real::from_i64(start, &work);
    let n_pow = nr.powi(-(s as i32));
    total = total + &(&n_pow * &nr) / (s - 1) + n_pow.half();
    // c_j = (s)_{2j-1} N^{1-s-2j}/(2j)!
    let n2 = nr.square();
    let mut c = &n_pow / &nr * s / 2i64;
    let log_eps = work.working_eps().log10();
    for j in 1..=(super::BERNOULLI_MAX_INDEX / 2) {
        let term = bernoulli_real(2 * j, &work) * &c;
        total = total + &term;
        if term.is_zero() || term.log10_abs() < total.log10_abs() + log_eps - 2.0 {
            return Ok(total.at(ctx));
        }
        let (a, b) = ((s + 2 * j as i64 - 1) * (s + 2 * j as i64), ((2 * j + 1) * (2 * j + 2)) as i64);
        c = &c * a / b / &n2;
    }
    Err(Error::Numerical(format!("Euler-Maclaurin stalled for the tail of zeta({s}) from {n}")))
}

/// `L(s, chi_4) = sum (-1)^n (2n+1)^{-s}` by the Cohen-Rodriguez Villegas-Zagier
/// acceleration; `s = 1` is allowed and gives `pi/4`.
///
/// ```
/// use zeta_identities::mp::PrecisionContext;
/// use zeta_identities::specfun::dirichlet_beta;
///
/// let ctx = PrecisionContext::new(25).unwrap();
/// assert_eq!(dirichlet_beta(2, &ctx).unwrap().to_decimal(20), "0.91596559417721901505");
/// ```
pub fn dirichlet_beta(s: i64, ctx: &PrecisionContext) -> Result<Real> {
    if s < 1 {
        return Err(Error::Usage(format!("dirichlet_beta needs s >= 1, got {s}")));
    }
    let terms = (1.31 * ctx.working_digits() as f64).ceil() as i64 + 4;
    memoized((-1, s, ctx.bits()), || Ok(dirichlet_beta_with(s, terms, ctx)))
}

/// Acceleration with an explicit number of terms.
pub fn dirichlet_beta_with(s: i64, terms: i64, ctx: &PrecisionContext) -> Real {
    let work = ctx.raised(5);
    let sqrt8 = Real::from_i64(8, &work).sqrt().expect("positive");
    let d = (sqrt8 + 3i64).powi(terms as i32);
    let d = (&d + &d.recip()) / 2i64;
    let mut b = Real::from_i64(-1, &work);
    let mut c = -&d;
    let mut sum = Real::zero(&work);
    let n = terms;
    for k in 0..n {
        c = &b - &c;
        let ak = Real::from_i64(2 * k + 1, &work).powi(-(s as i32));
        sum = sum + &c * &ak;
        // b <- (k+n)(k-n) b / ((k + 1/2)(k + 1))
        b = &b * ((k + n) * (k - n) * 2) / ((2 * k + 1) * (k + 1));
    }
    (sum / d).at(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::new(d).unwrap()
    }

    #[test]
    fn even_values() {
        let c = ctx(40);
        let pi = Real::pi(&c);
        let z4 = zeta_int(4, &c).unwrap();
        assert!((z4 - pi.powi(4) / 90i64).abs().to_f64() < 1e-45);
        assert!(matches!(zeta_int(1, &c), Err(Error::Usage(_))));
    }

    #[test]
    fn odd_values_against_direct_sum() {
        // zeta(21) converges fast enough for a plain sum to 2000 with an
        // integral tail
        let c = ctx(30);
        let mut s = Real::zero(&c);
        let n = 2000i64;
        for j in 1..=n {
            s = s + Real::from_i64(j, &c).powi(-21);
        }
        let nr = Real::from_i64(n, &c);
        s = s + nr.powi(-20) / 20i64 - nr.powi(-21) / 2i64;
        let z = zeta_int(21, &c).unwrap();
        assert!((z - s).abs().to_f64() < 1e-40);
    }

    #[test]
    fn zeta3_stable_in_n() {
        let c = ctx(40);
        let a = em_sum(0, 3, 50, &c).unwrap().0;
        let b = em_sum(0, 3, 97, &c).unwrap().0;
        assert!((a - b).abs().to_f64() < 1e-45);
    }

    #[test]
    fn tails_match_differences() {
        let c = ctx(40);
        for (s, n) in [(2i64, 1i64), (5, 7), (11, 300), (40, 2)] {
            let mut head = Real::zero(&c);
            for x in 1..n {
                head = head + Real::from_i64(x, &c).powi(-(s as i32));
            }
            let t = zeta_tail(s, n, &c).unwrap();
            let z = zeta_int(s, &c).unwrap();
            assert!((&t + &head - z).abs().to_f64() < 1e-45, "s={s}, n={n}");
        }
        // far out, relative accuracy survives: (1000^{-30}/30) (1 + 15/1000 + ...)
        let t = zeta_tail(31, 1000, &c).unwrap();
        let lead = Real::from_i64(1000, &c).powi(-30) / 30i64;
        let r = (t / lead).to_f64();
        assert!(r > 1.0 && r < 1.05, "{r}");
        assert!(zeta_tail(1, 5, &c).is_err());
    }

    #[test]
    fn zeta_prime_two() {
        let c = ctx(30);
        let d = zeta_deriv(1, 2, &c).unwrap();
        assert_eq!(d.to_decimal(20), "-0.93754825431584375370");
    }

    #[test]
    fn zeta_deriv_stable_in_n() {
        let c = ctx(30);
        for (k, s) in [(1u32, 4i64), (2, 3), (3, 2)] {
            let (a, _) = zeta_deriv_with(k, s, 40, &c).unwrap();
            let (b, _) = zeta_deriv_with(k, s, 80, &c).unwrap();
            assert!((a - b).abs().to_f64() < 1e-30, "k={k} s={s}");
        }
    }

    #[test]
    fn zeta_deriv_signs() {
        let c = ctx(20);
        assert!(zeta_deriv(2, 3, &c).unwrap().is_positive());
        assert!(zeta_deriv(1, 3, &c).unwrap().is_negative());
        assert!(zeta_deriv(3, 2, &c).unwrap().is_negative());
        assert!(zeta_deriv(0, 2, &c).is_err());
    }

    #[test]
    fn beta_closed_forms() {
        let c = ctx(30);
        let pi = Real::pi(&c);
        let b1 = dirichlet_beta(1, &c).unwrap();
        assert!((b1 - &pi / 4i64).abs().to_f64() < 1e-38);
        let b3 = dirichlet_beta(3, &c).unwrap();
        assert!((b3 - pi.powi(3) / 32i64).abs().to_f64() < 1e-38);
    }

    #[test]
    fn catalan_stable_across_orders() {
        let c = ctx(30);
        let a = dirichlet_beta_with(2, 60, &c);
        let b = dirichlet_beta_with(2, 70, &c);
        assert!((&a - &b).abs().to_f64() < 1e-38);
        // plain partial sums, paired, converge to the same value
        let mut s = Real::zero(&c);
        for n in 0..20_000i64 {
            let t = Real::from_i64(2 * n + 1, &c).powi(-2);
            s = if n % 2 == 0 { s + t } else { s - t };
        }
        assert!((s - a).abs().to_f64() < 2e-9);
    }
}
