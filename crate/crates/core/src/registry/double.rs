//! Double-precision estimates of the table-weighted double series.
//!
//! For each outer `m` with `g(m) != 0` the inner sum over `n` is taken up to
//! `ratio * m`, past which the kernel has settled onto its large-`w` form;
//! the rest of the inner sum is then closed with suffix sums of `f(n)/n^e`
//! and the closed forms of `L(e; f)`. The outer sum stops at `M` and its
//! remainder is estimated from the small-`w` behaviour of the kernel,
//! `K(w) ~ c zeta(s) w^{s-1}`, which makes the inner sum about
//! `c zeta(s) L(s; f)/m^{s-1}` for large `m`.

use rayon::prelude::*;

use super::catalog::DoubleKernel;
use super::expr::dirichlet_series;
use super::plan::support_of;
use crate::arith::{build_table, ConvolutionPair, FunctionId};
use crate::error::{Error, Result};
use crate::kernels::fast::{a_minus_recip, b_k, c_minus_recip, zeta_f64};
use crate::kernels::{a_main, b_main, c_main};
use crate::mp::PrecisionContext;
use crate::specfun::bernoulli;

/// An estimate of a double series and what went into it.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleEstimate {
    pub value: f64,
    pub outer_terms: usize,
    pub inner_terms: usize,
    /// The estimated outer remainder, already included in `value`.
    pub outer_tail: f64,
}

/// `sum_{m<=M} mu(m) ((2 pi/m)/(e^{2 pi/m} - 1) - 1)`.
pub fn mobius_cot(limit: usize) -> Result<DoubleEstimate> {
    let mu = build_table(FunctionId::Mu, limit)?;
    let terms: Vec<f64> = mu
        .values()
        .par_iter()
        .enumerate()
        .map(|(i, &u)| {
            if u == 0.0 {
                return 0.0;
            }
            let x = 2.0 * std::f64::consts::PI / (i + 1) as f64;
            u * (x / x.exp_m1() - 1.0)
        })
        .collect();
    Ok(DoubleEstimate { value: terms.iter().sum(), outer_terms: limit, inner_terms: limit, outer_tail: 0.0 })
}

fn l_f64(f: FunctionId, s: u32) -> Result<f64> {
    let ctx = PrecisionContext::new(20)?;
    let e = dirichlet_series(f, s).ok_or_else(|| Error::Usage(format!("no closed form for L(s; {f})")))?;
    Ok(e.eval(&ctx)?.to_f64())
}

fn bernoulli_f64(n: usize) -> Result<f64> {
    let b = bernoulli(n)?;
    let ctx = PrecisionContext::new(20)?;
    Ok(crate::mp::Real::from_rational(&b, &ctx).to_f64())
}

/// `(exponent, coefficient, power of m)` of each large-`w` term of the
/// kernel minus `1/w`, so that the inner remainder past `N` is
/// `sum coefficient * m^power * sum_{n>N} f(n)/n^{p + exponent}`.
fn large_w_terms(kernel: DoubleKernel) -> Result<Vec<(u32, f64, i32)>> {
    Ok(match kernel {
        // a_k(w) - 1/w -> A - 1/w, exponentially fast
        DoubleKernel::Cot(k) => vec![(0, a_main(k), 0), (1, -1.0, 1)],
        // b_k(w) ~ B - 1/(6 w^2) + 2 B_{2k+2}/((2k+2) w^{2k+2})
        DoubleKernel::Digamma(k) => {
            let d = 2.0 * bernoulli_f64(2 * k as usize + 2)? / (2 * k + 2) as f64;
            vec![(0, b_main(k, 1), 0), (2, -1.0 / 6.0, 2), (2 * k + 2, d, 2 * k as i32 + 2)]
        }
        // c_k(w) - 1/w ~ C - 1/(2w) + B_{2k+2}/((2k+2) w^{2k+2})
        DoubleKernel::Omega(k) => {
            let e = bernoulli_f64(2 * k as usize + 2)? / (2 * k + 2) as f64;
            vec![(0, c_main(k), 0), (1, -0.5, 1), (2 * k + 2, e, 2 * k as i32 + 2)]
        }
    })
}

/// `(c, s)` with `K(w) ~ c zeta(s) w^{s-1}` as `w -> 0`.
fn small_w_lead(kernel: DoubleKernel) -> (f64, u32) {
    match kernel {
        DoubleKernel::Cot(k) => (2.0, 2 * k),
        DoubleKernel::Digamma(k) => (2.0, 2 * k - 1),
        DoubleKernel::Omega(k) => (1.0, 2 * k + 1),
    }
}

fn kernel_value(kernel: DoubleKernel, w: f64) -> f64 {
    match kernel {
        DoubleKernel::Cot(k) => a_minus_recip(k, w),
        DoubleKernel::Digamma(k) => b_k(k, w),
        DoubleKernel::Omega(k) => c_minus_recip(k, w),
    }
}

/// `sum_{m<=M} g(m)/m sum_n f(n)/n^p (K(n/m) - [m/n])` plus the estimated
/// outer remainder, where the bracket is present for the kernels with a
/// `1/w` part (`a_k` and `c_k`).
pub fn double_series(kernel: DoubleKernel, g: FunctionId, f: FunctionId, outer: usize, ratio: usize) -> Result<DoubleEstimate> {
    if outer == 0 || ratio == 0 {
        return Err(Error::Usage("double series needs at least one outer term and a positive inner ratio".into()));
    }
    let support = support_of(f);
    let len = match support {
        Some(s) => outer.max(s),
        None => ratio * outer,
    } + 1;
    let pair = ConvolutionPair::build(g, f, len)?;
    let (gv, fv) = (pair.g.values(), pair.f.values());
    let p = kernel.power();
    let terms = large_w_terms(kernel)?;

    // suffix[j][N] = sum_{N < n <= len} f(n)/n^{p + e_j}; beyond[j] is what lies past the table
    let mut suffix = Vec::with_capacity(terms.len());
    let mut beyond = Vec::with_capacity(terms.len());
    for (j, &(e, _, _)) in terms.iter().enumerate() {
        let s = p + e;
        let mut v = vec![0.0; len + 1];
        for n in (1..=len).rev() {
            v[n - 1] = v[n] + fv[n - 1] / (n as f64).powi(s as i32);
        }
        // only the leading two exponents are large enough for the closed-form
        // difference to matter; the last one is tiny past the table
        let past = if j < 2 && support.is_none() { l_f64(f, s)? - v[0] } else { 0.0 };
        beyond.push(past);
        suffix.push(v);
    }
    let nonzero: Vec<usize> = (1..=len).filter(|&n| fv[n - 1] != 0.0).collect();
    let weight: Vec<f64> = nonzero.iter().map(|&n| fv[n - 1] / (n as f64).powi(p as i32)).collect();

    let ms: Vec<usize> = (1..=outer).filter(|&m| gv[m - 1] != 0.0).collect();
    let parts: Vec<(f64, usize)> = ms
        .par_iter()
        .map(|&m| {
            let cut = (ratio * m).max(support.unwrap_or(0)).min(len);
            let mf = m as f64;
            let mut inner = 0.0;
            let mut used = 0;
            for (&n, &wt) in nonzero.iter().zip(&weight) {
                if n > cut {
                    break;
                }
                inner += wt * kernel_value(kernel, n as f64 / mf);
                used += 1;
            }
            let mut rest = 0.0;
            for (j, &(_, c, pw)) in terms.iter().enumerate() {
                rest += c * mf.powi(pw) * (suffix[j][cut] + beyond[j]);
            }
            (gv[m - 1] / mf * (inner + rest), used)
        })
        .collect();
    let value: f64 = parts.iter().map(|p| p.0).sum();
    let inner_terms = parts.iter().map(|p| p.1).sum();

    let (c, s) = small_w_lead(kernel);
    let l_s = l_f64(f, s)?;
    let partial: f64 = (1..=outer).map(|m| gv[m - 1] / (m as f64).powi(s as i32)).sum();
    let outer_tail = c * l_s * (l_s - zeta_f64(s) * partial);
    Ok(DoubleEstimate { value: value + outer_tail, outer_terms: outer, inner_terms, outer_tail })
}
