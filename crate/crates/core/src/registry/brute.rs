//! Direct evaluation of the positive double sums over `[1, N]^2`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernels::{b_main, b_peak};
use crate::mp::{PrecisionContext, Real};
use crate::specfun::zeta_int;

/// Which double sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BruteVariant {
    /// `sum 1/(m^2 (m^2 + n^2)) = pi^4/72`
    SquarePairs,
    /// `sum 1/(m^3 (m^3 + n^3)) = zeta(3)^2/2`
    CubePairs,
    /// `sum 1/(n^{2k} (m^{2k} + n^{2k})) = zeta(2k)^2/2`
    EvenPairs(u32),
    /// `sum m^l/(n^{2k-l} (m^{2k} + n^{2k})) = zeta(2k-l)^2/2`
    ShiftedPairs(u32, u32),
}

/// The truncated sum `S_N` and a bound `B` with `S_N <= S <= S_N + B`.
#[derive(Debug, Clone)]
pub struct BruteSum {
    pub value: Real,
    pub tail_bound: f64,
}

fn shape(v: BruteVariant) -> Result<(u32, u32)> {
    Ok(match v {
        BruteVariant::SquarePairs => (1, 0),
        BruteVariant::EvenPairs(k) if k >= 1 => (k, 0),
        BruteVariant::ShiftedPairs(k, l) if k >= 1 && l + 2 <= 2 * k => (k, l),
        BruteVariant::CubePairs => (0, 0),
        _ => return Err(Error::Usage(format!("{v:?} needs k >= 1 and l <= 2k - 2"))),
    })
}

/// Sums the variant over `1 <= m, n <= N`.
///
/// Rows are summed in double precision and accumulated in `ctx`; the bound
/// covers the region outside the square plus a `1e-12` relative allowance
/// for the row sums. For `sum m^l/(n^{2k-l}(m^{2k}+n^{2k}))`, writing
/// `I = int_0^inf v^l/(v^{2k}+1) dv` and `P = max v^l/(v^{2k}+1)`:
///
/// * `m > N, n <= N` contributes at most `zeta(2k-l) N^{l+1-2k}/(2k-l-1)`,
/// * `n > N` at most `I N^{2l+2-4k}/(4k-2l-2) + P N^{2l+1-4k}/(4k-2l-1)`.
///
/// The cubic sum uses `zeta(3)/(2N^2) + 1/(5N^4)`.
///
/// ```
/// use zeta_identities::registry::{brute_double_sum, BruteVariant};
/// use zeta_identities::mp::{PrecisionContext, Real};
///
/// let ctx = PrecisionContext::new(20).unwrap();
/// let s = brute_double_sum(BruteVariant::SquarePairs, 10, &ctx).unwrap();
/// let want = Real::pi(&ctx).powi(4) / 72i64;
/// let gap = (&want - &s.value).to_f64();
/// assert!(gap >= 0.0 && gap <= s.tail_bound);
/// ```
pub fn brute_double_sum(variant: BruteVariant, n: usize, ctx: &PrecisionContext) -> Result<BruteSum> {
    if n < 10 {
        return Err(Error::Usage(format!("brute double sum needs N >= 10, got {n}")));
    }
    let (k, l) = shape(variant)?;
    let nf = n as f64;
    let rows: Vec<f64> = (1..=n)
        .into_par_iter()
        .map(|m| {
            let mf = m as f64;
            let mut s = 0.0;
            for j in 1..=n {
                let jf = j as f64;
                s += match variant {
                    BruteVariant::SquarePairs => 1.0 / (mf * mf * (mf * mf + jf * jf)),
                    BruteVariant::CubePairs => 1.0 / (mf.powi(3) * (mf.powi(3) + jf.powi(3))),
                    _ => {
                        let (k2, li) = (2 * k as i32, l as i32);
                        mf.powi(li) / (jf.powi(k2 - li) * (mf.powi(k2) + jf.powi(k2)))
                    }
                };
            }
            s
        })
        .collect();
    let mut value = Real::zero(ctx);
    for r in &rows {
        value = value + Real::from_f64(*r, ctx);
    }
    let tail = match variant {
        BruteVariant::CubePairs => zeta_int(3, ctx)?.to_f64() / (2.0 * nf * nf) + 1.0 / (5.0 * nf.powi(4)),
        _ => {
            let (kf, lf) = (k as f64, l as f64);
            let z = zeta_int((2 * k - l) as i64, ctx)?.to_f64();
            let (i, peak) = (b_main(k, l) / 2.0, b_peak(k, l));
            z * nf.powf(lf + 1.0 - 2.0 * kf) / (2.0 * kf - lf - 1.0)
                + i * nf.powf(2.0 * lf + 2.0 - 4.0 * kf) / (4.0 * kf - 2.0 * lf - 2.0)
                + peak * nf.powf(2.0 * lf + 1.0 - 4.0 * kf) / (4.0 * kf - 2.0 * lf - 1.0)
        }
    };
    let rounding = 1e-12 * value.to_f64().abs();
    Ok(BruteSum { value, tail_bound: tail + rounding })
}
