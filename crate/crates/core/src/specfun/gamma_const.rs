use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::mp::{PrecisionContext, Real};

/// Euler's constant by the Brent-McMillan Bessel-function sums.
///
/// `gamma = U/V - ln n` up to `pi e^{-4n}`, with
/// `V = sum (n^k/k!)^2` and `U = sum (n^k/k!)^2 H_k`.
pub fn euler_gamma(ctx: &PrecisionContext) -> Real {
    static CACHE: OnceLock<Mutex<HashMap<usize, Real>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(g) = cache.lock().expect("gamma cache").get(&ctx.bits()) {
        return g.clone();
    }
    let g = brent_mcmillan(ctx);
    cache.lock().expect("gamma cache").insert(ctx.bits(), g.clone());
    g
}

fn brent_mcmillan(ctx: &PrecisionContext) -> Real {
    let work = ctx.raised(5);
    let n = ((work.working_digits() as f64) * std::f64::consts::LN_10 / 4.0).ceil() as i64 + 2;
    let nr = Real::from_i64(n, &work);
    let n2 = nr.square();
    let mut a = -nr.ln().expect("n > 0");
    let mut b = Real::one(&work);
    let mut u = a.clone();
    let mut v = b.clone();
    let eps = work.working_eps();
    let mut k = 1i64;
    loop {
        b = &b * &n2 / (k * k);
        a = (&a * &n2 / k + &b) / k;
        u = u + &a;
        v = v + &b;
        if k > n && b.log10_abs() - v.log10_abs() < eps.log10() - 2.0 && a.log10_abs() - u.log10_abs() < eps.log10() - 2.0 {
            break;
        }
        k += 1;
    }
    (u / v).at(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forty_digits() {
        let ctx = PrecisionContext::new(40).unwrap();
        assert_eq!(euler_gamma(&ctx).to_decimal(40), "0.5772156649015328606065120900824024310422");
    }

    #[test]
    fn hundred_digits_prefix() {
        let ctx = PrecisionContext::new(100).unwrap();
        let s = euler_gamma(&ctx).to_decimal(100);
        assert!(s.starts_with("0.57721566490153286060651209008240243104215933593992359880576723488486772677766467093694706329174674"));
    }
}
