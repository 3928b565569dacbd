use crate::error::{Error, Result};
use crate::mp::{Complex, PrecisionContext, Real};

/// The roots `eps_r = exp(pi i (2r+1)/(2k))`, `r < 2k`, and
/// `omega_r = exp(pi i (2r+1)/(2k+1))`, `r <= 2k`.
///
/// Only the first quarter of each set comes from sine and cosine; the rest
/// are reflections, so `eps_{r+k} = -eps_r`, `eps_{2k-1-r} = conj(eps_r)` and
/// `omega_{2k-r} = conj(omega_r)` hold to the last bit.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub k: u32,
    pub eps: Vec<Complex>,
    pub omg: Vec<Complex>,
}

impl RootSystem {
    pub fn new(k: u32, ctx: &PrecisionContext) -> Result<Self> {
        if k == 0 {
            return Err(Error::Usage("root system needs k >= 1".into()));
        }
        let ku = k as usize;
        let pi = Real::pi(ctx);
        let angle = |num: i64, den: i64| Complex::cis(&(&pi * num / den));

        // eps_r for r < k: first half by angle, mirror r -> k-1-r
        let mut half: Vec<Option<Complex>> = vec![None; ku];
        for r in 0..ku {
            let mirror = ku - 1 - r;
            if r < mirror {
                let e = angle(2 * r as i64 + 1, 2 * k as i64);
                half[mirror] = Some(-e.conj());
                half[r] = Some(e);
            } else if r == mirror {
                half[r] = Some(Complex::i(ctx));
            }
        }
        let mut eps: Vec<Complex> = half.into_iter().map(|e| e.expect("filled")).collect();
        for r in 0..ku {
            let neg = -&eps[r];
            eps.push(neg);
        }

        let n = 2 * ku + 1;
        let mut omg: Vec<Option<Complex>> = vec![None; n];
        for r in 0..ku {
            let w = angle(2 * r as i64 + 1, 2 * k as i64 + 1);
            omg[2 * ku - r] = Some(w.conj());
            omg[r] = Some(w);
        }
        omg[ku] = Some(Complex::real(Real::from_i64(-1, ctx)));
        let omg = omg.into_iter().map(|w| w.expect("filled")).collect();
        Ok(RootSystem { k, eps, omg })
    }
}

/// Both sides of `w^s/(w^{2k}+1) = ((-1)^s/(2k)) sum_r eps_r^{s+1}/(w + eps_r)`.
///
/// ```
/// use zeta_identities::kernels::partial_fraction_even;
/// use zeta_identities::mp::{Complex, PrecisionContext};
///
/// let ctx = PrecisionContext::new(20).unwrap();
/// let (d, e) = partial_fraction_even(1, 0, &Complex::one(&ctx), &ctx).unwrap();
/// assert!((&d - &e).abs().to_f64() < 1e-25);
/// assert_eq!(d.re.to_decimal(5), "0.50000");
/// ```
pub fn partial_fraction_even(k: u32, s: u32, w: &Complex, ctx: &PrecisionContext) -> Result<(Complex, Complex)> {
    if k == 0 || s > 2 * k - 1 {
        return Err(Error::Usage(format!("need k >= 1 and s <= 2k-1, got k={k}, s={s}")));
    }
    let roots = RootSystem::new(k, ctx)?;
    let den = &w.powi(2 * k as i32) + 1i64;
    if den.abs().log10_abs() < -(ctx.working_digits() as f64) + 2.0 {
        return Err(Error::Pole(format!("w^{} = -1 at w = {w}", 2 * k)));
    }
    let direct = &w.powi(s as i32) / &den;
    let mut sum = Complex::zero(ctx);
    for e in &roots.eps {
        sum = &sum + &(&e.powi(s as i32 + 1) / &(w + e));
    }
    let sign = if s.is_multiple_of(2) { 1 } else { -1 };
    let expanded = &sum * sign / (2 * k as i64);
    Ok((direct, expanded))
}

/// Both sides of `w^s/(w^{2k+1}+1) = -(1/(2k+1)) sum_r omega_r^{s+1}/(w - omega_r)`.
pub fn partial_fraction_odd(k: u32, s: u32, w: &Complex, ctx: &PrecisionContext) -> Result<(Complex, Complex)> {
    if k == 0 || s > 2 * k {
        return Err(Error::Usage(format!("need k >= 1 and s <= 2k, got k={k}, s={s}")));
    }
    let roots = RootSystem::new(k, ctx)?;
    let den = &w.powi(2 * k as i32 + 1) + 1i64;
    if den.abs().log10_abs() < -(ctx.working_digits() as f64) + 2.0 {
        return Err(Error::Pole(format!("w^{} = -1 at w = {w}", 2 * k + 1)));
    }
    let direct = &w.powi(s as i32) / &den;
    let mut sum = Complex::zero(ctx);
    for o in &roots.omg {
        sum = &sum + &(&o.powi(s as i32 + 1) / &(w - o));
    }
    let expanded = &sum * -1i64 / (2 * k as i64 + 1);
    Ok((direct, expanded))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_symmetries_are_exact() {
        let ctx = PrecisionContext::new(30).unwrap();
        for k in 1..=6 {
            let rs = RootSystem::new(k, &ctx).unwrap();
            let k = k as usize;
            for r in 0..k {
                assert_eq!(rs.eps[r + k], -&rs.eps[r]);
                assert_eq!(rs.eps[2 * k - 1 - r], rs.eps[r].conj());
            }
            for r in 0..2 * k {
                let p = rs.eps[r].powi(2 * k as i32);
                assert!((&p + 1i64).abs().to_f64() < 1e-35, "eps^2k");
            }
            for r in 0..=2 * k {
                let p = rs.omg[r].powi(2 * k as i32 + 1);
                assert!((&p + 1i64).abs().to_f64() < 1e-35, "omega^(2k+1)");
                assert_eq!(rs.omg[2 * k - r], rs.omg[r].conj());
            }
        }
    }

    #[test]
    fn pair_weight_at_three_halves() {
        // k = 2, s = 1, w = m/n = 3/2: n^3/(m^4 + n^4) = 8/97, so
        // w/(w^4 + 1) = (3/2)(16/97) = 24/97
        let ctx = PrecisionContext::new(25).unwrap();
        let w = Complex::real(Real::ratio(3, 2, &ctx));
        let (d, e) = partial_fraction_even(2, 1, &w, &ctx).unwrap();
        let want = Real::ratio(24, 97, &ctx);
        assert!((&d.re - &want).abs().to_f64() < 1e-30);
        assert!((&d - &e).abs().to_f64() < 1e-30);
    }

    #[test]
    fn odd_small_cases() {
        let ctx = PrecisionContext::new(20).unwrap();
        let (d, e) = partial_fraction_odd(1, 0, &Complex::one(&ctx), &ctx).unwrap();
        assert!((&d.re - &Real::ratio(1, 2, &ctx)).abs().to_f64() < 1e-25);
        assert!((&d - &e).abs().to_f64() < 1e-25);
        let two = Complex::from_f64(2.0, 0.0, &ctx);
        let (d, e) = partial_fraction_odd(1, 2, &two, &ctx).unwrap();
        assert!((&d.re - &Real::ratio(4, 9, &ctx)).abs().to_f64() < 1e-25);
        assert!((&d - &e).abs().to_f64() < 1e-25);
    }

    #[test]
    fn poles_and_ranges() {
        let ctx = PrecisionContext::new(20).unwrap();
        let rs = RootSystem::new(2, &ctx).unwrap();
        let at_root = -&rs.eps[0];
        assert!(matches!(partial_fraction_even(2, 0, &at_root, &ctx), Err(Error::Pole(_))));
        assert!(matches!(partial_fraction_even(2, 4, &Complex::one(&ctx), &ctx), Err(Error::Usage(_))));
        assert!(matches!(partial_fraction_odd(1, 0, &Complex::from_f64(-1.0, 0.0, &ctx), &ctx), Err(Error::Pole(_))));
    }
}
