//! Double-precision versions of the kernels, for the double series where
//! millions of evaluations are needed and the result is only an estimate.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::mp::PrecisionContext;
use crate::specfun::zeta_int;

const SERIES_RADIUS: f64 = 0.5;

fn zeta_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let ctx = PrecisionContext::new(20).expect("valid");
        let mut v = vec![f64::NAN, f64::INFINITY];
        for s in 2..=200 {
            v.push(zeta_int(s, &ctx).expect("s >= 2").to_f64());
        }
        v
    })
}

/// `zeta(s)` for integer `s >= 2`, rounded to double.
pub fn zeta_f64(s: u32) -> f64 {
    let t = zeta_table();
    t.get(s as usize).copied().unwrap_or(1.0)
}

/// `cot z`, with the large-`|Im z|` branch written through `e^{-2|y|}`.
pub fn cot_c64(z: Complex64) -> Complex64 {
    let (x2, y2) = (2.0 * z.re, 2.0 * z.im);
    if y2.abs() < 40.0 {
        let den = y2.cosh() - x2.cos();
        return Complex64::new(x2.sin() / den, -y2.sinh() / den);
    }
    let q = (-y2.abs()).exp();
    let sech = 2.0 * q / (1.0 + q * q);
    let tanh = y2.signum() * (1.0 - q * q) / (1.0 + q * q);
    let den = 1.0 - x2.cos() * sech;
    Complex64::new(x2.sin() * sech / den, -tanh / den)
}

const B2J: [f64; 7] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0];

/// `psi(z)` to about 1e-15 relative; `NaN` at the poles.
pub fn digamma_c64(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        if z.im == 0.0 && z.re == z.re.round() {
            return Complex64::new(f64::NAN, f64::NAN);
        }
        return digamma_c64(Complex64::new(1.0, 0.0) - z) - PI * cot_c64(PI * z);
    }
    let mut z = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while z.norm_sqr() < 225.0 {
        acc -= z.inv();
        z += 1.0;
    }
    let inv2 = (z * z).inv();
    let mut pw = inv2;
    let mut s = Complex64::new(0.0, 0.0);
    for (j, b) in B2J.iter().enumerate() {
        s += pw * (*b / (2 * j + 2) as f64);
        pw *= inv2;
    }
    acc + z.ln() - 0.5 * z.inv() - s
}

fn eps(k: u32, r: u32) -> Complex64 {
    Complex64::from_polar(1.0, PI * (2 * r + 1) as f64 / (2 * k) as f64)
}

fn omega(k: u32, r: u32) -> Complex64 {
    Complex64::from_polar(1.0, PI * (2 * r + 1) as f64 / (2 * k + 1) as f64)
}

// sum_{i>=1} (-1)^{i+1} zeta(i p) w^{i p - q}, valid for w < 1
fn zeta_power_series(p: u32, q: u32, w: f64, scale: f64) -> f64 {
    let mut s = 0.0;
    let mut sign = 1.0;
    let mut i = 1;
    loop {
        let e = (i * p - q) as i32;
        let t = zeta_f64(i * p) * w.powi(e);
        s += sign * t;
        if t < 1e-18 * s.abs() || i > 60 {
            return scale * s;
        }
        sign = -sign;
        i += 1;
    }
}

/// `a_k(w) - 1/w` for `w > 0`.
pub fn a_minus_recip(k: u32, w: f64) -> f64 {
    if w < SERIES_RADIUS {
        return zeta_power_series(2 * k, 1, w, 2.0);
    }
    if k == 1 {
        // pi coth(pi w) - 1/w with x = 2 pi w: (x/2 + x/(e^x - 1) - 1)/w
        let x = 2.0 * PI * w;
        return (0.5 * x + x / x.exp_m1() - 1.0) / w;
    }
    let mut s = 0.0;
    for r in 0..k {
        let e = eps(k, r);
        s += (PI * e * cot_c64(PI * e * w)).re;
    }
    s / k as f64 - 1.0 / w
}

/// `b_k(w) = b_{k,1}(w)` for `k >= 2`, `w > 0`.
pub fn b_k(k: u32, w: f64) -> f64 {
    debug_assert!(k >= 2);
    if w < SERIES_RADIUS {
        return b_small(k, w);
    }
    let mut s = 0.0;
    for r in 0..k {
        let e = eps(k, r);
        s += (e * e * digamma_c64(e * w)).re;
    }
    2.0 * s / k as f64
}

// sum_i 2 (-1)^{i+1} zeta(2ki - 1) w^{2ki - 2}
fn b_small(k: u32, w: f64) -> f64 {
    let mut s = 0.0;
    let mut sign = 1.0;
    for i in 1..60 {
        let t = zeta_f64(2 * k * i - 1) * w.powi((2 * k * i - 2) as i32);
        s += sign * t;
        if t < 1e-18 * s.abs() {
            break;
        }
        sign = -sign;
    }
    2.0 * s
}

/// `c_k(w) - 1/w` for `w > 0`.
pub fn c_minus_recip(k: u32, w: f64) -> f64 {
    if w < SERIES_RADIUS {
        let p = 2 * k + 1;
        return zeta_power_series(p, 1, w, 1.0);
    }
    let m = (2 * k + 1) as f64;
    let mut s = -digamma_c64(Complex64::new(w, 0.0)).re;
    for r in 0..k {
        let o = omega(k, r);
        s += 2.0 * (o * digamma_c64(-o * w)).re;
    }
    s / m - 1.0 / w
}

/// Leading terms of the kernels for large `w`: `a_k(w) - 1/w ~ A - 1/w`,
/// `b_k(w) ~ B - 1/(6 w^2) + d_k/w^{2k+2}`, `c_k(w) - 1/w ~ C - 1/(2w) + e_k/w^{2k+2}`.
pub fn b_asymptotic(k: u32, w: f64) -> f64 {
    let b2k2 = B2J[k as usize];
    super::b_main(k, 1) - 1.0 / (6.0 * w * w) + 2.0 * b2k2 / ((2 * k + 2) as f64 * w.powi(2 * k as i32 + 2))
}

pub fn c_minus_recip_asymptotic(k: u32, w: f64) -> f64 {
    // -(1/(2k+1)) sum_r omega_r^{1-2j} B_{2j}/(2j w^{2j}) is nonzero first at 2j - 1 = 2k + 1
    let b = B2J[k as usize];
    super::c_main(k) - 0.5 / w + b / ((2 * k + 2) as f64 * w.powi(2 * k as i32 + 2))
}
