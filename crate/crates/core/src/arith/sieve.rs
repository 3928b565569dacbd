//! Linear sieve of smallest prime factors and the multiplicative fill built on it.

/// Smallest-prime-factor table for `1..=n`, with each `m` split as
/// `p^e * rest` where `p = spf[m]`.
pub struct Sieve {
    spf: Vec<u32>,
    exp: Vec<u8>,
    rest: Vec<u32>,
    primes: Vec<u32>,
}

impl Sieve {
    pub fn new(n: usize) -> Self {
        let mut spf = vec![0u32; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let m = i * p as usize;
                if p > si || m > n {
                    break;
                }
                spf[m] = p;
            }
        }
        let mut exp = vec![0u8; n + 1];
        let mut rest = vec![1u32; n + 1];
        for m in 2..=n {
            let p = spf[m] as usize;
            let q = m / p;
            if q > 1 && spf[q] as usize == p {
                exp[m] = exp[q] + 1;
                rest[m] = rest[q];
            } else {
                exp[m] = 1;
                rest[m] = q as u32;
            }
        }
        Sieve { spf, exp, rest, primes }
    }

    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    /// `(p, e, rest)` with `m = p^e * rest` and `p` the smallest prime factor.
    pub fn split(&self, m: usize) -> (u64, u32, usize) {
        (self.spf[m] as u64, self.exp[m] as u32, self.rest[m] as usize)
    }

    /// Values of the multiplicative function with `f(p^e) = h(p, e)`,
    /// index 0 holding `f(1) = 1`.
    pub fn multiplicative(&self, h: impl Fn(u64, u32) -> f64) -> Vec<f64> {
        let n = self.limit();
        let mut out = vec![0.0; n];
        if n == 0 {
            return out;
        }
        out[0] = 1.0;
        for m in 2..=n {
            let (p, e, rest) = self.split(m);
            out[m - 1] = out[rest - 1] * h(p, e);
        }
        out
    }

    /// `Omega(m)` and `omega(m)` counts.
    pub fn omega_counts(&self) -> (Vec<u32>, Vec<u32>) {
        let n = self.limit();
        let mut big = vec![0u32; n];
        let mut small = vec![0u32; n];
        for m in 2..=n {
            let (_, e, rest) = self.split(m);
            big[m - 1] = big[rest - 1] + e;
            small[m - 1] = small[rest - 1] + 1;
        }
        (big, small)
    }
}
