use super::table::{build_table, ArithTable, FunctionId};
use crate::error::{Error, Result};

/// `(g * h)(n) = sum_{d|n} g(d) h(n/d)` over the shared range.
///
/// ```
/// use zeta_identities::arith::{build_table, dirichlet_convolve, FunctionId};
///
/// let mu = build_table(FunctionId::Mu, 50).unwrap();
/// let one = build_table(FunctionId::Unit, 50).unwrap();
/// let delta = dirichlet_convolve(&mu, &one).unwrap();
/// assert_eq!(delta.values(), build_table(FunctionId::DeltaOne, 50).unwrap().values());
/// ```
pub fn dirichlet_convolve(g: &ArithTable, h: &ArithTable) -> Result<ArithTable> {
    let n = g.len();
    if h.len() != n {
        return Err(Error::Usage(format!("cannot convolve tables of length {} and {}", n, h.len())));
    }
    let gv = g.values();
    let hv = h.values();
    let mut out = vec![0.0; n];
    for d in 1..=n {
        let a = gv[d - 1];
        if a == 0.0 {
            continue;
        }
        let mut j = 1;
        while d * j <= n {
            out[d * j - 1] += a * hv[j - 1];
            j += 1;
        }
    }
    let (_, ag) = g.growth();
    let (_, ah) = h.growth();
    // a convolution of n^a-bounded functions picks up a divisor factor
    let alpha = ag.max(ah).max(0.5);
    ArithTable::assemble(format!("{}*{}", g.id(), h.id()), out, alpha, None, g.is_integer() && h.is_integer(), None)
}

/// `g` together with `f = g * 1`.
#[derive(Debug, Clone)]
pub struct ConvolutionPair {
    pub g: ArithTable,
    pub f: ArithTable,
}

const EXHAUSTIVE_LIMIT: usize = 10_000;
const SPOT_CHECKS: usize = 2_000;

impl ConvolutionPair {
    /// Pairs two tables after checking `f(n) = sum_{d|n} g(d)`: every `n` up
    /// to 10^4, then evenly spaced spot checks by trial division.
    pub fn new(g: ArithTable, f: ArithTable) -> Result<Self> {
        let n = g.len();
        if f.len() != n {
            return Err(Error::Usage(format!("pair needs equal lengths, got {} and {}", n, f.len())));
        }
        let exhaustive = n.min(EXHAUSTIVE_LIMIT);
        let mut sums = vec![0.0; exhaustive];
        for d in 1..=exhaustive {
            let a = g.get(d);
            let mut m = d;
            while m <= exhaustive {
                sums[m - 1] += a;
                m += d;
            }
        }
        for (i, s) in sums.iter().enumerate() {
            check(&g, &f, i + 1, *s)?;
        }
        if n > exhaustive {
            let step = ((n - exhaustive) / SPOT_CHECKS).max(1);
            let mut m = exhaustive + 1;
            while m <= n {
                check(&g, &f, m, divisor_sum_of(&g, m))?;
                m += step;
            }
            check(&g, &f, n, divisor_sum_of(&g, n))?;
        }
        Ok(ConvolutionPair { g, f })
    }

    /// Builds both tables from their ids and pairs them.
    pub fn build(g: FunctionId, f: FunctionId, n: usize) -> Result<Self> {
        ConvolutionPair::new(build_table(g, n)?, build_table(f, n)?)
    }

    pub fn len(&self) -> usize {
        self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g.is_empty()
    }

    /// A common exponent `alpha` with both `f, g = O(n^alpha)`.
    pub fn alpha(&self) -> f64 {
        self.g.growth().1.max(self.f.growth().1)
    }
}

fn divisor_sum_of(g: &ArithTable, m: usize) -> f64 {
    let mut s = 0.0;
    let mut d = 1;
    while d * d <= m {
        if m.is_multiple_of(d) {
            s += g.get(d);
            if d * d != m {
                s += g.get(m / d);
            }
        }
        d += 1;
    }
    s
}

fn check(g: &ArithTable, f: &ArithTable, m: usize, sum: f64) -> Result<()> {
    let want = f.get(m);
    let tol = if g.is_integer() && f.is_integer() { 0.5 } else { 1e-9 * (1.0 + want.abs()) };
    if (sum - want).abs() > tol {
        return Err(Error::Numerical(format!(
            "{} is not {} * 1 at n = {m}: divisor sum {sum}, table {want}",
            f.id(),
            g.id()
        )));
    }
    Ok(())
}

/// `c_m(a) = sum_{d | gcd(m, a)} d mu(m/d)`.
///
/// ```
/// use zeta_identities::arith::ramanujan_sum;
///
/// assert_eq!(ramanujan_sum(6, 4), -1);
/// assert_eq!(ramanujan_sum(1, 17), 1);
/// ```
pub fn ramanujan_sum(m: u64, a: u64) -> i64 {
    assert!(m >= 1 && a >= 1, "ramanujan_sum needs m, a >= 1");
    let g = gcd(m, a);
    (1..=g).filter(|d| g.is_multiple_of(*d)).map(|d| d as i64 * mobius(m / d)).sum()
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn mobius(mut n: u64) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(id: FunctionId, n: usize) -> ArithTable {
        build_table(id, n).unwrap()
    }

    #[test]
    fn unit_squared_is_tau() {
        let one = t(FunctionId::Unit, 2000);
        let tau = dirichlet_convolve(&one, &one).unwrap();
        assert_eq!(tau.values(), t(FunctionId::TauNu(2), 2000).values());
    }

    #[test]
    fn mu_times_log_is_mangoldt() {
        let lam = dirichlet_convolve(&t(FunctionId::Mu, 3000), &t(FunctionId::LogPow(1), 3000)).unwrap();
        let direct = t(FunctionId::Mangoldt, 3000);
        for n in 1..=3000 {
            assert!((lam.get(n) - direct.get(n)).abs() < 1e-10, "{n}");
        }
        assert!((direct.get(8) - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn mismatched_lengths_refused() {
        let a = t(FunctionId::Unit, 20);
        let b = t(FunctionId::Unit, 30);
        assert!(matches!(dirichlet_convolve(&a, &b), Err(Error::Usage(_))));
    }

    #[test]
    fn pair_rejects_wrong_f() {
        assert!(ConvolutionPair::build(FunctionId::Mu, FunctionId::Unit, 100).is_err());
        assert!(ConvolutionPair::build(FunctionId::Mu, FunctionId::DeltaOne, 100).is_ok());
    }

    #[test]
    fn every_case_pair_checks_out() {
        use FunctionId::*;
        let pairs = [
            (Mu, DeltaOne),
            (TauNu(1), TauNu(2)),
            (TauNu(2), TauNu(3)),
            (MuSquared, TwoPowOmega),
            (MuOnSquares, MuSquared),
            (TauOfSquare, TauSquared),
            (Liouville, SquareIndicator),
            (MuOverM, PhiOverN),
            (Mangoldt, LogPow(1)),
            (MangoldtK(2), LogPow(2)),
            (MangoldtK(3), LogPow(3)),
            (Chi4, R2Quarter),
            (RamanujanRow(1), DividesA(1)),
            (RamanujanRow(6), DividesA(6)),
            (RamanujanRow(12), DividesA(12)),
        ];
        for (g, f) in pairs {
            ConvolutionPair::build(g, f, 30_000).unwrap_or_else(|e| panic!("{g} -> {f}: {e}"));
        }
    }

    // the exponential sum itself
    fn ramanujan_direct(m: u64, a: u64) -> f64 {
        (1..=m)
            .filter(|v| gcd(*v, m) == 1)
            .map(|v| (2.0 * std::f64::consts::PI * (v * a) as f64 / m as f64).cos())
            .sum()
    }

    #[test]
    fn ramanujan_matches_exponential_sum() {
        for m in 1..=60 {
            for a in 1..=30 {
                assert!((ramanujan_sum(m, a) as f64 - ramanujan_direct(m, a)).abs() < 1e-9, "c_{m}({a})");
            }
        }
        for m in 1..=100 {
            assert_eq!(ramanujan_sum(m, 1), mobius(m));
        }
    }
}
