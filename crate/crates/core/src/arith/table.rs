use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::sieve::Sieve;
use crate::error::{Error, Result};
use crate::mp::{PrecisionContext, Real};

/// Largest table the builder accepts; past this the f64 tables alone pass
/// half a gigabyte.
pub const MAX_TABLE_LEN: usize = 50_000_000;

/// The arithmetic functions a table can be built for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionId {
    Mu,
    MuSquared,
    TauNu(u32),
    Liouville,
    Mangoldt,
    MangoldtK(u32),
    SigmaK(u32),
    Phi,
    OmegaDistinct,
    TwoPowOmega,
    R2Quarter,
    Chi4,
    LogPow(u32),
    Unit,
    DeltaOne,
    MuOverM,
    TauOfSquare,
    SquareIndicator,
    DividesA(u64),
    RamanujanRow(u64),
    /// `mu(d)` at `n = d^2`, zero elsewhere.
    MuOnSquares,
    TauSquared,
    PhiOverN,
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FunctionId::*;
        match self {
            Mu => write!(f, "mu"),
            MuSquared => write!(f, "mu_squared"),
            TauNu(v) => write!(f, "tau_nu({v})"),
            Liouville => write!(f, "liouville"),
            Mangoldt => write!(f, "mangoldt"),
            MangoldtK(k) => write!(f, "mangoldt_k({k})"),
            SigmaK(k) => write!(f, "sigma_k({k})"),
            Phi => write!(f, "phi"),
            OmegaDistinct => write!(f, "omega_distinct"),
            TwoPowOmega => write!(f, "two_pow_omega"),
            R2Quarter => write!(f, "r2_quarter"),
            Chi4 => write!(f, "chi4"),
            LogPow(k) => write!(f, "log_pow({k})"),
            Unit => write!(f, "unit"),
            DeltaOne => write!(f, "delta_one"),
            MuOverM => write!(f, "mu_over_m"),
            TauOfSquare => write!(f, "tau_of_square"),
            SquareIndicator => write!(f, "square_indicator"),
            DividesA(a) => write!(f, "divides_a({a})"),
            RamanujanRow(a) => write!(f, "ramanujan_row({a})"),
            MuOnSquares => write!(f, "mu_on_squares"),
            TauSquared => write!(f, "tau_squared"),
            PhiOverN => write!(f, "phi_over_n"),
        }
    }
}

impl FromStr for FunctionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use FunctionId::*;
        let s = s.trim();
        let (name, arg) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], Some(&s[i + 1..s.len() - 1])),
            Some(_) => return Err(Error::Usage(format!("malformed function id '{s}'"))),
            None => (s, None),
        };
        let num = || -> Result<u64> {
            arg.ok_or_else(|| Error::Usage(format!("'{name}' needs an argument")))?
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::Usage(format!("bad argument in '{s}'")))
        };
        let small = || -> Result<u32> {
            let v = num()?;
            u32::try_from(v).map_err(|_| Error::Usage(format!("argument too large in '{s}'")))
        };
        let id = match name {
            "mu" => Mu,
            "mu_squared" => MuSquared,
            "tau_nu" => TauNu(small()?),
            "liouville" => Liouville,
            "mangoldt" => Mangoldt,
            "mangoldt_k" => MangoldtK(small()?),
            "sigma_k" => SigmaK(small()?),
            "phi" => Phi,
            "omega_distinct" => OmegaDistinct,
            "two_pow_omega" => TwoPowOmega,
            "r2_quarter" => R2Quarter,
            "chi4" => Chi4,
            "log_pow" => LogPow(small()?),
            "unit" => Unit,
            "delta_one" => DeltaOne,
            "mu_over_m" => MuOverM,
            "tau_of_square" => TauOfSquare,
            "square_indicator" => SquareIndicator,
            "divides_a" => DividesA(num()?),
            "ramanujan_row" => RamanujanRow(num()?),
            "mu_on_squares" => MuOnSquares,
            "tau_squared" => TauSquared,
            "phi_over_n" => PhiOverN,
            _ => return Err(Error::Usage(format!("unknown arithmetic function '{s}'"))),
        };
        if arg.is_some() && !matches!(id, TauNu(_) | MangoldtK(_) | SigmaK(_) | LogPow(_) | DividesA(_) | RamanujanRow(_)) {
            return Err(Error::Usage(format!("'{name}' takes no argument")));
        }
        match id {
            TauNu(0) | MangoldtK(0) | LogPow(0) | DividesA(0) | RamanujanRow(0) => {
                Err(Error::Usage(format!("argument of '{name}' must be positive")))
            }
            _ => Ok(id),
        }
    }
}

impl FunctionId {
    /// Whether every value is an integer (and stored exactly).
    pub fn integer_valued(&self) -> bool {
        use FunctionId::*;
        !matches!(self, Mangoldt | MangoldtK(_) | LogPow(_) | MuOverM | PhiOverN)
    }

    /// Exponent used for the growth envelope `|f(n)| <= C n^alpha`.
    pub fn growth_alpha(&self) -> f64 {
        use FunctionId::*;
        match self {
            Mangoldt | MangoldtK(_) | LogPow(_) | OmegaDistinct => 0.1,
            TauNu(_) | TwoPowOmega | R2Quarter | TauOfSquare | TauSquared => 0.5,
            SigmaK(0) => 0.5,
            SigmaK(k) => *k as f64 + 0.1,
            Phi => 1.0,
            _ => 0.0,
        }
    }
}

/// Immutable values `f(1..=N)` with a certified growth envelope.
#[derive(Debug, Clone)]
pub struct ArithTable {
    pub(crate) id: String,
    pub(crate) values: Vec<f64>,
    pub(crate) growth_c: f64,
    pub(crate) growth_alpha: f64,
    pub(crate) integer: bool,
    pub(crate) support_max: Option<usize>,
    pub(crate) kind: Option<FunctionId>,
}

impl ArithTable {
    pub(crate) fn assemble(
        id: String,
        values: Vec<f64>,
        alpha: f64,
        fixed_c: Option<f64>,
        integer: bool,
        kind: Option<FunctionId>,
    ) -> Result<Self> {
        let measured = values
            .iter()
            .enumerate()
            .map(|(i, v)| v.abs() / ((i + 1) as f64).powf(alpha))
            .fold(0.0f64, f64::max);
        let growth_c = match fixed_c {
            Some(c) => c,
            // sieved envelope, doubled so it covers the next stretch as well
            None => 2.0 * measured.max(1e-300),
        };
        let slack = 1.0 + 1e-12;
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(i, v)| v.abs() > growth_c * ((i + 1) as f64).powf(alpha) * slack)
        {
            return Err(Error::Numerical(format!(
                "{id}: |f({})| = {v} breaks the envelope {growth_c} n^{alpha}",
                i + 1
            )));
        }
        let support_max = values.iter().rposition(|v| *v != 0.0).map(|i| i + 1);
        let support_max = match kind {
            Some(FunctionId::DeltaOne) => support_max,
            Some(FunctionId::DividesA(a)) if values.len() as u64 >= a => support_max,
            _ => None,
        };
        Ok(ArithTable { id, values, growth_c, growth_alpha: alpha, integer, support_max, kind })
    }

    /// A table holding arbitrary finite values `f(1), ..., f(n)`, with the
    /// growth envelope measured at exponent `alpha`.
    pub fn from_values(id: impl Into<String>, values: Vec<f64>, alpha: f64) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("table values must be finite, got {v}")));
        }
        let integer = values.iter().all(|v| v.fract() == 0.0);
        ArithTable::assemble(id.into(), values, alpha, None, integer, None)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn kind(&self) -> Option<FunctionId> {
        self.kind
    }

    /// Number of stored values `N`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `f(n)` for `1 <= n <= N`.
    pub fn get(&self, n: usize) -> f64 {
        self.values[n - 1]
    }

    /// All values, `f(1)` first.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `(C, alpha)` with `|f(n)| <= C n^alpha` on the stored range.
    pub fn growth(&self) -> (f64, f64) {
        (self.growth_c, self.growth_alpha)
    }

    pub fn is_integer(&self) -> bool {
        self.integer
    }

    /// Largest `n` with `f(n) != 0`, for functions known to vanish beyond it.
    pub fn support_max(&self) -> Option<usize> {
        self.support_max
    }

    /// `f(n)` at context precision. Integer-valued tables convert exactly;
    /// logarithmic and rational ones are recomputed rather than read back
    /// from the f64 table.
    pub fn real(&self, n: usize, ctx: &PrecisionContext) -> Real {
        let v = self.get(n);
        if self.integer {
            return Real::from_f64(v, ctx);
        }
        match self.kind {
            Some(FunctionId::LogPow(k)) => {
                if n == 1 {
                    Real::zero(ctx)
                } else {
                    Real::from_i64(n as i64, ctx).ln().expect("n > 0").powi(k as i32)
                }
            }
            Some(FunctionId::Mangoldt) if v != 0.0 => {
                let p = Sieve::smallest_factor(n);
                Real::from_i64(p as i64, ctx).ln().expect("p > 0")
            }
            Some(FunctionId::MuOverM) => Real::ratio((v * n as f64).round() as i64, n as i64, ctx),
            Some(FunctionId::PhiOverN) => Real::ratio((v * n as f64).round() as i64, n as i64, ctx),
            _ => Real::from_f64(v, ctx),
        }
    }
}

impl Sieve {
    pub(crate) fn smallest_factor(n: usize) -> usize {
        if n.is_multiple_of(2) {
            return 2;
        }
        let mut d = 3;
        while d * d <= n {
            if n.is_multiple_of(d) {
                return d;
            }
            d += 2;
        }
        n
    }
}

/// Builds the table of `id` over `1..=n`.
///
/// ```
/// use zeta_identities::arith::{build_table, FunctionId};
///
/// let mu = build_table(FunctionId::Mu, 10).unwrap();
/// assert_eq!(&mu.values()[..6], &[1.0, -1.0, -1.0, 0.0, -1.0, 1.0]);
/// let r = build_table("r2_quarter".parse().unwrap(), 10).unwrap();
/// assert_eq!(r.get(4), 1.0);
/// ```
pub fn build_table(id: FunctionId, n: usize) -> Result<ArithTable> {
    if n < 10 {
        return Err(Error::Usage(format!("table length must be at least 10, got {n}")));
    }
    if n > MAX_TABLE_LEN {
        return Err(Error::Resource(format!("table length {n} exceeds the limit {MAX_TABLE_LEN}")));
    }
    use FunctionId::*;
    let needs_sieve = !matches!(id, Unit | DeltaOne | Chi4 | LogPow(_) | DividesA(_));
    let sieve = if needs_sieve { Some(Sieve::new(n)) } else { None };
    let s = || sieve.as_ref().expect("sieve built");
    let mut fixed_c = Some(1.0);
    let values: Vec<f64> = match id {
        Mu => s().multiplicative(|_, e| if e == 1 { -1.0 } else { 0.0 }),
        MuSquared => s().multiplicative(|_, e| if e == 1 { 1.0 } else { 0.0 }),
        TauNu(nu) => {
            fixed_c = None;
            s().multiplicative(|_, e| binomial(e + nu - 1, nu - 1))
        }
        Liouville => s().multiplicative(|_, e| if e % 2 == 0 { 1.0 } else { -1.0 }),
        Mangoldt => {
            fixed_c = None;
            mangoldt(s())
        }
        MangoldtK(k) => {
            fixed_c = None;
            mangoldt_k(s(), k)
        }
        SigmaK(k) => {
            fixed_c = None;
            s().multiplicative(|p, e| (0..=e).map(|j| (p as f64).powi((j * k) as i32)).sum())
        }
        Phi => s().multiplicative(|p, e| (p as f64).powi(e as i32 - 1) * (p as f64 - 1.0)),
        OmegaDistinct => {
            fixed_c = None;
            s().omega_counts().1.into_iter().map(f64::from).collect()
        }
        TwoPowOmega => {
            fixed_c = None;
            s().multiplicative(|_, _| 2.0)
        }
        R2Quarter => {
            fixed_c = None;
            s().multiplicative(|p, e| match p % 4 {
                1 => (e + 1) as f64,
                3 => ((e + 1) % 2) as f64,
                _ => 1.0,
            })
        }
        Chi4 => (1..=n).map(|m| chi4(m as u64)).collect(),
        LogPow(k) => {
            fixed_c = None;
            (1..=n).map(|m| (m as f64).ln().powi(k as i32)).collect()
        }
        Unit => vec![1.0; n],
        DeltaOne => (1..=n).map(|m| if m == 1 { 1.0 } else { 0.0 }).collect(),
        MuOverM => {
            let mu = s().multiplicative(|_, e| if e == 1 { -1.0 } else { 0.0 });
            mu.iter().enumerate().map(|(i, v)| v / (i + 1) as f64).collect()
        }
        TauOfSquare => {
            fixed_c = None;
            s().multiplicative(|_, e| (2 * e + 1) as f64)
        }
        SquareIndicator => s().multiplicative(|_, e| if e % 2 == 0 { 1.0 } else { 0.0 }),
        DividesA(a) => {
            fixed_c = Some(a as f64);
            (1..=n as u64).map(|m| if a % m == 0 { m as f64 } else { 0.0 }).collect()
        }
        RamanujanRow(a) => {
            fixed_c = Some(divisor_sum(a, 1) as f64);
            let mu = s().multiplicative(|_, e| if e == 1 { -1.0 } else { 0.0 });
            ramanujan_row(a, &mu)
        }
        MuOnSquares => s().multiplicative(|_, e| if e == 2 { -1.0 } else { 0.0 }),
        TauSquared => {
            fixed_c = None;
            s().multiplicative(|_, e| ((e + 1) * (e + 1)) as f64)
        }
        PhiOverN => s().multiplicative(|p, _| 1.0 - 1.0 / p as f64),
    };
    ArithTable::assemble(id.to_string(), values, id.growth_alpha(), fixed_c, id.integer_valued(), Some(id))
}

pub(crate) fn chi4(m: u64) -> f64 {
    match m % 4 {
        1 => 1.0,
        3 => -1.0,
        _ => 0.0,
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    let mut c = 1.0f64;
    for j in 0..k {
        c = c * (n - j) as f64 / (j + 1) as f64;
    }
    c.round()
}

fn mangoldt(s: &Sieve) -> Vec<f64> {
    let n = s.limit();
    let mut out = vec![0.0; n];
    for m in 2..=n {
        let (p, _, rest) = s.split(m);
        if rest == 1 {
            out[m - 1] = (p as f64).ln();
        }
    }
    out
}

// Lambda_{k+1} = Lambda_k log + Lambda * Lambda_k; every term is nonnegative,
// so nothing cancels
fn mangoldt_k(s: &Sieve, k: u32) -> Vec<f64> {
    let n = s.limit();
    let lam = mangoldt(s);
    let mut cur = lam.clone();
    for _ in 1..k {
        let mut next: Vec<f64> = cur.iter().enumerate().map(|(i, v)| v * ((i + 1) as f64).ln()).collect();
        for (qi, lq) in lam.iter().enumerate() {
            if *lq == 0.0 {
                continue;
            }
            let q = qi + 1;
            let mut j = 1;
            while q * j <= n {
                next[q * j - 1] += lq * cur[j - 1];
                j += 1;
            }
        }
        cur = next;
    }
    cur
}

fn ramanujan_row(a: u64, mu: &[f64]) -> Vec<f64> {
    let n = mu.len();
    let mut out = vec![0.0; n];
    for d in (1..=a).filter(|d| a.is_multiple_of(*d)) {
        let d = d as usize;
        let mut j = 1;
        while d * j <= n {
            out[d * j - 1] += d as f64 * mu[j - 1];
            j += 1;
        }
    }
    out
}

/// `sigma_k(a)` in exact integers.
pub fn divisor_sum(a: u64, k: u32) -> u128 {
    (1..=a).filter(|d| a.is_multiple_of(*d)).map(|d| (d as u128).pow(k)).sum()
}

/// Partial sum `sum_{n<=N} f(n)/n^s` and the bound `C N^{alpha-s+1}/(s-1-alpha)`
/// on the rest.
///
/// ```
/// use zeta_identities::arith::{build_table, l_value, FunctionId};
/// use zeta_identities::PrecisionContext;
///
/// let ctx = PrecisionContext::new(20).unwrap();
/// let f = build_table(FunctionId::DividesA(6), 100).unwrap();
/// let (v, bound) = l_value(&f, 2, &ctx).unwrap();
/// assert_eq!(v.to_decimal(10), "2.000000000");
/// assert_eq!(bound, 0.0);
/// ```
pub fn l_value(f: &ArithTable, s: i64, ctx: &PrecisionContext) -> Result<(Real, f64)> {
    let (c, alpha) = f.growth();
    if s < 2 || (s as f64) <= 1.0 + alpha + 0.1 {
        return Err(Error::Usage(format!("L({s}; {}) needs s >= 2 and s > {:.1}", f.id(), 1.0 + alpha + 0.1)));
    }
    let n = f.len();
    let chunks: Vec<Real> = (1..=n)
        .collect::<Vec<_>>()
        .par_chunks(4096)
        .map(|chunk| {
            let mut acc = Real::zero(ctx);
            for &m in chunk {
                if f.get(m) != 0.0 {
                    acc = acc + f.real(m, ctx) * Real::from_i64(m as i64, ctx).powi(-(s as i32));
                }
            }
            acc
        })
        .collect();
    let total: Real = chunks.into_iter().sum();
    let bound = match f.support_max() {
        Some(_) => 0.0,
        None => c * (n as f64).powf(alpha - s as f64 + 1.0) / (s as f64 - 1.0 - alpha),
    };
    Ok((total, bound))
}
