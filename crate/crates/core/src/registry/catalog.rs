use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::expr::{dirichlet_series, int, zeta, Expr};
use crate::arith::FunctionId;
use crate::error::{Error, Result};

/// How fast the right-hand side converges, which decides how it is truncated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvergenceClass {
    Exponential,
    /// Terms fall off like `n^{-p}`.
    Polynomial(u32),
    Conditional,
}

impl fmt::Display for ConvergenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConvergenceClass::Exponential => write!(f, "exponential"),
            ConvergenceClass::Polynomial(p) => write!(f, "polynomial({p})"),
            ConvergenceClass::Conditional => write!(f, "conditional"),
        }
    }
}

impl ConvergenceClass {
    /// The class name without its exponent, as used by filters.
    pub fn family(&self) -> &'static str {
        match self {
            ConvergenceClass::Exponential => "exponential",
            ConvergenceClass::Polynomial(_) => "polynomial",
            ConvergenceClass::Conditional => "conditional",
        }
    }
}

/// Kernel of a double series `sum_m g(m)/m sum_n f(n)/n^p K(n/m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DoubleKernel {
    /// `a_k`, `p = 4k - 1`
    Cot(u32),
    /// `b_k`, `p = 4k - 3`
    Digamma(u32),
    /// `c_k`, `p = 4k + 1`
    Omega(u32),
}

impl DoubleKernel {
    pub fn power(&self) -> u32 {
        match *self {
            DoubleKernel::Cot(k) => 4 * k - 1,
            DoubleKernel::Digamma(k) => 4 * k - 3,
            DoubleKernel::Omega(k) => 4 * k + 1,
        }
    }
}

/// What the right-hand side computes.
#[derive(Debug, Clone, PartialEq)]
pub enum RhsProgram {
    /// `sum a_k(n)/n^{4k-1}`
    CotSeries { k: u32 },
    /// `(pi/k) zeta(4k-1)/sin(pi/2k) + (pi/2k) sum alpha_k(n)/n^{4k-1}`
    AlphaSeries { k: u32 },
    /// `7 pi^3/180 - 2 sum n^{-3}/(e^{2 pi n} - 1)`
    Clr,
    /// `sum b_{k,l}(n)/n^{4k-2l-1}`
    DigammaSeries { k: u32, l: u32 },
    /// `-sum beta(n)/n^5`
    BetaSeries,
    /// `(pi/2) zeta(5) - sum_{r<=m} (-1)^r B_{4r+2}/(2r+1) zeta(4r+7) + S0 + (-1)^m int G_m/(e^{2 pi t} - 1)`
    GIntegral { m: u32 },
    /// `sum c_k(n)/n^{4k+1}`
    OmegaSeries { k: u32 },
    /// `(2 pi/sqrt 3) zeta(5) - (2/3) zeta(6) + S + 2 sum alpha(n)/n^5`
    AlphaOmega,
    /// `(4 pi/(3 sqrt 3)) zeta(5) + sum_{r<=m} B_{6r+4}/(3r+2) zeta(6r+9) + S + (-1)^m int F_m/(e^{2 pi t} - 1)`
    FIntegral { m: u32 },
    /// `sum mu(m) ((2 pi/m)/(e^{2 pi/m} - 1) - 1)`
    MobiusCot,
    /// `sum_m g(m)/m (sum_n f(n)/n^p K(n/m) - m^e L(p+1; f))`, with the inner
    /// sum cut at `inner_ratio * m` and at most `outer_cap` outer terms.
    Double { kernel: DoubleKernel, g: FunctionId, f: FunctionId, inner_ratio: usize, outer_cap: usize },
}

/// Acceptance window for estimate-class identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub value: f64,
    /// Relative to `|lhs|` when set, absolute otherwise.
    pub relative: bool,
}

impl Tolerance {
    pub fn absolute_for(&self, lhs: f64) -> f64 {
        if self.relative {
            self.value * lhs.abs().max(f64::MIN_POSITIVE)
        } else {
            self.value
        }
    }
}

/// One registered identity `lhs = rhs`.
#[derive(Debug, Clone)]
pub struct Identity {
    pub id: String,
    pub title: String,
    /// The equality itself, written out in plain text.
    pub paper_ref: String,
    pub lhs: Expr,
    pub rhs: RhsProgram,
    pub class: ConvergenceClass,
    pub params: BTreeMap<String, String>,
    pub tolerance: Option<Tolerance>,
}

/// What `list` shows for an identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentitySummary {
    pub id: String,
    pub title: String,
    pub class: String,
    pub paper_ref: String,
    pub lhs: String,
}

impl Identity {
    pub fn summary(&self) -> IdentitySummary {
        IdentitySummary {
            id: self.id.clone(),
            title: self.title.clone(),
            class: self.class.to_string(),
            paper_ref: self.paper_ref.clone(),
            lhs: self.lhs.to_string(),
        }
    }
}

struct Builder(Vec<Identity>);

impl Builder {
    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        id: String,
        title: String,
        paper_ref: String,
        lhs: Expr,
        rhs: RhsProgram,
        class: ConvergenceClass,
        params: &[(&str, String)],
        tolerance: Option<Tolerance>,
    ) {
        let params = params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        self.0.push(Identity { id, title, paper_ref, lhs, rhs, class, params, tolerance });
    }
}

fn rel(v: f64) -> Option<Tolerance> {
    Some(Tolerance { value: v, relative: true })
}

fn l_of(f: FunctionId, s: u32) -> Expr {
    dirichlet_series(f, s).expect("catalog functions have closed forms")
}

/// Outer caps for the double series; the inner work grows like `ratio * M^2 / 2`.
const COT1_RATIO: usize = 7;
const COT1_CAP: usize = 4000;
const COT2_RATIO: usize = 9;
const COT2_CAP: usize = 1000;
const PSI_RATIO: usize = 20;
const PSI_CAP: usize = 400;

fn build() -> Vec<Identity> {
    use ConvergenceClass::*;
    use FunctionId::*;
    let mut b = Builder(Vec::new());

    for k in 1..=3u32 {
        let p = 4 * k - 1;
        b.push(
            format!("T1:k={k}"),
            format!("zeta^2({}) + zeta({}) by the cotangent kernel a_{k}", 2 * k, 4 * k),
            format!("zeta^2(2k) + zeta(4k) = sum_n a_k(n)/n^(4k-1), k = {k}"),
            zeta(2 * k).pow(2) + zeta(4 * k),
            RhsProgram::CotSeries { k },
            Polynomial(p),
            &[("k", k.to_string())],
            None,
        );
    }
    for k in 1..=2u32 {
        b.push(
            format!("T1C:k={k}"),
            format!("zeta^2({}) + zeta({}), exponentially convergent form", 2 * k, 4 * k),
            format!("zeta^2(2k) + zeta(4k) = (pi/k) zeta(4k-1)/s(0) + (pi/2k) sum_n alpha_k(n)/n^(4k-1), k = {k}"),
            zeta(2 * k).pow(2) + zeta(4 * k),
            RhsProgram::AlphaSeries { k },
            Exponential,
            &[("k", k.to_string())],
            None,
        );
    }
    b.push(
        "CLR".into(),
        "Cauchy–Lerch–Ramanujan".into(),
        "zeta(3) = 7 pi^3/180 - 2 sum_n 1/(n^3 (e^(2 pi n) - 1))".into(),
        zeta(3),
        RhsProgram::Clr,
        Exponential,
        &[],
        None,
    );
    for (k, l) in [(2u32, 1u32), (3, 1), (3, 2), (3, 3), (3, 4)] {
        let s = 2 * k - l;
        b.push(
            format!("T2:k={k},l={l}"),
            format!("zeta^2({s}) by the digamma kernel b_{{{k},{l}}}"),
            format!("zeta^2(2k-l) = sum_n b_(k,l)(n)/n^(4k-2l-1), k = {k}, l = {l}"),
            zeta(s).pow(2),
            RhsProgram::DigammaSeries { k, l },
            Polynomial(4 * k - 2 * l - 1),
            &[("k", k.to_string()), ("l", l.to_string())],
            None,
        );
    }
    b.push(
        "T2C1".into(),
        "zeta^2(3) by the beta series".into(),
        "zeta^2(3) = -sum_n beta(n)/n^5, beta(n) = Im(psi(n e^(pi i/4)) + psi(-n e^(pi i/4)))".into(),
        zeta(3).pow(2),
        RhsProgram::BetaSeries,
        Polynomial(5),
        &[],
        None,
    );
    for m in 0..=1u32 {
        b.push(
            format!("T2C2:m={m}"),
            format!("zeta^2(3) through S0 and the G_{m} integral"),
            format!(
                "zeta^2(3) = (pi/2) zeta(5) - sum_(r<=m) (-1)^r B_(4r+2)/(2r+1) zeta(4r+7) + S0 + (-1)^m int_0^inf G_m(t)/(e^(2 pi t) - 1) dt, m = {m}"
            ),
            zeta(3).pow(2),
            RhsProgram::GIntegral { m },
            Exponential,
            &[("m", m.to_string())],
            None,
        );
    }
    for k in 1..=2u32 {
        b.push(
            format!("T3:k={k}"),
            format!("zeta^2({})/2 + zeta({}) by the kernel c_{k}", 2 * k + 1, 4 * k + 2),
            format!("zeta^2(2k+1)/2 + zeta(4k+2) = sum_n c_k(n)/n^(4k+1), k = {k}"),
            zeta(2 * k + 1).pow(2) / int(2) + zeta(4 * k + 2),
            RhsProgram::OmegaSeries { k },
            Polynomial(4 * k + 1),
            &[("k", k.to_string())],
            None,
        );
    }
    b.push(
        "T3C1".into(),
        "zeta^2(3) by the alpha series".into(),
        "zeta^2(3) = (2 pi/sqrt 3) zeta(5) - (2/3) zeta(6) + S + 2 sum_n alpha(n)/n^5".into(),
        zeta(3).pow(2),
        RhsProgram::AlphaOmega,
        Polynomial(5),
        &[],
        None,
    );
    for m in 0..=2u32 {
        b.push(
            format!("T3C2:m={m}"),
            format!("zeta^2(3) + zeta(6) through S and the F_{m} integral"),
            format!(
                "zeta^2(3) + zeta(6) = (4 pi/(3 sqrt 3)) zeta(5) + sum_(r<=m) B_(6r+4)/(3r+2) zeta(6r+9) + S + (-1)^m int_0^inf F_m(t)/(e^(2 pi t) - 1) dt, m = {m}"
            ),
            zeta(3).pow(2) + zeta(6),
            RhsProgram::FIntegral { m },
            Exponential,
            &[("m", m.to_string())],
            None,
        );
    }

    // k = 1 double series, g and f = g * 1
    let general = "L^2(2;f) = sum_m g(m)/m (sum_n f(n)/n^3 a_1(n/m) - m L(4;f)), a_1(w) = pi coth(pi w)";
    b.push(
        "T4C1:case1".into(),
        "Mobius-weighted cotangent sum equals 1".into(),
        "sum_m mu(m) ((2 pi/m)/(e^(2 pi/m) - 1) - 1) = 1".into(),
        int(1),
        RhsProgram::MobiusCot,
        Conditional,
        &[("g", Mu.to_string()), ("f", DeltaOne.to_string())],
        Some(Tolerance { value: 0.05, relative: false }),
    );
    let case = |b: &mut Builder, tag: &str, title: String, g: FunctionId, f: FunctionId, lhs: Expr, tol: f64, cap: usize| {
        b.push(
            format!("T4C1:{tag}"),
            title,
            format!("{general}; g = {g}, f = {f}"),
            lhs,
            RhsProgram::Double { kernel: DoubleKernel::Cot(1), g, f, inner_ratio: COT1_RATIO, outer_cap: cap },
            Conditional,
            &[("g", g.to_string()), ("f", f.to_string())],
            rel(tol),
        );
    };
    for nu in 1..=2u32 {
        let f = TauNu(nu + 1);
        let g = if nu == 1 { Unit } else { TauNu(nu) };
        case(&mut b, &format!("case2(nu={nu})"), format!("zeta^{}(2) with divisor weights", 2 * nu + 2), g, f, l_of(f, 2).pow(2), 1e-2, COT1_CAP);
    }
    case(&mut b, "case3", "zeta^2(2)/zeta(4) with squarefree weights".into(), MuSquared, TwoPowOmega, l_of(TwoPowOmega, 2).pow(2), 1e-3, COT1_CAP);
    case(&mut b, "case4", "(zeta(2)/zeta(4))^2 with g supported on squares".into(), MuOnSquares, MuSquared, l_of(MuSquared, 2).pow(2), 1e-3, 40_000);
    case(&mut b, "case5", "zeta^8(2)/zeta^2(4) with g = tau(m^2)".into(), TauOfSquare, TauSquared, l_of(TauSquared, 2).pow(2), 1e-2, COT1_CAP);
    case(&mut b, "case6", "zeta^2(4) with Liouville weights".into(), Liouville, SquareIndicator, l_of(SquareIndicator, 2).pow(2), 1e-3, COT1_CAP);
    case(&mut b, "case7", "(zeta(2)/zeta(3))^2 with g = mu(m)/m".into(), MuOverM, PhiOverN, l_of(PhiOverN, 2).pow(2), 1e-3, COT1_CAP);
    case(&mut b, "case8", "zeta'(2)^2 with von Mangoldt weights".into(), Mangoldt, LogPow(1), Expr::ZetaDeriv(1, 2).pow(2), 1e-2, COT1_CAP);
    for k in 1..=2u32 {
        case(
            &mut b,
            &format!("case9(k={k})"),
            format!("zeta^({k})(2)^2 with generalized von Mangoldt weights"),
            MangoldtK(k),
            LogPow(k),
            Expr::ZetaDeriv(k, 2).pow(2),
            1e-2,
            COT1_CAP,
        );
    }
    case(&mut b, "case10", "zeta^2(2) G^2 with chi_4 weights".into(), Chi4, R2Quarter, zeta(2).pow(2) * Expr::Beta(2).pow(2), 1e-3, COT1_CAP);
    for a in [1u64, 6, 12] {
        case(
            &mut b,
            &format!("case11(a={a})"),
            format!("(sigma({a})/{a})^2 with Ramanujan sum weights"),
            RamanujanRow(a),
            DividesA(a),
            (Expr::Sigma(1, a) / int(a as i64)).pow(2),
            1e-2,
            COT1_CAP,
        );
    }
    b.push(
        "T4:k=2,f=tau".into(),
        "zeta^4(4) by the double series with a_2".into(),
        "L^2(4;f) = sum_m g(m)/m (sum_n f(n)/n^7 a_2(n/m) - m L(8;f)); g = 1, f = tau".into(),
        zeta(4).pow(4),
        RhsProgram::Double { kernel: DoubleKernel::Cot(2), g: Unit, f: TauNu(2), inner_ratio: COT2_RATIO, outer_cap: COT2_CAP },
        Conditional,
        &[("k", "2".into()), ("g", Unit.to_string()), ("f", TauNu(2).to_string())],
        rel(1e-3),
    );
    for (s, k) in [(3u32, 2u32), (5, 3)] {
        for (g, f, name) in [(DeltaOne, Unit, "unit"), (Unit, TauNu(2), "tau")] {
            b.push(
                format!("T5:s={s},f={name}"),
                format!("L^2({s};{name}) by the double series with b_{k}"),
                format!("L^2({s};f) = sum_m g(m)/m sum_n f(n)/n^{} b_{k}(n/m); g = {g}, f = {f}", 4 * k - 3),
                l_of(f, s).pow(2),
                RhsProgram::Double { kernel: DoubleKernel::Digamma(k), g, f, inner_ratio: PSI_RATIO, outer_cap: PSI_CAP },
                Conditional,
                &[("k", k.to_string()), ("g", g.to_string()), ("f", f.to_string())],
                rel(1e-3),
            );
        }
    }
    for (g, f, name) in [(DeltaOne, Unit, "unit"), (Unit, TauNu(2), "tau")] {
        b.push(
            format!("T6:f={name}"),
            format!("L^2(3;{name})/2 by the double series with c_1"),
            format!("L^2(3;f)/2 = sum_m g(m)/m (sum_n f(n)/n^5 c_1(n/m) - m L(6;f)); g = {g}, f = {f}"),
            l_of(f, 3).pow(2) / int(2),
            RhsProgram::Double { kernel: DoubleKernel::Omega(1), g, f, inner_ratio: PSI_RATIO, outer_cap: PSI_CAP },
            Conditional,
            &[("k", "1".into()), ("g", g.to_string()), ("f", f.to_string())],
            rel(1e-3),
        );
    }
    b.0
}

/// Every registered identity, in a fixed order.
pub fn list_identities() -> &'static [Identity] {
    static CATALOG: OnceLock<Vec<Identity>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

/// Looks an identity up by id.
pub fn identity(id: &str) -> Result<&'static Identity> {
    list_identities()
        .iter()
        .find(|i| i.id == id)
        .ok_or_else(|| Error::Usage(format!("unknown identity '{id}'")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inventory_is_complete_and_unique() {
        let all = list_identities();
        assert_eq!(all.len(), 42);
        let mut ids: Vec<&str> = all.iter().map(|i| i.id.as_str()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 42);
        for want in ["T1:k=1", "CLR", "T4C1:case1", "T4C1:case11(a=6)", "T3C2:m=2", "T6:f=tau"] {
            assert!(identity(want).is_ok(), "{want}");
        }
        assert!(matches!(identity("NOPE"), Err(Error::Usage(_))));
    }

    #[test]
    fn tolerances_only_on_estimates() {
        for i in list_identities() {
            assert_eq!(i.tolerance.is_some(), i.class == ConvergenceClass::Conditional, "{}", i.id);
        }
    }
}
