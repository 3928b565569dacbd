use std::fmt::Write;

use zeta_identities::kernels::{series_constant, SeriesConstant};
use zeta_identities::mp::{PrecisionContext, Real};
use zeta_identities::registry::{IdentitySummary, VerificationReport};
use zeta_identities::specfun::{dirichlet_beta, euler_gamma, zeta_int};
use zeta_identities::Result;

fn json_text<T: serde::Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn list(rows: &[IdentitySummary], json: bool) -> String {
    if json {
        return json_text(rows);
    }
    let mut out = String::new();
    for r in rows {
        let _ = writeln!(out, "{}  {}  {}  {}", r.id, r.title, r.class, r.paper_ref);
    }
    out
}

pub fn reports(reports: &[VerificationReport], json: bool) -> String {
    if json {
        return json_text(reports);
    }
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(out, "{}  {}  ({} digits, {} terms, {} ms)", r.id, r.status, r.digits_requested, r.terms_used, r.elapsed_ms);
        let _ = writeln!(out, "    lhs    {}", r.lhs);
        let _ = writeln!(out, "    rhs    {}", r.rhs);
        let _ = writeln!(out, "    |diff| {}  bound {}", r.abs_diff, r.error_bound);
        if let Some(d) = &r.diagnostics {
            let _ = writeln!(out, "    note   {d}");
        }
    }
    out
}

#[derive(serde::Serialize)]
struct Constant {
    name: String,
    value: String,
}

pub fn constants(digits: u32, json: bool) -> Result<String> {
    let ctx = PrecisionContext::new(digits)?;
    let mut rows = vec![
        ("pi".to_string(), Real::pi(&ctx)),
        ("gamma".to_string(), euler_gamma(&ctx)),
        ("catalan".to_string(), dirichlet_beta(2, &ctx)?),
    ];
    for s in 2..=9 {
        rows.push((format!("zeta({s})"), zeta_int(s, &ctx)?));
    }
    rows.push(("S0".to_string(), series_constant(SeriesConstant::S0, &ctx)?));
    rows.push(("S".to_string(), series_constant(SeriesConstant::S, &ctx)?));
    let rows: Vec<Constant> =
        rows.into_iter().map(|(name, v)| Constant { name, value: v.to_decimal(digits as usize) }).collect();
    if json {
        return Ok(json_text(&rows));
    }
    let width = rows.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for c in &rows {
        let _ = writeln!(out, "{:width$} = {}", c.name, c.value);
    }
    Ok(out)
}
