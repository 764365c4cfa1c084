//! Report formatting. Floats in reports carry 15 significant digits; graph
//! files are written at full precision so they round-trip.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use upst_core::TransferReport;

/// Rounds to 15 significant digits; `Display` then prints at most 15.
pub fn sig15(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64().and_then(|x| serde_json::Number::from_f64(sig15(x))) {
                *n = x;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with every float rounded by [`sig15`].
pub fn report_json<T: Serialize>(x: &T) -> serde_json::Result<String> {
    let mut v = serde_json::to_value(x)?;
    round_value(&mut v);
    serde_json::to_string_pretty(&v)
}

pub fn num(x: f64) -> String {
    let y = sig15(x);
    if y != 0.0 && !(1e-5..1e16).contains(&y.abs()) {
        format!("{y:e}")
    } else {
        y.to_string()
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_else(|| "-".into())
}

#[derive(Serialize)]
pub struct CheckResult {
    pub check: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct VerifyOutput<'a> {
    pub n: usize,
    /// `input` when the eigensystem was supplied, `dense` when solved here.
    pub eigensystem: &'static str,
    pub lambdas: &'a [f64],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_lambdas: Option<Vec<String>>,
    pub checks: Vec<CheckResult>,
    pub all_pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<&'a TransferReport>,
}

pub fn verify_table(out: &VerifyOutput) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "order {}  eigensystem {}", out.n, out.eigensystem);
    let lambdas: Vec<String> = match &out.exact_lambdas {
        Some(e) => e.clone(),
        None => out.lambdas.iter().map(|&l| num(l)).collect(),
    };
    let _ = writeln!(s, "eigenvalues  {}", lambdas.join(" "));
    let _ = writeln!(s);
    let _ = writeln!(s, "{:<14}{:<8}detail", "check", "verdict");
    for c in &out.checks {
        let _ = writeln!(s, "{:<14}{:<8}{}", c.check, if c.pass { "PASS" } else { "FAIL" }, c.detail);
    }
    if let Some(r) = out.report.filter(|r| r.upst) {
        let _ = writeln!(s);
        let _ = writeln!(s, "minimum transfer times t(u,v), row u");
        for row in &r.min_times {
            let cells: Vec<String> = row.iter().map(|&t| format!("{:>22}", opt(t))).collect();
            let _ = writeln!(s, "{}", cells.join(""));
        }
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "{}", if out.all_pass { "all checks pass" } else { "some checks fail" });
    s
}

/// One row per ordered pair; `t_analytic` is filled for pairs out of
/// vertex 0, where the analytic solve applies.
pub fn times_csv(r: &TransferReport) -> String {
    let mut s = String::from("u,v,t_uv,phase_re,phase_im,t_analytic\n");
    for u in 0..r.n {
        for v in 0..r.n {
            let (re, im) = match r.phases[u][v] {
                Some(z) => (num(z.re), num(z.im)),
                None => (String::new(), String::new()),
            };
            let analytic = match (&r.analytic_times, u) {
                (Some(a), 0) => num(a[v]),
                _ => String::new(),
            };
            let t = r.min_times[u][v].map(num).unwrap_or_default();
            let _ = writeln!(s, "{u},{v},{t},{re},{im},{analytic}");
        }
    }
    s
}
