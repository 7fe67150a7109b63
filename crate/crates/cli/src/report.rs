//! Per-germ report rows and their text, JSON and CSV renderings.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use germ_core::bounds::{bound_report, BoundId, BoundReport};
use germ_core::invariants::{find_positive_weights, milnor_then_tjurina, Weights};
use germ_core::localalg::{BasisOptions, Codimension};
use germ_core::poly::{Polynomial, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone)]
pub struct ReportRow {
    pub index: usize,
    pub germ: String,
    pub vars: Vec<String>,
    /// Germ dimension, one less than the number of variables.
    pub n: usize,
    pub mu: Option<Codimension>,
    pub tau: Option<Codimension>,
    pub weights: Option<Weights>,
    pub multiplicity: Option<u64>,
    pub bounds: Option<BoundReport>,
    /// Names of per-germ properties that failed.
    pub failed_checks: Vec<&'static str>,
    pub error: Option<String>,
    pub wall: Duration,
}

fn finite(c: Option<Codimension>) -> Option<u128> {
    c.and_then(Codimension::finite)
}

impl ReportRow {
    pub fn isolated(&self) -> Option<bool> {
        self.mu.map(|m| m.is_finite())
    }

    /// `μ/τ` in lowest terms, for isolated singular germs.
    pub fn ratio(&self) -> Option<Rational> {
        match (finite(self.mu), finite(self.tau)) {
            (Some(m), Some(t)) if t > 0 => Some(Rational::new(BigInt::from(m), BigInt::from(t))),
            _ => None,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.error.is_none() && self.mu.is_some() && self.tau.is_some()
    }
}

/// Computes invariants, bounds and property checks for one germ.
pub fn compute_row(index: usize, f: &Polynomial, timeout: Option<Duration>) -> ReportRow {
    let start = Instant::now();
    let opts = BasisOptions {
        deadline: timeout.map(|t| start + t),
        ..BasisOptions::default()
    };
    let mut row = ReportRow {
        index,
        germ: f.to_string(),
        vars: f.ring().names().to_vec(),
        n: f.nvars() - 1,
        mu: None,
        tau: None,
        weights: find_positive_weights(f),
        multiplicity: f.order(),
        bounds: None,
        failed_checks: Vec::new(),
        error: None,
        wall: Duration::ZERO,
    };
    match milnor_then_tjurina(f, &opts) {
        Ok(staged) => {
            row.mu = Some(staged.mu);
            match staged.tau {
                Ok(t) => row.tau = Some(t),
                Err(e) => row.error = Some(e.to_string()),
            }
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    if let (Some(m), Some(t)) = (finite(row.mu), finite(row.tau)) {
        if t > 0 && m <= u64::MAX as u128 {
            row.bounds = bound_report(m as u64, t as u64, row.n as u64, None, row.multiplicity).ok();
        }
    }
    row.failed_checks = property_checks(&row);
    row.wall = start.elapsed();
    row
}

/// μ ≥ τ ≥ 1, Liu's bound, the quasihomogeneous direction of Saito's
/// theorem and the 4/3 bound for curves, on a finished row of a singular
/// isolated germ.
pub fn property_checks(row: &ReportRow) -> Vec<&'static str> {
    let mut failed = Vec::new();
    let (Some(m), Some(t)) = (finite(row.mu), finite(row.tau)) else {
        return failed;
    };
    if m == 0 {
        if t != 0 {
            failed.push("smooth_tau");
        }
        return failed;
    }
    if !(m >= t && t >= 1) {
        failed.push("mu_ge_tau_ge_1");
    }
    let big_n = (row.n + 1) as u128;
    if big_n * t < m {
        failed.push("liu");
    }
    if row.weights.is_some() && m != t {
        failed.push("saito_direction");
    }
    if row.n == 1 && 3 * m >= 4 * t {
        failed.push("dimca_greuel_4_3");
    }
    failed
}

/// Exact decimal rendering with `places` digits, rounded half away from
/// zero. Display only.
pub fn decimal(q: &Rational, places: usize) -> String {
    let scale = BigInt::from(10u32).pow(places as u32);
    let num = q.numer().abs() * &scale;
    let (mut quot, rem) = num.div_rem(q.denom());
    if rem * 2 >= *q.denom() {
        quot += 1;
    }
    let digits = quot.to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (int, frac) = digits.split_at(digits.len() - places);
    let sign = if q.is_negative() && !quot.is_zero() { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

fn codim_json(c: Option<Codimension>) -> Value {
    match c {
        Some(Codimension::Finite(n)) => num_json(&BigInt::from(n)),
        Some(Codimension::Infinite) => json!("infinite"),
        None => Value::Null,
    }
}

fn num_json(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn codim_text(c: Option<Codimension>) -> String {
    c.map_or_else(|| "?".to_string(), |c| c.to_string())
}

pub fn weights_text(w: &Weights) -> String {
    let ws: Vec<String> = w.weights.iter().map(|x| x.to_string()).collect();
    format!("({}; {})", ws.join(","), w.degree)
}

/// Verdict map keyed by bound identifier.
pub fn bounds_json(report: &BoundReport) -> Value {
    let mut map = Map::new();
    for (id, v) in &report.verdicts {
        let (num, den) = match &v.margin {
            Some(m) => (num_json(m.numer()), num_json(m.denom())),
            None => (Value::Null, Value::Null),
        };
        map.insert(
            id.as_str().to_string(),
            json!({
                "applicable": v.applicable,
                "holds": v.holds,
                "margin_num": num,
                "margin_den": den,
            }),
        );
    }
    Value::Object(map)
}

pub fn row_json(row: &ReportRow, reproducible: bool) -> Value {
    let ratio = row.ratio();
    let mut obj = Map::new();
    obj.insert("index".into(), json!(row.index));
    obj.insert("germ".into(), json!(row.germ));
    obj.insert("vars".into(), json!(row.vars));
    obj.insert("n".into(), json!(row.n));
    obj.insert("mu".into(), codim_json(row.mu));
    obj.insert("tau".into(), codim_json(row.tau));
    obj.insert("ratio_num".into(), ratio.as_ref().map_or(Value::Null, |r| num_json(r.numer())));
    obj.insert("ratio_den".into(), ratio.as_ref().map_or(Value::Null, |r| num_json(r.denom())));
    obj.insert("ratio_decimal".into(), ratio.as_ref().map_or(Value::Null, |r| json!(decimal(r, 6))));
    obj.insert("isolated".into(), json!(row.isolated()));
    obj.insert(
        "weights".into(),
        row.weights.as_ref().map_or(Value::Null, |w| {
            json!({
                "weights": w.weights.iter().map(num_json).collect::<Vec<_>>(),
                "degree": num_json(&w.degree),
            })
        }),
    );
    obj.insert("multiplicity".into(), json!(row.multiplicity));
    obj.insert("bounds".into(), row.bounds.as_ref().map_or(Value::Null, bounds_json));
    obj.insert("failed_checks".into(), json!(row.failed_checks));
    obj.insert("error".into(), json!(row.error));
    if !reproducible {
        obj.insert("wall_ms".into(), json!(row.wall.as_millis() as u64));
    }
    Value::Object(obj)
}

pub fn csv_header(reproducible: bool) -> Vec<String> {
    let mut h: Vec<String> = [
        "index",
        "germ",
        "vars",
        "n",
        "mu",
        "tau",
        "ratio_num",
        "ratio_den",
        "ratio_decimal",
        "isolated",
        "weights",
        "multiplicity",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for id in BoundId::ALL {
        for field in ["applicable", "holds", "margin_num", "margin_den"] {
            h.push(format!("bounds.{id}.{field}"));
        }
    }
    h.push("failed_checks".into());
    h.push("error".into());
    if !reproducible {
        h.push("wall_ms".into());
    }
    h
}

pub fn csv_record(row: &ReportRow, reproducible: bool) -> Vec<String> {
    let opt = |o: Option<String>| o.unwrap_or_default();
    let ratio = row.ratio();
    let mut r = vec![
        row.index.to_string(),
        row.germ.clone(),
        row.vars.join(","),
        row.n.to_string(),
        opt(row.mu.map(|c| c.to_string())),
        opt(row.tau.map(|c| c.to_string())),
        opt(ratio.as_ref().map(|q| q.numer().to_string())),
        opt(ratio.as_ref().map(|q| q.denom().to_string())),
        opt(ratio.as_ref().map(|q| decimal(q, 6))),
        opt(row.isolated().map(|b| b.to_string())),
        opt(row.weights.as_ref().map(weights_text)),
        opt(row.multiplicity.map(|m| m.to_string())),
    ];
    for id in BoundId::ALL {
        match row.bounds.as_ref().map(|b| b.get(id)) {
            Some(v) => {
                r.push(v.applicable.to_string());
                r.push(opt(v.holds.map(|h| h.to_string())));
                r.push(opt(v.margin.as_ref().map(|m| m.numer().to_string())));
                r.push(opt(v.margin.as_ref().map(|m| m.denom().to_string())));
            }
            None => r.extend(std::iter::repeat_n(String::new(), 4)),
        }
    }
    r.push(row.failed_checks.join(";"));
    r.push(opt(row.error.clone()));
    if !reproducible {
        r.push(row.wall.as_millis().to_string());
    }
    r
}

pub fn write_csv(rows: &[ReportRow], reproducible: bool) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(csv_header(reproducible)).expect("in-memory write");
    for row in rows {
        w.write_record(csv_record(row, reproducible)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn margin_text(m: &Option<Rational>) -> String {
    m.as_ref().map_or_else(|| "-".to_string(), |m| m.to_string())
}

pub fn bounds_text(report: &BoundReport) -> String {
    let mut s = String::new();
    for (id, v) in &report.verdicts {
        let verdict = match (v.applicable, v.holds) {
            (false, _) => "n/a",
            (true, None) => "not evaluable",
            (true, Some(true)) => "holds",
            (true, Some(false)) => "FAILS",
        };
        let _ = writeln!(s, "  {:<22} {:<14} margin {}", id.as_str(), verdict, margin_text(&v.margin));
    }
    s
}

pub fn row_text(row: &ReportRow) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "germ: {}", row.germ);
    let _ = writeln!(s, "variables: {} (n = {})", row.vars.join(", "), row.n);
    let ratio = row
        .ratio()
        .map(|q| format!(" μ/τ={} ({})", q, decimal(&q, 6)))
        .unwrap_or_default();
    let _ = writeln!(s, "μ={} τ={}{}", codim_text(row.mu), codim_text(row.tau), ratio);
    if let Some(iso) = row.isolated() {
        let _ = writeln!(s, "isolated: {}", if iso { "yes" } else { "no" });
    }
    let _ = writeln!(
        s,
        "weighted homogeneous in these coordinates: {}",
        row.weights.as_ref().map_or("no".to_string(), weights_text)
    );
    if let Some(b) = &row.bounds {
        let _ = writeln!(s, "bounds:");
        s.push_str(&bounds_text(b));
    }
    if !row.failed_checks.is_empty() {
        let _ = writeln!(s, "failed checks: {}", row.failed_checks.join(", "));
    }
    if let Some(e) = &row.error {
        let _ = writeln!(s, "error: {e}");
    }
    s
}
