//! Argument parsing and subcommand dispatch.

use std::fmt::Write as _;
use std::io::Write;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use clap::{Args, CommandFactory, Parser, Subcommand};
use germ_core::bounds::{
    bound_report, kerner_nemethi_check, kerner_nemethi_constant, stirling2, superisolated_invariants,
    wahl_tau_min, SuperisolatedData,
};
use germ_core::invariants::suspend;
use germ_core::localalg::Codimension;
use germ_core::poly::{Polynomial, Rational, Ring};
use germ_core::semigroup::{branch_milnor, certify_plane_branch, monomial_curve_equations, semigroup_from_generators};
use num_bigint::BigInt;
use rayon::prelude::*;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::corpus::{generate, Family, Span, SweepSpec};
use crate::report::{self, compute_row, decimal, row_json, row_text, ReportRow};
use crate::selftest::{self, SelftestOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EXPECT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "germ", version, about = "Milnor and Tjurina numbers, semigroups and μ/τ bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Output {
    /// Emit one JSON object
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Emit RFC 4180 CSV
    #[arg(long)]
    csv: bool,
    /// Omit timestamps and timings so that output is byte-identical across runs
    #[arg(long)]
    reproducible: bool,
}

#[derive(Args, Debug, Clone)]
struct GermInput {
    /// Comma-separated variable names, e.g. x,y,z
    #[arg(long, value_delimiter = ',', required = true)]
    vars: Vec<String>,
    /// Polynomial in the given variables, e.g. "x^3+y^4"
    #[arg(long)]
    poly: String,
    /// Abort the standard-basis computation after this many seconds
    #[arg(long, value_name = "SECONDS")]
    timeout: Option<f64>,
    /// Assertions such as mu=6,tau=6; exit 3 on mismatch
    #[arg(long)]
    expect: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// μ, τ, weights and bound verdicts of a germ
    Invariants {
        #[command(flatten)]
        germ: GermInput,
        /// Geometric genus, for bounds that need it
        #[arg(long)]
        pg: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Adds z^k in a fresh variable and reports the new germ
    Suspend {
        #[command(flatten)]
        germ: GermInput,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Gaps, δ, conductor and plane-branch certificate of a numerical semigroup
    Semigroup {
        #[arg(long, value_delimiter = ',', required = true)]
        generators: Vec<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Bound verdicts for a given invariant pair
    Bounds {
        #[arg(long)]
        mu: u64,
        #[arg(long)]
        tau: u64,
        /// Germ dimension
        #[arg(long)]
        n: u64,
        #[arg(long)]
        pg: Option<u64>,
        #[arg(long)]
        multiplicity: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// p_g and μ of a superisolated surface singularity
    Superisolated {
        /// Degree of the initial form
        #[arg(long)]
        d: u64,
        /// Milnor numbers of the singular points of the projective curve
        #[arg(long, value_delimiter = ',')]
        local_mus: Vec<u64>,
        /// Also report bounds for this Tjurina number
        #[arg(long)]
        tau: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Kerner–Némethi constants and Stirling numbers
    Constants {
        /// ICIS dimension
        #[arg(long)]
        n: u64,
        /// Codimension
        #[arg(long, default_value_t = 1)]
        r: u64,
        /// Milnor number, to evaluate the prediction
        #[arg(long, requires = "pg")]
        mu: Option<u64>,
        #[arg(long, requires = "mu")]
        pg: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Minimal Tjurina number of superisolated surfaces of degree d
    TauMin {
        /// Degree or range of degrees, e.g. 100 or 2..1000
        #[arg(long)]
        d: Span,
        #[command(flatten)]
        out: Output,
    },
    /// Invariants and bounds over a generated family
    Sweep {
        #[arg(long)]
        family: Family,
        #[arg(long, default_value = "2..6")]
        d: Span,
        #[arg(long, default_value = "3..7")]
        a: Span,
        #[arg(long, default_value = "3..7")]
        b: Span,
        #[arg(long, default_value = "2")]
        k: Span,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Per-germ time limit in seconds
        #[arg(long, value_name = "SECONDS")]
        timeout: Option<f64>,
        #[command(flatten)]
        out: Output,
    },
    /// Runs the acceptance suite
    Selftest {
        /// Skip the large surface example
        #[arg(long)]
        quick: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
    Expect(String),
}

type Outcome = Result<(String, i32), (Failure, String)>;

/// Runs the tool on `argv` (program name first) with the process streams.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout(), &mut std::io::stderr())
}

pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let name = subcommand_name(&cli.command);
    let result = pool.install(|| dispatch(cli.command));
    match result {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err((failure, partial)) => {
            let _ = out.write_all(partial.as_bytes());
            let (code, msg) = match failure {
                Failure::Usage(m) => (EXIT_USAGE, format!("{m}\n\n{}", synopsis(name))),
                Failure::Compute(m) => (EXIT_COMPUTE, m),
                Failure::Expect(m) => (EXIT_EXPECT, m),
            };
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn subcommand_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Invariants { .. } => "invariants",
        Command::Suspend { .. } => "suspend",
        Command::Semigroup { .. } => "semigroup",
        Command::Bounds { .. } => "bounds",
        Command::Superisolated { .. } => "superisolated",
        Command::Constants { .. } => "constants",
        Command::TauMin { .. } => "tau-min",
        Command::Sweep { .. } => "sweep",
        Command::Selftest { .. } => "selftest",
    }
}

fn synopsis(name: &str) -> String {
    let mut root = Cli::command();
    match root.find_subcommand_mut(name) {
        Some(sub) => sub.clone().bin_name(format!("germ {name}")).render_usage().to_string(),
        None => root.render_usage().to_string(),
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("GERM_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| format!("GERM_THREADS must be a positive integer, got {v:?}"))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| e.to_string())
}

fn usage(msg: impl Into<String>) -> (Failure, String) {
    (Failure::Usage(msg.into()), String::new())
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Invariants { germ, pg, out } => cmd_invariants(&germ, pg, &out),
        Command::Suspend { germ, k, out } => cmd_suspend(&germ, k, &out),
        Command::Semigroup { generators, out } => cmd_semigroup(&generators, &out),
        Command::Bounds {
            mu,
            tau,
            n,
            pg,
            multiplicity,
            out,
        } => cmd_bounds(mu, tau, n, pg, multiplicity, &out),
        Command::Superisolated { d, local_mus, tau, out } => cmd_superisolated(d, local_mus, tau, &out),
        Command::Constants { n, r, mu, pg, out } => cmd_constants(n, r, mu.zip(pg), &out),
        Command::TauMin { d, out } => cmd_tau_min(d, &out),
        Command::Sweep {
            family,
            d,
            a,
            b,
            k,
            count,
            seed,
            timeout,
            out,
        } => cmd_sweep(
            SweepSpec {
                family,
                d,
                a,
                b,
                k,
                count,
                seed,
            },
            timeout,
            &out,
        ),
        Command::Selftest { quick, seed } => cmd_selftest(quick, seed),
    }
}

fn timestamp() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

fn finish_json(mut obj: Map<String, Value>, out: &Output) -> String {
    if !out.reproducible {
        obj.insert("generated_at".into(), json!(timestamp()));
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable");
    s.push('\n');
    s
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn timeout_arg(t: Option<f64>) -> Result<Option<Duration>, (Failure, String)> {
    match t {
        None => Ok(None),
        Some(s) if s.is_finite() && s > 0.0 => Ok(Some(Duration::from_secs_f64(s))),
        Some(s) => Err(usage(format!("--timeout must be a positive number of seconds, got {s}"))),
    }
}

fn parse_germ(input: &GermInput) -> Result<Polynomial, (Failure, String)> {
    let ring = Ring::new(&input.vars).map_err(|e| usage(format!("--vars: {e}")))?;
    let f = Polynomial::parse(&input.poly, &ring).map_err(|e| usage(format!("--poly: {e}")))?;
    if f.is_zero() {
        return Err(usage("--poly: the zero polynomial does not define a hypersurface germ"));
    }
    if !f.constant_term().is_zero() {
        return Err(usage("--poly: nonzero constant term, the germ does not pass through the origin"));
    }
    Ok(f)
}

#[derive(Debug, PartialEq, Eq)]
enum Expected {
    Mu(Codimension),
    Tau(Codimension),
    Isolated(bool),
}

fn parse_expect(text: &str) -> Result<Vec<Expected>, String> {
    let codim = |v: &str| -> Result<Codimension, String> {
        if v == "infinite" {
            return Ok(Codimension::Infinite);
        }
        v.parse::<u128>()
            .map(Codimension::Finite)
            .map_err(|_| format!("--expect: invalid value {v:?}"))
    };
    text.split(',')
        .map(|item| {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| format!("--expect: expected key=value, got {item:?}"))?;
            match k.trim() {
                "mu" => Ok(Expected::Mu(codim(v.trim())?)),
                "tau" => Ok(Expected::Tau(codim(v.trim())?)),
                "isolated" => v
                    .trim()
                    .parse()
                    .map(Expected::Isolated)
                    .map_err(|_| format!("--expect: invalid boolean {v:?}")),
                other => Err(format!("--expect: unknown key {other:?} (use mu, tau, isolated)")),
            }
        })
        .collect()
}

fn check_expect(row: &ReportRow, expect: &[Expected]) -> Vec<String> {
    let show = |c: Option<Codimension>| c.map_or("unknown".to_string(), |c| c.to_string());
    expect
        .iter()
        .filter_map(|e| match e {
            Expected::Mu(m) if row.mu != Some(*m) => Some(format!("mu: expected {m}, computed {}", show(row.mu))),
            Expected::Tau(t) if row.tau != Some(*t) => {
                Some(format!("tau: expected {t}, computed {}", show(row.tau)))
            }
            Expected::Isolated(i) if row.isolated() != Some(*i) => Some(format!(
                "isolated: expected {i}, computed {}",
                row.isolated().map_or("unknown".into(), |b| b.to_string())
            )),
            _ => None,
        })
        .collect()
}

fn render_row(row: &ReportRow, out: &Output, extra: Map<String, Value>) -> String {
    if out.json {
        let Value::Object(mut obj) = row_json(row, out.reproducible) else {
            unreachable!("rows render as objects")
        };
        obj.extend(extra);
        finish_json(obj, out)
    } else if out.csv {
        report::write_csv(std::slice::from_ref(row), out.reproducible)
    } else {
        let mut s = String::new();
        for (k, v) in &extra {
            let v = v.as_str().map_or_else(|| v.to_string(), str::to_string);
            let _ = writeln!(s, "{k}: {v}");
        }
        s + &row_text(row)
    }
}

fn finish_germ(row: ReportRow, germ: &GermInput, out: &Output, extra: Map<String, Value>) -> Outcome {
    let expect = match &germ.expect {
        Some(e) => parse_expect(e).map_err(usage)?,
        None => Vec::new(),
    };
    let text = render_row(&row, out, extra);
    if let Some(e) = &row.error {
        return Err((Failure::Compute(e.clone()), text));
    }
    let mismatches = check_expect(&row, &expect);
    if !mismatches.is_empty() {
        return Err((Failure::Expect(mismatches.join("; ")), text));
    }
    Ok((text, EXIT_OK))
}

fn cmd_invariants(germ: &GermInput, pg: Option<u64>, out: &Output) -> Outcome {
    let f = parse_germ(germ)?;
    let timeout = timeout_arg(germ.timeout)?;
    if let Some(e) = &germ.expect {
        parse_expect(e).map_err(usage)?;
    }
    let mut row = compute_row(0, &f, timeout);
    if let (Some(pg), Some(m), Some(t)) = (pg, row.mu.and_then(|c| c.finite()), row.tau.and_then(|c| c.finite())) {
        if t > 0 {
            row.bounds = bound_report(m as u64, t as u64, row.n as u64, Some(pg), row.multiplicity).ok();
        }
    }
    finish_germ(row, germ, out, Map::new())
}

fn cmd_suspend(germ: &GermInput, k: u32, out: &Output) -> Outcome {
    let f = parse_germ(germ)?;
    let timeout = timeout_arg(germ.timeout)?;
    if let Some(e) = &germ.expect {
        parse_expect(e).map_err(usage)?;
    }
    let s = suspend(&f, k).map_err(|e| usage(e.to_string()))?;
    let row = compute_row(0, &s.suspended, timeout);
    let mut extra = Map::new();
    extra.insert("original".into(), json!(f.to_string()));
    extra.insert("new_variable".into(), json!(s.new_variable));
    extra.insert("suspended".into(), json!(s.suspended.to_string()));
    finish_germ(row, germ, out, extra)
}

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn cmd_semigroup(gens: &[u64], out: &Output) -> Outcome {
    let s = semigroup_from_generators(gens).map_err(|e| (Failure::Compute(e.to_string()), String::new()))?;
    let cert = certify_plane_branch(gens).map_err(|e| (Failure::Compute(e.to_string()), String::new()))?;
    let milnor = branch_milnor(&s).ok();
    let equations: Vec<String> = cert
        .certificate
        .as_ref()
        .map(|c| monomial_curve_equations(c).relations.iter().map(|r| r.to_string()).collect())
        .unwrap_or_default();
    let plane = cert.certificate.is_some();
    let text = if out.json {
        let mut obj = Map::new();
        obj.insert("generators".into(), json!(s.generators()));
        obj.insert("minimal_generators".into(), json!(cert.generators));
        obj.insert("gaps".into(), json!(s.gaps()));
        obj.insert("delta".into(), json!(s.delta()));
        obj.insert("conductor".into(), json!(s.conductor()));
        obj.insert("plane_branch".into(), json!(plane));
        obj.insert("e".into(), json!(cert.e));
        obj.insert("gcd_chain_ok".into(), json!(cert.gcd_chain_ok));
        obj.insert("condition1_ok".into(), json!(cert.condition1_ok));
        obj.insert("condition2_ok".into(), json!(cert.condition2_ok));
        obj.insert("n".into(), json!(cert.certificate.as_ref().map(|c| c.n.clone())));
        obj.insert(
            "witnesses".into(),
            json!(cert.certificate.as_ref().map(|c| c.condition1_witnesses.clone())),
        );
        obj.insert("mu".into(), json!(milnor));
        obj.insert("equations".into(), json!(equations));
        obj.insert("warning".into(), json!(cert.warning()));
        finish_json(obj, out)
    } else if out.csv {
        csv_table(
            &["generators", "delta", "conductor", "plane_branch", "mu", "equations"],
            &[vec![
                list(s.generators()),
                s.delta().to_string(),
                s.conductor().to_string(),
                plane.to_string(),
                milnor.map(|m| m.to_string()).unwrap_or_default(),
                equations.join("; "),
            ]],
        )
    } else {
        let mut t = String::new();
        if let Some(w) = cert.warning() {
            let _ = writeln!(t, "warning: {w}");
        }
        let _ = writeln!(t, "generators: {}", list(s.generators()));
        const SHOWN: usize = 40;
        let gaps = s.gaps();
        let more = if gaps.len() > SHOWN { format!(", ... ({} total)", gaps.len()) } else { String::new() };
        let _ = writeln!(t, "gaps: {}{more}", list(&gaps[..gaps.len().min(SHOWN)]));
        let _ = writeln!(t, "δ={} conductor={}", s.delta(), s.conductor());
        let _ = writeln!(t, "plane-branch: {}", if plane { "yes" } else { "no" });
        let _ = writeln!(t, "e: {}", list(&cert.e));
        if let Some(c) = &cert.certificate {
            let _ = writeln!(t, "n: {}", list(&c.n));
            let _ = writeln!(t, "μ={}", 2 * s.delta());
            let _ = writeln!(t, "equations: {}", equations.join(", "));
        } else {
            let _ = writeln!(
                t,
                "gcd chain: {}, condition (1): {}, condition (2): {}",
                ok(cert.gcd_chain_ok),
                ok(cert.condition1_ok),
                ok(cert.condition2_ok)
            );
        }
        t
    };
    Ok((text, EXIT_OK))
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "fails"
    }
}

fn bounds_output(r: &germ_core::bounds::BoundReport, out: &Output, mut obj: Map<String, Value>) -> String {
    if out.json {
        obj.insert("mu".into(), json!(r.inputs.mu));
        obj.insert("tau".into(), json!(r.inputs.tau));
        obj.insert("n".into(), json!(r.inputs.n));
        obj.insert("pg".into(), json!(r.inputs.p_g));
        obj.insert("multiplicity".into(), json!(r.inputs.multiplicity));
        let q = Rational::new(BigInt::from(r.inputs.mu), BigInt::from(r.inputs.tau));
        obj.insert("ratio_num".into(), json!(q.numer().to_string().parse::<u64>().ok()));
        obj.insert("ratio_den".into(), json!(q.denom().to_string().parse::<u64>().ok()));
        obj.insert("ratio_decimal".into(), json!(decimal(&q, 6)));
        obj.insert("bounds".into(), report::bounds_json(r));
        finish_json(obj, out)
    } else if out.csv {
        let header = ["id", "applicable", "holds", "margin_num", "margin_den"];
        let rows: Vec<Vec<String>> = r
            .verdicts
            .iter()
            .map(|(id, v)| {
                vec![
                    id.as_str().to_string(),
                    v.applicable.to_string(),
                    v.holds.map(|h| h.to_string()).unwrap_or_default(),
                    v.margin.as_ref().map(|m| m.numer().to_string()).unwrap_or_default(),
                    v.margin.as_ref().map(|m| m.denom().to_string()).unwrap_or_default(),
                ]
            })
            .collect();
        csv_table(&header, &rows)
    } else {
        let mut t = String::new();
        for (k, v) in &obj {
            let _ = writeln!(t, "{k}: {v}");
        }
        let q = Rational::new(BigInt::from(r.inputs.mu), BigInt::from(r.inputs.tau));
        let _ = writeln!(
            t,
            "μ={} τ={} n={} μ/τ={} ({})",
            r.inputs.mu,
            r.inputs.tau,
            r.inputs.n,
            q,
            decimal(&q, 6)
        );
        t + &report::bounds_text(r)
    }
}

fn cmd_bounds(mu: u64, tau: u64, n: u64, pg: Option<u64>, mult: Option<u64>, out: &Output) -> Outcome {
    let r = bound_report(mu, tau, n, pg, mult).map_err(|e| usage(e.to_string()))?;
    Ok((bounds_output(&r, out, Map::new()), EXIT_OK))
}

fn cmd_superisolated(d: u64, local_mus: Vec<u64>, tau: Option<u64>, out: &Output) -> Outcome {
    let data = SuperisolatedData { d, local_mus };
    let (pg, mu) = superisolated_invariants(&data).map_err(|e| usage(e.to_string()))?;
    let mut obj = Map::new();
    obj.insert("d".into(), json!(d));
    obj.insert("local_mus".into(), json!(data.local_mus));
    obj.insert("pg".into(), json!(pg as u64));
    if let Some(tau) = tau {
        let r = bound_report(mu as u64, tau, 2, Some(pg as u64), None).map_err(|e| usage(e.to_string()))?;
        return Ok((bounds_output(&r, out, obj), EXIT_OK));
    }
    obj.insert("mu".into(), json!(mu as u64));
    let text = if out.json {
        finish_json(obj, out)
    } else if out.csv {
        csv_table(
            &["d", "local_mus", "pg", "mu"],
            &[vec![d.to_string(), list(&data.local_mus), pg.to_string(), mu.to_string()]],
        )
    } else {
        format!("d={d} p_g={pg} μ={mu}\n")
    };
    Ok((text, EXIT_OK))
}

fn cmd_constants(n: u64, r: u64, check: Option<(u64, u64)>, out: &Output) -> Outcome {
    let c = kerner_nemethi_constant(n, r).map_err(|e| usage(e.to_string()))?;
    let s = stirling2(n + r, r).map_err(|e| usage(e.to_string()))?;
    let items = match check {
        Some((mu, pg)) => kerner_nemethi_check(n, r, mu, pg).map_err(|e| usage(e.to_string()))?,
        None => Vec::new(),
    };
    let text = if out.json {
        let mut obj = Map::new();
        obj.insert("n".into(), json!(n));
        obj.insert("r".into(), json!(r));
        obj.insert("constant_num".into(), json!(c.numer().to_string()));
        obj.insert("constant_den".into(), json!(c.denom().to_string()));
        obj.insert("stirling2".into(), json!(s.to_string()));
        let its: Vec<Value> = items
            .iter()
            .map(|i| {
                json!({
                    "item": i.item,
                    "holds": i.holds,
                    "margin_num": i.margin.numer().to_string(),
                    "margin_den": i.margin.denom().to_string(),
                })
            })
            .collect();
        obj.insert("items".into(), json!(its));
        finish_json(obj, out)
    } else if out.csv {
        csv_table(
            &["n", "r", "constant", "stirling2"],
            &[vec![n.to_string(), r.to_string(), c.to_string(), s.to_string()]],
        )
    } else {
        let mut t = format!("C_{{{n},{r}}} = {c}\nS({}, {r}) = {s}\n", n + r);
        for i in &items {
            let _ = writeln!(
                t,
                "item ({}): {} (margin {})",
                i.item,
                if i.holds { "holds" } else { "FAILS" },
                i.margin
            );
        }
        t
    };
    Ok((text, EXIT_OK))
}

fn cmd_tau_min(d: Span, out: &Output) -> Outcome {
    if d.lo < 2 {
        return Err(usage("--d must be at least 2"));
    }
    let rows: Vec<(u32, u128, Rational)> = d
        .iter()
        .map(|d| {
            let t = wahl_tau_min(d as u64).map_err(|e| usage(e.to_string()))?;
            let q = Rational::new(BigInt::from(d - 1).pow(3), BigInt::from(t));
            Ok((d, t, q))
        })
        .collect::<Result<_, _>>()?;
    let text = if out.json {
        let mut obj = Map::new();
        let rs: Vec<Value> = rows
            .iter()
            .map(|(d, t, q)| {
                json!({
                    "d": d,
                    "tau_min": t.to_string(),
                    "mu": ((*d as u128) - 1).pow(3).to_string(),
                    "ratio_num": q.numer().to_string(),
                    "ratio_den": q.denom().to_string(),
                    "ratio_decimal": decimal(q, 6),
                })
            })
            .collect();
        obj.insert("rows".into(), json!(rs));
        finish_json(obj, out)
    } else if out.csv {
        let rs: Vec<Vec<String>> = rows
            .iter()
            .map(|(d, t, q)| {
                vec![
                    d.to_string(),
                    t.to_string(),
                    q.numer().to_string(),
                    q.denom().to_string(),
                    decimal(q, 6),
                ]
            })
            .collect();
        csv_table(&["d", "tau_min", "ratio_num", "ratio_den", "ratio_decimal"], &rs)
    } else {
        rows.iter()
            .map(|(d, t, q)| format!("d={d} τ_min={t} (d-1)^3/τ_min={q} ({})\n", decimal(q, 6)))
            .collect()
    };
    Ok((text, EXIT_OK))
}

/// Extremes of μ/τ over the isolated singular rows, and property failures.
fn sweep_summary(rows: &[ReportRow]) -> Map<String, Value> {
    let ratios: Vec<(usize, Rational)> = rows.iter().filter_map(|r| Some((r.index, r.ratio()?))).collect();
    let min = ratios.iter().min_by(|a, b| a.1.cmp(&b.1));
    let max = ratios.iter().max_by(|a, b| a.1.cmp(&b.1));
    let ratio_json = |e: Option<&(usize, Rational)>| {
        e.map_or(Value::Null, |(i, q)| {
            json!({"index": i, "num": q.numer().to_string(), "den": q.denom().to_string(), "decimal": decimal(q, 6)})
        })
    };
    let violations: Vec<Value> = rows
        .iter()
        .flat_map(|r| {
            r.failed_checks
                .iter()
                .map(move |c| json!({"index": r.index, "check": c}))
                .chain(r.bounds.iter().flat_map(move |b| {
                    b.violations()
                        .into_iter()
                        .map(move |id| json!({"index": r.index, "bound": id.as_str()}))
                }))
        })
        .collect();
    let curve_margin = rows
        .iter()
        .filter(|r| r.n == 1)
        .filter_map(|r| r.bounds.as_ref()?.get(germ_core::bounds::BoundId::DimcaGreuel43).margin.clone())
        .min();
    let mut m = Map::new();
    m.insert("rows".into(), json!(rows.len()));
    m.insert("isolated".into(), json!(rows.iter().filter(|r| r.isolated() == Some(true)).count()));
    m.insert(
        "non_isolated".into(),
        json!(rows.iter().filter(|r| r.isolated() == Some(false)).map(|r| r.index).collect::<Vec<_>>()),
    );
    m.insert(
        "errors".into(),
        json!(rows.iter().filter(|r| r.error.is_some()).map(|r| r.index).collect::<Vec<_>>()),
    );
    m.insert("min_ratio".into(), ratio_json(min));
    m.insert("max_ratio".into(), ratio_json(max));
    m.insert(
        "min_curve_margin_4_3".into(),
        curve_margin.map_or(Value::Null, |q| json!(q.to_string())),
    );
    m.insert("violations".into(), json!(violations));
    m
}

fn summary_text(s: &Map<String, Value>) -> String {
    let ratio = |v: &Value| {
        if v.is_null() {
            "-".to_string()
        } else {
            format!("{}/{} ({}) at row {}", v["num"].as_str().unwrap_or("?"), v["den"].as_str().unwrap_or("?"), v["decimal"].as_str().unwrap_or("?"), v["index"])
        }
    };
    let violations = s["violations"].as_array().map_or(0, Vec::len);
    format!(
        "summary: {} rows, {} isolated, non-isolated {}, errors {}, min μ/τ {}, max μ/τ {}, min 4τ−3μ on curves {}, violations: {}\n",
        s["rows"],
        s["isolated"],
        s["non_isolated"],
        s["errors"],
        ratio(&s["min_ratio"]),
        ratio(&s["max_ratio"]),
        s["min_curve_margin_4_3"].as_str().unwrap_or("-"),
        if violations == 0 { "none".to_string() } else { serde_json::to_string(&s["violations"]).unwrap_or_default() }
    )
}

fn cmd_sweep(spec: SweepSpec, timeout: Option<f64>, out: &Output) -> Outcome {
    let timeout = timeout_arg(timeout)?;
    let germs = generate(&spec).map_err(usage)?;
    let rows: Vec<ReportRow> = germs
        .par_iter()
        .enumerate()
        .map(|(i, g)| compute_row(i, &g.poly, timeout))
        .collect();
    let summary = sweep_summary(&rows);
    let text = if out.json {
        let mut obj = Map::new();
        obj.insert("family".into(), json!(spec.family.as_str()));
        obj.insert(
            "spec".into(),
            json!({
                "d": spec.d.to_string(),
                "a": spec.a.to_string(),
                "b": spec.b.to_string(),
                "k": spec.k.to_string(),
                "count": spec.count,
                "seed": spec.seed,
            }),
        );
        obj.insert(
            "rows".into(),
            Value::Array(rows.iter().map(|r| row_json(r, out.reproducible)).collect()),
        );
        obj.insert("summary".into(), Value::Object(summary));
        finish_json(obj, out)
    } else if out.csv {
        report::write_csv(&rows, out.reproducible)
    } else {
        let mut t = String::new();
        for r in &rows {
            let ratio = r.ratio().map_or("-".to_string(), |q| format!("{q} ({})", decimal(&q, 4)));
            let flag = match (&r.error, r.failed_checks.is_empty()) {
                (Some(e), _) => format!("  error: {e}"),
                (None, false) => format!("  FAILED {}", r.failed_checks.join(",")),
                _ => String::new(),
            };
            let show = |c: Option<Codimension>| c.map_or("?".to_string(), |c| c.to_string());
            let _ = writeln!(
                t,
                "{:>4}  {:<40}  μ={:<6} τ={:<6} μ/τ={}{}",
                r.index,
                r.germ,
                show(r.mu),
                show(r.tau),
                ratio,
                flag
            );
        }
        t + &summary_text(&summary)
    };
    if rows.iter().any(|r| r.error.is_some()) {
        return Err((Failure::Compute("some germs could not be computed".into()), text));
    }
    Ok((text, EXIT_OK))
}

fn cmd_selftest(quick: bool, seed: Option<u64>) -> Outcome {
    let mut opts = SelftestOptions {
        surface_example: !quick,
        ..SelftestOptions::default()
    };
    if let Some(s) = seed {
        opts.seed = s;
    }
    let results = selftest::run(&opts);
    let text: String = results.iter().map(|r| format!("{r}\n")).collect();
    if results.iter().any(|r| r.passed == Some(false)) {
        return Err((Failure::Compute("some acceptance criteria failed".into()), text));
    }
    Ok((text, EXIT_OK))
}
