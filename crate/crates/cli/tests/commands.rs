use std::process::{Command, Output};

fn germ(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_germ"))
        .args(args)
        .env_remove("GERM_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = germ(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn invariants_of_e6() {
    let v = json(&["invariants", "--vars", "x,y", "--poly", "x^3+y^4", "--json", "--reproducible"]);
    assert_eq!(v["mu"], 6);
    assert_eq!(v["tau"], 6);
    assert_eq!(v["isolated"], true);
    assert_eq!(v["ratio_num"], 1);
    assert_eq!(v["ratio_den"], 1);
    assert_eq!(v["weights"]["weights"], serde_json::json!([4, 3]));
}

#[test]
fn expect_match_and_mismatch() {
    let ok = germ(&["invariants", "--vars", "x,y", "--poly", "x^3+y^4", "--expect", "mu=6,tau=6"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = germ(&["invariants", "--vars", "x,y", "--poly", "x^3+y^4", "--expect", "mu=6,tau=5"]);
    assert_eq!(bad.status.code(), Some(3));
    let err = String::from_utf8_lossy(&bad.stderr);
    assert!(err.contains("expected 5") && err.contains("computed 6"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(germ(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(germ(&["invariants", "--vars", "x,y", "--poly", "x^^3"]).status.code(), Some(2));
    assert_eq!(germ(&["invariants", "--vars", "x,y", "--poly", "1+x^2+y^2"]).status.code(), Some(2));
    assert_eq!(germ(&["bounds", "--mu", "3", "--tau", "5", "--n", "1"]).status.code(), Some(2));
    assert_eq!(germ(&["semigroup"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_germ"))
        .args(["tau-min", "--d", "5"])
        .env("GERM_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn thread_cap_is_honoured() {
    let o = Command::new(env!("CARGO_BIN_EXE_germ"))
        .args(["sweep", "--family", "fermat", "--d", "2..4"])
        .env("GERM_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn non_isolated_germ_reports_infinite() {
    let v = json(&["invariants", "--vars", "x,y", "--poly", "x^2", "--json", "--reproducible"]);
    assert_eq!(v["mu"], "infinite");
    assert_eq!(v["isolated"], false);
}

#[test]
fn semigroup_certificate() {
    let text = stdout(&germ(&["semigroup", "--generators", "4,6,13"]));
    assert!(text.contains("plane-branch: yes"), "{text}");
    assert!(text.contains("δ=8 conductor=16"), "{text}");
    assert!(text.contains("μ=16"), "{text}");
    assert!(text.contains("u1^2 - u0^3, u2^2 - u0^5*u1"), "{text}");

    let v = json(&["semigroup", "--generators", "4,6,10,13", "--json", "--reproducible"]);
    assert_eq!(v["minimal_generators"], serde_json::json!([4, 6, 13]));
    assert!(v["warning"].is_string());

    let v = json(&["semigroup", "--generators", "3,5,7", "--json", "--reproducible"]);
    assert_eq!(v["plane_branch"], false);
}

#[test]
fn reproducible_json_is_byte_identical() {
    let args = [
        "sweep",
        "--family",
        "deformed_quasihomogeneous",
        "--count",
        "12",
        "--json",
        "--reproducible",
    ];
    let a = germ(&args);
    let b = germ(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains("wall_ms"));
    assert!(!stdout(&a).contains("generated_at"));
    let timed = stdout(&germ(&args[..6]));
    assert!(timed.contains("generated_at"));
}

#[test]
fn fermat_sweep() {
    let v = json(&["sweep", "--family", "fermat", "--d", "2..6", "--json", "--reproducible"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for (row, d) in rows.iter().zip(2u64..) {
        let mu = (d - 1).pow(3);
        assert_eq!(row["mu"], mu);
        assert_eq!(row["tau"], mu);
    }
    assert_eq!(v["summary"]["violations"], serde_json::json!([]));
}

#[test]
fn deformed_curve_sweep_satisfies_four_thirds() {
    let v = json(&[
        "sweep", "--family", "deformed_quasihomogeneous", "--a", "3..7", "--b", "3..7", "--count", "50", "--seed",
        "42", "--json", "--reproducible",
    ]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 50);
    for row in rows {
        let (mu, tau) = (row["mu"].as_u64().unwrap(), row["tau"].as_u64().unwrap());
        assert!(3 * mu < 4 * tau, "{row}");
        assert!(tau <= mu);
    }
}

#[test]
fn csv_output_parses() {
    let o = germ(&["sweep", "--family", "quasihomogeneous_2var", "--a", "2..3", "--b", "4..5", "--csv", "--reproducible"]);
    assert_eq!(o.status.code(), Some(0));
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let headers = r.headers().unwrap().clone();
    let mu = headers.iter().position(|h| h == "mu").unwrap();
    let tau = headers.iter().position(|h| h == "tau").unwrap();
    let rows: Vec<_> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    for row in rows {
        assert_eq!(row[mu], row[tau]);
    }
}

#[test]
fn suspension_adds_fresh_variable() {
    let v = json(&["suspend", "--vars", "x,y", "--poly", "x^3+y^4", "--k", "3", "--json", "--reproducible"]);
    assert_eq!(v["new_variable"], "z");
    assert_eq!(v["mu"], 12);
    assert_eq!(v["tau"], 12);
    assert_eq!(v["n"], 2);
}

#[test]
fn closed_form_commands() {
    let v = json(&["tau-min", "--d", "100", "--json", "--reproducible"]);
    assert_eq!(v["rows"][0]["tau_min"], "656601");
    let v = json(&["superisolated", "--d", "14", "--local-mus", "91", "--json", "--reproducible"]);
    assert_eq!(v["pg"], 364);
    assert_eq!(v["mu"], 2288);
    let v = json(&["superisolated", "--d", "14", "--local-mus", "91", "--tau", "1660", "--json", "--reproducible"]);
    assert_eq!(v["bounds"]["conjecture_3_2"]["holds"], true);
    assert_eq!(v["bounds"]["conjecture_3_2"]["margin_num"], 404);
    let v = json(&["constants", "--n", "3", "--r", "1", "--json", "--reproducible"]);
    assert_eq!(v["constant_num"], "24");
}

#[test]
fn timeout_gives_partial_report() {
    let o = germ(&[
        "invariants",
        "--vars",
        "x,y,z",
        "--poly",
        "x^14+y^6*z^8+z^14+x^9*z^5+(x+y+z)^15",
        "--timeout",
        "0.05",
        "--json",
        "--reproducible",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["error"].is_string());
}
