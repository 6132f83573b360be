//! End-to-end tests for the `pgw` binary.
//!
//! These drive the compiled executable the way a shell user would and pin
//! down the output contract: determinism (identical invocations produce
//! byte-identical output), exit statuses (0 all checks pass, 1 a check
//! failed, 2 configuration error), CSV/JSON shape, and the degenerate
//! marking of transform checks at lambda = 0.

use std::process::{Command, Output};

fn pgw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pgw"))
        .args(args)
        .output()
        .expect("failed to launch pgw binary")
}

fn stdout_str(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).expect("stdout is not UTF-8")
}

fn stderr_str(out: &Output) -> &str {
    std::str::from_utf8(&out.stderr).expect("stderr is not UTF-8")
}

#[test]
fn verify_runs_are_byte_identical() {
    let args = [
        "verify", "--t", "0.5", "--lambda", "0.7", "--nmax", "5", "--format", "json",
    ];
    let first = pgw(&args);
    let second = pgw(&args);
    assert!(
        first.status.success(),
        "verify failed: {}",
        stderr_str(&first)
    );
    assert_eq!(
        first.stdout, second.stdout,
        "repeated identical invocations must emit byte-identical output"
    );
    assert!(!first.stdout.is_empty());
}

#[test]
fn csv_runs_are_byte_identical() {
    let args = [
        "table", "--t", "0.8", "--lambda", "0.3", "--nmax", "4", "--format", "csv",
    ];
    let first = pgw(&args);
    let second = pgw(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let text = stdout_str(&first);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("kind,n,beta,h,p,r,R,H,logD,tolerance,pass"),
        "CSV output must begin with its header row"
    );
    // One row per degree 0..=nmax, then the summary trailer.
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6);
    for (n, row) in rows[..5].iter().enumerate() {
        assert!(row.starts_with(&format!("table,{n},")));
    }
    assert!(rows[5].starts_with("# summary {"));
}

#[test]
fn verify_json_has_config_results_summary() {
    let out = pgw(&[
        "verify", "--t", "0.5", "--lambda", "0.7", "--nmax", "4", "--format", "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(stdout_str(&out)).expect("stdout is not valid JSON");
    let obj = doc.as_object().expect("top level must be an object");
    assert!(obj.contains_key("config"));
    assert!(obj.contains_key("results"));
    assert!(obj.contains_key("summary"));
    assert_eq!(doc["config"]["command"], "verify");
    assert_eq!(doc["summary"]["all_pass"], true);
    let results = doc["results"].as_array().expect("results must be an array");
    assert!(!results.is_empty());
    for row in results {
        assert!(row["check_id"].is_string());
        assert!(row["residual"].is_string(), "residuals are decimal strings");
        assert_eq!(row["pass"], true);
    }
}

#[test]
fn gaussian_weight_marks_transform_checks_degenerate() {
    let out = pgw(&[
        "verify", "--t", "0.5", "--lambda", "0", "--nmax", "4", "--format", "json",
    ]);
    assert!(out.status.success(), "{}", stderr_str(&out));
    let doc: serde_json::Value = serde_json::from_str(stdout_str(&out)).unwrap();
    let results = doc["results"].as_array().unwrap();
    let degenerate: Vec<&serde_json::Value> = results
        .iter()
        .filter(|r| r["note"] == "degenerate (lambda=0)")
        .collect();
    assert!(
        !degenerate.is_empty(),
        "lambda = 0 must mark the transform checks as degenerate"
    );
    for row in &degenerate {
        assert_eq!(row["pass"], true, "degenerate checks count as passing");
        assert_eq!(row["degenerate"], true);
    }
    // The moment-level identities stay live at lambda = 0.
    assert!(results.iter().any(|r| r["note"] == ""));
}

#[test]
fn nonpositive_t_is_a_config_error() {
    let out = pgw(&["table", "--t=-1", "--lambda", "0", "--nmax", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("t > 0"));
    assert!(out.stdout.is_empty());
}

#[test]
fn undersized_precision_is_a_config_error() {
    let out = pgw(&[
        "table",
        "--t",
        "0.5",
        "--lambda",
        "0",
        "--nmax",
        "4",
        "--prec-bits",
        "64",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("128"));
}

#[test]
fn zero_nmax_is_a_config_error() {
    let out = pgw(&["table", "--t", "0.5", "--lambda", "0", "--nmax", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("nmax"));
}

#[test]
fn two_cut_parameters_are_refused_for_asymptotics() {
    for sub in ["asymptotics", "fit", "equilibrium"] {
        let mut args = vec![sub, "--t", "0.9", "--lambda", "2.0", "--nmax", "10"];
        if sub == "asymptotics" {
            args.extend_from_slice(&["--kind", "beta"]);
        }
        let out = pgw(&args);
        assert_eq!(out.status.code(), Some(2), "{sub} must refuse lambda*t > 1");
        let err = stderr_str(&out);
        assert!(
            err.contains("one-cut"),
            "{sub} diagnostic must name the violated condition, got: {err}"
        );
        assert_eq!(
            err.lines().count(),
            1,
            "config diagnostics are single-line, got: {err}"
        );
    }
}

#[test]
fn unparseable_number_is_a_config_error() {
    let out = pgw(&["verify", "--t", "0.5", "--lambda", "abc", "--nmax", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("--lambda"));
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = std::env::temp_dir().join("pgw-cli-test-out");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.json");
    let _ = std::fs::remove_file(&path);
    let out = pgw(&[
        "table",
        "--t",
        "0.5",
        "--lambda",
        "0.2",
        "--nmax",
        "3",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty(), "--out must suppress stdout");
    let text = std::fs::read_to_string(&path).expect("output file was not written");
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["summary"]["all_pass"], true);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn fit_reports_the_gaussian_constants() {
    // ln(2*pi) = 1.8378770664..., zeta'(-1) = -0.1654211437...
    let out = pgw(&[
        "fit", "--t", "0.5", "--lambda", "0", "--nmax", "36", "--format", "json",
    ]);
    assert!(out.status.success(), "{}", stderr_str(&out));
    let doc: serde_json::Value = serde_json::from_str(stdout_str(&out)).unwrap();
    let c1: f64 = doc["summary"]["c_tilde_1"]
        .as_str()
        .unwrap()
        .parse()
        .unwrap();
    let c0: f64 = doc["summary"]["c_tilde_0"]
        .as_str()
        .unwrap()
        .parse()
        .unwrap();
    assert!(
        (c1 - (2.0 * std::f64::consts::PI).ln()).abs() < 1e-6,
        "c_tilde_1 = {c1}"
    );
    assert!((c0 - (-0.1654211437004509)).abs() < 1e-4, "c_tilde_0 = {c0}");
}

#[test]
fn asymptotics_rows_are_sorted_by_degree() {
    let out = pgw(&[
        "asymptotics",
        "--t",
        "0.5",
        "--lambda",
        "0.5",
        "--nmax",
        "10",
        "--kind",
        "beta",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(stdout_str(&out)).unwrap();
    let rows = doc["results"].as_array().unwrap();
    let degrees: Vec<u64> = rows.iter().map(|r| r["n"].as_u64().unwrap()).collect();
    let mut sorted = degrees.clone();
    sorted.sort_unstable();
    assert_eq!(degrees, sorted);
    assert_eq!(degrees.first(), Some(&1));
    assert_eq!(degrees.last(), Some(&10));
}

#[test]
fn tolerance_flag_gates_the_exit_status() {
    // An absurdly tight tolerance on the asymptotic comparison must fail
    // (exit 1), while a loose one passes (exit 0).
    let base = [
        "asymptotics",
        "--t",
        "0.5",
        "--lambda",
        "0.5",
        "--nmax",
        "8",
        "--kind",
        "beta",
    ];
    let mut tight = base.to_vec();
    tight.extend_from_slice(&["--tol", "1e-300"]);
    let out = pgw(&tight);
    assert_eq!(out.status.code(), Some(1));

    let mut loose = base.to_vec();
    loose.extend_from_slice(&["--tol", "1e10"]);
    let out = pgw(&loose);
    assert_eq!(out.status.code(), Some(0));
}
