//! Runs the `ncqm` binary and compares its reports with the files under
//! `tests/golden`. Set `NCQM_BLESS=1` to rewrite the golden files.

use std::path::PathBuf;
use std::process::{Command, Output};

fn ncqm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncqm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Quadrature lines depend on libm rounding; keep only the verdict.
fn normalize(text: &str) -> String {
    text.lines()
        .map(|l| match l.find("/quadrature") {
            Some(i) if l.starts_with("PASS") || l.starts_with("FAIL") => {
                format!("{}/quadrature", &l[..i])
            }
            _ => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

fn golden(name: &str, args: &[&str]) {
    let out = ncqm(args);
    assert!(out.status.success(), "{args:?}: {}{}", stdout(&out), stderr(&out));
    let actual = normalize(&stdout(&out));
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("NCQM_BLESS").is_some() {
        std::fs::write(&path, &actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden mismatch for {name}");
}

#[test]
fn golden_table1() {
    golden("table1.txt", &["table1"]);
}

#[test]
fn golden_table1_expanded_json() {
    golden("table1_expand.json", &["table1", "--expand", "--format", "json"]);
}

#[test]
fn golden_table1_at_zero_theta() {
    golden("table1_theta0.txt", &["table1", "--theta", "0"]);
}

#[test]
fn golden_phases() {
    golden("phase_ab.txt", &["phase", "ab"]);
    golden("phase_anandan.txt", &["phase", "anandan"]);
    golden("phase_ac.txt", &["phase", "ac"]);
    golden("phase_hmw.json", &["phase", "hmw", "--format", "json"]);
    golden("phase_star_shift_ab.txt", &["phase", "star-shift-ab"]);
}

#[test]
fn sign_orientation_is_pinned() {
    // F12 = +B: the undeformed AB phase is −ieBS/ħc
    let out = stdout(&ncqm(&["phase", "ab", "--kind", "gauge_invariant"]));
    assert!(out.contains("| -i*e*B*S*c^-1*hbar^-1 |"), "{out}");
}

#[test]
fn verify_hall_2_passes() {
    let out = ncqm(&["verify", "--kind", "hall_2"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("PASS hall_2/oracle/[p_x,p_y]"));
    assert!(text.contains("PASS hall_2/jacobi/"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn contradictory_keep_flag_is_a_config_error() {
    let out = ncqm(&["verify", "--kind", "hall_1", "--keep-e2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
    assert!(stderr(&out).contains("configuration error"), "{}", stderr(&out));
}

#[test]
fn hall_3_at_zero_theta_has_canonical_algebra() {
    let out = ncqm(&["verify", "--kind", "hall_3", "--theta", "0"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS hall_3/landau/[b,b†]"));
}

#[test]
fn gauge_invariant_ab_factor() {
    let out = stdout(&ncqm(&["phase", "ab", "--realization", "gauge_invariant", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"][0]["factor"], "1 + e*B*theta*c^-1*hbar^-1");
    assert_eq!(v["pass"], true);
}

#[test]
fn ab_at_zero_theta_has_unit_factors() {
    let out = stdout(&ncqm(&["phase", "ab", "--theta", "0", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["factor"] == "1"));
}

#[test]
fn report_schema_and_order() {
    let out = stdout(&ncqm(&["verify", "--kind", "gauge_invariant", "--format", "json", "--levels", "12"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["run"]["kinds"][0], "gauge_invariant");
    let checks = v["checks"].as_array().unwrap();
    for c in checks {
        for key in ["name", "expected", "computed", "residual", "pass"] {
            assert!(c.get(key).is_some(), "missing {key} in {c}");
        }
    }
    let names: Vec<&str> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn identical_config_gives_identical_bytes() {
    let args = ["verify", "--kind", "hall_1", "--format", "json", "--levels", "12"];
    assert_eq!(ncqm(&args).stdout, ncqm(&args).stdout);
}

#[test]
fn config_file_matches_flags() {
    let args = ["phase", "ab", "--kind", "general_r1r2", "--keep-e2", "--format", "json"];
    let from_flags = ncqm(&args);
    let v: serde_json::Value = serde_json::from_slice(&from_flags.stdout).unwrap();
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("phase_ab_config.json");
    std::fs::write(&path, v["run"].to_string()).unwrap();
    let from_file = ncqm(&["--config", path.to_str().unwrap()]);
    assert!(from_file.status.success(), "{}", stderr(&from_file));
    assert_eq!(from_file.stdout, from_flags.stdout);

    let both = ncqm(&["--config", path.to_str().unwrap(), "table1"]);
    assert_eq!(both.status.code(), Some(2));
}

#[test]
fn failed_checks_exit_nonzero() {
    let out = ncqm(&["verify", "--kind", "hall_2", "--tolerance", "1e-12", "--levels", "12"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL hall_2/oracle/[p_x,p_y]"), "{text}");
    assert!(text.trim_end().ends_with("failed") && text.contains("\nFAIL: "));
}

#[test]
fn field_dsl_errors_are_located() {
    let out = ncqm(&["verify", "--kind", "general_r1r2", "--field", "B/x", "--field", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 1, column 3"), "{}", stderr(&out));

    let out = ncqm(&["verify", "--field", "-(B/2)*y", "--field", "(B/2)*x + Bq"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown symbol `Bq` at line 2, column 11"), "{}", stderr(&out));
}

#[test]
fn custom_field_runs_through_verify() {
    let out = ncqm(&[
        "verify", "--kind", "general_r1r2", "--kind", "gauge_invariant", "--levels", "12",
        "--field", "-(B/2)*y", "--field", "(B/2)*x",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn unknown_phase_configuration() {
    let out = ncqm(&["phase", "berry"]);
    assert_eq!(out.status.code(), Some(2));
}
