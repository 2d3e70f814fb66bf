//! End-to-end tests of the `cmlab` binary: exit codes, output shapes,
//! JSON schema, and determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cmlab"))
}

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn run(args: &[&str]) -> Output {
    let mut cmd = bin();
    cmd.args(args);
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn gb_prints_the_lex_basis_in_leading_order() {
    let out = run(&[
        "gb",
        corpus("lex_demo.ideal").to_str().unwrap(),
        "--order",
        "lex",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "x - y^2\ny^3 - 1\n");
}

#[test]
fn gb_of_the_zero_ideal_is_empty() {
    let out = run(&["gb", corpus("I1.ideal").to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "");
}

#[test]
fn malformed_file_exits_one_with_position() {
    let dir = std::env::temp_dir();
    let path = dir.join("cmlab_malformed.ideal");
    std::fs::write(&path, "vars: x y\nx ++ 2y\n").unwrap();
    let out = run(&["gb", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("2:"), "position missing: {err}");
}

#[test]
fn dim_matches_pinned_corpus_values() {
    for (file, expect) in [
        ("I1.ideal", "2"),
        ("I2.ideal", "6"),
        ("Jt1_w.ideal", "4"),
        ("J1_t-1.ideal", "4"),
        ("J1_w.ideal", "5"),
    ] {
        let out = run(&["dim", corpus(file).to_str().unwrap()]);
        assert!(out.status.success(), "{file}: {}", stderr(&out));
        assert_eq!(stdout(&out).trim(), expect, "{file}");
    }
}

#[test]
fn dim_is_order_independent_on_the_corpus() {
    for file in ["I2.ideal", "Jt1_w.ideal", "J1_t-1.ideal", "J1_w.ideal"] {
        let grevlex = run(&["dim", corpus(file).to_str().unwrap(), "--order", "grevlex"]);
        let lex = run(&["dim", corpus(file).to_str().unwrap(), "--order", "lex"]);
        assert_eq!(stdout(&grevlex), stdout(&lex), "{file}");
    }
}

#[test]
fn budget_exceeded_exits_two() {
    let out = run(&[
        "dim",
        corpus("I3.ideal").to_str().unwrap(),
        "--budget",
        "0.000000001",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("budget"));
}

#[test]
fn verify_jacobian_passes_with_schema_keys_in_order() {
    let out = run(&["verify", "--check", "jacobian", "--m", "2", "--m1", "1", "--m2", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["check_id"], "jacobian/P(2,1,1)");
    assert_eq!(v["status"], "pass");
    assert!(v["details"].as_str().unwrap().contains("rank=6"));
    assert!(v["elapsed_ms"].as_u64().is_some());
    // Bit-exact key order in the serialized object.
    let ck = text.find("\"check_id\"").unwrap();
    let pa = text.find("\"params\"").unwrap();
    let st = text.find("\"status\"").unwrap();
    let de = text.find("\"details\"").unwrap();
    let el = text.find("\"elapsed_ms\"").unwrap();
    assert!(ck < pa && pa < st && st < de && de < el);
}

#[test]
fn verify_rejects_invalid_triples_and_unknown_checks() {
    let out = run(&["verify", "--check", "jacobian", "--m", "1", "--m1", "1", "--m2", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["verify", "--check", "nonsense"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_hom_and_dimension_pass() {
    let out = run(&["verify", "--check", "hom", "--lemma", "2.7", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "pass");

    let out = run(&[
        "verify", "--check", "dimension", "--family", "Rt", "--n", "1", "--tags", "t0,w",
        "--field", "q",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["details"].as_str().unwrap().contains("dim=4"));
}

#[test]
fn verify_family_and_regular_point_pass() {
    for kind in ["L54", "L55", "L56", "L59"] {
        let out = run(&["verify", "--check", "family", "--kind", kind, "--m", "2", "--field", "q"]);
        assert_eq!(out.status.code(), Some(0), "{kind}: {}", stderr(&out));
    }
    let out = run(&["verify", "--check", "regular-point", "--case", "jordan", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["verify", "--check", "regular-point", "--case", "zero-pair"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_psi_membership_passes() {
    let out = run(&[
        "verify", "--check", "psi-membership", "--m", "2", "--m1", "1", "--m2", "0",
        "--samples", "10",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["params"]["samples"], 10);
}

#[test]
fn verify_fault_injection_exits_three() {
    let out = run(&[
        "verify", "--check", "hom", "--lemma", "2.7", "--n", "2", "--field", "q", "--corrupt",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "fail");
    assert!(v["details"].as_str().unwrap().contains("offending"));
}

#[test]
fn verify_budget_exhaustion_exits_two() {
    let out = run(&[
        "verify", "--check", "hom", "--lemma", "2.7", "--n", "3", "--budget", "0.000000001",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "budget_exceeded");
}

fn normalize_elapsed(json: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(json).unwrap();
    if let Some(arr) = v.as_array_mut() {
        for r in arr {
            r["elapsed_ms"] = serde_json::json!(0);
        }
    }
    v
}

#[test]
fn suite_writes_deterministic_reports_and_summary() {
    let dir = std::env::temp_dir();
    let out1 = dir.join("cmlab_suite_a.json");
    let out2 = dir.join("cmlab_suite_b.json");
    for out in [&out1, &out2] {
        let o = run(&[
            "suite", "--max-n", "1", "--max-m", "1", "--field", "q", "--seed", "7",
            "--samples", "20", "--out", out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        let summary = stdout(&o);
        assert!(
            summary.starts_with("pass=") && summary.contains("fail=0"),
            "{summary}"
        );
    }
    let a = std::fs::read_to_string(&out1).unwrap();
    let b = std::fs::read_to_string(&out2).unwrap();
    // Identical modulo wall-clock timings.
    assert_eq!(normalize_elapsed(&a), normalize_elapsed(&b));

    // Check ids are sorted and the summary counts match the array.
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    let arr = v.as_array().unwrap();
    let ids: Vec<&str> = arr.iter().map(|r| r["check_id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(arr.iter().all(|r| r["status"] == "pass"));
}

#[test]
fn suite_with_tiny_budget_marks_groebner_checks_but_exits_zero() {
    let dir = std::env::temp_dir();
    let out = dir.join("cmlab_suite_budget.json");
    let o = run(&[
        "suite", "--max-n", "1", "--max-m", "1", "--field", "q", "--budget", "0.000000001",
        "--samples", "5", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    for r in v.as_array().unwrap() {
        let id = r["check_id"].as_str().unwrap();
        if id.starts_with("dim/") {
            assert_eq!(r["status"], "budget_exceeded", "{id}");
        }
        if id.starts_with("jacobian/") || id.starts_with("regular/") {
            assert_eq!(r["status"], "pass", "{id}");
        }
    }
}

#[test]
fn default_suite_over_the_default_prime_is_green_and_quick() {
    let dir = std::env::temp_dir();
    let out = dir.join("cmlab_suite_default.json");
    let start = std::time::Instant::now();
    let o = run(&["suite", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("fail=0 budget_exceeded=0"), "{}", stdout(&o));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["status"] == "pass"));
    // The small default suite is interactive-speed.
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn minimal_suite_completes_quickly() {
    let dir = std::env::temp_dir();
    let out = dir.join("cmlab_suite_minimal.json");
    let start = std::time::Instant::now();
    let o = run(&[
        "suite", "--max-n", "1", "--max-m", "1", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(start.elapsed().as_secs_f64() < 5.0);
}

#[test]
fn suite_unwritable_output_exits_one() {
    let o = run(&[
        "suite", "--max-n", "1", "--max-m", "1", "--field", "q",
        "--out", "/nonexistent-dir/report.json",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn gb_and_dim_outputs_are_byte_identical_across_runs() {
    for args in [
        vec!["gb", corpus("I2.ideal").to_str().unwrap()],
        vec!["dim", corpus("Jt1_w.ideal").to_str().unwrap()],
        vec!["gb", corpus("I3.ideal").to_str().unwrap()],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn field_flag_overrides_file_header() {
    // I2 is declared over q; forcing fp keeps the dimension at 6.
    let out = run(&[
        "dim",
        corpus("I2.ideal").to_str().unwrap(),
        "--field",
        "fp:32003",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "6");
    // A bad field descriptor is a usage error.
    let out = run(&["dim", corpus("I2.ideal").to_str().unwrap(), "--field", "fp:32001"]);
    assert_eq!(out.status.code(), Some(1));
}
