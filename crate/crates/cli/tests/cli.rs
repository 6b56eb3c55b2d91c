use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn asseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_asseq")).args(args).output().expect("binary runs")
}

fn run_on(cmd: &str, file: &str, extra: &[&str]) -> (i32, String) {
    let path = fixture(file);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = asseq(&args);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json_of(cmd: &str, file: &str, extra: &[&str]) -> Value {
    let mut extra = extra.to_vec();
    extra.push("--json");
    let (code, out) = run_on(cmd, file, &extra);
    assert_eq!(code, 0, "{out}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn classify_gold_forward() {
    let (code, out) = run_on("classify", "gold_forward.toml", &["--verify"]);
    assert_eq!(code, 0);
    assert!(out.contains("absolutely superficial: YES (condition v)"), "{out}");
    assert!(out.contains("condition (iv): YES"));
    assert!(out.contains("condition (vi) for m ≤ 3, n ≤ 3: YES"));
    assert!(out.contains("field: F_32003"));
}

#[test]
fn classify_gold_reversed() {
    let (code, out) = run_on("classify", "gold_reversed.toml", &["--verify"]);
    assert_eq!(code, 0);
    assert!(out.contains("absolutely superficial: NO, witness at i=1: J:a_1² ≠ J:q"), "{out}");
    let v = json_of("classify", "gold_reversed.toml", &["--verify"]);
    assert_eq!(v["absolutely_superficial"], false);
    assert_eq!(v["conditions"]["v"]["witness"]["index"], 1);
    assert_eq!(v["conditions"]["iv"]["holds"], false);
    assert_eq!(v["conditions"]["vi"]["holds"], false);
    assert_eq!(v["bounds"], serde_json::json!([3, 3]));
}

#[test]
fn hs_table_is_an_equality_on_gold_forward() {
    let (code, out) = run_on("hs", "gold_forward.toml", &["--n-max", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("equality for every n ≤ 5: YES"), "{out}");
    let v = json_of("hs", "gold_forward.toml", &["--n-max", "5"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    for r in rows {
        assert_eq!(r["lhs"], r["rhs"]);
    }
    assert_eq!(v["e"], serde_json::json!([2, 1, 1]));
}

#[test]
fn hs_table_is_strict_on_gold_reversed() {
    let v = json_of("hs", "gold_reversed.toml", &[]);
    assert_eq!(v["equality_all_n"], false);
    assert_eq!(v["bound_holds"], true);
    assert!(v["rows"].as_array().unwrap().iter().any(|r| r["equal"] == false));
}

#[test]
fn einv_and_indep() {
    let v = json_of("einv", "plane.toml", &[]);
    assert_eq!(v["e"], serde_json::json!([1, 0, 0]));
    let v = json_of("indep", "plane.toml", &[]);
    assert_eq!(v["colon"]["holds"], true);
    assert_eq!(v["length"]["lhs"], 2);
    assert_eq!(v["length"]["rhs"], 2);
    assert_eq!(v["agree"], true);
    let (code, _) = run_on("indep", "gold_forward.toml", &[]);
    assert_eq!(code, 1);
}

#[test]
fn rees_verdicts() {
    let v = json_of("rees", "quadrics.toml", &[]);
    assert_eq!(v["holds"], false);
    assert_eq!(v["first_failing_degree"], 2);
    assert_eq!(v["witness"], "T1*T3 - T2^2");
    let v = json_of("rees", "gold_forward.toml", &["--d-max", "3"]);
    assert_eq!(v["holds"], true);
    assert_eq!(v["stable"], true);
    let (code, _) = run_on("rees", "plane.toml", &["--k", "2"]);
    assert_eq!(code, 1);
}

#[test]
fn graded_needs_force_when_not_superficial() {
    let v = json_of("graded", "gold_forward.toml", &[]);
    assert_eq!(v["holds"], true);
    let (code, _) = run_on("graded", "gold_reversed.toml", &[]);
    assert_eq!(code, 1);
    let (code, out) = run_on("graded", "gold_reversed.toml", &["--force", "--index", "1"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn aux_bound_reports_conditions() {
    let v = json_of("aux-bound", "squares.toml", &[]);
    assert_eq!(v["bound_holds"], true);
    assert_eq!(v["condition_i"], Value::Null);
    assert_eq!(v["condition_ii"], true);
}

#[test]
fn oracle_diff_agrees_and_catches_faults() {
    let (code, out) = run_on("oracle-diff", "gold_forward.toml", &[]);
    assert_eq!(code, 0);
    assert!(out.contains("agree: YES"));
    for op in ["colon-ideal", "intersect", "sum", "product", "power", "saturate", "length"] {
        let (code, out) = run_on("oracle-diff", "gold_forward.toml", &["--op", op]);
        assert_eq!(code, 0, "{op}: {out}");
    }
    let (code, out) = run_on("oracle-diff", "gold_forward.toml", &["--inject-fault"]);
    assert_eq!(code, 2);
    assert!(out.contains("shrunk counterexample"), "{out}");
    let (code, _) = run_on("oracle-diff", "affine.toml", &["--op", "length"]);
    assert_eq!(code, 1);
}

#[test]
fn sample_sop_is_deterministic() {
    let a = run_on("sample-sop", "gold_forward.toml", &["--count", "4", "--seed", "9"]);
    let b = run_on("sample-sop", "gold_forward.toml", &["--count", "4", "--seed", "9"]);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
    let v = json_of("sample-sop", "plane.toml", &["--count", "3", "--mode", "monomial"]);
    assert_eq!(v["constant"], true);
    assert_eq!(v["differences"], serde_json::json!([0]));
}

#[test]
fn inhomogeneous_input_is_flagged() {
    let (code, out) = run_on("classify", "affine.toml", &[]);
    assert_eq!(code, 0);
    assert!(out.contains("polynomial-ring semantics only"));
    assert!(out.contains("field: F_101"));
}

#[test]
fn input_errors_exit_with_one() {
    assert_eq!(run_on("classify", "broken.toml", &[]).0, 1);
    assert_eq!(run_on("classify", "no_such_file.toml", &[]).0, 1);
    assert_eq!(asseq(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run_on("classify", "gold_forward.toml", &["--bounds", "3"]).0, 1);
    assert_eq!(asseq(&["--help"]).status.code(), Some(0));
}

#[test]
fn problem_files_with_other_orders() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        f,
        "[ring]\ncharacteristic = 7\nvariables = [\"u\", \"v\", \"w\"]\norder = \"elim(1)\"\n\n[module]\nrelations = [\"u*w\"]\n\n[sequence]\nelements = [\"v\", \"u + w\"]"
    )
    .unwrap();
    let out = asseq(&["classify", f.path().to_str().unwrap(), "--json", "--verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["problem"]["order"], "elim(1)");
    assert_eq!(v["problem"]["field"], 7);
}
