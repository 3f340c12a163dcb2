use std::path::PathBuf;
use std::process::{Command, Output};

use nakayama_core::format::parse_algebra;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nakayama")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn analyze_a5() {
    let out = run(&["analyze", &path("a5.alg")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for line in [
        "X = {1,4,5}  X0 = {5}  X1 = {1,4}  X2 = {}",
        "quasi-hereditary: yes",
        "q = 40",
        "pd(1) = 3  class >2",
        "pd(2) = 2  class 2",
        "pd(5) = 0  class 0",
        "gld = 3",
        "s-connected: yes",
    ] {
        assert!(text.lines().any(|l| l == line), "missing {line:?} in\n{text}");
    }
}

#[test]
fn analyze_json_echo_round_trips() {
    for name in ["a3.alg", "a5.alg", "cyclic3.alg", "cyclic2_not_qh.alg", "a12.alg"] {
        let report = json(&["analyze", &path(name)]);
        let echoed = parse_algebra(report["algebra"].as_str().unwrap()).unwrap();
        let original = parse_algebra(&std::fs::read_to_string(data(name)).unwrap()).unwrap();
        assert_eq!(echoed, original, "{name}");
        let qh = report["quasi_hereditary"].as_bool().unwrap();
        assert_eq!(qh, !report["qset"]["x"].as_array().unwrap().is_empty());
        if let Some(q) = report["q"].as_u64() {
            assert_eq!(qh, q > 0);
        }
    }
}

#[test]
fn analyze_cyclic_examples() {
    let r = json(&["analyze", &path("cyclic3.alg")]);
    assert_eq!(r["quasi_hereditary"], true);
    assert_eq!(r["q"], 4);
    let r = json(&["analyze", &path("cyclic2_not_qh.alg")]);
    assert_eq!(r["quasi_hereditary"], false);
    assert_eq!(r["q"], 0);
    assert_eq!(r["global_dimension"], "inf");
    assert_eq!(r["canonical_ordering"], Value::Null);
}

#[test]
fn check_order_verdicts_and_exit_codes() {
    let yes = run(&["check-order", &path("a3.alg"), "--order", "1,2,3"]);
    assert_eq!(yes.status.code(), Some(0));
    assert!(stdout(&yes).starts_with("criterion: yes\noracle: yes\n"));

    let no = run(&["check-order", &path("a3.alg"), "--order", "2,1,3"]);
    assert_eq!(no.status.code(), Some(1));
    let text = stdout(&no);
    assert!(text.contains("criterion: no\noracle: no\n"));
    assert!(text.contains("hood 1..3 max=2 interior=yes"));
    assert!(text.contains("P(1) not good"));

    let canonical = run(&["check-order", &path("a5.alg"), "--order", "4,3,2,1,5"]);
    assert_eq!(canonical.status.code(), Some(0));
    assert!(stdout(&canonical).contains("hood 2..4 max=4 interior=no"));

    let bad = run(&["check-order", &path("a3.alg"), "--order", "1,1,3"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn count_prints_both_methods() {
    let out = run(&["count", &path("a5.alg"), "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "q = 40 (enum) = 40 (formula)\n");

    let out = run(&["count", &path("a3.alg"), "--list", "--oracle"]);
    assert_eq!(stdout(&out), "q = 4 (enum) = 4 (formula)\nq = 4 (oracle)\n1,2,3\n1,3,2\n3,1,2\n3,2,1\n");
}

#[test]
fn count_json_schema() {
    let r = json(&["count", &path("a5.alg"), "--classes"]);
    assert_eq!(r["n"], 5);
    assert_eq!(r["kind"], "linear");
    assert_eq!(r["generators"], serde_json::json!(["1:3", "2:3"]));
    assert_eq!(r["q"], 40);
    assert_eq!(r["method"], "both");
    let sizes: u64 = r["classes"].as_array().unwrap().iter().map(|c| c["size"].as_u64().unwrap()).sum();
    assert_eq!(sizes, 40);
}

#[test]
fn large_counts_are_strings_in_json() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("big.alg");
    std::fs::write(&file, "quiver = linear\nn = 20\nrelation = 1:3\n").unwrap();
    let r = json(&["count", file.to_str().unwrap(), "--method", "formula"]);
    let two_thirds = (1..=20u64).product::<u64>() / 3 * 2;
    assert!(two_thirds > 1 << 53);
    assert_eq!(r["q"], two_thirds.to_string());

    let r = json(&["count", &path("a12.alg"), "--method", "formula"]);
    assert!(r["q"].is_u64());
}

#[test]
fn enumeration_respects_the_cap() {
    let out = run(&["count", &path("a12.alg")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("12"));
}

#[test]
fn orders_and_classes() {
    let out = run(&["orders", &path("a3.alg")]);
    assert_eq!(stdout(&out), "1,2,3\n1,3,2\n3,1,2\n3,2,1\n");
    let out = run(&["orders", "--classes", &path("a3.alg")]);
    assert_eq!(
        stdout(&out),
        "3 classes\nclass (1,1,1) size 1: 3,2,1\nclass (2,1,1) size 2: 1,3,2 | 3,1,2\nclass (2,2,1) size 1: 1,2,3\n"
    );
}

#[test]
fn resolve_traces() {
    let out = run(&["resolve", &path("a5.alg"), "--module", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "Ω^0 = (1;1)\nΩ^1 = (2;1)\nΩ^2 = (3;1)\nΩ^3 = (4;2)\nprojective\npd = 3\n");
    let out = run(&["resolve", &path("cyclic2_not_qh.alg"), "--module", "1,1"]);
    assert!(stdout(&out).ends_with("cycle\npd = inf\n"));
    let out = run(&["resolve", &path("a5.alg"), "--module", "1,4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_input_reports_line_and_exits_2() {
    let out = run(&["analyze", &path("bad_minimal.alg")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
    let out = run(&["analyze", &path("missing.alg")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn quiet_prints_nothing() {
    let out = run(&["--quiet", "check-order", &path("a3.alg"), "--order", "2,3,1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn sweep_writes_tsv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let tsv = dir.path().join("rows.tsv");
    let js = dir.path().join("result.json");
    let out = run(&[
        "sweep",
        "--kind",
        "linear",
        "--n-max",
        "4",
        "--checks",
        "a,b,c,d,f,g",
        "--tsv",
        tsv.to_str().unwrap(),
        "--json",
        js.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let rows = std::fs::read_to_string(&tsv).unwrap();
    assert!(rows.starts_with("kind\tn\tgenerators\tx0\tx1\tx2\tqh\tq\tq/n!\tgld\tchecks-passed\n"));
    assert_eq!(rows.lines().count(), 1 + 8);
    let result: Value = serde_json::from_str(&std::fs::read_to_string(&js).unwrap()).unwrap();
    assert_eq!(result["algebras_checked"], 8);
    assert_eq!(result["orderings_checked"], 134);
}

#[test]
fn sweep_reports_monotonicity_counterexamples() {
    let out = run(&["sweep", "--kind", "linear", "--n-max", "4", "--checks", "monotone"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL [monotone]: expected q drops below 12 after adding 1:3, got q = 16 after adding 1:3 (absorbs 1:4)"));
}

#[test]
fn sweep_rejects_bad_ranges() {
    assert_eq!(run(&["sweep", "--n-max", "9"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--checks", "zzz"]).status.code(), Some(2));
}
