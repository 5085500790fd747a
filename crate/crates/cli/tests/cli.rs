use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_concordia"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    serde_json::from_str(&stdout(&a)).expect("valid JSON")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn temp(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("concordia-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn alexander_corpus() {
    assert_eq!(
        stdout(&["alexander", "K_J"]).trim(),
        "-2*t^1 + 5*t^0 + -2*t^-1"
    );
    assert_eq!(stdout(&["alexander", "unknot"]).trim(), "1*t^0");
    assert_eq!(
        json(&["alexander", "trefoil_R"])["polynomial"],
        "1*t^1 + -1*t^0 + 1*t^-1"
    );
}

#[test]
fn conway_figure_eight() {
    assert_eq!(stdout(&["conway", "figure-eight"]).trim(), "-1*z^2 + 1*z^0");
}

#[test]
fn matrix_files() {
    let plain = temp("kj.txt", "# K_J\n0 2\n1 0\n");
    assert_eq!(
        stdout(&["alexander", plain.to_str().unwrap()]).trim(),
        "-2*t^1 + 5*t^0 + -2*t^-1"
    );
    let js = temp("kj.json", r#"{"label": "kj", "matrix": [[0, 2], [1, 0]]}"#);
    assert_eq!(json(&["alexander", js.to_str().unwrap()])["label"], "kj");
}

#[test]
fn parse_errors_exit_2() {
    let bad = temp("bad.txt", "1 2\n3 x\n");
    let out = run(&["alexander", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2, column 3"));
    assert_eq!(code(&["alexander", "/nonexistent/matrix.txt"]), 2);
    assert_eq!(code(&["signature", "trefoil_R", "--at", "x"]), 2);
}

#[test]
fn not_a_knot_exit_4() {
    let p = temp("link.txt", "1 0\n0 1\n");
    assert_eq!(code(&["alexander", p.to_str().unwrap()]), 4);
}

#[test]
fn signatures() {
    assert_eq!(
        stdout(&["signature", "trefoil_R", "--at", "1/2"]).trim(),
        "-2"
    );
    assert_eq!(json(&["signature", "trefoil_L", "--at", "1/2"])["value"], 2);
    let prof = json(&["signature", "K_J", "--profile", "12"]);
    let samples = prof["samples"].as_array().unwrap();
    assert!(!samples.is_empty());
    assert!(samples.iter().all(|s| s["value"] == 0));
    let out = run(&["signature", "trefoil_R", "--at", "1/6"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("root of the Alexander polynomial"));
}

#[test]
fn trefoil_profile_reports_singular_points() {
    let prof = json(&["signature", "trefoil_R", "--profile", "6"]);
    assert_eq!(prof["singular"], serde_json::json!([[1, 6], [5, 6]]));
    let csv = stdout(&["signature", "trefoil_R", "--profile", "6", "--csv"]);
    assert!(csv.starts_with("a,b,angle_numerator,value\n"));
}

#[test]
fn cover_k_j() {
    let r = json(&["cover", "K_J", "--q", "3", "--p", "7"]);
    assert_eq!(r["order"], 49);
    assert_eq!(r["snf"], serde_json::json!([7, 7]));
    let mut ev: Vec<u64> = r["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    ev.sort();
    assert_eq!(ev, vec![2, 4]);
    let text = stdout(&["cover", "K_J", "--q", "3", "--p", "7"]);
    assert!(text.contains("order = 49"));
}

#[test]
fn witt_diff_unknot_to_trefoil() {
    let c = json(&["witt-diff", "unknot", "--column", "", "--b", "-1"]);
    assert_eq!(c["verdict"], "verified");
    assert_eq!(c["delta_plus"], "1*t^1 + -1*t^0 + 1*t^-1");
    let spec = temp(
        "triple.json",
        r#"{"base": "trefoil_R", "column": [1, 0], "b": 2}"#,
    );
    let c = json(&["witt-diff", spec.to_str().unwrap()]);
    assert_eq!(c["verdict"], "verified");
    assert!(c["reduction_log"]
        .as_array()
        .unwrap()
        .iter()
        .all(|s| s["kind"].is_string()));
}

#[test]
fn mutate_sample() {
    let r = json(&["mutate-genus2", "sample"]);
    assert_eq!(r["verdict"], "verified");
    assert_eq!(r["delta"], r["delta_star"]);
    let spec = temp(
        "pair.json",
        r#"{"A": [[-1, 1], [0, -1]], "C": "K_J", "b": [1, -1]}"#,
    );
    assert_eq!(
        json(&["mutate-genus2", spec.to_str().unwrap()])["verdict"],
        "verified"
    );
}

#[test]
fn amphicheiral_sample() {
    let c = json(&["amphicheiral", "sample"]);
    assert_eq!(c["verdict"], "verified");
    assert_eq!(c["hk"]["F"], "-1*t^1 + 3*t^0 + -1*t^-1");
    assert_eq!(c["hk"]["identities"].as_array().unwrap().len(), 5);
    let bad = temp(
        "amph.json",
        r#"{"A": [[1, 1], [0, 1]], "T": [[0, 1], [1, 0]], "a": [1, 0], "b": 0, "epsilon": 1}"#,
    );
    assert_eq!(code(&["amphicheiral", bad.to_str().unwrap()]), 4);
}

#[test]
fn genus_gap() {
    let j2 = temp("j2.txt", "1 -1 0 0\n0 1 0 0\n0 0 1 -1\n0 0 0 1\n");
    let r = json(&["genus-gap", "--n", "1", j2.to_str().unwrap()]);
    assert_eq!(r["s7"], 8);
    let rec = &r["certificates"][0]["records"][0];
    assert_eq!(rec["k"], 0);
    assert_eq!(rec["cg_min"], 8);
    assert_eq!(rec["contradiction"], true);
    assert!(r["certificates"][0]["asserted_upper_bound"]["source"].is_string());
    assert_eq!(code(&["genus-gap", "--n", "1", "trefoil_R"]), 4);
}

#[test]
fn growth_bound() {
    let r = json(&["growth-bound", "--epsilon", "1/2", "trefoil_R"]);
    assert_eq!(r["certifies"], false);
    assert_eq!(r["bound"], "2");
    let two = temp("two.txt", "-1 1 0 0\n0 -1 0 0\n0 0 -1 1\n0 0 0 -1\n");
    assert_eq!(
        json(&["growth-bound", "--epsilon", "1/2", two.to_str().unwrap()])["certifies"],
        true
    );
}

#[test]
fn selftest_passes_and_is_deterministic() {
    let a = json(&["selftest", "--seed", "5", "--samples", "20"]);
    let b = json(&["selftest", "--seed", "5", "--samples", "20"]);
    assert_eq!(a, b);
    for p in a["properties"].as_array().unwrap() {
        assert_eq!(p["failed"], 0, "{p}");
    }
}

#[test]
fn precision_env_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_concordia"))
        .args(["signature", "K_J", "--at", "1/3"])
        .env("CONCORDIA_PRECISION_CAP", "128")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "0");
}
