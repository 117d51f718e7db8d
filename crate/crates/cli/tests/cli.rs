use std::path::Path;
use std::process::{Command, Output};

use jetlab::JetSpace;
use serde_json::Value;

fn jetlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jetlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn csv_column(text: &str, col: &str) -> Vec<String> {
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let i = header.iter().position(|h| *h == col).unwrap();
    lines.map(|l| l.split(',').nth(i).unwrap().to_string()).collect()
}

#[test]
fn bounds_table_and_exit_codes() {
    let o = jetlab(&["bounds", "--n", "1..6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("n,k,k',delta,r0,threshold,stated_bound,ok"));
    assert_eq!(text.lines().count(), 7);
    assert!(csv_column(&text, "ok").iter().all(|v| v == "true"));
    assert_eq!(jetlab(&["bounds", "--n", "0"]).status.code(), Some(2));
    assert_eq!(jetlab(&["bounds", "--n", "5..2"]).status.code(), Some(2));
}

#[test]
fn bounds_json_matches_integer_oracle() {
    let o = jetlab(&["bounds", "--n", "3", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let (n, k) = (3u128, 4u128);
    let delta = (k + 1) * n + k;
    let threshold = (delta.pow(k as u32 - 1) * (delta + 1) * (delta + 2) + k + 2) * delta;
    assert_eq!(v["threshold"], Value::String(threshold.to_string()));
    assert_eq!(v["stated_bound"], Value::String((4u128.pow(6) * 5u128.pow(6)).to_string()));
    assert_eq!(v["ok"], Value::Bool(true));
}

#[test]
fn degree_decomposition_report() {
    let text = stdout(&jetlab(&["bounds", "--n", "2", "--degree", "207691"]));
    assert!(text.contains("epsilon: 11\n"));
    assert!(text.contains("r: 18877\n"));
    assert!(text.contains("limit: 726/2905\n"));
    assert_eq!(jetlab(&["bounds", "--n", "2", "--degree", "207690"]).status.code(), Some(1));
}

#[test]
fn faa_prints_library_expansion() {
    let text = stdout(&jetlab(&["faa", "--order", "3"]));
    let p = JetSpace::new(3).faa_di_bruno_log(1, 3).unwrap();
    assert_eq!(text, format!("dlog[1]^3 = {p}\n"));
}

#[test]
fn jet_eval_is_exact() {
    // f = 1 + 2z − z³, f″(1/2) = −3, and (log f)′(0) = 2.
    let o = jetlab(&["jet-eval", "--poly", "d[1]^2", "--germ", "1 + 2*z - z^3", "--at", "1/2"]);
    assert!(stdout(&o).starts_with("value: -3\n"), "{}", stdout(&o));
    let o = jetlab(&["jet-eval", "--poly", "dlog[1]^1", "--germ", "1 + 2*z - z^3"]);
    assert!(stdout(&o).starts_with("value: 2\n"));
}

#[test]
fn wronskian_report_and_hypotheses() {
    let dir = tempfile::tempdir().unwrap();
    let ok = write(dir.path(), "a.json", r#"{"n":1,"forms":[["-2","1"],["2","1"],["-3","1"],["3","1"],["1","0"]]}"#);
    let text = stdout(&jetlab(&["wronskian", "--file", &ok]));
    assert!(text.contains("weight: 1\n") && text.contains("vanishing_order: 3\n"), "{text}");
    let bad = write(dir.path(), "b.json", r#"{"n":1,"forms":[["1","1"],["2","2"],["0","1"]]}"#);
    let o = jetlab(&["wronskian", "--file", &bad]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("general_position: false"));
    let garbled = write(dir.path(), "c.json", r#"{"n":1,"forms":[["x","1"]]}"#);
    assert_eq!(jetlab(&["wronskian", "--file", &garbled]).status.code(), Some(2));
}

#[test]
fn fmt_check_closed_form_and_containment() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(dir.path(), "c.json", r#"{"components":["1","z"]}"#);
    let d = write(dir.path(), "d.json", r#"{"n":1,"terms":[{"coeff":"1","exponents":[0,1]}]}"#);
    let o = jetlab(&["fmt-check", "--curve", &c, "--hypersurface", &d]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("r,m,N,T,defect"));
    for v in csv_column(&text, "defect") {
        assert!(v.parse::<f64>().unwrap().abs() <= 1e-6);
    }
    let o = jetlab(&["fmt-check", "--curve", &c, "--hypersurface", &d, "--grid", "0.05:0.95:20"]);
    assert_eq!(stdout(&o).lines().count(), 21);
    let zero = write(dir.path(), "z.json", r#"{"components":["1", []]}"#);
    let o = jetlab(&["fmt-check", "--curve", &zero, "--hypersurface", &d]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("First Main Theorem"));
}

#[test]
fn output_is_deterministic_and_redirectable() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(dir.path(), "c.json", r#"{"components":["2 + z", ["-1/8", 0, 0, 1]]}"#);
    let d = write(dir.path(), "d.json", r#"{"n":1,"terms":[{"coeff":1,"exponents":[1,0]},{"coeff":"2","exponents":[0,1]}]}"#);
    let args = ["fmt-check", "--curve", c.as_str(), "--hypersurface", d.as_str()];
    let a = jetlab(&args);
    let b = jetlab(&args);
    assert_eq!(a.stdout, b.stdout);
    let out = dir.path().join("out.csv");
    let mut with_out = args.to_vec();
    with_out.extend(["--out", out.to_str().unwrap()]);
    let o = jetlab(&with_out);
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&out).unwrap(), a.stdout);
}

#[test]
fn gauss_holomorphy_and_control() {
    let o = jetlab(&["gauss", "--preset", "enneper", "--check", "holomorphy"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let residual: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("residual: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(residual <= 1e-8);
    let o = jetlab(&["gauss", "--preset", "enneper", "--check", "holomorphy", "--conjugate", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = jetlab(&["gauss", "--preset", "plane", "--check", "constant"]);
    assert!(stdout(&o).contains("constant: true"));
    assert_eq!(jetlab(&["gauss", "--preset", "torus"]).status.code(), Some(2));
}

#[test]
fn area_density_values() {
    let text = stdout(&jetlab(&["area", "--preset", "plane", "--at", "0"]));
    assert_eq!(text, "euclidean: 4.0\nmax: 2.0\n");
    let text = stdout(&jetlab(&["area", "--preset", "enneper", "--at", "0"]));
    assert!(text.starts_with("euclidean: 1.0\n"));
}

#[test]
fn proof_integral_verdicts() {
    let text = stdout(&jetlab(&["proof-integral", "--ratio", "0.5"]));
    assert!(text.contains("verdict: converging\n") && text.contains("certified: true\n"));
    let text = stdout(&jetlab(&["proof-integral", "--weight", "1", "--vanishing-order", "2"]));
    assert!(text.contains("verdict: diverging\n"));
    assert_eq!(jetlab(&["proof-integral", "--ratio", "0"]).status.code(), Some(2));
}

#[test]
fn sweeps_emit_ratio_tables() {
    let o = jetlab(&["ldl", "--phi", "1/(1-z)", "--lambda", "2", "--grid", "0.5:0.9:5"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("r,ratio"));
    assert_eq!(csv_column(&text, "r"), ["0.5", "0.6", "0.7", "0.8", "0.9"]);
    let o = jetlab(&["transcendence", "--germ", "1", "--germ", "exp(z)", "--grid", "0.5:0.85:2"]);
    let ratios = csv_column(&stdout(&o), "ratio");
    // T(r) = r/π for [1 : e^z].
    let expected = 0.5 / std::f64::consts::PI / 2f64.ln();
    assert!((ratios[0].parse::<f64>().unwrap() - expected).abs() < 1e-7);
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", r#"{"n":1,"forms":[["-2","1"],["2","1"],["-3","1"],["3","1"],["1","0"]]}"#);
    let c = write(dir.path(), "c.json", r#"{"components":["1","z"]}"#);
    let text = stdout(&jetlab(&["jet-norm-integral", "--file", &a, "--curve", &c]));
    assert_eq!(text.lines().next(), Some("r,integral,ratio"));
    assert_eq!(text.lines().count(), 11);
}

#[test]
fn malformed_arguments_are_usage_errors() {
    assert_eq!(jetlab(&["ldl", "--phi", "exp(z)", "--grid", "0.9:0.5:3"]).status.code(), Some(2));
    assert_eq!(jetlab(&["bounds"]).status.code(), Some(2));
    assert_eq!(jetlab(&["faa", "--order", "3", "--tol", "-1"]).status.code(), Some(2));
}
