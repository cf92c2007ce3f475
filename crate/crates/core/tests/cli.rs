use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

fn aggregate(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_aggregate"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

const FIXTURE_MEASURE: &str =
    r#"{"n":3,"values":{"":0,"1":0.1,"2":0.2,"1,2":0.9,"3":0.3,"1,3":0.5,"2,3":0.6,"1,2,3":1}}"#;

#[test]
fn eval_appends_a_value_column() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "owa.json", r#"{"kind":"owa","weights":[0.5,0.3,0.2]}"#);
    let out = aggregate(&["eval", path(&spec), "--header"], "a,b,c\n3,1,2\n");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "a,b,c,value\n3,1,2,1.7000000000000002\n");

    let out = aggregate(&["eval", path(&spec), "--values-only"], "3,1,2\n");
    assert_eq!(stdout(&out), "1.7000000000000002\n");
}

#[test]
fn eval_reads_files_and_writes_output_files() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "mu.json", FIXTURE_MEASURE);
    let spec = write(dir.path(), "choquet.json", r#"{"kind":"choquet","measure_file":"mu.json"}"#);
    let data = write(dir.path(), "rows.csv", "0.4,0.9,0.1\n1,1,1\n");
    let target = dir.path().join("out.csv");
    let out = aggregate(&["eval", path(&spec), path(&data), "-o", path(&target)], "");
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let written = fs::read_to_string(&target).unwrap();
    let values: Vec<f64> = written.lines().map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert!((values[0] - 0.47).abs() < 1e-15);
    assert_eq!(values[1], 1.0);
}

#[test]
fn eval_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "qa.json", r#"{"kind":"quasi-arithmetic","generator":{"family":"log"},"n":4}"#);
    let rows = "0.1,2,3,4\n5,6,7,8\n1e-3,1e3,2.5,7\n";
    let first = aggregate(&["eval", path(&spec)], rows);
    let second = aggregate(&["eval", path(&spec)], rows);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn eval_exit_codes() {
    let dir = TempDir::new().unwrap();
    let owa = write(dir.path(), "owa.json", r#"{"kind":"owa","weights":[0.5,0.3,0.2]}"#);
    let out = aggregate(&["eval", path(&owa)], "1,2\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("row 1"));

    let out = aggregate(&["eval", path(&owa)], "1,x,2\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("column 2"));

    let sugeno = write(dir.path(), "s.json", &format!(r#"{{"kind":"sugeno","measure":{FIXTURE_MEASURE}}}"#));
    let out = aggregate(&["eval", path(&sugeno)], "0.5,0.5,0.5\n0.2,1.5,0.1\n");
    assert_eq!(out.status.code(), Some(3));

    let bad = write(dir.path(), "bad.json", r#"{"kind":"owa","weights":[0.5,0.3,0.2],"extra":1}"#);
    assert_eq!(aggregate(&["eval", path(&bad)], "1,2,3\n").status.code(), Some(2));

    let out = aggregate(&["eval", path(&owa)], "");
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn check_exit_codes_follow_verdicts() {
    let dir = TempDir::new().unwrap();
    let owa = write(dir.path(), "owa.json", r#"{"kind":"owa","weights":[0.5,0.3,0.2]}"#);
    let wam = write(dir.path(), "wam.json", r#"{"kind":"wam","weights":[0.5,0.3,0.2]}"#);
    let out = aggregate(&["check", path(&owa), "symmetry", "internal"], "");
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("2 checked, 0 failed\n"));

    let out = aggregate(&["check", path(&wam), "symmetry"], "");
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("witness"));

    assert_eq!(aggregate(&["check", path(&wam), "no-such-law"], "").status.code(), Some(2));
    assert_eq!(aggregate(&["check", path(&wam), "symmetry", "--n", "4"], "").status.code(), Some(2));
}

#[test]
fn check_json_is_a_report_array() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "min.json", r#"{"kind":"min"}"#);
    let out = aggregate(&["check", path(&spec), "associative", "idempotent", "--format", "json", "--seed", "3"], "");
    assert_eq!(out.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["property"], "associative");
    assert_eq!(reports[0]["verdict"], "holds-on-samples");
}

#[test]
fn check_all_is_deterministic_per_seed() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "s.json", &format!(r#"{{"kind":"sugeno","measure":{FIXTURE_MEASURE}}}"#));
    let args = ["check", path(&spec), "--all", "--seed", "9", "--samples", "100"];
    let first = aggregate(&args, "");
    let second = aggregate(&args, "");
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn connective_checks() {
    let dir = TempDir::new().unwrap();
    let luk = write(
        dir.path(),
        "luk.json",
        r#"{"kind":"archimedean","interval":[0,1],"generator":{"family":"neg-complement"}}"#,
    );
    let out = aggregate(&["check", path(&luk), "t-norm"], "");
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(aggregate(&["check", path(&luk), "t-conorm"], "").status.code(), Some(1));
}

fn owa_round_trip(dir: &Path, weights: &str) -> Vec<f64> {
    let out = aggregate(&["measure", "from-owa", "--weights", weights], "");
    assert_eq!(out.status.code(), Some(0));
    let file = write(dir, "card.json", &stdout(&out));
    let out = aggregate(&["measure", "to-owa", path(&file)], "");
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    parsed["weights"].as_array().unwrap().iter().map(|w| w.as_f64().unwrap()).collect()
}

#[test]
fn owa_weights_survive_a_measure_round_trip() {
    let dir = TempDir::new().unwrap();
    let dyadic = "0.125,0.5,0.0625,0.3125";
    let back: Vec<String> = owa_round_trip(dir.path(), dyadic).iter().map(|w| format!("{w:.16e}")).collect();
    let original: Vec<String> = dyadic.split(',').map(|w| format!("{:.16e}", w.parse::<f64>().unwrap())).collect();
    assert_eq!(back, original);

    let decimal = "0.1,0.2,0.3,0.4";
    let back = owa_round_trip(dir.path(), decimal);
    for (a, b) in back.iter().zip(decimal.split(',').map(|w| w.parse::<f64>().unwrap())) {
        assert!((a - b).abs() <= 4.0 * f64::EPSILON, "{a} vs {b}");
    }
}

#[test]
fn measure_commands() {
    let dir = TempDir::new().unwrap();
    let good = write(dir.path(), "good.json", FIXTURE_MEASURE);
    let out = aggregate(&["measure", "validate", path(&good)], "");
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"valid\": true") || stdout(&out).contains("\"valid\":true"));

    let bad = write(dir.path(), "bad.json", r#"{"n":2,"array":[0,0.7,0.2,0.5]}"#);
    assert_eq!(aggregate(&["measure", "validate", path(&bad)], "").status.code(), Some(1));

    let broken = write(dir.path(), "broken.json", "{not json");
    assert_eq!(aggregate(&["measure", "validate", path(&broken)], "").status.code(), Some(2));

    let out = aggregate(&["measure", "classify", path(&good)], "");
    let class: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(class["additive"], false);
    assert_eq!(class["cardinality_based"], false);

    let out = aggregate(&["measure", "from-weights", "--weights", "0.25,0.75", "--as", "additive"], "");
    let mu: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(mu["values"]["2"], 0.75);

    let out = aggregate(&["convert", "measure", path(&good), "--to", "array"], "");
    let mu: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(mu["array"][3], 0.9);
}

#[test]
fn signature_and_listing() {
    let out = aggregate(&["signature", "2.5", "-1", "2.5", "--apply-monotone"], "");
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("π=(2,1,3) rel=(<,=)\n"));
    assert!(text.ends_with("equal: true\n"));

    let out = aggregate(&["list"], "");
    let text = stdout(&out);
    for name in ["choquet", "sugeno", "median-assoc", "bisymmetric", "meaningful-io-ordinal"] {
        assert!(text.contains(name), "{name}");
    }
}
