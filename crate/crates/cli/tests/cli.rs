use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn sgf(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sgf")).args(args).current_dir(cwd).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn setup() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("sgp.json"), r#"{"numerical": [6, 9, 20]}"#).unwrap();
    fs::write(
        dir.path().join("affine.json"),
        r#"{"free_rank": 2, "generators": [{"free": [2, 1]}, {"free": [1, 1]}, {"free": [1, 2]}]}"#,
    )
    .unwrap();
    dir
}

#[test]
fn factor_lists_factorizations() {
    let d = setup();
    let o = sgf(&["factor", "--sgp", "sgp.json", "--element", "60"], d.path());
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 5);
    assert_eq!(v["factorizations"], serde_json::json!([[0, 0, 3], [1, 6, 0], [4, 4, 0], [7, 2, 0], [10, 0, 0]]));
}

#[test]
fn element_invariants() {
    let d = setup();
    let run = |cmd: &str, e: &str| -> serde_json::Value {
        let o = sgf(&[cmd, "--sgp", "sgp.json", "--element", e], d.path());
        assert_eq!(o.status.code(), Some(0), "{cmd}");
        serde_json::from_str(&stdout(&o)).unwrap()
    };
    assert_eq!(run("lengths", "60")["lengths"], serde_json::json!([3, 7, 8, 9, 10]));
    assert_eq!(run("delta", "60")["delta"], serde_json::json!([1, 4]));
    assert_eq!(run("maxlen", "60")["max_len"], 10);
    assert_eq!(run("minlen", "60")["min_len"], 3);
    assert_eq!(run("catenary", "60")["catenary"], 7);
    assert_eq!(run("omega", "6")["omega"], 3);
}

#[test]
fn delta_set_with_certificate() {
    let d = setup();
    let o = sgf(&["delta-set", "--sgp", "sgp.json", "--horizon", "500"], d.path());
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["delta"], serde_json::json!([1, 2, 3, 4]));
    assert_eq!(v["certificate"]["status"], "Verified");
    assert_eq!(v["certificate"]["minimal_period"], 20);
}

#[test]
fn scan_csv_and_jsonl() {
    let d = setup();
    let o = sgf(&["scan", "--sgp", "sgp.json", "--from", "0", "--to", "100", "--invariants", "z_count,delta"], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "60,5,{1;4}"));
    let o = sgf(
        &["scan", "--sgp", "affine.json", "--box", "0,0:3,3", "--invariants", "delta", "--format", "jsonl", "--out", "s.jsonl"],
        d.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(d.path().join("s.jsonl")).unwrap();
    assert_eq!(text.lines().next().unwrap(), r#"{"delta":[],"element":"0,0"}"#);
}

#[test]
fn output_is_deterministic() {
    let d = setup();
    let args = ["scan", "--sgp", "sgp.json", "--from", "0", "--to", "300", "--invariants", "z_count,lengths,omega,catenary"];
    assert_eq!(sgf(&args, d.path()).stdout, sgf(&args, d.path()).stdout);
    let args = ["fit", "--sgp", "sgp.json", "--invariants", "max_len", "--to", "300", "--degree-bound", "1", "--period-bound", "6"];
    assert_eq!(sgf(&args, d.path()).stdout, sgf(&args, d.path()).stdout);
}

#[test]
fn fits() {
    let d = setup();
    let o = sgf(
        &["fit", "--sgp", "sgp.json", "--invariants", "length_count", "--to", "600", "--degree-bound", "1", "--period-bound", "60"],
        d.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["onset"], 92);
    let o = sgf(
        &["fit", "--sgp", "sgp.json", "--invariants", "min_len", "--to", "400", "--degree-bound", "1", "--period-bound", "20", "--format", "csv"],
        d.path(),
    );
    assert!(stdout(&o).lines().any(|l| l == "1,0,1/20"));
    let o = sgf(
        &["ray-fit", "--sgp", "sgp.json", "--element", "20", "--invariants", "max_len", "--degree-bound", "1", "--period-bound", "6"],
        d.path(),
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["normalized_leading"], serde_json::json!([1, 6]));
    let o = sgf(&["cone-fit", "--sgp", "affine.json", "--base", "0,0", "--directions", "2,1;3,3"], d.path());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ambient_display"], "2/3*x2 - 1/3*x1 + 1");
}

#[test]
fn apery_and_cache() {
    let d = setup();
    let o = sgf(&["apery", "--sgp", "sgp.json", "--subset", "6"], d.path());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["apery"], serde_json::json!([0, 9, 20, 29, 40, 49]));
    let args = ["factor", "--sgp", "sgp.json", "--element", "120", "--cache", "cache"];
    let first = sgf(&args, d.path());
    let second = sgf(&args, d.path());
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(fs::read_dir(d.path().join("cache")).unwrap().count(), 1);
}

#[test]
fn plot_writes_svg_and_csv() {
    let d = setup();
    let o = sgf(&["plot-delta", "--sgp", "sgp.json", "--horizon", "200", "--out", "d.svg"], d.path());
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(d.path().join("d.csv")).unwrap();
    assert!(csv.lines().any(|l| l == "60,1") && csv.lines().any(|l| l == "60,4"));
    assert!(!csv.lines().any(|l| l.starts_with("29,")));
}

#[test]
fn verify_single_criterion() {
    let o = sgf(&["verify-paper", "--criterion", "3"], Path::new("."));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS criterion  3"));
}

#[test]
fn domain_errors_exit_one_with_json() {
    let d = setup();
    for args in [
        &["omega", "--sgp", "sgp.json", "--element", "43"][..],
        &["catenary", "--sgp", "sgp.json", "--element", "3,4"],
        &["delta-set", "--sgp", "affine.json", "--horizon", "10"],
        &["factor", "--sgp", "missing.json", "--element", "1"],
        &["scan", "--sgp", "sgp.json", "--from", "9", "--to", "3"],
    ] {
        let o = sgf(args, d.path());
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
        assert!(err["error"]["kind"].is_string(), "{args:?}");
    }
    let o = sgf(&["omega", "--sgp", "sgp.json", "--element", "43"], d.path());
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "NotInSemigroup");
}

#[test]
fn usage_errors_exit_two_and_name_the_flag() {
    let d = setup();
    for (args, flag) in [
        (&["factor", "--sgp", "sgp.json", "--element", "x"][..], "--element"),
        (&["factor", "--sgp", "sgp.json"], "--element"),
        (&["scan", "--sgp", "sgp.json", "--box", "0,0"], "--box"),
        (&["scan", "--sgp", "sgp.json", "--from", "0", "--to", "9", "--invariants", "bogus"], "--invariants"),
        (&["scan", "--sgp", "sgp.json"], "--from"),
        (&["verify-paper", "--criterion", "12"], "--criterion"),
        (&["frobnicate"], "frobnicate"),
    ] {
        let o = sgf(args, d.path());
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert!(err.contains(flag), "{args:?}: {err}");
    }
    assert_eq!(sgf(&["--help"], d.path()).status.code(), Some(0));
}
