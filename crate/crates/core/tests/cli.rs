use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_petersson-lab")).args(args).output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn gamma0_six_is_degenerate() {
    let o = run(&["verdict", "--level", "6", "--weight", "2", "--group", "gamma0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], "petersson-lab/1");
    assert_eq!(v["result"], "degenerate");
    assert_eq!(v["witnesses"][0]["reason"], "mprime_rank_deficient");
}

#[test]
fn prime_level_is_nondegenerate() {
    let o = run(&["verdict", "--level", "5", "--weight", "2", "--group", "gamma1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"], "nondegenerate");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["verdict", "--weight", "2", "--group", "gamma1"],
        vec!["verdict", "--level", "6", "--weight", "2", "--group", "gamma1", "--char-index", "0"],
        vec!["gram", "--level", "6", "--weight", "2", "--group", "gamma0", "--bogus"],
        vec!["lvalue", "--modulus", "5", "--char-index", "9", "--s", "2"],
        vec!["renorm", "--grid", "0,4"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn computation_error_exits_one() {
    let o = run(&["lvalue", "--modulus", "1", "--char-index", "0", "--s", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_is_byte_identical() {
    let args = ["gram", "--level", "12", "--weight", "3", "--group", "gamma1"];
    let a = run(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_petersson-lab")).args(args).env("PETERSSON_THREADS", "1").output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn lvalue_at_negative_integer() {
    let o = run(&["lvalue", "--modulus", "4", "--char-index", "1", "--s", "-2,0"]);
    let v = json(&o);
    assert_eq!(v["value_re"].as_f64(), Some(-0.5));
}

#[test]
fn csv_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chars.csv");
    let o = run(&["charlist", "--modulus", "5", "--primitive-only", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "index,modulus,conductor,parity,exponents,values");
    assert_eq!(lines.len(), 4);
}

#[test]
fn verify_suite_passes() {
    let o = run(&["verify", "--suite", "adjoint", "--max-level", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"][0]["suite"], "adjoint");
}

#[test]
fn basis_and_renorm_shapes() {
    let v = json(&run(&["basis", "--level", "4", "--weight", "3", "--group", "gamma1", "--prec", "5"]));
    assert_eq!(v["dimension"], 2);
    assert_eq!(v["labels"][0]["q_expansion"].as_array().unwrap().len(), 5);
    let r = json(&run(&["renorm", "--grid", "60,60", "--height", "5"]));
    let (i, refv) = (r["integral"].as_f64().unwrap(), r["residue_reference"].as_f64().unwrap());
    assert!((i - refv).abs() < 1e-2 * refv.abs());
}
