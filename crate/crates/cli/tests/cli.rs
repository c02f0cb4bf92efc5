use std::path::Path;
use std::process::{Command, Output};

use nlcx_core::complexity::{Analyzer, Measure};
use nlcx_core::{Field, Sequence};
use serde_json::Value;

fn nlcx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nlcx"))
        .args(args)
        .env_remove("NLCX_THREADS")
        .output()
        .expect("run nlcx")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_inversive_passes() {
    let o = nlcx(&["verify", "--construction", "inversive", "--q", "5", "--kmax", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "theorem,n,k,bound_num,bound_den,computed,pass"));
    assert!(out.lines().filter(|l| !l.starts_with('#')).skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn verify_json_summary() {
    let o = nlcx(&["--format", "json", "verify", "--construction", "periodic", "--q", "7", "--d", "3", "--kmax", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["summary"]["pass"], true);
    assert_eq!(v["summary"]["failed"], 0);
    assert_eq!(v["reproducibility"]["field"], "q=7 p=7 e=1 modulus=[0,1] primitive=3");
}

#[test]
fn analyze_zero_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("zero.seq");
    std::fs::write(&file, "# q=5 kind=explicit\n0\n0\n0\n0\n").unwrap();
    let o = nlcx(&["analyze", "--in", path(&file), "--kind", "nk", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["value"], 0);
    assert_eq!(v["kind"], "nk");
    assert_eq!(v["schema"], 1);
    assert!(v["reproducibility"]["version"].is_string());
}

#[test]
fn count_guard_exits_2() {
    let o = nlcx(&["count", "--q", "4", "--k", "1", "--n", "20", "--m", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    let structured: Value = serde_json::from_str(err.lines().last().unwrap()).unwrap();
    assert_eq!(structured["error"]["kind"], "guard");
    assert_eq!(structured["error"]["details"]["n"], 20);
}

#[test]
fn count_csv() {
    let o = nlcx(&["count", "--q", "2", "--k", "1", "--n", "3", "--m", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<String> = stdout(&o).lines().filter(|l| !l.starts_with('#')).map(String::from).collect();
    assert_eq!(rows, ["q,k,n,m,count,bound,pass", "2,1,3,1,6,8,true"]);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(nlcx(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(nlcx(&["count", "--q", "2"]).status.code(), Some(2));
    assert_eq!(nlcx(&["gen", "--kind", "periodic", "--q", "7", "--d", "4"]).status.code(), Some(2));
    assert_eq!(nlcx(&["gen", "--kind", "inversive", "--q", "6"]).status.code(), Some(2));
}

#[test]
fn gen_analyze_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&str, &[&str]); 4] = [
        ("inv.seq", &["gen", "--kind", "inversive", "--q", "13", "--a", "3"]),
        ("per.seq", &["gen", "--kind", "periodic", "--q", "9", "--d", "4", "--n", "12"]),
        ("rnd.seq", &["gen", "--kind", "random", "--q", "4", "--n", "30", "--seed", "11"]),
        ("her.seq", &["gen", "--kind", "hermitian", "--ell", "3"]),
    ];
    for (name, args) in cases {
        let file = dir.path().join(name);
        let mut full = args.to_vec();
        full.extend(["-o", path(&file)]);
        assert_eq!(nlcx(&full).status.code(), Some(0), "{name}");
        let s = Sequence::from_text(&std::fs::read_to_string(&file).unwrap()).unwrap();
        for (kind, measure) in [("nk", Measure::Nk), ("lk", Measure::Lk), ("lin", Measure::Linear), ("moc", Measure::MaxOrder)] {
            let o = nlcx(&["analyze", "--in", path(&file), "--kind", kind, "--k", "2"]);
            assert_eq!(o.status.code(), Some(0));
            let expected = Analyzer::default().analyze(&s, measure, 2).unwrap().value;
            assert_eq!(json(&o)["value"], expected, "{name} {kind}");
        }
    }
}

#[test]
fn analyze_profile_csv_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.seq");
    std::fs::write(&file, "# q=7 kind=explicit\n6\n1\n3\n6\n1\n3\n").unwrap();
    let o = nlcx(&["analyze", "--in", path(&file), "--kind", "nk", "--profile"]);
    let rows: Vec<String> = stdout(&o).lines().filter(|l| !l.starts_with('#')).map(String::from).collect();
    assert_eq!(rows, ["n,value", "1,1", "2,1", "3,1", "4,2", "5,2", "6,2"]);
    let o = nlcx(&["analyze", "--in", path(&file), "--kind", "nk", "--witness"]);
    let w = &json(&o)["witness"];
    assert_eq!(w["m"], 2);
    assert!(w["terms"].as_array().is_some_and(|t| !t.is_empty()));
    let field = Field::of_order(7).unwrap();
    let s = Sequence::explicit(&field, &[6, 1, 3, 6, 1, 3]).unwrap();
    let poly: nlcx_core::complexity::FeedbackPolynomial = serde_json::from_value(w.clone()).unwrap();
    assert_eq!(poly.replay(&field, &[6, 1], 6), s.values());
}

#[test]
fn profile_independent_of_threads() {
    let run = |threads: &str| {
        let o = nlcx(&["--threads", threads, "profile", "--q", "3", "--k", "1", "--nmax", "40", "--samples", "30", "--seed", "5"]);
        assert_eq!(o.status.code(), Some(0));
        stdout(&o)
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    assert!(one.contains("n,mean,min,max,p05,p50,p95,ref"));
    assert!(one.contains("# slope_estimate"));
}

#[test]
fn threads_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_nlcx"))
        .args(["count", "--q", "2", "--n", "4", "--m", "2"])
        .env("NLCX_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_nlcx"))
        .args(["count", "--q", "2", "--n", "4", "--m", "2"])
        .env("NLCX_THREADS", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn hermitian_dumps() {
    let o = nlcx(&["--format", "json", "hermitian", "--ell", "3", "--dump", "points"]);
    assert_eq!(json(&o)["count"], 28);
    let o = nlcx(&["--format", "json", "hermitian", "--ell", "3", "--dump", "orbits"]);
    let v = json(&o);
    assert_eq!(v["orbits"].as_array().unwrap().len(), 3);
    assert!(v["orbits"].as_array().unwrap().iter().all(|o| o.as_array().unwrap().len() == 8));
    let o = nlcx(&["hermitian", "--ell", "2", "--dump", "h"]);
    assert!(stdout(&o).contains("valuation at infinity: -1"));
    assert_eq!(nlcx(&["hermitian", "--ell", "7"]).status.code(), Some(2));
}

#[test]
fn verify_hermitian() {
    let o = nlcx(&["verify", "--construction", "hermitian", "--ell", "3", "--kmax", "2", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("pass"));
}
