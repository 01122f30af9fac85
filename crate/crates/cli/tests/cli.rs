use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use folres_cli::doc::ReportDocument;
use folres_cli::{linear_model_document, Triple};
use folres_core::algebra::{BiPoly, Field, RatFunc, Scalar};
use folres_core::foliation::SingularClass;
use folres_core::forms::OneForm;

const CUSP: &str = r#"{"form": {"a": {"2,0": "-3"}, "b": {"0,1": "2"}}}"#;
const RADIAL: &str = r#"{"form": {"a": {"0,1": "-1"}, "b": {"1,0": "1"}}}"#;

fn folres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_folres")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr_error(o: &Output) -> Value {
    let v: Value = serde_json::from_slice(&o.stderr).expect("stderr is JSON");
    v["error"].clone()
}

fn put(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn resolved(dir: &TempDir, input: &str, name: &str) -> PathBuf {
    let inp = put(dir, &format!("{name}.in.json"), input);
    let out = dir.path().join(format!("{name}.json"));
    let o = folres(&["resolve", s(&inp), "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn cusp_report_and_dot() {
    let dir = TempDir::new().unwrap();
    let inp = put(&dir, "cusp.in.json", CUSP);
    let out = dir.path().join("r.json");
    let dot = dir.path().join("g.dot");
    let o = folres(&["resolve", s(&inp), "--out", s(&out), "--dot", s(&dot)]);
    assert_eq!(code(&o), 0);
    let doc = ReportDocument::parse(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc.report.components.len(), 3);
    assert!(doc.index_theorem.iter().all(|r| r.holds));

    let g = fs::read_to_string(&dot).unwrap();
    assert!(g.starts_with("graph divisor {"));
    let nodes = g.lines().filter(|l| l.contains("[label=\"E") && !l.contains("--")).count();
    let edges = g.lines().filter(|l| l.contains(" -- ")).count();
    assert_eq!((nodes, edges), (3, 2));
    assert!(g.contains("/ -1 / invariant"));
    assert!(g.contains("-1/6"));
}

#[test]
fn report_has_no_floats_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let out = resolved(&dir, CUSP, "cusp");
    assert_eq!(code(&folres(&["schedule", s(&out)])), 0);
    let text = fs::read_to_string(&out).unwrap();
    let again = ReportDocument::parse(&text).unwrap().to_json();
    assert_eq!(text, again);
    fn no_floats(v: &Value) -> bool {
        match v {
            Value::Number(n) => n.is_i64() || n.is_u64(),
            Value::Array(a) => a.iter().all(no_floats),
            Value::Object(m) => m.values().all(no_floats),
            _ => true,
        }
    }
    assert!(no_floats(&serde_json::from_str(&text).unwrap()));
}

#[test]
fn radial_report() {
    let dir = TempDir::new().unwrap();
    let out = resolved(&dir, RADIAL, "radial");
    let o = folres(&["schedule", s(&out)]);
    assert_eq!(code(&o), 0);
    let doc = ReportDocument::parse(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc.report.components.len(), 1);
    assert!(doc.report.components[0].dicritical);
    assert_eq!(doc.chains.as_ref().unwrap().len(), 0);
    let sched: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(sched["steps"][0]["tag"], "DicriticalEnd");
}

#[test]
fn analysis_sections_are_idempotent() {
    let dir = TempDir::new().unwrap();
    let out = resolved(&dir, CUSP, "cusp");
    for cmd in ["chains", "verdict", "schedule"] {
        assert_eq!(code(&folres(&[cmd, s(&out)])), 0);
        let first = fs::read_to_string(&out).unwrap();
        assert_eq!(code(&folres(&[cmd, s(&out)])), 0);
        assert_eq!(first, fs::read_to_string(&out).unwrap(), "{cmd}");
    }
    let doc = ReportDocument::parse(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc.chains.as_ref().unwrap()[0].sequence, "2.1.2");
    let sched = doc.schedule.unwrap();
    for c in &doc.report.components {
        assert!(sched.covers(c.id));
    }
}

#[test]
fn synthetic_minimal_chain_report() {
    // regular corners make every corner satisfy the minimality clause
    let dir = TempDir::new().unwrap();
    let out = resolved(&dir, CUSP, "cusp");
    let mut doc = ReportDocument::parse(&fs::read_to_string(&out).unwrap()).unwrap();
    for p in doc.report.singularities.iter_mut().filter(|p| p.corner) {
        p.class = SingularClass::Regular;
    }
    fs::write(&out, doc.to_json()).unwrap();
    let o = folres(&["verdict", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["tag"], "Minimal");
    assert!(!v[0]["clauses"].as_array().unwrap().is_empty());
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = put(&dir, "bad.json", "{not json");
    let o = folres(&["resolve", s(&bad)]);
    assert_eq!(code(&o), 1);
    assert_eq!(stderr_error(&o)["exit_code"], 1);

    let float = put(&dir, "float.json", r#"{"form": {"a": {"0,1": "0.5"}, "b": {"1,0": "1"}}}"#);
    assert_eq!(code(&folres(&["resolve", s(&float)])), 1);

    let cusp = put(&dir, "cusp.json", CUSP);
    let partial = dir.path().join("partial.json");
    let o = folres(&["resolve", s(&cusp), "--max-blowups", "1", "--out", s(&partial)]);
    assert_eq!(code(&o), 2);
    assert_eq!(stderr_error(&o)["kind"], "BudgetExceeded");
    let o = folres(&["chains", s(&partial)]);
    assert_eq!(code(&o), 4);

    let ext = put(&dir, "ext.json", r#"{"form": {"a": {"1,0": "-2", "0,1": "1"}, "b": {"1,0": "-1", "0,1": "1"}}}"#);
    assert_eq!(code(&folres(&["resolve", s(&ext)])), 3);
    assert_eq!(code(&folres(&["resolve", s(&ext), "--allow-extensions"])), 0);
}

fn triple_file(dir: &TempDir, name: &str, t: &Triple) -> PathBuf {
    put(dir, name, &serde_json::to_string_pretty(t).unwrap())
}

fn linear(dir: &TempDir, lambda: &str) -> PathBuf {
    put(dir, "linear.json", &linear_model_document(lambda).unwrap())
}

#[test]
fn triple_check() {
    let dir = TempDir::new().unwrap();
    let good = linear(&dir, "-1/2");
    let o = folres(&["triple", "check", s(&good)]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passes"], true);

    let mut t: Triple = serde_json::from_str(&fs::read_to_string(&good).unwrap()).unwrap();
    t.eta = OneForm::dx();
    let o = folres(&["triple", "check", s(&triple_file(&dir, "bad.json", &t))]);
    assert_eq!(code(&o), 6);
}

#[test]
fn triple_modify_seeded() {
    let dir = TempDir::new().unwrap();
    let t = linear(&dir, "3/7");
    let a = folres(&["--seed", "11", "triple", "modify", s(&t)]);
    let b = folres(&["triple", "modify", s(&t), "--seed", "11"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = folres(&["--seed", "12", "triple", "modify", s(&t)]);
    assert_ne!(a.stdout, c.stdout);

    let o = folres(&["triple", "modify", s(&t), "--sweep", "5"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["preserved"].as_u64(), v["roundtrips"].as_u64()), (Some(5), Some(5)));

    let params = put(&dir, "p.json", r#"{"g": {"num": {"1,0": "1"}, "den": {"0,0": "1"}}, "h": {"num": {}, "den": {"0,0": "1"}}}"#);
    let o = folres(&["triple", "modify", s(&t), "--params", s(&params)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn triple_compare() {
    let dir = TempDir::new().unwrap();
    let p1 = linear(&dir, "-1/2");
    let t1: Triple = serde_json::from_str(&fs::read_to_string(&p1).unwrap()).unwrap();
    let f = RatFunc::new(BiPoly::one(), BiPoly::monomial(Scalar::from_i64(1), 2, 2));
    let t2 = Triple { xi: t1.omega.scale(&f), ..t1.clone() };
    let p2 = triple_file(&dir, "t2.json", &t2);
    let o = folres(&["triple", "compare", s(&p1), s(&p2)]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["closed"], true);
    assert_eq!(v["f"], serde_json::to_value(&f).unwrap());

    let t3 = Triple { xi: OneForm::dy(), ..t1 };
    let o = folres(&["triple", "compare", s(&p1), s(&triple_file(&dir, "t3.json", &t3))]);
    assert_eq!(code(&o), 5);
    assert_eq!(stderr_error(&o)["kind"], "NotProportional");
}

#[test]
fn triple_normal_forms() {
    for args in [
        vec!["--case", "iii"],
        vec!["--case", "ii", "--l", "2", "--c", "-3"],
        vec!["--case", "i", "--lambda", "-2/3", "--phi-monomial", "2,3", "--phi-num", r#"{"0":"1","1":"1"}"#, "--phi-den", r#"{"2":"1"}"#],
        vec!["--case", "i", "--lambda", "5", "--g", r#"{"num": {"0,0": "1", "1,2": "3"}, "den": {"0,0": "1"}}"#],
    ] {
        let mut full = vec!["triple", "normal-form"];
        full.extend(args.iter().copied());
        let o = folres(&full);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = folres(&["triple", "normal-form", "--case", "i", "--lambda", "1", "--phi-monomial", "1,1", "--phi-num", r#"{"1":"1"}"#]);
    assert_eq!(code(&o), 6);
    assert_eq!(code(&folres(&["triple", "normal-form", "--case", "iv"])), 1);
}

fn aseq_rows(depth: &str) -> Vec<Vec<String>> {
    let o = folres(&["aseq", "--depth", depth]);
    assert_eq!(code(&o), 0);
    String::from_utf8(o.stdout)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split('\t').map(String::from).collect())
        .collect()
}

#[test]
fn aseq_listing() {
    let d0 = aseq_rows("0");
    assert_eq!(d0.len(), 1);
    assert_eq!(d0[0][0], "1.1");
    let d1 = aseq_rows("1");
    let row = d1.iter().find(|r| r[0] == "2.1.2").unwrap();
    assert_eq!(&row[1..4], ["2/1", "PASS", "PASS"]);
    let d2 = aseq_rows("2");
    for seq in ["2.2.1.3", "3.1.2.2"] {
        let r = d2.iter().find(|r| r[0] == seq).unwrap();
        assert_eq!(&r[2..4], ["PASS", "PASS"]);
    }
    assert_eq!(aseq_rows("2"), d2);
    assert_eq!(code(&folres(&["aseq", "--depth", "99"])), 1);
    let o = folres(&["aseq", "--depth", "1", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}
