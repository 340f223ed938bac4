use std::io::Write;
use std::process::{Command, Output};

use nilrep_core::poly::Polynomial;
use nilrep_core::rep::build_rep;
use serde_json::{json, Value};

fn nilrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilrep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str], status: i32) -> Value {
    let out = nilrep(args);
    assert_eq!(
        out.status.code(),
        Some(status),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn table_file(value: &Value) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{}", value).unwrap();
    f
}

fn tables_json(n: usize, p: &str) -> Value {
    let rep = build_rep(n, &Polynomial::parse(p, n).unwrap()).unwrap();
    let t = rep.tables();
    let mut pij = serde_json::Map::new();
    let mut qi = serde_json::Map::new();
    for i in 1..=n {
        for j in 1..=n {
            pij.insert(format!("{},{}", i, j), json!(t.p(i, j).to_string()));
        }
        qi.insert(i.to_string(), json!(t.q(i).to_string()));
    }
    json!({ "n": n, "pij": pij, "qi": qi })
}

#[test]
fn verify_golden() {
    let out = nilrep(&["verify", "--n", "2", "--p", "x1^2*x2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "{\"failures\":[],\"n\":2,\"p\":\"x1^2*x2\",\"pairs_checked\":28}\n"
    );
}

#[test]
fn verify_with_jobs() {
    let v = run_json(&["verify", "--n", "3", "--p", "x1*x3 - 1/2", "--jobs", "2"], 0);
    assert_eq!(v["pairs_checked"], 105);
    assert_eq!(v["failures"], json!([]));
}

#[test]
fn act_golden() {
    let v = run_json(&["act", "--n", "2", "--p", "x1", "--element", "e(3,1)", "--on", "x1"], 0);
    assert_eq!(
        v,
        json!({"element": "e(3,1)", "n": 2, "on": "x1", "p": "x1", "result": "-x1^2 - 2*x1"})
    );
}

#[test]
fn cg_golden() {
    let out = nilrep(&["cg", "--k", "1", "--m", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{\"components\":[2,0]}\n");
    let v = run_json(&["cg", "--k", "2", "--m", "3"], 0);
    assert_eq!(v["components"], json!([5, 3, 1]));
}

#[test]
fn simplicity_reports_boundary() {
    let v = run_json(&["simplicity", "--n", "2", "--p", "x1 - 2/3"], 0);
    assert_eq!(v["oracle_min_degree"], 2);
    assert_eq!(v["predicted"], json!({"form": "reducible_at", "k": 1}));
    assert_eq!(v["agreement"], true);
    assert_eq!(v["quotient"]["dim"], 3);
    let kinds: Vec<_> = v["notes"].as_array().unwrap().iter().map(|n| n["kind"].clone()).collect();
    assert_eq!(kinds, [json!("submodule_index"), json!("quotient_dimension"), json!("highest_weight")]);

    let v = run_json(&["simplicity", "--n", "2", "--p", "x1 + x2^2 + 1", "--bound", "5"], 0);
    assert_eq!(v["oracle_min_degree"], Value::Null);
    assert_eq!(v["search_bound"], 5);
    assert_eq!(v["predicted"]["form"], "simple");
}

#[test]
fn classify_round_trip() {
    for (n, p) in [(1, "x1^3 - 2"), (2, "x1*x2 + 1/3"), (3, "x2^2 - x3")] {
        let f = table_file(&tables_json(n, p));
        let v = run_json(&["classify", "--input", f.path().to_str().unwrap()], 0);
        assert_eq!(v, json!({"n": n, "p": p}));
    }
}

#[test]
fn classify_inconsistent_tables() {
    let mut t = tables_json(2, "x1");
    t["qi"]["1"] = json!("x1^2");
    let f = table_file(&t);
    let v = run_json(&["classify", "--input", f.path().to_str().unwrap()], 1);
    assert!(v["inconsistency"].is_object());
}

#[test]
fn classify_bad_files() {
    let mut missing = tables_json(2, "x1");
    missing["pij"].as_object_mut().unwrap().remove("1,2");
    let mut extra = tables_json(1, "x1");
    extra["pij"]["1,2"] = json!("0");
    let mut unknown = tables_json(1, "x1");
    unknown["extra"] = json!(1);
    for t in [missing, extra, unknown] {
        let f = table_file(&t);
        let out = nilrep(&["classify", "--input", f.path().to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2));
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    let out = nilrep(&["classify", "--input", "/nonexistent/tables.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sl2_sequence_outputs() {
    let v = run_json(&["sl2-sequence", "--p", "x1 - 2"], 0);
    assert_eq!(v["applicable"], true);
    assert_eq!(v["k"], 3);
    assert_eq!(v["sub_parameter"], "x1 + 4");
    assert_eq!(v["quotient_dim"], 3);
    assert_eq!(v["intertwiner_ok"], true);

    let v = run_json(&["sl2-sequence", "--p", "x1 + 1/2"], 0);
    assert_eq!(v, json!({"applicable": false, "p": "x1 + 1/2"}));
}

#[test]
fn tensor_split_outputs() {
    let v = run_json(&["tensor-split", "--p", "x1^2 + 1/2"], 0);
    let checks = v["checks"].as_object().unwrap();
    for key in ["h_phi", "y_phi", "h_psi", "y_psi", "relation"] {
        assert_eq!(checks[key], true, "{}", key);
    }

    let v = run_json(&["tensor-split", "--p", "x1 + 1"], 1);
    assert_eq!(v["failure"], "degenerate_split");
    assert_eq!(v["relation"], true);
}

#[test]
fn tensor_decompose_outputs() {
    let v = run_json(&["tensor-decompose", "--p", "x1 + 1/2", "--k", "1"], 0);
    assert_eq!(v["certified_up_to_degree"], 8);
    assert_eq!(v["summands"][1], json!({"generator": ["1/2", "1"], "shift": -1}));

    let v = run_json(&["tensor-decompose", "--p", "x1^2 - 1/3", "--k", "3"], 0);
    let shifts: Vec<_> = v["summands"].as_array().unwrap().iter().map(|s| s["shift"].clone()).collect();
    assert_eq!(shifts, [json!(3), json!(1), json!(-1), json!(-3)]);

    let v = run_json(&["tensor-decompose", "--p", "x1 + 1", "--k", "1"], 1);
    assert_eq!(v["failure"], "rank_drop");

    let v = run_json(&["tensor-decompose", "--p", "x1", "--k", "2", "--degree", "1"], 1);
    assert_eq!(v["failure"], "truncation_too_small");
}

#[test]
fn usage_errors() {
    let cases: &[&[&str]] = &[
        &[],
        &["verify", "--n", "2"],
        &["verify", "--n", "two", "--p", "x1"],
        &["verify", "--n", "2", "--p", "x1 +"],
        &["verify", "--n", "2", "--p", "x3"],
        &["verify", "--n", "0", "--p", "1"],
        &["act", "--n", "2", "--p", "x1", "--element", "e(1,1)", "--on", "1"],
        &["act", "--n", "2", "--p", "x1", "--element", "h(4)", "--on", "1"],
        &["cg", "--k", "1"],
        &["unknown"],
    ];
    for args in cases {
        let out = nilrep(args);
        assert_eq!(out.status.code(), Some(2), "{:?}", args);
        assert!(out.stdout.is_empty(), "{:?}", args);
    }
}

#[test]
fn negative_parameters_parse() {
    let v = run_json(&["act", "--n", "1", "--p", "-3", "--element", "h(1)", "--on", "-x1"], 0);
    assert_eq!(v["p"], "-3");
    assert_eq!(v["on"], "-x1");
}

#[test]
fn pretty_is_same_value() {
    let args = ["tensor-decompose", "--p", "x1^2 + 2", "--k", "2"];
    let plain = nilrep(&args);
    let mut pretty_args = args.to_vec();
    pretty_args.push("--pretty");
    let pretty = nilrep(&pretty_args);
    assert!(String::from_utf8_lossy(&pretty.stdout).contains("\n  "));
    let a: Value = serde_json::from_slice(&plain.stdout).unwrap();
    let b: Value = serde_json::from_slice(&pretty.stdout).unwrap();
    assert_eq!(a, b);
}

#[test]
fn output_is_deterministic() {
    let args = ["simplicity", "--n", "3", "--p", "x1*x2 - 3/2"];
    let first = nilrep(&args).stdout;
    for _ in 0..3 {
        assert_eq!(nilrep(&args).stdout, first);
    }
}

fn strings(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::String(s) => out.push(s.clone()),
        Value::Array(a) => a.iter().for_each(|x| strings(x, out)),
        Value::Object(o) => o.values().for_each(|x| strings(x, out)),
        _ => {}
    }
}

#[test]
fn emitted_polynomials_reparse() {
    let cases: &[(&[&str], usize)] = &[
        (&["act", "--n", "3", "--p", "x1*x2 - 1/4*x3^2", "--element", "e(4,2)", "--on", "x2^2 + x1"], 3),
        (&["tensor-decompose", "--p", "x1^3 - 2*x1 + 1/5", "--k", "2"], 1),
        (&["tensor-split", "--p", "2*x1^2 - 1/2"], 1),
    ];
    for (args, n) in cases {
        let v = run_json(args, 0);
        let mut found = Vec::new();
        strings(&v, &mut found);
        for s in found.iter().filter(|s| !s.starts_with("e(") && !s.starts_with("h(")) {
            let p = Polynomial::parse(s, *n).unwrap_or_else(|e| panic!("{:?}: {}", s, e));
            assert_eq!(&p.to_string(), s);
        }
    }
}
