use std::path::PathBuf;
use std::process::{Command, Output};

use gschow::chow_ring::{rewrite_to_nd, ChowRing};
use gschow::degree::{pairing, total_degree, DivisorFunction};
use gschow::fourier::{fourier_degree, parse_word};
use gschow::graph_complex::ProductComplex;
use gschow_cli::input::{format_product_polynomial, load_product, parse_product_polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn gschow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gschow")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8")
}

/// Runs with `--json`, expects success and returns the parsed report.
fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = gschow(&all);
    assert!(o.status.success(), "{args:?} failed: {}", stderr(&o));
    serde_json::from_str(&stdout(&o)).expect("valid JSON")
}

fn path(name: &str) -> String {
    data(name).display().to_string()
}

fn complex(name: &str) -> ProductComplex {
    load_product(&data(name)).expect("fixture loads")
}

#[test]
fn deg_of_top_power_on_square() {
    let v = json(&["deg", "--product", &path("k2xk2.json"), "--expr", "C(0,0)^3"]);
    assert_eq!(v["degree"], 1);
}

#[test]
fn text_output_is_key_value_lines() {
    let o = gschow(&["deg", "--product", &path("k2xk2.json"), "--expr", "C(0,0)^3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "degree: 1\n");
}

#[test]
fn deg_matches_library() {
    let c = complex("k2xk3.json");
    for expr in ["C(0,0)*C(0,1)*C(1,1)", "2*C(1,2)^3 - C(0,0)^2*C(1,0)", "C(0,1)^2*C(1,2) + C(1,1)^3"] {
        let want = total_degree(&c, &parse_product_polynomial(&c, expr).expect("parses")).expect("degree");
        let got = json(&["deg", "--product", &path("k2xk3.json"), "--expr", expr]);
        assert_eq!(got["degree"].to_string(), want.to_string(), "{expr}");
    }
}

#[test]
fn basis_piece_ranks() {
    let v = json(&["basis", "--product", &path("k2xk2.json"), "--k", "2"]);
    assert_eq!(v["pieces"][0]["rank"], 1);
    let all = json(&["basis", "--product", &path("k2xk3.json")]);
    let ring = ChowRing::new(complex("k2xk3.json"));
    for (k, piece) in all["pieces"].as_array().expect("pieces").iter().enumerate() {
        let pres = ring.presentation(k).expect("presentation");
        assert_eq!(piece["rank"], pres.rank(), "k = {k}");
    }
}

#[test]
fn basis_rejects_large_k() {
    let o = gschow(&["basis", "--product", &path("k2xk2.json"), "--k", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("domain error:"), "{}", stderr(&o));
}

#[test]
fn reduce_matches_library() {
    let c = complex("k2xk2.json");
    let expr = "C(0,0)^2*C(1,1) + 3*C(0,1)*C(1,1)^2";
    let p = parse_product_polynomial(&c, expr).expect("parses");
    let rw = rewrite_to_nd(&c, &p).expect("rewrites");
    let v = json(&["reduce", "--product", &path("k2xk2.json"), "--expr", expr, "--certificate"]);
    assert_eq!(v["nd_part"], format_product_polynomial(&c, &rw.nd_part));
    assert_eq!(v["certificate"].as_array().expect("certificate").len(), rw.certificate.len());
    let zero = json(&["reduce", "--product", &path("k2xk2.json"), "--expr", "C(0,0)*C(1,1) - C(0,0)*C(1,1)"]);
    assert_eq!(zero["class_is_zero"], true);
}

#[test]
fn restrict_then_glue_round_trips() {
    let expr = "C(0,0)*C(1,1)*C(0,2) + 2*C(1,2)^3";
    let v = json(&["restrict", "--product", &path("k2xk3.json"), "--expr", expr]);
    let dir = tempfile::tempdir().expect("tempdir");
    let tuple = dir.path().join("tuple.json");
    std::fs::write(&tuple, serde_json::to_string(&v).expect("serializes")).expect("write");
    let glued = json(&["glue", "--product", &path("k2xk3.json"), "--tuple", &tuple.display().to_string()]);
    let c = complex("k2xk3.json");
    let ring = ChowRing::new(c.clone());
    let a = parse_product_polynomial(&c, expr).expect("parses");
    let b = parse_product_polynomial(&c, glued["glued"].as_str().expect("string")).expect("parses");
    assert_eq!(ring.class_in_degree(&a, 3).expect("class"), ring.class_in_degree(&b, 3).expect("class"));
}

#[test]
fn pairing_matches_library() {
    let c = complex("k3.json");
    let v = json(&["pairing", "--product", &path("k3.json"), "--functions", &path("k3_functions.json")]);
    let f = |pairs: &[(usize, i64, i64)]| -> DivisorFunction {
        pairs.iter().map(|&(i, n, d)| (c.vertices()[i], BigRational::new(BigInt::from(n), BigInt::from(d)))).collect()
    };
    let want = pairing(&c, &[f(&[(0, 1, 1), (1, 1, 2)]), f(&[(1, 2, 1), (2, -1, 1)])]).expect("pairing");
    let got = match &v["pairing"] {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    assert_eq!(got, want.to_string());
}

#[test]
fn fourier_subcommands() {
    let v = json(&["fourier", "deg", "111", "100", "010", "001"]);
    assert_eq!(v["degree"], -64);
    let ws: Vec<_> = ["111", "100", "010", "001"].iter().map(|w| parse_word(w).expect("word")).collect();
    assert_eq!(v["degree"].to_string(), fourier_degree(&ws).expect("degree").to_string());
    let z = json(&["fourier", "vanish", "00", "11", "11"]);
    assert_eq!(z["vanishes"], true);
    assert_eq!(z["any_partition"], true);
    let c = json(&["fourier", "convert", "--d", "1", "--from", "c", "--expr", "C(0)"]);
    assert_eq!(c["output"], "1/2*F(0) + 1/2*F(1)");
    let back = json(&["fourier", "convert", "--d", "1", "--from", "f", "--expr", "1/2*F(0) + 1/2*F(1)"]);
    assert_eq!(back["output"], "C(0)");
    assert_eq!(json(&["fourier", "check-relations", "--d", "2"])["failures"], Value::Array(vec![]));
    let iso = json(&["fourier", "check-iso", "--d", "2", "--degree", "2"]);
    assert_eq!(iso["degrees"][0]["equal_after_inverting_2"], true);
}

#[test]
fn fourier_rejects_mismatched_words() {
    let o = gschow(&["fourier", "deg", "00", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("domain error:"), "{}", stderr(&o));
}

#[test]
fn verify_suites_pass() {
    let v = json(&["verify", "--suite", "degree"]);
    assert_eq!(v["pass"], true);
    let all = json(&["verify", "--seed", "7"]);
    assert_eq!(all["suites"].as_array().expect("suites").len(), 6);
    assert_eq!(all["pass"], true);
}

#[test]
fn error_prefixes_and_exit_codes() {
    let k2 = path("k2xk2.json");
    let cases: [(&[&str], i32, &str); 5] = [
        (&["deg", "--product", "/nonexistent.json", "--expr", "C(0,0)^3"], 1, "io error:"),
        (&["deg", "--product", &k2, "--expr", "C(5,0)^3"], 1, "parse error:"),
        (&["deg", "--product", &k2, "--expr", "C(0,0)^"], 1, "parse error:"),
        (&["deg", "--product", &k2, "--expr", "C(0,0)^2"], 1, "domain error:"),
        (&["fourier", "check-relations", "--d", "9"], 1, "domain error:"),
    ];
    for (args, code, prefix) in cases {
        let o = gschow(args);
        assert_eq!(o.status.code(), Some(code), "{args:?}");
        assert!(stderr(&o).starts_with(prefix), "{args:?}: {}", stderr(&o));
    }
    let dir = tempfile::tempdir().expect("tempdir");
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "[{\"vertices\": [0], \"edges\": 3}]").expect("write");
    let o = gschow(&["deg", "--product", &bad.display().to_string(), "--expr", "C(0)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("json error:"), "{}", stderr(&o));
    let usage = gschow(&["deg", "--product", &k2]);
    assert_eq!(usage.status.code(), Some(2));
    assert_eq!(gschow(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "verify", "--seed", "3"];
    let a = gschow(&args);
    let b = gschow(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let basis = ["--json", "basis", "--list", "--product"];
    let p = path("k2xk3.json");
    let (x, y) = (gschow(&[&basis[..], &[p.as_str()]].concat()), gschow(&[&basis[..], &[p.as_str()]].concat()));
    assert_eq!(x.stdout, y.stdout);
}
