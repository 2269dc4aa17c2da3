use std::path::Path;
use std::process::{Command, Output};

use qkdiff_cli::doc::{parse_ratfn, SeriesDoc};
use qkdiff_core::rings::{Poly, RatFn, Rational};
use serde_json::Value;

fn qkdiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qkdiff"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn ratfn(num: &[i64], den: &[i64]) -> RatFn<Rational> {
    RatFn::new(Poly::from_ints(num), Poly::from_ints(den)).unwrap()
}

#[test]
fn point_series_document() {
    let out = qkdiff(&["generate", "point-j", "--qdeg", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = SeriesDoc::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    let coeffs: Vec<_> = doc.coeffs.iter().map(|c| parse_ratfn(c).unwrap()).collect();
    assert_eq!(
        coeffs,
        vec![ratfn(&[1, -1], &[1]), ratfn(&[1], &[1]), ratfn(&[1], &[1, 0, -1])]
    );
}

#[test]
fn fixed_point_component_document() {
    let out = qkdiff(&[
        "generate",
        "cpn-component",
        "--N",
        "1",
        "--i",
        "0",
        "--lambdas",
        "2,3",
        "--qdeg",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = SeriesDoc::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    // 1/(1 - (2/3)q) = 3/(3 - 2q)
    assert_eq!(parse_ratfn(&doc.coeffs[1]).unwrap(), ratfn(&[3], &[3, -2]));
    assert_eq!(doc.params.lambdas, vec!["2", "3"]);
}

#[test]
fn class_ring_documents_carry_components() {
    let out = qkdiff(&["generate", "cy-local", "--qdeg", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = SeriesDoc::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    let layer = doc.nilpotent.expect("nilpotent layer");
    assert_eq!(layer.var, "p");
    assert_eq!(layer.rel, vec!["0", "0", "1"]);
    // d = 1: (1 - q)/(1 - (1 + p)q)^2 = 1/(1 - q) + 2q/(1 - q)^2 p
    assert_eq!(parse_ratfn(&layer.components[1][0]).unwrap(), ratfn(&[1], &[1, -1]));
    assert_eq!(
        parse_ratfn(&layer.components[1][1]).unwrap(),
        ratfn(&[0, 2], &[1, -2, 1])
    );
}

#[test]
fn formal_bundle_parameter_is_nested() {
    let out = qkdiff(&["generate", "bundle-ie", "--N", "1", "--l", "1,1", "--qdeg", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["params"]["lambda"], "formal");
    assert!(v["coeffs"][0]["num"][0].is_object());
}

#[test]
fn unknown_generator_is_a_usage_error() {
    let out = qkdiff(&["generate", "no-such-series"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn invalid_parameters_are_usage_errors() {
    for args in [
        &["generate", "cpn-component", "--N", "2", "--lambdas", "2,3"][..],
        &["generate", "cpn-component", "--lambdas", "2,2"],
        &["generate", "cpn-component", "--N", "1", "--i", "4"],
        &["generate", "bundle-ie", "--N", "1"],
        &["generate", "point-j", "--qdeg", "x"],
    ] {
        let out = qkdiff(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn euler_identity_passes() {
    let out = qkdiff(&["check", "euler-identity", "--qdeg", "8", "--json-only"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["truncations"]["qdeg"], 8);
}

#[test]
fn recursion_reports_the_coefficient() {
    let out = qkdiff(&[
        "check",
        "recursion",
        "--N",
        "1",
        "--lambdas",
        "2,3",
        "--i",
        "0",
        "--j",
        "1",
        "--m",
        "1",
        "--qdeg",
        "5",
        "--json-only",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["findings"]["C_01(1)"], "-1/2");
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn doctored_denominator_fails_condition_iii() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "bad.json",
        r#"{"schema_version":1,"generator":"custom","params":{"qdeg":1},
            "coeffs":[{"num":["1","-1"],"den":["1"]},{"num":["1"],"den":["-2","0","1"]}]}"#,
    );
    let out = qkdiff(&["check", "adelic-iii", "--input", &input, "--json-only"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"], "fail");
    assert!(v["witnesses"][0].as_str().unwrap().contains("d=1"));
    assert_eq!(v["params"]["qdeg"], 1);
}

#[test]
fn doctored_double_pole_fails_condition_ii() {
    let dir = tempfile::tempdir().unwrap();
    // point series with Q^1 coefficient 1/(1 + q)^2
    let input = write(
        dir.path(),
        "pole.json",
        r#"{"schema_version":1,"generator":"custom","params":{"qdeg":2},
            "coeffs":[{"num":["1","-1"],"den":["1"]},{"num":["1"],"den":["1","2","1"]},
                      {"num":["1"],"den":["1","0","-1"]}]}"#,
    );
    let out = qkdiff(&["check", "adelic-ii", "--input", &input, "--m", "2", "--json-only"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["witnesses"][0].as_str().unwrap().contains("m=2"));
}

#[test]
fn generated_documents_pass_the_adelic_checks() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("point.json");
    let path = path.to_str().unwrap();
    assert_eq!(
        qkdiff(&["generate", "point-j", "--qdeg", "4", "--out", path])
            .status
            .code(),
        Some(0)
    );
    for check in ["adelic-i", "adelic-ii", "adelic-iii"] {
        let out = qkdiff(&["check", check, "--input", path, "--json-only"]);
        assert_eq!(out.status.code(), Some(0), "{check}");
    }
    let out = qkdiff(&["check", "adelic-i", "--input", path, "--json-only"]);
    assert_eq!(json(&out)["findings"]["tau_4"], "1/16");
}

#[test]
fn specialized_characters_make_condition_ii_inapplicable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cpn.json");
    let path = path.to_str().unwrap();
    qkdiff(&[
        "generate",
        "cpn-component",
        "--lambdas",
        "2,3",
        "--qdeg",
        "2",
        "--out",
        path,
    ]);
    let out = qkdiff(&["check", "adelic-ii", "--input", path, "--json-only"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["verdict"], "inapplicable");
    let out = qkdiff(&[
        "check",
        "adelic-ii",
        "--generator",
        "cpn-component",
        "--lambdas",
        "2,3",
        "--qdeg",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn every_named_check_runs() {
    for check in [
        "lemma-gamma",
        "proposition-flow",
        "theorem-closure",
        "cor1-fixedpoint",
        "cy-example",
        "ci-small-j",
        "two-route",
    ] {
        let out = qkdiff(&["check", check, "--qdeg", "3", "--json-only"]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{check}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
    }
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        qkdiff(&[
            "generate",
            "cpn-pform",
            "--N",
            "2",
            "--qdeg",
            "2",
            "--out",
            p.to_str().unwrap(),
        ]);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let c1 = qkdiff(&["check", "cy-example", "--json-only"]);
    let c2 = qkdiff(&["check", "cy-example", "--json-only"]);
    assert_eq!(c1.stdout, c2.stdout);
}

#[test]
fn timing_is_opt_in() {
    let plain = json(&qkdiff(&["check", "euler-identity", "--json-only"]));
    assert!(plain.get("timing_ms").is_none());
    let timed = json(&qkdiff(&["check", "euler-identity", "--json-only", "--timing"]));
    assert!(timed["timing_ms"].is_u64());
}

#[test]
fn desk_suite_passes() {
    let out = qkdiff(&["report", "--suite", "desk", "--json-only"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "pass");
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 12);
    assert!(checks.iter().all(|c| c["verdict"] == "pass"));
}

#[test]
fn desk_suite_human_text() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("desk.json");
    let out = qkdiff(&["report", "--suite", "desk", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("12 of 12 checks pass"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["suite"], "desk");
}

#[test]
fn unknown_suite_is_a_usage_error() {
    assert_eq!(qkdiff(&["report", "--suite", "nightly"]).status.code(), Some(2));
}
