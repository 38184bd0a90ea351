use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use superdirac_cli::{run, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas/v1")
}

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn call(args: &[&str]) -> Run {
    let mut argv = vec!["superdirac"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn call_json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--json", "--no-cache"]);
    let r = call(&full);
    assert!(r.err.is_empty(), "{args:?}: {}", r.err);
    (r.code, serde_json::from_str(&r.out).unwrap())
}

fn validate(schema: &str, value: &Value) {
    let text = std::fs::read_to_string(schema_dir().join(format!("{schema}.schema.json"))).unwrap();
    let schema_value: Value = serde_json::from_str(&text).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema_value).unwrap();
    let msgs: Vec<String> = match compiled.validate(value) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("{schema}: {msgs:?}");
}

#[test]
fn lift_ds_example() {
    let (code, v) = call_json(&["lift-ds", "--n", "2", "--param", "2,1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["lambda_prime"], "3/2,1/2");
    assert_eq!(v["parameter"]["parity"], "genuine");
    validate("lift-ds", &v);
}

#[test]
fn negative_coordinates_parse() {
    let (code, v) = call_json(&["lift-ds", "--param", "-2,3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["lambda_prime"], "-3/2,5/2");
    let (_, back) = call_json(&["lift-ds", "--param", "-3/2,5/2", "--inverse"]);
    assert_eq!(back["lambda_prime"], "-2,3");
}

#[test]
fn character_example() {
    let (code, v) = call_json(&["character", "--type", "osp", "--n", "1", "--hw", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["dimension"], "5");
    assert_eq!(v["terms"].as_array().unwrap().len(), 5);
    validate("character", &v);
}

#[test]
fn verify_all_passes() {
    let (code, v) = call_json(&["verify", "--suite", "all", "--n-max", "2", "--order", "12", "--jobs", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["failed"], 0);
    assert!(v["total"].as_u64().unwrap() > 50);
    validate("verify-report", &v);
}

#[test]
fn verify_named_suites() {
    for suite in ["denominator", "dirac-square", "transfer"] {
        let n_max = if suite == "denominator" { "4" } else { "2" };
        let (code, v) = call_json(&["verify", "--suite", suite, "--n-max", n_max]);
        assert_eq!(code, EXIT_OK, "{suite}");
        assert!(v["entries"].as_array().unwrap().iter().all(|e| e["suite"] == suite));
    }
}

#[test]
fn every_command_matches_its_schema() {
    let cases: &[(&str, &[&str])] = &[
        ("roots", &["roots", "--type", "osp", "--n", "3"]),
        ("character", &["character", "--type", "b", "--hw", "1,0"]),
        ("mult", &["mult", "--hw", "2,2"]),
        ("mult", &["mult", "--hw", "2,2", "--weight", "1,0"]),
        ("dim", &["dim", "--type", "b", "--hw", "2,1"]),
        ("transfer-factor", &["transfer-factor", "--n", "3", "--order", "10"]),
        ("transfer-factor", &["transfer-factor", "--n", "2", "--param", "5/2,1/2", "--k", "1"]),
        ("dirac-index", &["dirac-index", "--hw", "1,1", "--order", "8"]),
        ("dirac-index", &["dirac-index", "--n", "2", "--order", "6"]),
        ("lift", &["lift", "--param", "3,1"]),
        ("lift", &["lift", "--param", "5/2,1/2", "--direction", "inverse"]),
        ("lift-ds", &["lift-ds", "--param", "3,1,-2"]),
        ("dirac-square", &["dirac-square", "--n", "1"]),
        ("dirac-cohomology", &["dirac-cohomology", "--hw", "1", "--order", "8"]),
    ];
    for (schema, args) in cases {
        let (code, v) = call_json(args);
        assert_eq!(code, EXIT_OK, "{args:?}");
        validate(schema, &v);
    }
}

#[test]
fn multiplicity_lookup() {
    let (_, v) = call_json(&["mult", "--hw", "2,0", "--weight", "0,0"]);
    // V(2e₁) for B₂ is the 14-dimensional S²₀; the zero weight has multiplicity 2
    assert_eq!(v["multiplicity"], "2");
    let (_, d) = call_json(&["dim", "--type", "b", "--hw", "2,0"]);
    assert_eq!(d["dimension"], "14");
}

#[test]
fn identity_failure_exits_one() {
    let (code, v) = call_json(&["dirac-square", "--n", "1", "--koszul"]);
    assert_eq!(code, EXIT_FAILURE);
    assert_eq!(v["pass"], false);
    assert!(!v["square"]["residual_terms"].as_array().unwrap().is_empty());
}

#[test]
fn usage_errors_exit_two() {
    let bad: &[&[&str]] = &[
        &["lift-ds", "--param", "1,1/2"],
        &["lift-ds", "--param", "2,-2"],
        &["lift-ds", "--n", "3", "--param", "2,1"],
        &["lift", "--param", "3/2,1/2"],
        &["character", "--hw", "1/2"],
        &["character", "--hw", "1,1,1,1,1"],
        &["dirac-square", "--n", "3"],
        &["dirac-cohomology", "--n", "2", "--hw", "1"],
        &["verify", "--suite", "nonsense"],
        &["roots", "--type", "osp", "--n", "2", "--frobnicate"],
        &["transfer-factor", "--n", "1", "--order", "0"],
        &["unknown-command"],
    ];
    for args in bad {
        let r = call(args);
        assert_eq!(r.code, EXIT_USAGE, "{args:?}");
        assert!(r.out.is_empty(), "{args:?}");
        assert!(r.err.lines().count() <= 2 && r.err.contains("hint"), "{args:?}: {}", r.err);
    }
}

#[test]
fn help_documents_flags() {
    for (cmd, flags) in [
        ("character", &["--type", "--hw", "--n", "--json", "--no-cache"][..]),
        ("lift-ds", &["--param", "--inverse"]),
        ("verify", &["--suite", "--n-max", "--order", "--jobs"]),
        ("dirac-square", &["--n", "--koszul"]),
    ] {
        let r = call(&[cmd, "--help"]);
        assert_eq!(r.code, EXIT_OK);
        for f in flags {
            assert!(r.out.contains(f), "{cmd} --help lacks {f}");
        }
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["character", "--hw", "2,2", "--no-cache"][..],
        &["verify", "--suite", "characters,lifting", "--no-cache", "--jobs", "3"],
        &["dirac-cohomology", "--hw", "3", "--no-cache"],
    ] {
        let a = call(args);
        let b = call(args);
        assert_eq!(a.out, b.out);
        let mut json = args.to_vec();
        json.push("--json");
        assert_eq!(call(&json).out, call(&json).out);
    }
}

#[test]
fn cache_hits_match_recomputation() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    for args in [
        &["character", "--hw", "2,0", "--cache-dir", d][..],
        &["dirac-square", "--n", "1", "--cache-dir", d],
        &["dirac-cohomology", "--hw", "2", "--cache-dir", d],
        &["mult", "--hw", "1,1", "--cache-dir", d],
    ] {
        let first = call(args);
        let second = call(args);
        let mut fresh = args.to_vec();
        fresh.push("--no-cache");
        let third = call(&fresh);
        assert_eq!(first.out, second.out);
        assert_eq!(first.out, third.out);
    }
    assert!(std::fs::read_dir(dir.path()).unwrap().count() >= 4);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_superdirac");
    let ok = Command::new(bin).args(["lift-ds", "--param", "2,1", "--no-cache"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "(2,1) [integral] -> (3/2,1/2) [genuine]\n");
    let usage = Command::new(bin).args(["lift-ds", "--bogus"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let fail = Command::new(bin).args(["dirac-square", "--koszul", "--no-cache"]).output().unwrap();
    assert_eq!(fail.status.code(), Some(1));
}
