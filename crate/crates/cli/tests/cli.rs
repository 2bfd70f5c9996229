use std::fs;
use std::path::PathBuf;

use lefschetz_cli::cli_main;
use serde_json::Value;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lefschetz-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> i32 {
    let mut v = vec!["lefschetz"];
    v.extend_from_slice(args);
    cli_main(v)
}

fn run_json(args: &[&str], out: &str) -> (i32, Value) {
    let path = scratch(out);
    let mut v = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    v.extend_from_slice(&["--out", &p]);
    let code = run(&v);
    let text = fs::read_to_string(&path).unwrap_or_else(|_| "null".into());
    (code, serde_json::from_str(&text).unwrap())
}

fn exception_file() -> String {
    let path = scratch("exception.txt");
    fs::write(&path, "domain: GF(2)\nx^(3) + y*z*w\n").unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn exhaust_binary_ternary() {
    let csv = scratch("bins.csv");
    let (code, r) = run_json(
        &["exhaust", "--p", "2", "--d", "3", "--csv", csv.to_str().unwrap()],
        "r.json",
    );
    assert_eq!(code, 0);
    assert_eq!(r["total"], 1023);
    let sum: u64 = r["bins"].as_array().unwrap().iter().map(|b| b["count"].as_u64().unwrap()).sum();
    assert_eq!(sum, 1023);
    assert!(fs::read_to_string(csv).unwrap().starts_with("embdim,gammaZero,wlp,count"));
}

#[test]
fn exhaust_over_budget_needs_force() {
    assert_eq!(run(&["exhaust", "--p", "3", "--d", "4"]), 1);
}

#[test]
fn verify_all_passes() {
    let (code, r) = run_json(&["verify", "--suite", "all"], "verify.json");
    assert_eq!(code, 0);
    assert_eq!(r["failed"], 0);
    assert!(r["total"].as_u64().unwrap() >= 60);
    let (code, r) = run_json(&["verify", "--id", "G4_SQ"], "one.json");
    assert_eq!((code, r["total"].as_u64()), (0, Some(1)));
    assert_eq!(run(&["verify", "--id", "NOPE"]), 1);
    assert_eq!(run(&["verify", "--suite", "bogus"]), 1);
}

#[test]
fn classify_exception() {
    let f = exception_file();
    let (code, r) = run_json(&["classify", "--phi", &f], "classify.json");
    assert_eq!(code, 0);
    assert_eq!(r["isException"], true);
    assert_eq!(r["gammaZero"], true);
    assert_eq!(r["hilbert"], serde_json::json!([1, 4, 4, 1]));
    let (_, r) = run_json(&["classify", "--phi", &f, "--domain", "GF(5)"], "classify5.json");
    assert_eq!(r["isException"], false);
}

#[test]
fn wlp_and_gamma() {
    let f = exception_file();
    let (_, r) = run_json(&["wlp", "--phi", &f], "wlp.json");
    assert_eq!(r["witness"], "NONE");
    let (_, r) = run_json(&["wlp", "--phi", &f, "--domain", "GF(5)"], "wlp5.json");
    assert_ne!(r["witness"], "NONE");
    assert_eq!(r["ranks"], serde_json::json!([1, 4, 1]));

    let (_, r) = run_json(&["gamma", "--phi", &f], "gamma.json");
    let v = r["vector"].as_array().unwrap();
    assert_eq!(v.len(), 35);
    assert!(v.iter().all(|e| e["value"] == "0"));
    let (_, r) = run_json(&["gamma", "--phi", &f, "--domain", "Q", "--monomial", "1,1,1,1"], "gm.json");
    assert!(r["value"].is_string());
    let (_, r) = run_json(&["gamma", "--phi", &f, "--ell", "x+y"], "gl.json");
    assert_eq!(r["value"], "0");
}

#[test]
fn normal_form_and_orbit() {
    let f = exception_file();
    let (code, r) = run_json(&["normal-form", "--phi", &f], "nf.json");
    assert_eq!(code, 0);
    assert!(r["form"].is_string());
    let (code, r) = run_json(&["orbit", "--phi", &f, "--jobs", "1"], "orbit.json");
    assert_eq!(code, 0);
    assert_eq!(r["group"], "20160");
    assert_eq!(20160 % r["size"].as_u64().unwrap(), 0);
}

#[test]
fn agree_is_seeded() {
    let (code, a) = run_json(&["agree", "--q", "5", "--d", "3", "--samples", "300", "--seed", "9"], "a1.json");
    let (_, b) = run_json(&["agree", "--q", "5", "--d", "3", "--samples", "300", "--seed", "9", "--jobs", "1"], "a2.json");
    assert_eq!(code, 0);
    assert_eq!(a, b);
    assert_eq!(a["agreements"], 300);
}

#[test]
fn usage_errors_exit_nonzero() {
    assert_eq!(run(&[]), 2);
    assert_eq!(run(&["frobnicate"]), 2);
    assert_eq!(run(&["classify"]), 2);
    assert_eq!(run(&["classify", "--phi", "/nonexistent/phi.txt"]), 1);
}
