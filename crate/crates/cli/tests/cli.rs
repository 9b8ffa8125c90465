use std::path::Path;
use std::process::{Command, Output};

use cmzv_core::fcv::fermat_quotient;
use serde_json::Value;

fn cmzv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmzv")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn fcv_depth_one_is_fermat_quotient() {
    let o = cmzv(&["fcv", "--level", "4", "--word", "y(1,2)"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    let primes = v["primes"].as_array().unwrap();
    assert_eq!(primes.last().unwrap(), 1019);
    for (p, red) in primes.iter().zip(v["reduced"].as_array().unwrap()) {
        let p = p.as_u64().unwrap();
        let expect = (p - 2 * fermat_quotient(p).unwrap() % p) % p;
        assert_eq!(red[0].as_u64().unwrap(), expect, "p = {p}");
        assert_eq!(red[1].as_u64().unwrap(), 0);
    }
}

#[test]
fn fcv_homogeneous_vanishes_away_from_p_minus_one_dividing_weight() {
    let v = json(&cmzv(&["fcv", "--level", "3", "--word", "y(2,0)y(2,0)"]));
    for (p, red) in v["primes"].as_array().unwrap().iter().zip(v["reduced"].as_array().unwrap()) {
        let zero = red.as_array().unwrap().iter().all(|c| c == 0);
        // Σ k^{-4} ≢ 0 mod 5, so the weight-4 value survives at p = 5.
        assert_eq!(zero, p != 5, "p = {p}");
    }
}

#[test]
fn prime_range_at_level_five() {
    let v = json(&cmzv(&["fcv", "--level", "5", "--word", "y(1,1)", "--primes", "2..100"]));
    assert_eq!(v["primes"], serde_json::json!([19, 29, 59, 79, 89]));
}

#[test]
fn parse_error_names_token() {
    let o = cmzv(&["fcv", "--level", "3", "--word", "y(2,0)y(2,x)"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("y(2,x)"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&cmzv(&["fcv", "--word", "y(1,1)"])), 1);
    assert_eq!(code(&cmzv(&["bound", "--level", "3", "--weight", "1", "--bogus"])), 1);
    assert_eq!(code(&cmzv(&["scv", "--level", "3", "--word", "y(1,1)", "--digits", "30", "--tolerance", "1e-25"])), 1);
    assert_eq!(code(&cmzv(&["--help"])), 0);
}

#[test]
fn bound_level_four_weight_one() {
    let o = cmzv(&["bound", "--level", "4", "--weight", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["dim_upper_bound"], 1);
}

#[test]
fn bound_is_byte_identical_across_thread_counts() {
    let a = cmzv(&["bound", "--level", "3", "--weight", "3", "--threads", "1"]);
    let b = cmzv(&["bound", "--level", "3", "--weight", "3", "--threads", "4"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let stages = json(&a)["stages"].as_array().unwrap().clone();
    let bounds: Vec<u64> = stages.iter().map(|s| s["dim_upper_bound"].as_u64().unwrap()).collect();
    assert_eq!(bounds, vec![1, 2, 4]);
}

#[test]
fn csv_export() {
    let o = cmzv(&["bound", "--level", "3", "--weight", "2", "--csv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("weight,columns,rows,rank,dim_upper_bound"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn identity_replay() {
    let o = cmzv(&["identities", "--id", "level3-weight2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let r = &v["identities"][0];
    assert_eq!(r["status"], "PASS");
    assert_eq!(r["fcv"]["exact"], true);
    assert!(!r["source"].as_str().unwrap().is_empty());

    let o = cmzv(&["identities", "--id", "level4-weight1"]);
    assert_eq!(code(&o), 2);
    let r = &json(&o)["identities"][0];
    assert_eq!(r["scv"]["offset_over_2pii"], serde_json::json!({"re": "0", "im": "3/2"}));

    assert_eq!(code(&cmzv(&["identities", "--id", "nonexistent"])), 1);
}

#[test]
fn verify_empty_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("empty.jsonl");
    std::fs::write(&f, "").unwrap();
    let o = cmzv(&["verify", "--file", f.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
}

#[test]
fn verify_reports_bad_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.jsonl");
    std::fs::write(&f, "\n{\"weight\": 1}\n").unwrap();
    let o = cmzv(&["verify", "--file", f.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

fn generated_relations(dir: &Path) -> String {
    let f = dir.join("rel.jsonl");
    let o = cmzv(&["bound", "--level", "4", "--weight", "2", "--relations", f.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    f.to_str().unwrap().to_string()
}

#[test]
fn generated_relations_verify_on_both_sides() {
    let dir = tempfile::tempdir().unwrap();
    let f = generated_relations(dir.path());
    let o = cmzv(&["verify", "--file", &f, "--dual", "--digits", "40"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(!lines.is_empty());
    for l in &lines {
        assert_eq!(l["fcv_verdict"], true);
        assert_eq!(l["scv_verdict"], true);
    }
}

#[test]
fn config_file_with_flags_winning() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "level = 3\nprimes = \"2..50\"\n").unwrap();
    let c = cfg.to_str().unwrap();
    let v = json(&cmzv(&["fcv", "--config", c, "--word", "y(1,1)"]));
    assert_eq!(v["N"], 3);
    assert_eq!(v["primes"], serde_json::json!([2, 5, 11, 17, 23, 29, 41, 47]));
    let v = json(&cmzv(&["fcv", "--config", c, "--level", "4", "--word", "y(1,1)"]));
    assert_eq!(v["N"], 4);
    assert_eq!(v["primes"], serde_json::json!([3, 7, 11, 19, 23, 31, 43, 47]));
    std::fs::write(&cfg, "level = 3\nunknown_key = 1\n").unwrap();
    assert_eq!(code(&cmzv(&["fcv", "--config", c, "--word", "y(1,1)"])), 1);
}

#[test]
fn associator_build_writes_cache() {
    let dir = tempfile::tempdir().unwrap();
    let o = cmzv(&[
        "associator-build",
        "--level",
        "3",
        "--max-weight",
        "3",
        "--digits",
        "30",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert!(Path::new(v["path"].as_str().unwrap()).exists());
    assert!(v["group_like_defect"].as_f64().unwrap() < 1e-15);
}

#[test]
fn scv_output_is_deterministic() {
    let a = cmzv(&["scv", "--level", "3", "--word", "y(1,1)y(1,0)", "--version", "shuffle", "--digits", "30"]);
    let b = cmzv(&["scv", "--level", "3", "--word", "y(1,1)y(1,0)", "--version", "shuffle", "--digits", "30"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["schema"], 1);
}
