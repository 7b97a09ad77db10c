use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn vgwe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vgwe"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gwe_top_rank_is_a_single_monomial() {
    let o = vgwe(&["gwe", "--n", "2", "--q", "3", "--r", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["variable"], "Z");
    assert_eq!(v["terms"][0]["degree"], 13);
    assert_eq!(v["terms"][0]["coefficient"], "1");
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);
}

#[test]
fn counts_only_lists_class_sizes() {
    let o = vgwe(&["catalog", "--q", "2", "--counts-only"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["M1a"], 15);
    assert_eq!(v["M2a"], 105);
    assert_eq!(v["M3a"], 35);
}

#[test]
fn budget_refusals_exit_with_2() {
    assert_eq!(vgwe(&["points", "--q", "5"]).status.code(), Some(2));
    assert_eq!(vgwe(&["oracle", "--q", "3"]).status.code(), Some(2));
    assert_eq!(vgwe(&["verify", "--q", "2"]).status.code(), Some(2));
    assert_eq!(vgwe(&["closed-form", "--n", "2"]).status.code(), Some(2));
    assert_eq!(vgwe(&["points", "--q", "4"]).status.code(), Some(2));
}

#[test]
fn oracle_suite_at_q2_passes() {
    let o = vgwe(&["verify", "--suite", "oracle", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks
        .iter()
        .any(|c| c["name"] == "catalog vs brute force, j <= 15" && c["status"] == "pass"));
    for c in checks {
        for key in ["name", "expected", "observed", "status"] {
            assert!(c.get(key).is_some());
        }
    }
}

#[test]
fn bji_csv_header_and_rows() {
    let o = vgwe(&["bji", "--n", "2", "--q", "3", "--format", "csv"]);
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("j,i,value,provenance"));
    assert!(s.contains("\n3,3,286,catalog\n"));
    assert_eq!(s.lines().count(), 1 + 14 * 6);
}

#[test]
fn warm_cache_gives_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["ewe", "--q", "2", "--cache", cache, "--format", "text"];
    let cold = vgwe(&args);
    let file = dir.path().join("catalog-n3-q2-v1.tsv");
    let content = fs::read_to_string(&file).unwrap();
    assert_eq!(content.lines().next(), Some("VGWE 1 n=3 q=2"));
    assert_eq!(content.lines().nth(1), Some("1\tM1a\t1\t1"));
    let warm = vgwe(&args);
    assert_eq!(cold.status.code(), Some(0));
    assert_eq!(stdout(&cold), stdout(&warm));
    let single = vgwe(&["ewe", "--q", "2", "--format", "text", "--threads", "1"]);
    assert_eq!(stdout(&cold), stdout(&single));
}

#[test]
fn stale_cache_header_is_rebuilt() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("catalog-n2-q3-v1.tsv");
    fs::write(&file, "VGWE 0 n=2 q=3\n").unwrap();
    let o = vgwe(&[
        "weights",
        "--n",
        "2",
        "--q",
        "3",
        "--cache",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(fs::read_to_string(&file)
        .unwrap()
        .starts_with("VGWE 1 n=2 q=3\n"));
}

#[test]
fn out_flag_and_export_format() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("export.tsv");
    let o = vgwe(&[
        "export",
        "--n",
        "2",
        "--q",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let s = fs::read_to_string(&out).unwrap();
    for line in s.lines() {
        let f: Vec<&str> = line.split('\t').collect();
        assert_eq!(f.len(), 4);
        let mask = u64::from_str_radix(f[2], 16).unwrap();
        assert_eq!(mask.count_ones().to_string(), f[3]);
    }
}

#[test]
fn closed_form_marks_printed_deltas() {
    let o = vgwe(&["closed-form", "--format", "csv"]);
    let s = stdout(&o);
    assert!(s.starts_with("j,i,itemized,printed,delta\n"));
    assert!(s.contains("\n4,3,130,130,0\n"));
    assert!(s.contains("\n8,7,9413820,9413820,0\n"));
    let deltas = s.lines().skip(1).filter(|l| !l.ends_with(",0")).count();
    assert_eq!(deltas, 8);
}

#[test]
fn full_pg33_examples_with_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let o = vgwe(&["catalog", "--q", "3", "--counts-only", "--cache", cache]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["M6a"], 40);
    assert_eq!(v["M9b"], 10530);
    let o = vgwe(&[
        "gwe", "--n", "3", "--q", "3", "--r", "10", "--cache", cache, "--format", "text",
    ]);
    assert_eq!(stdout(&o), "Z^40\n");
    let o = vgwe(&["verify", "--suite", "paper", "--cache", cache]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["summary"]["flagged"], 16);
}
