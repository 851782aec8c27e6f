use coxfold::cli::{run, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use coxfold::qseries::{QSeries, StatSeries};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["coxfold"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn series_both_sources_match() {
    let (code, out, _) = call(&["series", "--family", "Bn-A2n-1", "--n", "2", "--source", "both"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("match:      yes"), "{out}");
    assert_eq!(out.matches("1 + q + q^2 + 2q^3 + q^4 + q^5 + q^6").count(), 2);
}

#[test]
fn series_zero_truncation() {
    let (code, out, _) = call(&["series", "--family", "affA-affA", "--n", "2", "--m", "2", "--max-len", "0"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out.trim(), "1");
}

#[test]
fn series_json_round_trips() {
    let (code, out, _) = call(&["series", "--family", "affC-affC2n", "--n", "2", "--max-len", "12", "--format", "json"]);
    assert_eq!(code, EXIT_PASS);
    let s: QSeries = serde_json::from_str(&out).unwrap();
    assert_eq!(s.order(), Some(12));
    assert_eq!(s.coeffs().len(), 13);
    let (_, formula, _) = call(&[
        "series", "--family", "affC-affC2n", "--n", "2", "--max-len", "12", "--format", "json", "--source", "formula",
    ]);
    let f: QSeries = serde_json::from_str(&formula).unwrap();
    assert_eq!(s, f);
    assert_eq!(serde_json::to_string(&s).unwrap(), serde_json::to_string(&f).unwrap());
}

#[test]
fn series_csv() {
    let (code, out, _) = call(&["series", "--family", "I2-An", "--n", "3", "--format", "csv"]);
    assert_eq!(code, EXIT_PASS);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows[0], "degree,coefficient");
    assert_eq!(rows[4], "3,2");
}

#[test]
fn usage_errors() {
    assert_eq!(call(&["series", "--family", "affC-affC2n", "--n", "2"]).0, EXIT_USAGE);
    assert_eq!(call(&["series", "--family", "Bn-E8", "--n", "2"]).0, EXIT_USAGE);
    assert_eq!(call(&["series", "--n", "2"]).0, EXIT_USAGE);
    assert_eq!(call(&["verify", "--family", "Bn-A2n", "--n"]).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
}

#[test]
fn resource_limit_is_a_failure() {
    let (code, _, err) = call(&["series", "--family", "Bn-A2n", "--n", "4", "--budget", "10"]);
    assert_eq!(code, EXIT_FAIL);
    assert!(err.contains("resource limit"), "{err}");
}

#[test]
fn verify_literal_reading_fails() {
    let (code, out, _) = call(&["verify", "--family", "Thm1.5-literal", "--n", "2", "--m", "2"]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.contains("not a unit"), "{out}");
}

#[test]
fn verify_report_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let base = ["verify", "--family", "affC-affA2n", "--n", "2,3", "--format", "json"];
    let mut args = base.to_vec();
    args.extend(["--out", a.to_str().unwrap(), "--workers", "1"]);
    assert_eq!(call(&args).0, EXIT_PASS);
    let mut args = base.to_vec();
    args.extend(["--out", b.to_str().unwrap(), "--workers", "3"]);
    assert_eq!(call(&args).0, EXIT_PASS);
    let (ja, jb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ja, jb);
    let v: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(v["job"]["target"], "affC-affA2n");
    assert_eq!(v["cases"][0]["status"], "pass");
    assert_eq!(v["cases"][0]["L"], 14);
    assert!(v["cases"][0].get("millis").is_none());
}

#[test]
fn verify_with_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "--family", "affB-affD2n", "--n", "3", "--cache-dir", dir.path().to_str().unwrap()];
    assert_eq!(call(&args).0, EXIT_PASS);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let (code, out, _) = call(&args);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("1/1 cases passed"));
}

#[test]
fn reiner_command() {
    let (code, out, _) = call(&["reiner", "--type", "affC", "--n", "2", "--max-len", "3"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("match:      yes"));
    let (code, out, _) = call(&["reiner", "--type", "affC", "--n", "2", "--max-len", "0", "--format", "json"]);
    assert_eq!(code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let s: StatSeries = serde_json::from_value(v["formula"].clone()).unwrap();
    assert_eq!(s, StatSeries::one(0));
    assert_eq!(s.len(), 1);
}

#[test]
fn reiner_preview_matches_series() {
    let (_, out, _) = call(&["reiner", "--type", "affB", "--n", "3", "--max-len", "4", "--preview", "affB-affDn+1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let preview: QSeries = serde_json::from_value(v["unfolding"].clone()).unwrap();
    let (_, series, _) = call(&["series", "--family", "affB-affDn+1", "--n", "3", "--max-len", "4", "--format", "json"]);
    let brute: QSeries = serde_json::from_str(&series).unwrap();
    assert_eq!(preview, brute);
}

#[test]
fn bruhat_dot_small() {
    let (code, out, _) = call(&["bruhat-dot", "--group", "A1"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out.matches("[label=").count(), 2);
    assert_eq!(out.matches(" -> ").count(), 1);
    assert!(!out.contains("red"));
    let (code, _, err) = call(&["bruhat-dot", "--group", "A4", "--family", "Bn-A2n-1", "--n", "2"]);
    assert_eq!(code, EXIT_USAGE, "{err}");
}

#[test]
fn catalog_lists_every_formula() {
    let (code, out, _) = call(&["catalog", "--format", "json"]);
    assert_eq!(code, EXIT_PASS);
    let v: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
    assert_eq!(v.len(), 23);
    assert!(v.iter().any(|e| e["id"] == "Bott-affA" && e["kind"] == "series"));
}
