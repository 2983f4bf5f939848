//! Exit codes and output of the `fano-wci` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_fano-wci"));
    c.env_remove("FANO_WCI_CATALOG");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn shipped_text() -> String {
    fano_wci::Catalog::shipped().to_json()
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("fano-wci-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn shipped_catalog_verifies() {
    let o = run(&["verify-tables"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn injected_fault_names_the_family() {
    let text = shipped_text().replacen("\"a_cube\":\"2/3\"", "\"a_cube\":\"1/2\"", 1);
    let path = write_temp("fault.json", &text);
    let o = run(&["verify-tables", "--catalog", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("family 19"), "{out}");
    assert!(!out.contains("family 17"), "{out}");

    let o = bin()
        .env("FANO_WCI_CATALOG", &path)
        .arg("verify-tables")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn io_and_usage_errors() {
    assert_eq!(
        run(&["verify-tables", "--catalog", "/nonexistent/catalog.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["analyze", "--family", "99"]).status.code(), Some(2));
    assert_eq!(run(&["analyze"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let path = write_temp("broken.json", "[{\"id\": 17,");
    assert_eq!(
        run(&["verify-tables", "--catalog", path.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    std::fs::remove_file(path).unwrap();
}

#[test]
fn analyze_family_50() {
    let o = run(&["analyze", "--family", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("A^3 = 7/60"));
    assert_eq!(out.lines().filter(|l| l.starts_with("| p")).count(), 4);
    assert_eq!(out, stdout(&run(&["analyze", "--family", "50"])));
}

#[test]
fn analyze_family_19_lists_both_branches() {
    let out = stdout(&run(&["analyze", "--family", "19"]));
    assert!(out.contains("EI (not-exists-wci(1,1,2))"), "{out}");
    assert!(out.contains("II (exists-wci(1,1,2))"), "{out}");
}

#[test]
fn json_output_carries_catalog_records() {
    let out = stdout(&run(&["analyze", "--family", "23", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let entries = fano_wci::catalog::parse_entries(&v["catalog"].to_string()).unwrap();
    assert_eq!(entries.len(), 2);
    assert!(out.contains("\"status\": \"all-centers-resolved\""));
}

#[test]
fn links_and_basket() {
    let out = stdout(&run(&["links", "--family", "30"]));
    assert!(out.contains("p2 [monomial-present(y^2 z)]: QI"), "{out}");
    assert!(out.contains("p2 [monomial-absent(y^2 z)]: none"), "{out}");
    let out = stdout(&run(&["basket", "--family", "29"]));
    assert_eq!(out, "p2p4 = 3 × 1/2(1,1,1)\np4 = cAx/2\n");
}
