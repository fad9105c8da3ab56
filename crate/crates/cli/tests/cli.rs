use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn khof(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_khof"))
        .args(args)
        .env_remove("KHOF_BUDGET")
        .env_remove("KHOF_THREADS")
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = khof(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn write_diagram(dir: &Path, name: &str, source: &[&str]) -> String {
    let mut args = vec!["diagram"];
    args.extend_from_slice(source);
    let out = khof(&args);
    assert!(out.status.success());
    let path = dir.join(format!("{name}.json"));
    std::fs::write(&path, &out.stdout).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn hopf_rank_is_four() {
    let dir = tempfile::tempdir().unwrap();
    let hopf = write_diagram(dir.path(), "hopf", &["named", "hopf+"]);
    let r = report(&["invariants", &hopf, "--kh", "--coeff", "f2"]);
    assert_eq!(r["results"]["kh_total_rank"], 4);
}

#[test]
fn unknot_jones_is_one() {
    let dir = tempfile::tempdir().unwrap();
    let unknot = write_diagram(dir.path(), "unknot", &["named", "unknot"]);
    let r = report(&["invariants", &unknot, "--jones"]);
    assert_eq!(r["results"]["jones"], "1");
}

#[test]
fn trefoil_integral_table() {
    let dir = tempfile::tempdir().unwrap();
    let t = write_diagram(dir.path(), "trefoil", &["named", "trefoil-left"]);
    let r = report(&["invariants", &t, "--kh", "--coeff", "z"]);
    let expected: Value =
        serde_json::from_str(r#"{"coeff":"Z","free":[[-3,-9,1],[-2,-5,1],[0,-3,1],[0,-1,1]],"torsion":[[-2,-7,2]]}"#)
            .unwrap();
    assert_eq!(r["results"]["kh"], expected);

    let csv = khof(&["invariants", &t, "--kh", "--coeff", "z", "--csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("table,h,q,rank,torsion\n"));
    assert!(text.contains("kh,-2,-7,,2\n"));
    assert!(text.contains("kh,-3,-9,1,\n"));
}

#[test]
fn reduced_homology_halves_and_basepoints() {
    let dir = tempfile::tempdir().unwrap();
    let l = write_diagram(dir.path(), "l4a1", &["named", "l4a1"]);
    let r = report(&["invariants", &l, "--kh", "--khr", "--internal"]);
    assert_eq!(r["checks"]["kh_is_twice_khr"], true);
    assert_eq!(r["results"]["khr"].as_array().unwrap().len(), 2);
    let bad = khof(&["invariants", &l, "--khr", "--basepoint", "5:0"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn luv_closed_form() {
    let r = report(&["family", "luv", "3", "-1"]);
    assert_eq!(r["results"]["jones"], "2 + t^2 + t^4");
    assert_eq!(r["checks"]["closed_form"], true);
}

#[test]
fn forest_formula() {
    let r = report(&["family", "forest", "1-2,2-3"]);
    assert_eq!(r["results"]["kh_total_rank"], 8);
    assert_eq!(r["checks"]["forest_formula"], true);
    let signed = report(&["family", "forest", "1-2:-,1-3,1-4:-"]);
    assert_eq!(signed["checks"]["forest_formula_up_to_shift"], true);
    assert_eq!(signed["results"]["kh_total_rank"], 16);
}

#[test]
fn input_errors_exit_two() {
    let out = khof(&["family", "luv", "2", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad parameters"));
    assert!(out.stdout.is_empty());

    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{not json").unwrap();
    assert_eq!(khof(&["invariants", junk.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(khof(&["family", "forest", "1-2,2-3,3-1"]).status.code(), Some(2));
    assert_eq!(khof(&["raag", "4", "reduce", "g9"]).status.code(), Some(2));
}

#[test]
fn budgets_exit_three() {
    let out = khof(&["--budget", "4", "family", "luv", "3", "-2", "--kh"]);
    assert_eq!(out.status.code(), Some(3));
    let env = Command::new(env!("CARGO_BIN_EXE_khof"))
        .args(["family", "luv", "3", "-2", "--kh"])
        .env("KHOF_BUDGET", "4")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(3));
}

#[test]
fn detect_forest_link() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_diagram(dir.path(), "forest", &["forest", "1-2,2-3"]);
    let r = report(&["detect", &f, "--sublinks"]);
    assert_eq!(r["results"]["classification"]["kind"], "ForestOfUnknots");
    assert_eq!(r["checks"]["sublink_minimal_rank"], true);

    let l = write_diagram(dir.path(), "l4a1", &["named", "l4a1"]);
    let r = report(&["detect", &l]);
    assert_eq!(r["results"]["classification"]["kind"], "NotMinimalRank");
}

#[test]
fn raag_commands() {
    assert_eq!(report(&["raag", "4", "equal", "g1,g2", "g2,g1"])["results"]["equal"], true);
    assert_eq!(report(&["raag", "4", "equal", "g1,g3", "g3,g1"])["results"]["equal"], false);
    assert_eq!(report(&["raag", "4", "reduce", "g1,g2,g2^-1,g3"])["results"]["normal_form"], "g1,g3");
    let s = report(&["raag", "4", "solve", "g1,g4,g2", "g1,g4,g3^-1"]);
    assert_eq!(s["results"]["solution"], true);
    assert_eq!(s["results"]["decomposition"]["k"], 1);
    let s = report(&["raag", "4", "solve", "g3", ""]);
    assert_eq!(s["results"]["solution"], false);
    assert_eq!(khof(&["raag", "3", "solve", "g1", "g2"]).status.code(), Some(2));
}

#[test]
fn alexander_of_one_strand_braid() {
    let r = report(&["alexander", "2", "1"]);
    assert_eq!(r["results"]["alexander"], "x + y");
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let t = write_diagram(dir.path(), "t", &["named", "trefoil-right"]);
    for args in [
        vec!["invariants", t.as_str(), "--kh", "--khr", "--jones", "--internal", "--coeff", "z"],
        vec!["family", "forest", "1-2,2-3,2-4"],
        vec!["raag", "5", "reduce", "g5,g1,g4"],
    ] {
        let mut a = report(&args);
        let mut b = report(&args);
        a["elapsed_ms"] = Value::Null;
        b["elapsed_ms"] = Value::Null;
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

#[test]
fn failing_check_exits_one() {
    // L4a1 is a two-component diagram whose components are unknots, so the
    // union check passes, while the forest sublink check must fail
    let dir = tempfile::tempdir().unwrap();
    let l = write_diagram(dir.path(), "l4a1", &["named", "l4a1"]);
    let out = khof(&["detect", &l, "--sublinks"]);
    assert_eq!(out.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["checks"]["sublink_minimal_rank"], false);

    let h = write_diagram(dir.path(), "hopf", &["named", "hopf-"]);
    let u = report(&["invariants", &l, "--union", &h]);
    assert_eq!(u["checks"]["kunneth_rank"], true);
    assert_eq!(u["results"]["kh_total_rank"], 32);
}
