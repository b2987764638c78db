//! End-to-end CLI tests: golden outputs, exit codes, determinism, and cache
//! replay.

use std::path::Path;
use std::process::{Command, Output};

fn bnlab(args: &[&str], cache_dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bnlab"))
        .args(args)
        .env("BNLAB_CACHE", cache_dir)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> serde_json::Value {
    assert!(
        !out.stdout.is_empty(),
        "no stdout; stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn loci_genus_23_json() {
    let tmp = tempfile::tempdir().unwrap();
    let out = bnlab(&["loci", "--genus", "23", "--json"], tmp.path());
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["command"], "loci");
    assert_eq!(
        v["results"]["expected"],
        serde_json::json!([[1, 12], [2, 17], [3, 20], [4, 22]])
    );
    assert_eq!(v["results"]["conjectured"], v["results"]["expected"]);
    // fixed top-level key order
    let text = String::from_utf8(out.stdout).unwrap();
    let order: Vec<usize> = [
        "\"command\"",
        "\"params\"",
        "\"results\"",
        "\"complete\"",
        "\"caps\"",
        "\"version\"",
    ]
    .iter()
    .map(|k| text.find(k).unwrap_or_else(|| panic!("missing key {k}")))
    .collect();
    assert!(
        order.windows(2).all(|w| w[0] < w[1]),
        "key order drifted: {text}"
    );
}

#[test]
fn loci_genus_8_conjectured_exception() {
    let tmp = tempfile::tempdir().unwrap();
    let out = bnlab(&["loci", "--genus", "8", "--json"], tmp.path());
    let v = json_of(&out);
    assert_eq!(
        v["results"]["expected"],
        serde_json::json!([[1, 4], [2, 7]])
    );
    assert_eq!(v["results"]["conjectured"], serde_json::json!([[2, 7]]));
}

#[test]
fn loci_csv_rows() {
    let tmp = tempfile::tempdir().unwrap();
    let out = bnlab(&["loci", "--genus", "12", "--csv"], tmp.path());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("list,rank,degree"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.iter().filter(|r| r.starts_with("expected")).count(), 3);
}

#[test]
fn region_csv_header_and_values() {
    let tmp = tempfile::tempdir().unwrap();
    let out = bnlab(&["region", "--genus", "100", "--csv"], tmp.path());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,gamma_rho,gamma_delta"));
    let row9 = lines.clone().find(|l| l.starts_with("9,")).unwrap();
    assert_eq!(row9.split(',').nth(1), Some("81"));
    let row1 = text.lines().find(|l| l.starts_with("1,")).unwrap();
    assert_eq!(row1.split(',').nth(2), Some("-2.000000"));
}

#[test]
fn scan_l2_exit_code_and_cache_replay() {
    let tmp = tempfile::tempdir().unwrap();
    let args = ["scan-l2", "--from", "2", "--to", "60", "--json"];
    let out1 = bnlab(&args, tmp.path());
    // a failing checked condition exits 1
    assert_eq!(out1.status.code(), Some(1));
    let v = json_of(&out1);
    assert_eq!(v["results"]["exception_genera"], serde_json::json!([56]));

    // cached second run replays byte-identically
    let out2 = bnlab(&args, tmp.path());
    assert_eq!(out1.stdout, out2.stdout);
    let cache_files = std::fs::read_dir(tmp.path()).unwrap().count();
    assert_eq!(cache_files, 1);

    // clean range exits 0
    let out = bnlab(
        &["scan-l2", "--from", "2", "--to", "55", "--json"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn scan_l2_parallel_matches_serial() {
    let tmp = tempfile::tempdir().unwrap();
    let serial = bnlab(
        &[
            "scan-l2",
            "--from",
            "2",
            "--to",
            "70",
            "--json",
            "--no-cache",
        ],
        tmp.path(),
    );
    let parallel = bnlab(
        &[
            "scan-l2",
            "--from",
            "2",
            "--to",
            "70",
            "--jobs",
            "4",
            "--json",
            "--no-cache",
        ],
        tmp.path(),
    );
    assert_eq!(serial.stdout, parallel.stdout);
}

#[test]
fn check_l3_genus_56_fails_with_witness() {
    let tmp = tempfile::tempdir().unwrap();
    let out = bnlab(
        &[
            "check",
            "--mode",
            "l3",
            "--genus",
            "56",
            "--rank",
            "2",
            "--degree",
            "39",
            "--other-rank",
            "3",
            "--other-degree",
            "44",
            "--json",
        ],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["results"]["holds"], false);
    let survivors = v["results"]["survivors"].as_array().unwrap();
    assert!(survivors
        .iter()
        .any(|s| s["series"] == serde_json::json!([6, 49])));
}

#[test]
fn distinguish_verdicts_and_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let out = bnlab(
        &[
            "distinguish",
            "--genus",
            "14",
            "--a-rank",
            "2",
            "--a-degree",
            "11",
            "--b-rank",
            "3",
            "--b-degree",
            "13",
            "--json",
        ],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["results"]["verdict"], "non-containment shown");

    let out = bnlab(
        &[
            "distinguish",
            "--genus",
            "20",
            "--a-rank",
            "3",
            "--a-degree",
            "17",
            "--b-rank",
            "4",
            "--b-degree",
            "19",
            "--json",
        ],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["results"]["verdict"], "inconclusive");
}

#[test]
fn capped_search_exits_3() {
    let tmp = tempfile::tempdir().unwrap();
    // the bounded nef search leaves the report incomplete
    let out = bnlab(
        &[
            "distinguish",
            "--genus",
            "18",
            "--a-rank",
            "2",
            "--a-degree",
            "13",
            "--b-rank",
            "1",
            "--b-degree",
            "9",
            "--json",
        ],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(3));
    let v = json_of(&out);
    assert_eq!(v["complete"], false);
    assert_eq!(v["results"]["verdict"], "non-containment shown");
}

#[test]
fn lattice_subcommands() {
    let tmp = tempfile::tempdir().unwrap();
    let out = bnlab(
        &[
            "lattice", "disc", "--genus", "56", "--rank", "2", "--degree", "39", "--json",
        ],
        tmp.path(),
    );
    let v = json_of(&out);
    assert_eq!(v["results"]["disc"], -1301);

    let out = bnlab(
        &[
            "lattice",
            "isotropic",
            "--genus",
            "18",
            "--rank",
            "2",
            "--degree",
            "13",
            "--json",
        ],
        tmp.path(),
    );
    let v = json_of(&out);
    assert_eq!(v["results"]["exists"], false);

    let out = bnlab(
        &[
            "lattice",
            "invariants",
            "--genus",
            "23",
            "--rank",
            "4",
            "--degree",
            "22",
            "--json",
        ],
        tmp.path(),
    );
    let v = json_of(&out);
    assert_eq!(v["results"]["m"], 6);
    assert_eq!(v["results"]["minus_two_exists"], false);
}

#[test]
fn secant_scan_three_hits() {
    let tmp = tempfile::tempdir().unwrap();
    let out = bnlab(&["secant-scan", "--max-genus", "23", "--json"], tmp.path());
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let hits = v["results"].as_array().unwrap();
    assert_eq!(hits.len(), 3);
    let genera: Vec<i64> = hits.iter().map(|h| h["genus"].as_i64().unwrap()).collect();
    assert_eq!(genera, vec![7, 8, 9]);
}

#[test]
fn counterexample_datum() {
    let tmp = tempfile::tempdir().unwrap();
    let out = bnlab(
        &["counterexample", "--a", "6", "--b", "4", "--json"],
        tmp.path(),
    );
    let v = json_of(&out);
    assert_eq!(v["results"]["genus"], 19);
    assert_eq!(v["results"]["series"], serde_json::json!([3, 17]));
    assert_eq!(v["results"]["rho"], -1);
    assert_eq!(v["results"]["curve_class_square"], 36);

    // parity violation is a usage error
    let out = bnlab(&["counterexample", "--a", "5", "--b", "4"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let out = bnlab(&["loci"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    let out = bnlab(&["loci", "--genus", "2"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    // CSV for a non-tabular command
    let out = bnlab(
        &[
            "threshold",
            "--genus",
            "18",
            "--gamma",
            "8",
            "--m",
            "2",
            "--mu",
            "13",
            "--csv",
        ],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn threshold_values() {
    let tmp = tempfile::tempdir().unwrap();
    let out = bnlab(
        &[
            "threshold",
            "--genus",
            "19",
            "--gamma",
            "9",
            "--m",
            "2",
            "--mu",
            "14",
            "--json",
        ],
        tmp.path(),
    );
    let v = json_of(&out);
    assert_eq!(v["results"]["dm_threshold"], "69/4");
    assert_eq!(v["results"]["applicable"], true);
}

#[test]
fn classify_json_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    let out = bnlab(
        &[
            "classify", "--genus", "14", "--rank", "2", "--degree", "11", "--json",
        ],
        tmp.path(),
    );
    let v = json_of(&out);
    assert_eq!(v["results"]["noncomputing"], true);
    assert_eq!(v["results"]["rho"], -1);
    // identical invocations are byte-identical
    let again = bnlab(
        &[
            "classify", "--genus", "14", "--rank", "2", "--degree", "11", "--json",
        ],
        tmp.path(),
    );
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn config_file_sets_caps() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(tmp.path().join("bnlab.toml"), "nef_cap = 777\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_bnlab"))
        .args([
            "distinguish",
            "--genus",
            "14",
            "--a-rank",
            "2",
            "--a-degree",
            "11",
            "--b-rank",
            "3",
            "--b-degree",
            "13",
            "--json",
        ])
        .current_dir(tmp.path())
        .env("BNLAB_CACHE", tmp.path())
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["caps"]["nef_cap"], "777");
}
