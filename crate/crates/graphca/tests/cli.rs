//! End-to-end tests driving the compiled binary: file formats, exit codes,
//! report shape, and byte-exact reproducibility.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use graphca_core::ca::{verify_ca, CoveringArray};
use graphca_core::graph::{make_graph, GraphFamily};
use graphca_core::products::{product, ProductKind};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_graphca"))
}

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("graphca-cli-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn assert_success(out: &Output) {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn make_writes_parseable_and_reproducible_files() {
    let dir = workdir("make");
    assert_success(&run_in(&dir, &["make", "--family", "cycle", "--size", "5", "-o", "c5.col"]));
    let first = fs::read(dir.join("c5.col")).unwrap();
    assert_success(&run_in(&dir, &["make", "--family", "cycle", "--size", "5", "-o", "c5.col"]));
    let second = fs::read(dir.join("c5.col")).unwrap();
    assert_eq!(first, second, "writer must be byte-exact across runs");

    let text = String::from_utf8(first).unwrap();
    assert!(text.starts_with("p edge 5 5\n"));
    assert!(text.contains("e 1 2\n"));
}

#[test]
fn make_circulant_and_bad_family() {
    let dir = workdir("circulant");
    assert_success(&run_in(
        &dir,
        &["make", "--family", "circulant", "--size", "8", "--conn", "1,4,7", "-o", "c.col"],
    ));
    let out = run_in(&dir, &["make", "--family", "mobius", "--size", "8", "-o", "m.col"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn product_emits_graph_and_coords() {
    let dir = workdir("product");
    run_in(&dir, &["make", "--family", "path", "--size", "3", "-o", "p3.col"]);
    run_in(&dir, &["make", "--family", "cycle", "--size", "5", "-o", "c5.col"]);
    let out = run_in(
        &dir,
        &["product", "--op", "cartesian", "p3.col", "c5.col", "-o", "prod.col", "--coords", "prod.coords"],
    );
    assert_success(&out);
    let report = stdout_json(&out);
    assert_eq!(report["strategy"]["vertices"], 15);
    assert_eq!(report["strategy"]["edges"], 25);
    let coords = fs::read_to_string(dir.join("prod.coords")).unwrap();
    assert!(coords.starts_with("0: (0, 0)\n"));
    assert_eq!(coords.lines().count(), 15);
}

#[test]
fn product_guards_factor_count() {
    let dir = workdir("guard");
    run_in(&dir, &["make", "--family", "complete", "--size", "2", "-o", "k2.col"]);
    let mut args = vec!["product", "--op", "cartesian"];
    args.extend(std::iter::repeat_n("k2.col", 7));
    args.extend(["-o", "big.col"]);
    let out = run_in(&dir, &args);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn factor_recovers_known_factors() {
    let dir = workdir("factor");
    run_in(&dir, &["make", "--family", "path", "--size", "3", "-o", "p3.col"]);
    run_in(&dir, &["make", "--family", "cycle", "--size", "5", "-o", "c5.col"]);
    run_in(&dir, &["product", "--op", "cartesian", "p3.col", "c5.col", "-o", "prod.col"]);
    let out = run_in(&dir, &["factor", "prod.col"]);
    assert_success(&out);
    let report = stdout_json(&out);
    assert_eq!(report["strategy"]["factor_count"], 2);
    // Largest factor first: the 5-cycle, then the path.
    assert_eq!(report["strategy"]["factors"][0]["vertices"], 5);
    assert_eq!(report["strategy"]["factors"][1]["vertices"], 3);
    assert!(dir.join("prod.factor0.col").exists());
    assert!(dir.join("prod.factor1.col").exists());
}

#[test]
fn oa_default_and_composite() {
    let dir = workdir("oa");
    let out = run_in(&dir, &["oa", "--g", "3"]);
    assert_success(&out);
    let text = fs::read_to_string(dir.join("oa3.ca")).unwrap();
    assert!(text.starts_with("ca 4 9 3\n"));

    // Composite g requires --bush.
    let out = run_in(&dir, &["oa", "--g", "6"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run_in(&dir, &["oa", "--g", "6", "--bush", "-o", "b6.ca"]);
    assert_success(&out);
    let text = fs::read_to_string(dir.join("b6.ca")).unwrap();
    assert!(text.starts_with("ca 3 36 6\n"));
}

#[test]
fn build_coloring_matches_the_g_squared_example() {
    let dir = workdir("coloring");
    run_in(&dir, &["make", "--family", "path", "--size", "3", "-o", "p3.col"]);
    run_in(&dir, &["make", "--family", "cycle", "--size", "5", "-o", "c5.col"]);
    run_in(&dir, &["product", "--op", "cartesian", "p3.col", "c5.col", "-o", "prod.col"]);
    let out = run_in(
        &dir,
        &["build", "--strategy", "coloring", "--graph", "prod.col", "--g", "2", "--out", "prod.ca"],
    );
    assert_success(&out);
    let report = stdout_json(&out);
    assert_eq!(report["strategy"]["output_size"], 4);

    let verify = run_in(&dir, &["verify", "--graph", "prod.col", "--ca", "prod.ca"]);
    assert_success(&verify);
    assert_eq!(stdout_json(&verify)["strategy"]["ok"], true);
}

#[test]
fn build_strong_uses_coloring_fallback_for_missing_arrays() {
    let dir = workdir("strong");
    run_in(&dir, &["make", "--family", "complete", "--size", "3", "-o", "k3.col"]);
    let out = run_in(
        &dir,
        &["build", "--strategy", "strong", "--graph", "k3.col", "--graph", "k3.col", "--g", "2", "--out", "s.ca"],
    );
    assert_success(&out);
    let report = stdout_json(&out);
    assert_eq!(report["strategy"]["output_size"], 6);
    assert_eq!(report["strategy"]["input_sizes"], serde_json::json!([4, 4]));
    assert_eq!(report["strategy"]["graph_vertices"], 9);

    // Independent re-check of the emitted file against K3 strong K3.
    let k3 = make_graph(&GraphFamily::Complete(3)).unwrap();
    let pg = product(ProductKind::Strong, &[k3.clone(), k3]).unwrap();
    let parsed = parse_ca_file(&dir.join("s.ca"));
    assert!(verify_ca(&parsed, &pg.graph).unwrap().ok);
}

fn parse_ca_file(path: &Path) -> CoveringArray {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header: Vec<usize> = lines
        .next()
        .unwrap()
        .split_whitespace()
        .skip(1)
        .map(|t| t.parse().unwrap())
        .collect();
    let matrix: Vec<Vec<usize>> = lines
        .map(|l| {
            l.split_whitespace()
                .skip(1)
                .map(|t| t.parse().unwrap())
                .collect()
        })
        .collect();
    assert_eq!(matrix.len(), header[0]);
    CoveringArray::new(header[2], matrix)
        .unwrap()
        .with_identity_binding()
}

#[test]
fn build_accepts_supplied_input_arrays() {
    let dir = workdir("cain");
    run_in(&dir, &["make", "--family", "complete", "--size", "3", "-o", "k3.col"]);
    run_in(&dir, &["oa", "--g", "2", "-o", "oa2.ca"]);
    // The 3-row orthogonal array binds to K3 by row index.
    let out = run_in(
        &dir,
        &[
            "build", "--strategy", "strong", "--graph", "k3.col", "--graph", "k3.col",
            "--ca-in", "oa2.ca", "--ca-in", "oa2.ca", "--g", "2", "--out", "s.ca",
        ],
    );
    assert_success(&out);
    let report = stdout_json(&out);
    assert_eq!(report["strategy"]["input_sizes"], serde_json::json!([4, 4]));
    assert_eq!(report["strategy"]["output_size"], 6);

    // A supplied array that does not cover its factor is refused.
    fs::write(dir.join("bad.ca"), "ca 3 4 2\n0 0 0 0 0\n1 0 1 0 1\n2 0 0 1 1\n").unwrap();
    let out = run_in(
        &dir,
        &[
            "build", "--strategy", "strong", "--graph", "k3.col", "--graph", "k3.col",
            "--ca-in", "bad.ca", "--g", "2", "--out", "s.ca",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn build_strategy_approx_matches_the_approx_command() {
    let dir = workdir("buildapprox");
    run_in(&dir, &["make", "--family", "cycle", "--size", "4", "-o", "c4.col"]);
    run_in(&dir, &["make", "--family", "complete", "--size", "3", "-o", "k3.col"]);
    run_in(&dir, &["product", "--op", "cartesian", "c4.col", "k3.col", "-o", "g.col"]);
    let out = run_in(
        &dir,
        &["build", "--strategy", "approx", "--graph", "g.col", "--g", "2", "--out", "a.ca"],
    );
    assert_success(&out);
    let report = stdout_json(&out);
    assert_eq!(report["strategy"]["output_size"], 4);
    assert_eq!(report["strategy"]["within_bound"], true);
}

#[test]
fn build_cayley2_with_builtin_cyclic_group() {
    let dir = workdir("cayley2");
    run_in(&dir, &["make", "--family", "complete", "--size", "2", "-o", "k2.col"]);
    fs::write(dir.join("s.json"), r#"{"S": [1, 4]}"#).unwrap();
    let out = run_in(
        &dir,
        &[
            "build", "--strategy", "cayley2", "--group", "cyclic:5", "--conn-set", "s.json",
            "--graph", "k2.col", "--g", "2", "--out", "cay.ca",
        ],
    );
    assert_success(&out);
    let report = stdout_json(&out);
    assert_eq!(report["strategy"]["output_size"], 4);
    assert_eq!(report["strategy"]["graph_vertices"], 10);
}

#[test]
fn build_cayley4_with_quaternion_witness() {
    let dir = workdir("cayley4");
    run_in(&dir, &["make", "--family", "complete", "--size", "4", "-o", "k4.col"]);
    fs::write(dir.join("s.json"), r#"{"S": ["-1", "i", "-i", "j", "-j"]}"#).unwrap();
    let out = run_in(
        &dir,
        &[
            "build", "--strategy", "cayley4", "--group", "quaternion8", "--conn-set", "s.json",
            "--graph", "k4.col", "--g", "2", "--witness", "-1,i", "--out", "cay4.ca",
        ],
    );
    assert_success(&out);
    let report = stdout_json(&out);
    assert_eq!(report["strategy"]["output_size"], 8);

    // A witness violating the four-colour condition is refused.
    let out = run_in(
        &dir,
        &[
            "build", "--strategy", "cayley4", "--group", "quaternion8", "--conn-set", "s.json",
            "--graph", "k4.col", "--g", "2", "--witness", "i,j", "--out", "cay4.ca",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn approx_reports_certificate_fields() {
    let dir = workdir("approx");
    run_in(&dir, &["make", "--family", "cycle", "--size", "4", "-o", "c4.col"]);
    run_in(&dir, &["make", "--family", "complete", "--size", "3", "-o", "k3.col"]);
    run_in(&dir, &["product", "--op", "cartesian", "c4.col", "k3.col", "-o", "g.col"]);
    let out = run_in(
        &dir,
        &["approx", "--graph", "g.col", "--g", "2", "-o", "out.ca", "--report", "report.json"],
    );
    assert_success(&out);
    let report = stdout_json(&out);
    assert_eq!(report["strategy"]["s"], 3);
    assert_eq!(report["strategy"]["u"], 1);
    assert_eq!(report["strategy"]["v1"], 3);
    assert_eq!(report["strategy"]["factor_count"], 3);
    assert_eq!(report["strategy"]["output_size"], 4);
    assert_eq!(report["strategy"]["within_bound"], true);

    let side: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("report.json")).unwrap()).unwrap();
    assert_eq!(side["u"], 1);
    assert!(report["wall_time_ms"].is_u64());
    assert!(report["inputs"][0]["fnv64"].as_str().unwrap().len() == 16);
}

#[test]
fn verify_failure_exits_one_and_names_the_edge() {
    let dir = workdir("verifyfail");
    run_in(&dir, &["make", "--family", "complete", "--size", "3", "-o", "k3.col"]);
    run_in(&dir, &["oa", "--g", "2", "-o", "good.ca"]);
    // First three rows of the orthogonal array cover K3; break row 0.
    let good = fs::read_to_string(dir.join("good.ca")).unwrap();
    let broken: String = good
        .lines()
        .enumerate()
        .map(|(i, l)| {
            if i == 1 {
                "0 0 0 0 0".to_string()
            } else {
                l.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
        + "\n";
    fs::write(dir.join("broken.ca"), broken).unwrap();

    let ok = run_in(&dir, &["verify", "--graph", "k3.col", "--ca", "good.ca"]);
    assert_success(&ok);

    let out = run_in(&dir, &["verify", "--graph", "k3.col", "--ca", "broken.ca"]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    assert_eq!(report["strategy"]["ok"], false);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("missing pair"), "stderr: {stderr}");
}

#[test]
fn missing_files_exit_two_with_the_path_named() {
    let dir = workdir("missing");
    let out = run_in(&dir, &["analyze", "--graph", "nowhere.col"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nowhere.col"));
}

#[test]
fn parse_errors_name_file_and_line() {
    let dir = workdir("badfile");
    fs::write(dir.join("bad.col"), "p edge 3 1\ne 1 9\n").unwrap();
    let out = run_in(&dir, &["analyze", "--graph", "bad.col"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.col:2"));
}

#[test]
fn analyze_reports_bounds_and_respects_limit_overrides() {
    let dir = workdir("analyze");
    run_in(&dir, &["make", "--family", "complete", "--size", "5", "-o", "k5.col"]);
    let out = run_in(&dir, &["analyze", "--graph", "k5.col", "--g", "2"]);
    assert_success(&out);
    let report = stdout_json(&out);
    assert_eq!(report["strategy"]["omega"], 5);
    assert_eq!(report["strategy"]["exact_chi"], 5);
    assert_eq!(report["strategy"]["greedy_chi"], 5);
    let sandwich = report["strategy"]["bound_sandwich"].as_str().unwrap();
    assert_eq!(sandwich, "CAN(K_5, 2) <= CAN(G, 2) <= CAN(K_5, 2)");

    // Squeeze the limits down: exact chi must be skipped.
    let out = bin()
        .current_dir(&dir)
        .env("GRAPHCA_LIMITS", "chi=3,omega=3")
        .args(["analyze", "--graph", "k5.col"])
        .output()
        .unwrap();
    assert_success(&out);
    let report = stdout_json(&out);
    assert_eq!(report["strategy"]["exact_chi"], serde_json::Value::Null);
    assert_eq!(report["strategy"]["omega"], serde_json::Value::Null);
}

#[test]
fn emitted_ca_files_reparse_identically() {
    let dir = workdir("roundtrip");
    run_in(&dir, &["make", "--family", "complete", "--size", "3", "-o", "k3.col"]);
    run_in(
        &dir,
        &["build", "--strategy", "coloring", "--graph", "k3.col", "--g", "3", "--out", "a.ca"],
    );
    let first = fs::read(dir.join("a.ca")).unwrap();
    run_in(
        &dir,
        &["build", "--strategy", "coloring", "--graph", "k3.col", "--g", "3", "--out", "a.ca"],
    );
    let second = fs::read(dir.join("a.ca")).unwrap();
    assert_eq!(first, second);
}
