//! End-to-end tests of the binary: exit codes, determinism, unit handling
//! and the documented output shapes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_oinfo"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("oinfo-test-{}-{name}", std::process::id()));
    p
}

fn copy3_json() -> PathBuf {
    let path = scratch("copy3.json");
    let out = run(&["generate", "copy", "--n", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    path
}

fn xor3_json() -> PathBuf {
    let path = scratch("xor3.json");
    let out = run(&["generate", "xor", "--n", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    path
}

#[test]
fn metrics_of_copy3_reports_unit_o_information() {
    let dist = copy3_json();
    let out = run(&["metrics", "--dist", dist.to_str().unwrap()]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["unit"], "bit");
    assert!((report["o_information"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!((report["tse"].as_f64().unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn metrics_units_differ_by_the_exact_log_factor() {
    let dist = xor3_json();
    let bits: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["metrics", "--dist", dist.to_str().unwrap()]))).unwrap();
    let nats: serde_json::Value = serde_json::from_str(&stdout(&run(&[
        "metrics",
        "--dist",
        dist.to_str().unwrap(),
        "--unit",
        "nat",
    ])))
    .unwrap();
    let muts: serde_json::Value = serde_json::from_str(&stdout(&run(&[
        "metrics",
        "--dist",
        dist.to_str().unwrap(),
        "--unit",
        "mut",
    ])))
    .unwrap();
    let h_bit = bits["h_joint"].as_f64().unwrap();
    let h_nat = nats["h_joint"].as_f64().unwrap();
    let h_mut = muts["h_joint"].as_f64().unwrap();
    assert!((h_bit * std::f64::consts::LN_2 - h_nat).abs() < 1e-12);
    assert!((h_nat / 13f64.ln() - h_mut).abs() < 1e-12);
}

#[test]
fn malformed_distribution_exits_2_with_no_partial_output() {
    let path = scratch("broken.json");
    std::fs::write(&path, "{\"shape\":[2,2],\"probs\":[0.5]").unwrap();
    let out = run(&["metrics", "--dist", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn unnormalized_distribution_exits_2_naming_the_problem() {
    let path = scratch("unnormalized.json");
    std::fs::write(&path, "{\"shape\":[2],\"probs\":[0.9,0.3]}").unwrap();
    let out = run(&["metrics", "--dist", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("not normalized"), "stderr: {err}");
}

#[test]
fn lattice_check_passes_on_xor3_and_reports_three_paths() {
    let dist = xor3_json();
    let out = run(&[
        "lattice",
        "--dist",
        dist.to_str().unwrap(),
        "--all-paths",
        "--check",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["paths"].as_array().unwrap().len(), 3);
    assert_eq!(report["nodes"].as_array().unwrap().len(), 5);
    for path in report["paths"].as_array().unwrap() {
        let totals = &path["totals"];
        assert!((totals["total_correlation"].as_f64().unwrap() - 1.0).abs() < 1e-9);
        assert!((totals["binding_entropy"].as_f64().unwrap() - 2.0).abs() < 1e-9);
        assert!((totals["o_information"].as_f64().unwrap() + 1.0).abs() < 1e-9);
    }
}

#[test]
fn lattice_assembly_order_lists_the_chain_terms() {
    let path = scratch("any5.json");
    let out = run(&[
        "generate",
        "random",
        "--shape",
        "2,2,2,2,2",
        "--seed",
        "11",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = run(&[
        "lattice",
        "--dist",
        path.to_str().unwrap(),
        "--assembly",
        "--order",
        "4,2,1,3,5",
        "--check",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let paths = report["paths"].as_array().unwrap();
    assert_eq!(paths.len(), 1);
    assert_eq!(paths[0]["edges"].as_array().unwrap().len(), 4);
    assert_eq!(paths[0]["nodes"][0], "12345");
    // Identity-order check of the first peel for the given order: last
    // element 5 comes off first.
    assert_eq!(paths[0]["nodes"][1], "1234|5");
}

#[test]
fn metrics_csv_format_lists_scalar_and_vector_fields() {
    let dist = xor3_json();
    let out = run(&[
        "metrics",
        "--dist",
        dist.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("metric,value\n"));
    let omega_row = text
        .lines()
        .find(|l| l.starts_with("o_information,"))
        .expect("o_information row");
    let omega: f64 = omega_row.split(',').nth(1).unwrap().parse().unwrap();
    assert!((omega + 1.0).abs() < 1e-9);
    assert!(text.contains("residual[2],"));
    assert!(text.contains("local_omega[0][1],"));
}

#[test]
fn lattice_csv_format_emits_per_path_totals() {
    let dist = xor3_json();
    let out = run(&[
        "lattice",
        "--dist",
        dist.to_str().unwrap(),
        "--all-paths",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "path,total_correlation,binding_entropy,o_information");
    assert_eq!(lines.len(), 4);
}

#[test]
fn generate_bsc_and_mixture_produce_valid_tables() {
    let out = run(&["generate", "bsc", "--n", "4", "--eta", "0.1", "--side", "upper"]);
    assert!(out.status.success());
    let table: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(table["shape"].as_array().unwrap().len(), 4);
    let total: f64 = table["probs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .sum();
    assert!((total - 1.0).abs() < 1e-12);

    let out = run(&["generate", "mixture", "--n", "3", "--lambda", "0.5"]);
    assert!(out.status.success());
    let out = run(&["generate", "mixture", "--n", "3", "--lambda", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lattice_cap_violation_exits_3() {
    let path = scratch("copy8.json");
    let out = run(&["generate", "copy", "--n", "8", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let out = run(&["lattice", "--dist", path.to_str().unwrap(), "--all-paths"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn metrics_cap_violation_exits_3() {
    let path = scratch("copy13.json");
    let out = run(&["generate", "copy", "--n", "13", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let out = run(&["metrics", "--dist", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn generate_gibbs_is_deterministic_per_seed() {
    let a = run(&["generate", "gibbs", "--n", "5", "--k", "3", "--beta", "0.1", "--seed", "7"]);
    let b = run(&["generate", "gibbs", "--n", "5", "--k", "3", "--beta", "0.1", "--seed", "7"]);
    let c = run(&["generate", "gibbs", "--n", "5", "--k", "3", "--beta", "0.1", "--seed", "8"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn experiment_outputs_are_byte_identical_across_runs() {
    let args = [
        "experiment",
        "tse-correlation",
        "--n",
        "3",
        "--samples",
        "50",
        "--seed",
        "4",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("sample,seed,tse_bits,sum_cb_bits\n"));
    assert_eq!(text.lines().count(), 51);
    let summary = String::from_utf8_lossy(&a.stderr);
    assert!(summary.contains("pearson"), "summary: {summary}");
}

#[test]
fn experiment_hamiltonian_sweep_emits_the_documented_columns() {
    let out = run(&[
        "experiment",
        "hamiltonian-sweep",
        "--n",
        "4",
        "--k",
        "2..3",
        "--trials",
        "5",
        "--seed",
        "2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("k,trial,omega_bits\n"));
    assert_eq!(text.lines().count(), 1 + 2 * 5);
}

#[test]
fn unknown_experiment_exits_2() {
    let out = run(&["experiment", "phase-diagram"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_does_not_depend_on_the_thread_cap() {
    let args = [
        "experiment",
        "hamiltonian-sweep",
        "--n",
        "4",
        "--k",
        "3",
        "--trials",
        "16",
        "--seed",
        "9",
    ];
    let parallel = run(&args);
    let serial = bin()
        .args(args)
        .env("HOI_MAX_THREADS", "1")
        .output()
        .expect("binary runs");
    assert!(parallel.status.success() && serial.status.success());
    assert_eq!(parallel.stdout, serial.stdout);
}

fn series_fixture() -> (PathBuf, PathBuf) {
    let csv_path = scratch("series.csv");
    let sidecar_path = scratch("alphabet.json");
    let dist = scratch("xor4.json");
    let out = run(&["generate", "xor", "--n", "4", "--out", dist.to_str().unwrap()]);
    assert!(out.status.success());
    // Small synthetic corpus: sample rows from the xor table by walking
    // its support deterministically.
    let mut rows = String::from("a,b,c,d\n");
    for i in 0..2usize {
        for j in 0..2usize {
            for k in 0..2usize {
                let parity = i ^ j ^ k;
                for _ in 0..4 {
                    rows.push_str(&format!("{i},{j},{k},{parity}\n"));
                }
            }
        }
    }
    std::fs::write(&csv_path, rows).unwrap();
    let sidecar = r#"{"channels":[
        {"name":"a","alphabet":["0","1"]},
        {"name":"b","alphabet":["0","1"]},
        {"name":"c","alphabet":["0","1"]},
        {"name":"d","alphabet":["0","1"]}
    ]}"#;
    std::fs::write(&sidecar_path, sidecar).unwrap();
    (csv_path, sidecar_path)
}

#[test]
fn bootstrap_minimal_run_completes_with_the_documented_columns() {
    let (csv, sidecar) = series_fixture();
    let out = run(&[
        "bootstrap",
        "--series",
        csv.to_str().unwrap(),
        "--alphabet",
        sidecar.to_str().unwrap(),
        "--block-len",
        "1",
        "--replicates",
        "2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "pair,mi,mi_se,cmi,cmi_se,omega_ij,omega_ij_se"
    );
    let body: Vec<&str> = lines.collect();
    assert_eq!(body.len(), 7); // 6 pairs + global row
    assert!(body[6].starts_with("(system),"));
    for row in &body[..6] {
        let se: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
        assert!(se >= 0.0);
    }
}

#[test]
fn bootstrap_metrics_on_series_respect_the_mut_unit() {
    let (csv, sidecar) = series_fixture();
    let out = run(&[
        "metrics",
        "--series",
        csv.to_str().unwrap(),
        "--alphabet",
        sidecar.to_str().unwrap(),
        "--unit",
        "mut",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["unit"], "mut");
    // The fixture is a noiseless xor corpus: H = 3 bits = 3/log2(13) muts.
    let want = 3.0 / 13f64.log2();
    assert!((report["h_joint"].as_f64().unwrap() - want).abs() < 1e-9);
}

#[test]
fn bootstrap_without_alphabet_exits_2() {
    let (csv, _) = series_fixture();
    let out = run(&["bootstrap", "--series", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("alphabet"));
}

#[test]
fn series_with_unknown_symbol_exits_2_naming_the_cell() {
    let csv_path = scratch("bad-series.csv");
    let sidecar_path = scratch("bad-alphabet.json");
    std::fs::write(&csv_path, "a,b\n0,1\n0,2\n").unwrap();
    std::fs::write(
        &sidecar_path,
        r#"{"channels":[{"name":"a","alphabet":["0","1"]},{"name":"b","alphabet":["0","1"]}]}"#,
    )
    .unwrap();
    let out = run(&[
        "metrics",
        "--series",
        csv_path.to_str().unwrap(),
        "--alphabet",
        sidecar_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("\"2\""), "stderr: {err}");
}
