use std::path::Path;
use std::process::{Command, Output};

use clifford_vqe::dense::spectrum;
use clifford_vqe::{Hamiltonian, NoiseModel};

const SMALL_GA: [&str; 10] =
    ["--instances", "2", "--generations", "5", "--top-k", "3", "--pop-size", "10", "--max-rounds", "2"];

fn cvqe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cvqe")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = cvqe(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn csv_rows(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(str::to_string).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(str::to_string).collect()).collect();
    (header, rows)
}

fn write_noise(dir: &Path, nm: &NoiseModel) -> std::path::PathBuf {
    let path = dir.join("noise.txt");
    nm.write(&path).unwrap();
    path
}

fn bench(dir: &Path, model: &str, n: usize, j: f64) -> std::path::PathBuf {
    let path = dir.join(format!("{model}_{n}.txt"));
    ok(&["bench", "--model", model, "--n", &n.to_string(), "--j", &j.to_string(), "--out", s(&path)]);
    path
}

#[test]
fn bench_writes_expected_term_counts() {
    let dir = tempfile::tempdir().unwrap();
    let ising = Hamiltonian::read(bench(dir.path(), "ising", 7, 0.25)).unwrap();
    assert_eq!(ising.len(), 13);
    assert_eq!(ising.n_qubits(), 7);
    let xxz = Hamiltonian::read(bench(dir.path(), "xxz", 10, 1.0)).unwrap();
    assert_eq!(xxz.len(), 27);
}

#[test]
fn clapton_optimize_writes_all_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let h_path = bench(dir.path(), "ising", 7, 0.5);
    let noise = write_noise(dir.path(), &NoiseModel::uniform(1e-3, 1e-2, 3e-2, 100e-6).unwrap());
    let out = dir.path().join("clapton");
    let stdout = ok(&[
        "optimize",
        "--method",
        "clapton",
        "--hamiltonian",
        s(&h_path),
        "--noise",
        s(&noise),
        "--seed",
        "3",
        "--out-dir",
        s(&out),
    ]);
    assert!(stdout.contains("method=clapton"));
    for f in ["result.csv", "loss_trace.csv", "transformed_hamiltonian.txt", "transform_circuit.txt"] {
        assert!(out.join(f).exists(), "{f} missing");
    }
    let (header, rows) = csv_rows(&out.join("result.csv"));
    assert_eq!(header[0], "method");
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "clapton");
    assert_eq!(rows[0].last().unwrap().len(), 35);
    let original = Hamiltonian::read(&h_path).unwrap();
    let transformed = Hamiltonian::read(out.join("transformed_hamiltonian.txt")).unwrap();
    let (a, b) = (spectrum(&original).unwrap(), spectrum(&transformed).unwrap());
    assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-9));
    let (trace_header, trace) = csv_rows(&out.join("loss_trace.csv"));
    assert_eq!(trace_header, ["round", "best_loss"]);
    assert!(!trace.is_empty());
}

#[test]
fn noise_aware_baseline_matches_plain_without_noise() {
    let dir = tempfile::tempdir().unwrap();
    let h_path = bench(dir.path(), "xxz", 3, 0.5);
    let noise = write_noise(dir.path(), &NoiseModel::noiseless());
    let mut results = Vec::new();
    for method in ["cafqa", "ncafqa"] {
        let out = dir.path().join(method);
        let mut args = vec![
            "optimize",
            "--method",
            method,
            "--hamiltonian",
            s(&h_path),
            "--noise",
            s(&noise),
            "--seed",
            "8",
            "--out-dir",
            s(&out),
            "--report-samples",
            "1000",
        ];
        args.extend(SMALL_GA);
        ok(&args);
        results.push(csv_rows(&out.join("result.csv")).1.remove(0));
    }
    // l0 and the parameter string coincide.
    assert_eq!(results[0][2], results[1][2]);
    assert_eq!(results[0].last(), results[1].last());
}

#[test]
fn missing_noise_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let h_path = bench(dir.path(), "ising", 3, 0.5);
    let missing = dir.path().join("nowhere.txt");
    let out = cvqe(&[
        "optimize",
        "--method",
        "clapton",
        "--hamiltonian",
        s(&h_path),
        "--noise",
        s(&missing),
        "--seed",
        "1",
        "--out-dir",
        s(&dir.path().join("o")),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains(s(&missing)));
}

#[test]
fn malformed_noise_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let h_path = bench(dir.path(), "ising", 3, 0.5);
    let noise = dir.path().join("bad.txt");
    std::fs::write(&noise, "default\n  t1 0\n").unwrap();
    let out = cvqe(&[
        "optimize",
        "--method",
        "cafqa",
        "--hamiltonian",
        s(&h_path),
        "--noise",
        s(&noise),
        "--seed",
        "1",
        "--out-dir",
        s(&dir.path().join("o")),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("t1"));
}

#[test]
fn sweep_covers_grid_and_relaxation_times() {
    let dir = tempfile::tempdir().unwrap();
    let h_path = bench(dir.path(), "ising", 2, 0.5);
    let out = dir.path().join("sweep.csv");
    let mut args = vec![
        "sweep",
        "--channel",
        "gate",
        "--hamiltonian",
        s(&h_path),
        "--seed",
        "2",
        "--out",
        s(&out),
        "--points",
        "2",
        "--report-samples",
        "500",
        "--loss-samples",
        "256",
    ];
    args.extend(SMALL_GA);
    ok(&args);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["channel", "p", "t1", "method", "e0", "e_baseline", "e_clapton", "eta"]);
    assert_eq!(rows.len(), 6);
    let ps: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(ps[..2], [5e-4, 5e-3]);
    let mut t1s: Vec<String> = rows.iter().map(|r| r[2].clone()).collect();
    t1s.dedup();
    assert_eq!(t1s.len(), 3);
    assert!(rows.iter().all(|r| r[0] == "gate" && r[3] == "ncafqa"));
}

#[test]
fn scaling_rows_and_guess_validation() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("scaling.csv");
    let mut args = vec![
        "scaling", "--n-min", "2", "--n-max", "4", "--guesses", "2", "--seed", "1", "--out", s(&out),
        "--loss-samples", "128",
    ];
    args.extend(SMALL_GA);
    ok(&args);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["n", "guess", "total_time", "rounds", "time_per_round"]);
    assert_eq!(rows.len(), 6);
    let zero = cvqe(&["scaling", "--n-min", "2", "--n-max", "3", "--guesses", "0", "--seed", "1", "--out", s(&out)]);
    assert_eq!(zero.status.code(), Some(2));
}

#[test]
fn vqe_with_zero_iterations_reports_start() {
    let dir = tempfile::tempdir().unwrap();
    let h_path = bench(dir.path(), "ising", 3, 0.5);
    let noise = write_noise(dir.path(), &NoiseModel::uniform(1e-3, 1e-2, 2e-2, 100e-6).unwrap());
    let out = dir.path().join("traj.csv");
    ok(&["vqe", "--hamiltonian", s(&h_path), "--noise", s(&noise), "--iters", "0", "--seed", "1", "--out", s(&out)]);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["iteration", "energy", "std_error"]);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "0");
}

#[test]
fn vqe_starts_from_optimize_output() {
    let dir = tempfile::tempdir().unwrap();
    let h_path = bench(dir.path(), "ising", 3, 0.5);
    let noise = write_noise(dir.path(), &NoiseModel::uniform(1e-3, 1e-2, 2e-2, 100e-6).unwrap());
    for method in ["clapton", "cafqa"] {
        let run = dir.path().join(method);
        let mut args = vec![
            "optimize",
            "--method",
            method,
            "--hamiltonian",
            s(&h_path),
            "--noise",
            s(&noise),
            "--seed",
            "4",
            "--out-dir",
            s(&run),
            "--report-samples",
            "500",
        ];
        args.extend(SMALL_GA);
        ok(&args);
        let out = dir.path().join(format!("{method}_traj.csv"));
        ok(&[
            "vqe",
            "--hamiltonian",
            s(&h_path),
            "--init",
            s(&run),
            "--noise",
            s(&noise),
            "--iters",
            "3",
            "--seed",
            "1",
            "--out",
            s(&out),
        ]);
        let (_, rows) = csv_rows(&out);
        assert_eq!(rows.len(), 4);
        let e_full: f64 = csv_rows(&run.join("result.csv")).1[0][6].parse().unwrap();
        let start: f64 = rows[0][1].parse().unwrap();
        assert!((start - e_full).abs() < 1e-9, "{method}: {start} vs {e_full}");
    }
}

#[test]
fn every_command_has_help() {
    for cmd in ["bench", "optimize", "sweep", "scaling", "vqe"] {
        let out = ok(&[cmd, "--help"]);
        assert!(out.contains("Usage"), "{cmd}");
    }
    assert!(ok(&["--help"]).contains("optimize"));
}

#[test]
fn bad_arguments_exit_with_usage_code() {
    assert_eq!(cvqe(&["bench", "--model", "heisenberg", "--n", "3", "--j", "1", "--out", "x"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h.txt");
    let zero_threads = cvqe(&["--threads", "0", "bench", "--model", "ising", "--n", "3", "--j", "1", "--out", s(&out)]);
    assert_eq!(zero_threads.status.code(), Some(2));
    assert_eq!(cvqe(&[]).status.code(), Some(2));
}
