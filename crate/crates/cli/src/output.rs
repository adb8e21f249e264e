//! CSV schemas and file names shared by the commands.

use std::path::Path;

use anyhow::{anyhow, Context, Result};

use clifford_vqe::pipeline::{Energies, SpsaPoint};
use clifford_vqe::OptimizationTrace;

pub const RESULT_FILE: &str = "result.csv";
pub const TRACE_FILE: &str = "loss_trace.csv";
pub const TRANSFORMED_FILE: &str = "transformed_hamiltonian.txt";
pub const TRANSFORM_CIRCUIT_FILE: &str = "transform_circuit.txt";

pub const RESULT_HEADER: [&str; 13] = [
    "method",
    "seed",
    "l0",
    "ln_clifford",
    "ln_std_error",
    "ln_samples",
    "e_full",
    "e0",
    "e_mixed",
    "best_loss",
    "rounds",
    "evaluations",
    "params",
];
pub const TRACE_HEADER: [&str; 2] = ["round", "best_loss"];
pub const SWEEP_HEADER: [&str; 8] = ["channel", "p", "t1", "method", "e0", "e_baseline", "e_clapton", "eta"];
pub const SCALING_HEADER: [&str; 5] = ["n", "guess", "total_time", "rounds", "time_per_round"];
pub const TRAJECTORY_HEADER: [&str; 3] = ["iteration", "energy", "std_error"];

fn opt(x: Option<f64>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}

/// One line of `result.csv`. Absent energies are empty fields; `params`
/// is the gene string of the returned configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub method: String,
    pub seed: u64,
    pub fields: Vec<String>,
    pub params: String,
}

impl ResultRow {
    pub fn new(method: &str, seed: u64, e: &Energies, trace: &OptimizationTrace, genes: &[u8]) -> Self {
        ResultRow {
            method: method.to_string(),
            seed,
            fields: vec![
                e.l0.to_string(),
                e.ln_clifford.mean.to_string(),
                e.ln_clifford.std_error.to_string(),
                e.ln_clifford.n_samples.to_string(),
                opt(e.e_full),
                opt(e.e0),
                e.e_mixed.to_string(),
                trace.best_loss().to_string(),
                trace.rounds.to_string(),
                trace.evaluations.to_string(),
            ],
            params: genes.iter().map(|g| char::from(b'0' + g)).collect(),
        }
    }

    pub fn summary(&self) -> String {
        RESULT_HEADER
            .iter()
            .zip(self.record())
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn record(&self) -> Vec<String> {
        let mut r = vec![self.method.clone(), self.seed.to_string()];
        r.extend(self.fields.iter().cloned());
        r.push(self.params.clone());
        r
    }

    pub fn param_values(&self) -> Result<Vec<u8>> {
        self.params
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(|| anyhow!("invalid parameter digit {c:?}")))
            .collect()
    }
}

pub fn write_results(path: &Path, rows: &[ResultRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| path.display().to_string())?;
    w.write_record(RESULT_HEADER)?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_result(path: &Path) -> Result<ResultRow> {
    let mut r = csv::Reader::from_path(path).with_context(|| path.display().to_string())?;
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != RESULT_HEADER {
        return Err(anyhow!("unexpected header {header:?}"));
    }
    let rec = r.records().next().ok_or_else(|| anyhow!("no result rows"))??;
    let get = |i: usize| rec.get(i).unwrap_or_default().to_string();
    Ok(ResultRow {
        method: get(0),
        seed: get(1).parse().context("seed")?,
        fields: (2..RESULT_HEADER.len() - 1).map(get).collect(),
        params: get(RESULT_HEADER.len() - 1),
    })
}

pub fn write_trace(path: &Path, trace: &OptimizationTrace) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(TRACE_HEADER)?;
    for (i, loss) in trace.best_loss_per_round.iter().enumerate() {
        w.write_record([(i + 1).to_string(), loss.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub channel: &'static str,
    pub p: f64,
    pub t1: f64,
    pub method: &'static str,
    pub e0: f64,
    pub e_baseline: f64,
    pub e_clapton: f64,
    pub eta: String,
}

pub fn write_sweep(path: &Path, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(SWEEP_HEADER)?;
    for r in rows {
        w.write_record([
            r.channel.to_string(),
            r.p.to_string(),
            r.t1.to_string(),
            r.method.to_string(),
            r.e0.to_string(),
            r.e_baseline.to_string(),
            r.e_clapton.to_string(),
            r.eta.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone)]
pub struct ScalingRow {
    pub n: usize,
    pub guess: usize,
    pub total_time: f64,
    pub rounds: usize,
    pub time_per_round: f64,
}

pub fn write_scaling(path: &Path, rows: &[ScalingRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(SCALING_HEADER)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.guess.to_string(),
            r.total_time.to_string(),
            r.rounds.to_string(),
            r.time_per_round.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_trajectory(path: &Path, points: &[SpsaPoint]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(TRAJECTORY_HEADER)?;
    for p in points {
        w.write_record([p.iteration.to_string(), p.energy.to_string(), p.std_error.to_string()])?;
    }
    w.flush()?;
    Ok(())
}
