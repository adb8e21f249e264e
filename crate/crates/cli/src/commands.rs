use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::anyhow;
use clap::{Args, ValueEnum};

use clifford_vqe::ga::multi_instance_optimize;
use clifford_vqe::pipeline::{
    benchmarks, relative_improvement, run_cafqa, run_clapton, run_ncafqa, spsa_vqe, ClaptonObjective,
    EnergyBackend, SpsaSettings,
};
use clifford_vqe::{
    apply_gate_noise, AnsatzParams, AnsatzSpec, Circuit, GAConfig, Hamiltonian, NoiseModel, Op, RunOptions, Topology,
};

use crate::output::{self, ResultRow};
use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Ising,
    Xxz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Clapton,
    Cafqa,
    Ncafqa,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Clapton => "clapton",
            Method::Cafqa => "cafqa",
            Method::Ncafqa => "ncafqa",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Channel {
    Gate,
    Meas,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    /// Number of qubits (at least 2).
    #[arg(long)]
    pub n: usize,
    /// Coupling strength.
    #[arg(long)]
    pub j: f64,
    /// Output Hamiltonian file.
    #[arg(long)]
    pub out: PathBuf,
}

/// Optimizer budget overrides shared by the search commands.
#[derive(Args, Debug, Clone)]
pub struct GaArgs {
    /// Parallel instances.
    #[arg(long, default_value_t = 10)]
    pub instances: usize,
    /// Generations per round.
    #[arg(long, default_value_t = 100)]
    pub generations: usize,
    /// Genomes each instance contributes to the pool.
    #[arg(long, default_value_t = 20)]
    pub top_k: usize,
    #[arg(long, default_value_t = 100)]
    pub pop_size: usize,
    /// Consecutive non-improving rounds tolerated before stopping.
    #[arg(long, default_value_t = 2)]
    pub retry_rounds: usize,
    /// Hard cap on rounds.
    #[arg(long)]
    pub max_rounds: Option<usize>,
    /// Samples per loss evaluation.
    #[arg(long, default_value_t = clifford_vqe::stabilizer::DEFAULT_LOSS_SAMPLES)]
    pub loss_samples: usize,
}

impl GaArgs {
    fn config(&self) -> GAConfig {
        GAConfig {
            s: self.instances,
            m: self.generations,
            k: self.top_k,
            pop_size: self.pop_size,
            retry_rounds: self.retry_rounds,
            max_rounds: self.max_rounds,
            ..GAConfig::default()
        }
    }
}

/// Circuit family for the search commands.
#[derive(Args, Debug, Clone)]
pub struct AnsatzArgs {
    /// Entangling layout of the hardware ansatz.
    #[arg(long, default_value = "ring")]
    pub topology: Topology,
    /// Pre-routed ansatz template file; overrides `--topology`.
    #[arg(long)]
    pub ansatz_circuit: Option<PathBuf>,
}

impl AnsatzArgs {
    fn spec(&self, n_qubits: usize) -> CliResult<AnsatzSpec> {
        match &self.ansatz_circuit {
            None => Ok(AnsatzSpec::hardware(n_qubits, self.topology)),
            Some(path) => Ok(AnsatzSpec::custom(Circuit::read(path, Some(n_qubits))?)?),
        }
    }
}

#[derive(Args, Debug)]
pub struct OptimizeArgs {
    #[arg(long, value_enum)]
    pub method: Method,
    #[arg(long)]
    pub hamiltonian: PathBuf,
    #[arg(long)]
    pub noise: PathBuf,
    #[arg(long)]
    pub seed: u64,
    /// Directory receiving the result files (created if absent).
    #[arg(long)]
    pub out_dir: PathBuf,
    #[command(flatten)]
    pub ansatz: AnsatzArgs,
    #[command(flatten)]
    pub ga: GaArgs,
    /// Samples behind the reported Clifford-model energy.
    #[arg(long, default_value_t = clifford_vqe::stabilizer::DEFAULT_REPORT_SAMPLES)]
    pub report_samples: usize,
    /// Leave amplitude damping out of the full-model energy.
    #[arg(long)]
    pub no_t1: bool,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub channel: Channel,
    #[arg(long)]
    pub hamiltonian: PathBuf,
    #[arg(long)]
    pub seed: u64,
    /// Output CSV.
    #[arg(long)]
    pub out: PathBuf,
    /// Grid points, log-spaced between the bounds.
    #[arg(long, default_value_t = 10)]
    pub points: usize,
    /// Lower grid bound (default 5e-4 for gate, 5e-3 for meas).
    #[arg(long)]
    pub p_min: Option<f64>,
    /// Upper grid bound (default 5e-3 for gate, 9.5e-2 for meas).
    #[arg(long)]
    pub p_max: Option<f64>,
    /// Relaxation times in seconds.
    #[arg(long, value_delimiter = ',', default_values_t = [50e-6, 100e-6, 150e-6])]
    pub t1: Vec<f64>,
    #[command(flatten)]
    pub ansatz: AnsatzArgs,
    #[command(flatten)]
    pub ga: GaArgs,
    #[arg(long, default_value_t = clifford_vqe::stabilizer::DEFAULT_REPORT_SAMPLES)]
    pub report_samples: usize,
}

#[derive(Args, Debug)]
pub struct ScalingArgs {
    #[arg(long, value_enum, default_value = "ising")]
    pub model: Model,
    #[arg(long, default_value_t = 0.25)]
    pub j: f64,
    #[arg(long)]
    pub n_min: usize,
    #[arg(long)]
    pub n_max: usize,
    /// Independent optimizations per size.
    #[arg(long)]
    pub guesses: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    /// Noise model file (default: p1 1e-3, p2 1e-2, p_meas 3e-2, T1 100 us).
    #[arg(long)]
    pub noise: Option<PathBuf>,
    #[command(flatten)]
    pub ga: GaArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    DensityMatrix,
    StabilizerIfClifford,
}

#[derive(Args, Debug)]
pub struct VqeArgs {
    /// Problem Hamiltonian; ignored when starting from a transformation result.
    #[arg(long)]
    pub hamiltonian: Option<PathBuf>,
    /// Output directory of an `optimize` run; omitted means all-zero angles.
    #[arg(long)]
    pub init: Option<PathBuf>,
    #[arg(long)]
    pub noise: PathBuf,
    #[arg(long, default_value_t = 300)]
    pub iters: usize,
    #[arg(long)]
    pub seed: u64,
    /// Trajectory CSV.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub ansatz: AnsatzArgs,
    #[arg(long, value_enum, default_value = "density-matrix")]
    pub backend: Backend,
    #[arg(long)]
    pub no_t1: bool,
    /// Reject steps that raise the energy.
    #[arg(long)]
    pub blocking: bool,
}

fn usage(msg: String) -> CliError {
    CliError::Usage(anyhow!(msg))
}

fn internal(e: impl Into<anyhow::Error>) -> CliError {
    CliError::Internal(e.into())
}

fn read_noise(path: &Path) -> CliResult<NoiseModel> {
    if !path.exists() {
        return Err(usage(format!("noise model file {} does not exist", path.display())));
    }
    Ok(NoiseModel::read(path)?)
}

fn read_hamiltonian(path: &Path) -> CliResult<Hamiltonian> {
    if !path.exists() {
        return Err(usage(format!("Hamiltonian file {} does not exist", path.display())));
    }
    Ok(Hamiltonian::read(path)?)
}

pub fn bench(a: &BenchArgs) -> CliResult {
    let h = match a.model {
        Model::Ising => benchmarks::ising(a.n, a.j)?,
        Model::Xxz => benchmarks::xxz(a.n, a.j)?,
    };
    h.write(&a.out)?;
    println!("wrote {} terms on {} qubits to {}", h.len(), h.n_qubits(), a.out.display());
    Ok(())
}

pub fn optimize(a: &OptimizeArgs) -> CliResult {
    let h = read_hamiltonian(&a.hamiltonian)?;
    let nm = read_noise(&a.noise)?;
    let spec = a.ansatz.spec(h.n_qubits())?;
    let opts = RunOptions {
        loss_samples: a.ga.loss_samples,
        report_samples: a.report_samples,
        include_t1: !a.no_t1,
        ..RunOptions::default()
    };
    fs::create_dir_all(&a.out_dir).map_err(|e| usage(format!("cannot create {}: {e}", a.out_dir.display())))?;
    let cfg = a.ga.config();
    let (row, trace) = match a.method {
        Method::Clapton => {
            let r = run_clapton(&h, &spec, &nm, &cfg, a.seed, &opts)?;
            r.transformed_hamiltonian.write(a.out_dir.join(output::TRANSFORMED_FILE))?;
            let circuit = Circuit::from_ops(h.n_qubits(), r.transform_gates.iter().map(|g| Op::Gate(g.to_gate())))?;
            circuit.write(a.out_dir.join(output::TRANSFORM_CIRCUIT_FILE))?;
            (ResultRow::new(a.method.name(), a.seed, &r.energies, &r.loss_trace, r.gamma_hat.gamma()), r.loss_trace)
        }
        Method::Cafqa | Method::Ncafqa => {
            let r = if a.method == Method::Cafqa {
                run_cafqa(&h, &spec, &nm, &cfg, a.seed, &opts)?
            } else {
                run_ncafqa(&h, &spec, &nm, &cfg, a.seed, &opts)?
            };
            (ResultRow::new(a.method.name(), a.seed, &r.energies, &r.loss_trace, &r.steps), r.loss_trace)
        }
    };
    output::write_results(&a.out_dir.join(output::RESULT_FILE), std::slice::from_ref(&row)).map_err(internal)?;
    output::write_trace(&a.out_dir.join(output::TRACE_FILE), &trace).map_err(internal)?;
    println!("{}", row.summary());
    Ok(())
}

fn log_grid(lo: f64, hi: f64, points: usize) -> CliResult<Vec<f64>> {
    if !(lo > 0.0 && hi >= lo && hi <= 1.0) {
        return Err(usage(format!("grid bounds must satisfy 0 < p_min <= p_max <= 1, got [{lo}, {hi}]")));
    }
    match points {
        0 => Err(usage("--points must be positive".into())),
        1 => Ok(vec![lo]),
        _ => {
            let step = (hi / lo).ln() / (points - 1) as f64;
            Ok((0..points).map(|i| if i + 1 == points { hi } else { lo * (step * i as f64).exp() }).collect())
        }
    }
}

/// Grid of the swept parameter for `channel` with the documented defaults.
pub fn sweep_grid(channel: Channel, p_min: Option<f64>, p_max: Option<f64>, points: usize) -> CliResult<Vec<f64>> {
    let (lo, hi) = match channel {
        Channel::Gate => (5e-4, 5e-3),
        Channel::Meas => (5e-3, 9.5e-2),
    };
    log_grid(p_min.unwrap_or(lo), p_max.unwrap_or(hi), points)
}

pub fn sweep(a: &SweepArgs) -> CliResult {
    let h = read_hamiltonian(&a.hamiltonian)?;
    let spec = a.ansatz.spec(h.n_qubits())?;
    let grid = sweep_grid(a.channel, a.p_min, a.p_max, a.points)?;
    if a.t1.is_empty() || a.t1.iter().any(|t| !(*t > 0.0)) {
        return Err(usage("--t1 values must be positive".into()));
    }
    let opts = RunOptions { loss_samples: a.ga.loss_samples, report_samples: a.report_samples, ..RunOptions::default() };
    let cfg = a.ga.config();
    let mut rows = Vec::new();
    for &t1 in &a.t1 {
        for &p in &grid {
            let nm = match a.channel {
                Channel::Gate => NoiseModel::uniform(p, (10.0 * p).min(1.0), 0.0, t1)?,
                Channel::Meas => NoiseModel::uniform(0.0, 0.0, p, t1)?,
            };
            let clapton = run_clapton(&h, &spec, &nm, &cfg, a.seed, &opts)?;
            let baseline = run_ncafqa(&h, &spec, &nm, &cfg, a.seed, &opts)?;
            let missing = || usage(format!("{} qubits exceeds the dense evaluation cap", h.n_qubits()));
            let e0 = clapton.energies.e0.ok_or_else(missing)?;
            let e_clapton = clapton.energies.e_full.ok_or_else(missing)?;
            let e_baseline = baseline.energies.e_full.ok_or_else(missing)?;
            let eta = relative_improvement(e0, e_baseline, e_clapton)?;
            let row = output::SweepRow {
                channel: match a.channel {
                    Channel::Gate => "gate",
                    Channel::Meas => "meas",
                },
                p,
                t1,
                method: Method::Ncafqa.name(),
                e0,
                e_baseline,
                e_clapton,
                eta: eta.to_string(),
            };
            println!("p={p:e} t1={t1:e} eta={eta}");
            rows.push(row);
        }
    }
    output::write_sweep(&a.out, &rows).map_err(internal)
}

pub fn scaling(a: &ScalingArgs) -> CliResult {
    if a.guesses == 0 {
        return Err(usage("--guesses must be positive".into()));
    }
    if a.n_min < 2 || a.n_max < a.n_min {
        return Err(usage(format!("size range {}..{} must be ascending and start at 2 or more", a.n_min, a.n_max)));
    }
    let nm = match &a.noise {
        Some(path) => read_noise(path)?,
        None => NoiseModel::uniform(1e-3, 1e-2, 3e-2, 100e-6)?,
    };
    let mut rows = Vec::new();
    for n in a.n_min..=a.n_max {
        let h = match a.model {
            Model::Ising => benchmarks::ising(n, a.j)?,
            Model::Xxz => benchmarks::xxz(n, a.j)?,
        };
        let spec = AnsatzSpec::hardware(n, Topology::Ring);
        let zero = spec.build(&AnsatzParams::zeros(spec.n_params()))?;
        let objective = ClaptonObjective::new(&h, apply_gate_noise(&zero, &nm)?, &nm, a.ga.loss_samples)?;
        for guess in 0..a.guesses {
            let cfg = a.ga.config().with_genome(5 * n, 4).with_seed(a.seed.wrapping_add(guess as u64));
            let start = Instant::now();
            let trace = multi_instance_optimize(&objective, &cfg)?;
            let total = start.elapsed().as_secs_f64();
            let row = output::ScalingRow {
                n,
                guess,
                total_time: total,
                rounds: trace.rounds,
                time_per_round: total / trace.rounds as f64,
            };
            println!("n={n} guess={guess} rounds={} time_per_round={:.4}s", row.rounds, row.time_per_round);
            rows.push(row);
        }
    }
    output::write_scaling(&a.out, &rows).map_err(internal)
}

pub fn vqe(a: &VqeArgs) -> CliResult {
    let nm = read_noise(&a.noise)?;
    let (h, theta0_steps) = match &a.init {
        None => {
            let path = a.hamiltonian.as_ref().ok_or_else(|| usage("--hamiltonian is required without --init".into()))?;
            (read_hamiltonian(path)?, None)
        }
        Some(dir) => {
            let row = output::read_result(&dir.join(output::RESULT_FILE))
                .map_err(|e| usage(format!("cannot read result in {}: {e:#}", dir.display())))?;
            if row.method == Method::Clapton.name() {
                (read_hamiltonian(&dir.join(output::TRANSFORMED_FILE))?, None)
            } else {
                let path = a
                    .hamiltonian
                    .as_ref()
                    .ok_or_else(|| usage("--hamiltonian is required with a baseline result".into()))?;
                (read_hamiltonian(path)?, Some(row.param_values().map_err(|e| usage(format!("{e:#}")))?))
            }
        }
    };
    let spec = a.ansatz.spec(h.n_qubits())?;
    let theta0 = match theta0_steps {
        Some(steps) => AnsatzParams::from_steps(&steps)?,
        None => AnsatzParams::zeros(spec.n_params()),
    };
    let settings = SpsaSettings { include_t1: !a.no_t1, blocking: a.blocking, ..SpsaSettings::default() };
    let backend = match a.backend {
        Backend::DensityMatrix => EnergyBackend::DensityMatrix,
        Backend::StabilizerIfClifford => EnergyBackend::StabilizerIfClifford,
    };
    let trajectory = spsa_vqe(&h, &spec, &theta0, &nm, a.iters, backend, a.seed, &settings)?;
    output::write_trajectory(&a.out, &trajectory).map_err(internal)?;
    let (first, last) = (&trajectory[0], &trajectory[trajectory.len() - 1]);
    println!("initial energy {} final energy {} after {} iterations", first.energy, last.energy, last.iteration);
    Ok(())
}
