//! End-to-end transformation search and the two Clifford-initialization
//! baselines.

use crate::ansatz::{build_transform_circuit, AnsatzParams, AnsatzSpec, TransformParams};
use crate::circuit::Circuit;
use crate::clifford::{transform_by_gates, CliffordGate};
use crate::dense::{exact_ground_energy, fully_mixed_energy, noisy_dense_energy, DENSITY_MATRIX_CAP};
use crate::error::{Error, Result};
use crate::ga::{multi_instance_optimize, GAConfig, Objective, OptimizationTrace};
use crate::hamiltonian::PauliSum;
use crate::noise::{apply_gate_noise, NoiseModel};
use crate::rng::{mix, DOMAIN_MISC};
use crate::stabilizer::{noisy_energy, EstimatorMode, ShotEstimate, DEFAULT_LOSS_SAMPLES, DEFAULT_REPORT_SAMPLES};

use super::loss::{CafqaObjective, ClaptonObjective, NcafqaObjective};

/// Sample counts and which reference energies to compute.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub loss_samples: usize,
    pub report_samples: usize,
    /// Evaluate the full noise model (density matrix) when within the dense cap.
    pub full_evaluation: bool,
    /// Include amplitude damping in the full evaluation.
    pub include_t1: bool,
    /// Diagonalize for the ground energy when within the dense cap.
    pub ground_energy: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            loss_samples: DEFAULT_LOSS_SAMPLES,
            report_samples: DEFAULT_REPORT_SAMPLES,
            full_evaluation: true,
            include_t1: true,
            ground_energy: true,
        }
    }
}

/// Energies of one initialization.
#[derive(Debug, Clone, PartialEq)]
pub struct Energies {
    /// Noiseless energy of the initial state.
    pub l0: f64,
    /// Clifford-noise-model estimate (depolarizing and readout only).
    pub ln_clifford: ShotEstimate,
    /// Full-noise-model energy, when computed.
    pub e_full: Option<f64>,
    /// Exact ground energy, when computed.
    pub e0: Option<f64>,
    pub e_mixed: f64,
}

#[derive(Debug, Clone)]
pub struct ClaptonResult {
    pub gamma_hat: TransformParams,
    pub transformed_hamiltonian: PauliSum<f64>,
    pub transform_gates: Vec<CliffordGate>,
    pub loss_trace: OptimizationTrace,
    pub energies: Energies,
}

#[derive(Debug, Clone)]
pub struct BaselineResult {
    pub theta_init: AnsatzParams,
    /// Angle steps (multiples of π/2) behind `theta_init`.
    pub steps: Vec<u8>,
    pub loss_trace: OptimizationTrace,
    pub energies: Energies,
}

fn check_widths(h: &PauliSum<f64>, spec: &AnsatzSpec) -> Result<()> {
    if h.n_qubits() != spec.n_qubits() {
        return Err(Error::WidthMismatch { left: spec.n_qubits(), right: h.n_qubits() });
    }
    Ok(())
}

/// Energies of `h` on the state prepared by the ansatz circuit `c`.
pub fn evaluate_energies(
    h: &PauliSum<f64>,
    c: &Circuit,
    nm: &NoiseModel,
    opts: &RunOptions,
    seed: u64,
) -> Result<Energies> {
    let noisy = apply_gate_noise(c, nm)?;
    let ideal = crate::stabilizer::StabilizerState::zero(c.n_qubits()).run(c)?;
    let l0 = h.terms().iter().map(|(k, p)| Ok(k * ideal.expectation(p)? as f64)).sum::<Result<f64>>()?;
    let within_cap = h.n_qubits() <= DENSITY_MATRIX_CAP;
    Ok(Energies {
        l0,
        ln_clifford: noisy_energy(
            &noisy,
            h,
            nm,
            opts.report_samples,
            EstimatorMode::ExactExpectation,
            mix(seed, DOMAIN_MISC),
        )?,
        e_full: if opts.full_evaluation && within_cap {
            Some(noisy_dense_energy(&noisy, h, nm, opts.include_t1)?)
        } else {
            None
        },
        e0: if opts.ground_energy && within_cap { Some(exact_ground_energy(h)?) } else { None },
        e_mixed: fully_mixed_energy(h),
    })
}

/// Searches the `5N` transformation genes and reports the transformed problem.
pub fn run_clapton(
    h: &PauliSum<f64>,
    spec: &AnsatzSpec,
    nm: &NoiseModel,
    ga_cfg: &GAConfig,
    seed: u64,
    opts: &RunOptions,
) -> Result<ClaptonResult> {
    check_widths(h, spec)?;
    let n = h.n_qubits();
    nm.check_covers(n, &spec.pairs())?;
    let zero = spec.build(&AnsatzParams::zeros(spec.n_params()))?;
    let objective = ClaptonObjective::new(h, apply_gate_noise(&zero, nm)?, nm, opts.loss_samples)?;
    let cfg = ga_cfg.clone().with_genome(5 * n, 4).with_seed(seed);
    let trace = multi_instance_optimize(&objective, &cfg)?;
    let gamma_hat = TransformParams::new(n, trace.best_genome.genes.clone())?;
    let transform_gates = build_transform_circuit(n, &gamma_hat)?;
    let transformed = transform_by_gates(h, &transform_gates)?;
    let energies = evaluate_energies(&transformed, &zero, nm, opts, seed)?;
    Ok(ClaptonResult { gamma_hat, transformed_hamiltonian: transformed, transform_gates, loss_trace: trace, energies })
}

fn run_baseline(
    h: &PauliSum<f64>,
    spec: &AnsatzSpec,
    nm: &NoiseModel,
    objective: &dyn Objective,
    ga_cfg: &GAConfig,
    seed: u64,
    opts: &RunOptions,
) -> Result<BaselineResult> {
    let cfg = ga_cfg.clone().with_genome(spec.n_params(), 4).with_seed(seed);
    let trace = multi_instance_optimize(objective, &cfg)?;
    let steps = trace.best_genome.genes.clone();
    let theta_init = AnsatzParams::from_steps(&steps)?;
    let energies = evaluate_energies(h, &spec.build(&theta_init)?, nm, opts, seed)?;
    Ok(BaselineResult { theta_init, steps, loss_trace: trace, energies })
}

/// Noiseless Clifford-angle search on the original problem. `nm` is used
/// only to report noisy energies of the result.
pub fn run_cafqa(
    h: &PauliSum<f64>,
    spec: &AnsatzSpec,
    nm: &NoiseModel,
    ga_cfg: &GAConfig,
    seed: u64,
    opts: &RunOptions,
) -> Result<BaselineResult> {
    check_widths(h, spec)?;
    nm.check_covers(h.n_qubits(), &spec.pairs())?;
    run_baseline(h, spec, nm, &CafqaObjective::new(h, spec)?, ga_cfg, seed, opts)
}

/// Noise-aware Clifford-angle search on the original problem.
pub fn run_ncafqa(
    h: &PauliSum<f64>,
    spec: &AnsatzSpec,
    nm: &NoiseModel,
    ga_cfg: &GAConfig,
    seed: u64,
    opts: &RunOptions,
) -> Result<BaselineResult> {
    check_widths(h, spec)?;
    let objective = NcafqaObjective::new(h, spec, nm, opts.loss_samples)?;
    run_baseline(h, spec, nm, &objective, ga_cfg, seed, opts)
}
