//! Simultaneous-perturbation stochastic approximation on noisy energies.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::ansatz::{AnsatzParams, AnsatzSpec};
use crate::dense::{noisy_dense_energy, DENSITY_MATRIX_CAP};
use crate::error::{Error, Result};
use crate::hamiltonian::PauliSum;
use crate::noise::{apply_gate_noise, NoiseModel};
use crate::rng::{mix, stream, DOMAIN_SPSA};
use crate::stabilizer::{noisy_energy, EstimatorMode, DEFAULT_LOSS_SAMPLES};

/// Energy evaluator used during refinement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnergyBackend {
    /// Exact density-matrix energy with the full noise model.
    #[default]
    DensityMatrix,
    /// Stabilizer estimate at Clifford angles, density matrix elsewhere.
    StabilizerIfClifford,
}

impl fmt::Display for EnergyBackend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnergyBackend::DensityMatrix => "density_matrix",
            EnergyBackend::StabilizerIfClifford => "stabilizer_if_clifford",
        })
    }
}

impl FromStr for EnergyBackend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "density_matrix" | "dm" => Ok(EnergyBackend::DensityMatrix),
            "stabilizer_if_clifford" | "stabilizer" => Ok(EnergyBackend::StabilizerIfClifford),
            other => Err(Error::InvalidInput(format!("unknown energy backend {other:?}"))),
        }
    }
}

/// Gain schedule `a_k = a/(A+k+1)^α`, `c_k = c/(k+1)^γ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpsaSettings {
    pub alpha: f64,
    pub gamma: f64,
    pub c: f64,
    /// `None` calibrates `a` so the first step has size `target_step`.
    pub a: Option<f64>,
    /// `None` uses `A = 0.1 · iters`.
    pub stability: Option<f64>,
    pub target_step: f64,
    pub calibration_draws: usize,
    /// Reject steps that raise the energy by more than `allowed_increase`.
    pub blocking: bool,
    pub allowed_increase: f64,
    pub include_t1: bool,
    /// Samples per stabilizer estimate.
    pub n_samples: usize,
}

impl Default for SpsaSettings {
    fn default() -> Self {
        SpsaSettings {
            alpha: 0.602,
            gamma: 0.101,
            c: 0.1,
            a: None,
            stability: None,
            target_step: 0.1,
            calibration_draws: 5,
            blocking: false,
            allowed_increase: 0.0,
            include_t1: true,
            n_samples: DEFAULT_LOSS_SAMPLES,
        }
    }
}

/// One recorded iterate.
#[derive(Debug, Clone, PartialEq)]
pub struct SpsaPoint {
    pub iteration: usize,
    pub theta: Vec<f64>,
    pub energy: f64,
    pub std_error: f64,
}

struct Evaluator<'a> {
    h: &'a PauliSum<f64>,
    spec: &'a AnsatzSpec,
    nm: &'a NoiseModel,
    backend: EnergyBackend,
    settings: &'a SpsaSettings,
    seed: u64,
}

impl Evaluator<'_> {
    fn energy(&self, theta: &[f64], call: u64) -> Result<(f64, f64)> {
        let params = AnsatzParams::from_angles(theta.to_vec())?;
        let noisy = apply_gate_noise(&self.spec.build(&params)?, self.nm)?;
        if self.backend == EnergyBackend::StabilizerIfClifford && params.is_clifford() {
            let est = noisy_energy(
                &noisy,
                self.h,
                self.nm,
                self.settings.n_samples,
                EstimatorMode::ExactExpectation,
                mix(self.seed, call),
            )?;
            return Ok((est.mean, est.std_error));
        }
        Ok((noisy_dense_energy(&noisy, self.h, self.nm, self.settings.include_t1)?, 0.0))
    }
}

fn perturbation(seed: u64, k: usize, d: usize) -> Vec<f64> {
    let mut rng = stream(seed, DOMAIN_SPSA | k as u64);
    (0..d).map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 }).collect()
}

/// Relative tolerance under which two deterministic energies count as equal.
const EVEN_TOLERANCE: f64 = 1e-9;

/// Central-difference slope, or the forward difference from `center` when
/// the central difference vanishes to rounding (even landscape around θ).
fn slope(plus: f64, minus: f64, center: f64, c: f64) -> f64 {
    let tol = EVEN_TOLERANCE * (1.0 + center.abs());
    if (plus - minus).abs() <= tol && (plus - center).abs() > tol {
        (plus - center) / c
    } else {
        (plus - minus) / (2.0 * c)
    }
}

/// Slope magnitude used to calibrate `a`: the larger of the central and the
/// one-sided differences, so that calibrating at a minimum still sees the
/// local curvature.
fn calibration_slope(plus: f64, minus: f64, center: f64, c: f64) -> f64 {
    let one_sided = (plus - center).abs().max((minus - center).abs()) / c;
    slope(plus, minus, center, c).abs().max(one_sided)
}

/// Runs `iters` SPSA steps from `theta0`; the trajectory starts with the
/// initial point (iteration 0) and has `iters + 1` entries.
#[allow(clippy::too_many_arguments)]
pub fn spsa_vqe(
    h: &PauliSum<f64>,
    spec: &AnsatzSpec,
    theta0: &AnsatzParams,
    nm: &NoiseModel,
    iters: usize,
    backend: EnergyBackend,
    seed: u64,
    settings: &SpsaSettings,
) -> Result<Vec<SpsaPoint>> {
    if h.n_qubits() != spec.n_qubits() {
        return Err(Error::WidthMismatch { left: spec.n_qubits(), right: h.n_qubits() });
    }
    if h.n_qubits() > DENSITY_MATRIX_CAP {
        return Err(Error::SizeCap { n_qubits: h.n_qubits(), cap: DENSITY_MATRIX_CAP });
    }
    if theta0.len() != spec.n_params() {
        return Err(Error::ParamLength { expected: spec.n_params(), found: theta0.len() });
    }
    let eval = Evaluator { h, spec, nm, backend, settings, seed };
    let d = theta0.len();
    let stability = settings.stability.unwrap_or(0.1 * iters as f64);
    let mut theta = theta0.theta().to_vec();
    let mut calls = 0u64;
    let mut energy_at = |t: &[f64]| {
        calls += 1;
        eval.energy(t, calls)
    };
    let (e, se) = energy_at(&theta)?;
    let mut trajectory = vec![SpsaPoint { iteration: 0, theta: theta.clone(), energy: e, std_error: se }];
    if iters == 0 {
        return Ok(trajectory);
    }
    let shifted = |t: &[f64], delta: &[f64], s: f64| -> Vec<f64> { t.iter().zip(delta).map(|(x, d)| x + s * d).collect() };
    let a = match settings.a {
        Some(a) => a,
        None => {
            let mut mag = 0.0;
            for r in 0..settings.calibration_draws.max(1) {
                let delta = perturbation(mix(seed, 1), r, d);
                let plus = energy_at(&shifted(&theta, &delta, settings.c))?.0;
                let minus = energy_at(&shifted(&theta, &delta, -settings.c))?.0;
                mag += calibration_slope(plus, minus, e, settings.c);
            }
            mag /= settings.calibration_draws.max(1) as f64;
            let scale = (stability + 1.0).powf(settings.alpha);
            if mag > 0.0 {
                settings.target_step * scale / mag
            } else {
                settings.target_step * scale
            }
        }
    };
    let mut current = e;
    for k in 0..iters {
        let ak = a / (stability + k as f64 + 1.0).powf(settings.alpha);
        let ck = settings.c / (k as f64 + 1.0).powf(settings.gamma);
        let delta = perturbation(seed, k, d);
        let plus = energy_at(&shifted(&theta, &delta, ck))?.0;
        let minus = energy_at(&shifted(&theta, &delta, -ck))?.0;
        let g = slope(plus, minus, current, ck);
        let candidate: Vec<f64> = theta.iter().zip(&delta).map(|(t, dl)| t - ak * g * dl).collect();
        let (e_new, se_new) = energy_at(&candidate)?;
        let last_se = trajectory.last().map_or(0.0, |p| p.std_error);
        let (e_keep, se_keep) = if settings.blocking && e_new > current + settings.allowed_increase {
            (current, last_se)
        } else {
            theta = candidate;
            (e_new, se_new)
        };
        current = e_keep;
        trajectory.push(SpsaPoint { iteration: k + 1, theta: theta.clone(), energy: e_keep, std_error: se_keep });
    }
    Ok(trajectory)
}
