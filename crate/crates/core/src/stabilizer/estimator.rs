//! Monte-Carlo estimators of noisy energies on Clifford circuits.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::frames::FrameBatch;
use crate::circuit::Circuit;
use crate::clifford::{anticonjugate_in_place, CliffordGate};
use crate::error::{Error, Result};
use crate::hamiltonian::PauliSum;
use crate::noise::NoiseModel;
use crate::pauli::{Letter, PauliString};
use crate::rng::{stream, DOMAIN_MEASUREMENT};

/// Samples per loss evaluation during optimization.
pub const DEFAULT_LOSS_SAMPLES: usize = 4096;
/// Samples for reported energies.
pub const DEFAULT_REPORT_SAMPLES: usize = 100_000;

/// How per-sample term values are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EstimatorMode {
    /// Exact stabilizer expectation under each sampled fault frame, times the
    /// analytic readout and basis-change attenuation.
    #[default]
    ExactExpectation,
    /// Simulated measurement outcomes with explicit readout and basis-change
    /// bit flips.
    MeasurementSampling,
}

impl fmt::Display for EstimatorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EstimatorMode::ExactExpectation => "exact",
            EstimatorMode::MeasurementSampling => "sampling",
        })
    }
}

impl FromStr for EstimatorMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" | "exact_expectation" => Ok(EstimatorMode::ExactExpectation),
            "sampling" | "measurement_sampling" => Ok(EstimatorMode::MeasurementSampling),
            other => Err(Error::InvalidInput(format!("unknown estimator mode {other:?}"))),
        }
    }
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShotEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: usize,
}

impl ShotEstimate {
    pub fn from_samples(values: &[f64]) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::NoSamples);
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let std_error = if n > 1 {
            let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
            (var / n as f64).sqrt()
        } else {
            0.0
        };
        Ok(ShotEstimate { mean, std_error, n_samples: n })
    }
}

/// Per-qubit attenuation of a term's readout: `(1 − 2 p_meas)` for the
/// symmetric readout flip and `(1 − 4 p1/3)` per noisy basis-change gate
/// (one for X, two for Y).
#[derive(Debug, Clone, PartialEq)]
pub struct ReadoutFactors {
    readout: Vec<f64>,
    basis_gate: Vec<f64>,
}

impl ReadoutFactors {
    pub fn new(n_qubits: usize, nm: &NoiseModel) -> Result<Self> {
        Ok(ReadoutFactors {
            readout: (0..n_qubits).map(|q| Ok(1.0 - 2.0 * nm.p_meas(q)?)).collect::<Result<_>>()?,
            basis_gate: (0..n_qubits).map(|q| Ok(1.0 - 4.0 * nm.p1(q)? / 3.0)).collect::<Result<_>>()?,
        })
    }

    pub fn factor(&self, p: &PauliString) -> f64 {
        p.support()
            .map(|q| {
                let b = self.basis_gate[q];
                self.readout[q]
                    * match p.letter(q) {
                        Letter::X => b,
                        Letter::Y => b * b,
                        _ => 1.0,
                    }
            })
            .product()
    }
}

/// Noisy circuit prepared for repeated energy evaluation with one fixed
/// set of sampled fault frames (common random numbers across calls).
#[derive(Debug, Clone)]
pub struct NoisyEvaluator {
    n_qubits: usize,
    gates: Vec<CliffordGate>,
    frames: FrameBatch,
    factors: ReadoutFactors,
}

impl NoisyEvaluator {
    pub fn new(c_noisy: &Circuit, nm: &NoiseModel, n_samples: usize, seed: u64) -> Result<Self> {
        let gates = c_noisy.clifford_gates()?.into_iter().filter(|g| !is_identity_gate(g)).collect();
        Ok(NoisyEvaluator {
            n_qubits: c_noisy.n_qubits(),
            gates,
            frames: FrameBatch::sample(c_noisy, n_samples, seed)?,
            factors: ReadoutFactors::new(c_noisy.n_qubits(), nm)?,
        })
    }

    pub fn n_samples(&self) -> usize {
        self.frames.n_samples()
    }

    pub fn frames(&self) -> &FrameBatch {
        &self.frames
    }

    /// Noiseless expectation of `p` on the ideal output state.
    pub fn ideal_expectation(&self, p: &PauliString) -> i8 {
        let mut q = p.clone();
        anticonjugate_in_place(&self.gates, &mut q);
        q.zero_state_expectation()
    }

    /// Sample-mean noisy expectation of a signed Pauli.
    pub fn pauli_mean(&self, p: &PauliString) -> f64 {
        if p.is_identity() {
            return p.sign() as f64;
        }
        let e = self.ideal_expectation(p);
        if e == 0 {
            return 0.0;
        }
        let flips = self.frames.flip_count(p) as f64 / self.n_samples() as f64;
        e as f64 * self.factors.factor(p) * (1.0 - 2.0 * flips)
    }

    /// Sample-mean noisy energy of `Σ c_i P_i` (terms may be signed and repeated).
    pub fn energy_mean<'a>(&self, terms: impl IntoIterator<Item = (f64, &'a PauliString)>) -> f64 {
        terms.into_iter().map(|(c, p)| c * self.pauli_mean(p)).sum()
    }

    /// Full estimate in the given mode; `seed` drives measurement sampling.
    pub fn estimate(&self, h: &PauliSum<f64>, mode: EstimatorMode, seed: u64) -> Result<ShotEstimate> {
        if h.n_qubits() != self.n_qubits {
            return Err(Error::WidthMismatch { left: self.n_qubits, right: h.n_qubits() });
        }
        let s = self.n_samples();
        let mut values = vec![0.0f64; s];
        let mut offset = 0.0;
        for (i, (c, p)) in h.terms().iter().enumerate() {
            if p.is_identity() {
                offset += *c * p.sign() as f64;
                continue;
            }
            let e = self.ideal_expectation(p);
            let mask = self.frames.flip_mask(p);
            let flipped = |k: usize| mask[k / 64] >> (k % 64) & 1 == 1;
            match mode {
                EstimatorMode::ExactExpectation => {
                    if e == 0 {
                        continue;
                    }
                    let w = *c * e as f64 * self.factors.factor(p);
                    offset += w;
                    for (k, v) in values.iter_mut().enumerate() {
                        if flipped(k) {
                            *v -= 2.0 * w;
                        }
                    }
                }
                EstimatorMode::MeasurementSampling => {
                    let mut rng = stream(seed, DOMAIN_MEASUREMENT | i as u64);
                    let flip_p = 0.5 * (1.0 - self.factors.factor(p));
                    for (k, v) in values.iter_mut().enumerate() {
                        let mut outcome = match e {
                            0 => rng.random::<bool>(),
                            1 => false,
                            _ => true,
                        };
                        outcome ^= flipped(k);
                        outcome ^= rng.random::<f64>() < flip_p;
                        *v += if outcome { -*c } else { *c };
                    }
                }
            }
        }
        let mut est = ShotEstimate::from_samples(&values)?;
        est.mean += offset;
        Ok(est)
    }
}

fn is_identity_gate(g: &CliffordGate) -> bool {
    matches!(
        g,
        CliffordGate::Rx(_, t) | CliffordGate::Ry(_, t) | CliffordGate::Rz(_, t) if t.step() == 0
    )
}

/// Estimate of `Σ c_i ⟨P_i⟩` on the noisy Clifford circuit `c_noisy`
/// (gates plus depolarizing channels), read out through noisy basis changes
/// and symmetric readout flips taken from `nm`.
pub fn noisy_energy(
    c_noisy: &Circuit,
    h: &PauliSum<f64>,
    nm: &NoiseModel,
    n_samples: usize,
    mode: EstimatorMode,
    seed: u64,
) -> Result<ShotEstimate> {
    if n_samples == 0 {
        return Err(Error::NoSamples);
    }
    if h.n_qubits() != c_noisy.n_qubits() {
        return Err(Error::WidthMismatch { left: c_noisy.n_qubits(), right: h.n_qubits() });
    }
    NoisyEvaluator::new(c_noisy, nm, n_samples, seed)?.estimate(h, mode, seed)
}

/// `⟨0…0|H|0…0⟩`, exact.
pub fn noiseless_energy_zero_state(h: &PauliSum<f64>) -> f64 {
    h.zero_state_energy()
}
