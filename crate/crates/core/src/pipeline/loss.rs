//! Loss functions for the transformation search and the two baselines.

use crate::ansatz::{transform_gates_unchecked, AnsatzParams, AnsatzSpec, TransformParams};
use crate::circuit::Circuit;
use crate::clifford::{anticonjugate_in_place, CliffordGate};
use crate::error::{Error, Result};
use crate::ga::{LossFn, Objective};
use crate::hamiltonian::PauliSum;
use crate::noise::{apply_gate_noise, NoiseModel};
use crate::stabilizer::NoisyEvaluator;

/// `L(γ) = L_N(γ) + L_0(γ)`: noisy energy of `C(γ)† H C(γ)` on the noisy
/// zero-angle ansatz plus its noiseless all-zeros energy.
pub struct ClaptonObjective<'a> {
    h: &'a PauliSum<f64>,
    noisy_zero: Circuit,
    nm: &'a NoiseModel,
    n_samples: usize,
}

impl<'a> ClaptonObjective<'a> {
    pub fn new(h: &'a PauliSum<f64>, noisy_zero: Circuit, nm: &'a NoiseModel, n_samples: usize) -> Result<Self> {
        if h.n_qubits() != noisy_zero.n_qubits() {
            return Err(Error::WidthMismatch { left: noisy_zero.n_qubits(), right: h.n_qubits() });
        }
        if n_samples == 0 {
            return Err(Error::NoSamples);
        }
        noisy_zero.clifford_gates()?;
        Ok(ClaptonObjective { h, noisy_zero, nm, n_samples })
    }

    fn evaluator(&self, seed: u64) -> Result<NoisyEvaluator> {
        NoisyEvaluator::new(&self.noisy_zero, self.nm, self.n_samples, seed)
    }
}

fn clapton_value(h: &PauliSum<f64>, eval: &NoisyEvaluator, gates: &[CliffordGate]) -> f64 {
    let mut total = 0.0;
    for (c, p) in h.terms() {
        let mut q = p.clone();
        anticonjugate_in_place(gates, &mut q);
        total += c * (eval.pauli_mean(&q) + q.zero_state_expectation() as f64);
    }
    total
}

impl Objective for ClaptonObjective<'_> {
    fn round_loss(&self, eval_seed: u64) -> Result<LossFn<'_>> {
        let eval = self.evaluator(eval_seed)?;
        let n = self.h.n_qubits();
        Ok(Box::new(move |genes: &[u8]| clapton_value(self.h, &eval, &transform_gates_unchecked(n, genes))))
    }
}

/// Single evaluation of the transformation loss.
pub fn clapton_loss(
    gamma: &TransformParams,
    h: &PauliSum<f64>,
    noisy_ansatz_zero: &Circuit,
    nm: &NoiseModel,
    n_samples: usize,
    seed: u64,
) -> Result<f64> {
    let n = h.n_qubits();
    if gamma.n_qubits() != n {
        return Err(Error::ParamLength { expected: 5 * n, found: gamma.gamma().len() });
    }
    let obj = ClaptonObjective::new(h, noisy_ansatz_zero.clone(), nm, n_samples)?;
    Ok(clapton_value(h, &obj.evaluator(seed)?, &transform_gates_unchecked(n, gamma.gamma())))
}

/// Clifford gate list of the ansatz at angle steps `genes`.
fn ansatz_gates(spec: &AnsatzSpec, genes: &[u8]) -> Result<Vec<CliffordGate>> {
    spec.build(&AnsatzParams::from_steps(genes)?)?.clifford_gates()
}

/// Noiseless stabilizer energy `⟨0|A(θ)† H A(θ)|0⟩` at Clifford angles.
pub struct CafqaObjective<'a> {
    h: &'a PauliSum<f64>,
    spec: &'a AnsatzSpec,
}

impl<'a> CafqaObjective<'a> {
    pub fn new(h: &'a PauliSum<f64>, spec: &'a AnsatzSpec) -> Result<Self> {
        if h.n_qubits() != spec.n_qubits() {
            return Err(Error::WidthMismatch { left: spec.n_qubits(), right: h.n_qubits() });
        }
        Ok(CafqaObjective { h, spec })
    }

    pub fn value(&self, genes: &[u8]) -> Result<f64> {
        let gates = ansatz_gates(self.spec, genes)?;
        Ok(self
            .h
            .terms()
            .iter()
            .map(|(c, p)| {
                let mut q = p.clone();
                anticonjugate_in_place(&gates, &mut q);
                c * q.zero_state_expectation() as f64
            })
            .sum())
    }
}

impl Objective for CafqaObjective<'_> {
    fn round_loss(&self, _eval_seed: u64) -> Result<LossFn<'_>> {
        Ok(Box::new(move |genes: &[u8]| self.value(genes).unwrap_or(f64::NAN)))
    }
}

/// Noisy plus noiseless energy of `H` on the noise-equipped ansatz at
/// Clifford angles.
pub struct NcafqaObjective<'a> {
    h: &'a PauliSum<f64>,
    spec: &'a AnsatzSpec,
    nm: &'a NoiseModel,
    n_samples: usize,
}

impl<'a> NcafqaObjective<'a> {
    pub fn new(h: &'a PauliSum<f64>, spec: &'a AnsatzSpec, nm: &'a NoiseModel, n_samples: usize) -> Result<Self> {
        if h.n_qubits() != spec.n_qubits() {
            return Err(Error::WidthMismatch { left: spec.n_qubits(), right: h.n_qubits() });
        }
        if n_samples == 0 {
            return Err(Error::NoSamples);
        }
        nm.check_covers(spec.n_qubits(), &spec.pairs())?;
        Ok(NcafqaObjective { h, spec, nm, n_samples })
    }

    pub fn value(&self, genes: &[u8], eval_seed: u64) -> Result<f64> {
        let circuit = self.spec.build(&AnsatzParams::from_steps(genes)?)?;
        let eval = NoisyEvaluator::new(&apply_gate_noise(&circuit, self.nm)?, self.nm, self.n_samples, eval_seed)?;
        Ok(self
            .h
            .terms()
            .iter()
            .map(|(c, p)| c * (eval.pauli_mean(p) + eval.ideal_expectation(p) as f64))
            .sum())
    }
}

impl Objective for NcafqaObjective<'_> {
    fn round_loss(&self, eval_seed: u64) -> Result<LossFn<'_>> {
        Ok(Box::new(move |genes: &[u8]| self.value(genes, eval_seed).unwrap_or(f64::NAN)))
    }
}
