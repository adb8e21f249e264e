//! Clifford problem transformation for variational quantum eigensolvers.
//!
//! A Hamiltonian `H` is replaced by `Ĉ† H Ĉ` for a Clifford `Ĉ` chosen so
//! that the all-zeros state, prepared by the hardware ansatz at zero
//! angles, is a good and noise-robust starting point. The search for `Ĉ`
//! runs a multi-instance genetic algorithm over a stabilizer-simulated
//! noisy loss; exact dense simulators serve as reference oracles.

pub mod ansatz;
pub mod circuit;
pub mod clifford;
pub mod dense;
pub mod error;
pub mod ga;
pub mod hamiltonian;
pub mod noise;
pub mod pauli;
pub mod pipeline;
mod rng;
pub mod scalar;
pub mod stabilizer;

pub use ansatz::{build_transform_circuit, build_vqe_ansatz, AnsatzParams, AnsatzSpec, Topology, TransformParams};
pub use circuit::{Circuit, Gate, GateKind, Op};
pub use clifford::{transform_hamiltonian, CliffordGate, CliffordTableau, QuarterTurns};
pub use error::{Error, Result};
pub use ga::{multi_instance_optimize, GAConfig, Genome, Objective, OptimizationTrace};
pub use hamiltonian::PauliSum;
pub use noise::{append_measurement, apply_gate_noise, NoiseModel};
pub use pauli::{Letter, PauliString};
pub use pipeline::{run_cafqa, run_clapton, run_ncafqa, spsa_vqe, RunOptions};
pub use scalar::Real;
pub use stabilizer::{noisy_energy, EstimatorMode, ShotEstimate, StabilizerState};

/// Double-precision Hamiltonian.
pub type Hamiltonian = PauliSum<f64>;
/// Single-precision Hamiltonian.
pub type Hamiltonian32 = PauliSum<f32>;
