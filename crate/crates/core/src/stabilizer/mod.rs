//! Stabilizer-state simulation and Monte-Carlo noisy-energy estimation.

mod estimator;
mod frames;
mod state;

pub use estimator::{
    noiseless_energy_zero_state, noisy_energy, EstimatorMode, NoisyEvaluator, ReadoutFactors, ShotEstimate,
    DEFAULT_LOSS_SAMPLES, DEFAULT_REPORT_SAMPLES,
};
pub use frames::{sample_pauli_errors, FrameBatch};
pub use state::StabilizerState;
