//! End-to-end flows: transformation search, baselines, VQE refinement and
//! reported metrics.

pub mod benchmarks;
mod loss;
pub mod metrics;
mod runs;
mod spsa;

pub use loss::{clapton_loss, CafqaObjective, ClaptonObjective, NcafqaObjective};
pub use metrics::{normalized_energy, relative_improvement, Improvement};
pub use runs::{
    evaluate_energies, run_cafqa, run_clapton, run_ncafqa, BaselineResult, ClaptonResult, Energies, RunOptions,
};
pub use spsa::{spsa_vqe, EnergyBackend, SpsaPoint, SpsaSettings};
