use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Pauli character {found:?} at position {position}")]
    InvalidPauliChar { position: usize, found: char },
    #[error("expected {expected} Pauli letters, found {found}")]
    PauliLength { expected: usize, found: usize },
    #[error("operator widths differ: {left} vs {right} qubits")]
    WidthMismatch { left: usize, right: usize },
    #[error("Pauli product has imaginary phase")]
    ImaginaryPhase,
    #[error("qubit index {qubit} out of range for {n_qubits} qubits")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("two-qubit operation on repeated qubit {0}")]
    RepeatedQubit(usize),
    #[error("probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("gate angle {angle} is not a multiple of pi/2")]
    NonClifford { angle: f64 },
    #[error("parameter vector has length {found}, expected {expected}")]
    ParamLength { expected: usize, found: usize },
    #[error("parameter {index} has value {value}, allowed range is 0..{limit}")]
    ParamRange { index: usize, value: usize, limit: usize },
    #[error("measurement followed by a gate at op {0}")]
    GateAfterMeasure(usize),
    #[error("noise model has no {field} entry for {target}")]
    MissingNoise { field: &'static str, target: String },
    #[error("invalid noise model: {0}")]
    InvalidNoise(String),
    #[error("{path}: line {line}: {message}")]
    Parse { path: String, line: usize, message: String },
    #[error("{0}: no terms")]
    NoTerms(String),
    #[error("{n_qubits} qubits exceeds the dense simulator cap of {cap}")]
    SizeCap { n_qubits: usize, cap: usize },
    #[error("noise channel in a noiseless simulation at op {0}")]
    NoiseInNoiselessRun(usize),
    #[error("sample count must be positive")]
    NoSamples,
    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),
    #[error("loss is not finite for genome {genes:?}")]
    NonFiniteLoss { genes: Vec<u8> },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn io_error(path: &std::path::Path, source: std::io::Error) -> Error {
    Error::Io { path: path.to_path_buf(), source }
}
