use thiserror::Error;

/// Errors surfaced by state construction, register operations and channel
/// verification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix dimension {0} is not a power of two in [2, 16]")]
    InvalidDimension(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("tensor product dimension {0} exceeds the three-qubit register limit")]
    RegisterOverflow(usize),
    #[error("qubit index {index} out of range for a {nqubits}-qubit register")]
    QubitOutOfRange { index: usize, nqubits: usize },
    #[error("target qubit indices must be distinct")]
    DuplicateTargets,
    #[error("keep set must not be empty")]
    EmptyKeepSet,
    #[error("matrix is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),
    #[error("parameter {name} = {value} outside [0, 1]")]
    ParameterOutOfRange { name: &'static str, value: f64 },
    #[error("angle {name} = {value} outside its allowed range")]
    AngleOutOfRange { name: &'static str, value: f64 },
    #[error("state vector has (near-)zero norm")]
    ZeroNorm,
    #[error("not a physical density matrix: {what} deviation {deviation:.3e}")]
    NotPhysical { what: &'static str, deviation: f64 },
    #[error("matrix contains a non-finite entry")]
    NonFinite,
    #[error("channel is not trace preserving (deviation {0:.3e})")]
    NotTracePreserving(f64),
    #[error("branch probabilities sum to {0}, expected 1")]
    ProbabilityNotNormalized(f64),
    #[error("monte carlo sample count {0} is below the minimum of 100")]
    TooFewSamples(usize),
    #[error("fidelity value {0} lies outside [0, 1] beyond tolerance")]
    FidelityOutOfRange(f64),
    #[error("parameter grid is empty")]
    EmptyGrid,
}

pub type Result<T> = std::result::Result<T, Error>;
