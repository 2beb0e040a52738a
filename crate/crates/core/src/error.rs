use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("{0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("k = {k} is outside [1, {max}]", max = p - 1)]
    KOutOfRange { k: u64, p: u64 },

    #[error("{requested} qubits exceeds the supported maximum of {max}")]
    TooManyQubits { requested: usize, max: usize },

    #[error("qubit {qubit} is out of range for a {num_qubits}-qubit circuit")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("qubit {0} appears more than once in a gate")]
    DuplicateQubit(usize),

    #[error("non-finite rotation angle")]
    NonFiniteAngle,

    #[error("multi-controlled X with {controls} controls needs an ancilla qubit")]
    MissingAncilla { controls: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported gate: {0}")]
    UnsupportedGate(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
