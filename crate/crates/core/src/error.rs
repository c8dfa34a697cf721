use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expected {expected} amplitudes for {n} qubits, got {got}")]
    DimensionMismatch { n: usize, expected: usize, got: usize },
    #[error("qubit count {0} outside supported range 2..=6")]
    UnsupportedQubitCount(usize),
    #[error("all amplitudes vanish")]
    ZeroVector,
    #[error("non-finite amplitude at index {0}")]
    NonFinite(usize),
    #[error("qubit {qubit} out of range for {n}-qubit state")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("matrix is not unitary (residual {0:.3e})")]
    NonUnitary(f64),
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("K = {k} invalid for {n} qubits (need 2 <= K <= n)")]
    BadK { k: usize, n: usize },
    #[error("matrix is not Hermitian (residual {0:.3e})")]
    NotHermitian(f64),
    #[error("font spec does not fit a {0}-qubit state")]
    SpecMismatch(usize),
    #[error("operation needs {expected} qubits, state has {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("missing parameter `{0}`")]
    MissingParameter(String),
    #[error("cannot parse `{0}` as a complex number")]
    BadNumber(String),
    #[error("unknown {kind} `{name}`")]
    UnknownStrategy { kind: &'static str, name: String },
}

pub type Result<T> = std::result::Result<T, Error>;
