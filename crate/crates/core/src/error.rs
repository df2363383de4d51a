use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("field vector (alpha1, alpha2, alpha3) has zero magnitude")]
    ZeroField,
    #[error("tridiagonal coupling b_{index} = {value} is not positive")]
    NonPositiveCoupling { index: usize, value: f64 },
    #[error("need lambda1 > lambda2 > 0, got lambda1 = {lambda1}, lambda2 = {lambda2}")]
    BadOrdering { lambda1: f64, lambda2: f64 },
    #[error("register of {qubits} qubits exceeds the cap of {cap}")]
    TooLarge { qubits: usize, cap: usize },
    #[error("no full charging found up to t = {t_max} (best fidelity {best:.12})")]
    NotFullyCharging { t_max: f64, best: f64 },
    #[error("charging rate {eta} exceeds the quantum speed limit")]
    QslViolation { eta: f64 },
    #[error("initial state is (numerically) an eigenstate: {0}")]
    Degenerate(&'static str),
    #[error("invalid qubit subset: {0}")]
    BadSubset(String),
    #[error("local pair is not orthonormal on qubit {qubit}")]
    PairNotOrthonormal { qubit: usize },
    #[error("scheme has no full-register embedding")]
    NoEmbedding,
    #[error("state is not normalised (norm {norm})")]
    NotNormalized { norm: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
