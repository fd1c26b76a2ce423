use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("duplicate factor label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown factor label `{0}`")]
    UnknownLabel(String),

    #[error("factor `{label}` has dimension {dim}; factors need dim >= 2")]
    InvalidDimension { label: String, dim: usize },

    #[error("total dimension {dim} exceeds the dense cap {cap}")]
    DenseCapExceeded { dim: usize, cap: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("state is not normalized (norm^2 = {0})")]
    NotNormalized(f64),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("density matrix trace is {0}, expected 1")]
    BadTrace(f64),

    #[error("density matrix has negative eigenvalue {0:e}")]
    NotPositive(f64),

    #[error("matrix is not unitary (max deviation {0:e})")]
    NotUnitary(f64),

    #[error("spectrum sums to {0}, expected 1")]
    SpectrumNotNormalized(f64),

    #[error("invalid split: {0}")]
    InvalidSplit(String),

    #[error("empty label set")]
    EmptySelection,

    #[error("pairing is not injective")]
    PairingNotInjective,

    #[error("operation needs explicit Schmidt weights; state is symbolic")]
    ExplicitWeightsRequired,

    #[error("mode index {index} out of range 1..={max}")]
    ModeOutOfRange { index: usize, max: usize },

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("no pairwise correlations: every mutual information is below threshold")]
    NoCorrelations,

    #[error("invalid weight function: {0}")]
    InvalidWeightFunction(String),

    #[error("edge weight argument out of domain: i = {i}, i0 = {i0}")]
    WeightDomain { i: f64, i0: f64 },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("observable has zero norm")]
    ZeroNorm,

    #[error("not enough factors: {0}")]
    TooFewFactors(String),

    #[error("invalid perturbation: {0}")]
    InvalidPerturbation(String),

    #[error("invalid physical scales: {0}")]
    InvalidScales(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}
