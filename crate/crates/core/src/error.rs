use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dim { expected: usize, found: usize },
    #[error("state is not normalized (norm {0})")]
    Norm(f64),
    #[error("trace is {0}, expected 1")]
    Trace(f64),
    #[error("operator is not positive semidefinite (eigenvalue {0})")]
    NotPsd(f64),
    #[error("operator is not hermitian (deviation {0})")]
    NotHermitian(f64),
    #[error("mixture weights must be nonnegative and sum to 1")]
    Weights,
    #[error("fermionic cutoff {cutoff} exceeds the mode count {modes}")]
    Cutoff { cutoff: usize, modes: usize },
    #[error("out of range: {0}")]
    Range(String),
    #[error("operators do not commute (commutator norm {0:e})")]
    NonCommuting(f64),
    #[error("exchange symmetry mismatch between no-label states")]
    Eta,
    #[error("projection onto the subspace annihilates the state (N_K = {0:e})")]
    NullReduction(f64),
    #[error("state has zero norm")]
    NullState,
    #[error("unknown case id `{0}`")]
    UnknownCase(String),
    #[error("invalid basis labels: {0}")]
    Labels(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
