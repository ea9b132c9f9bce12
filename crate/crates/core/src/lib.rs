//! Separability and entanglement verdicts for pairs of identical particles.
//!
//! Two formalisms are implemented side by side:
//!
//! * factorization of expectation values over pairs of commuting operator
//!   subalgebras ([`algebra`]), evaluated on first-quantized Hilbert spaces
//!   ([`hilbert`]) or truncated Fock spaces ([`fock`]);
//! * the no-label two-particle construction ([`nolabel`]) with its reduction
//!   operator, subspace-reduced one-particle density matrices and their
//!   von Neumann entropy.
//!
//! [`cases`] holds a registry of parameter-free case studies that exercise
//! both formalisms on the same states, [`verify`] the randomized property
//! suites, and [`report`] the text and JSON renderers used by the CLI.

pub mod algebra;
pub mod cases;
pub mod error;
pub mod fock;
pub mod hilbert;
pub mod nolabel;
pub mod random;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use hilbert::{HilbertSpace, Ket, Operator, C64};

/// Numerical tolerances shared across the crate.
pub mod tol {
    /// Default tolerance for equality assertions.
    pub const TOL: f64 = 1e-9;
    /// Eigenvalues (and Schmidt coefficients) below this are treated as zero.
    pub const EIGENVALUE_FLOOR: f64 = 1e-12;
    /// Frobenius-norm tolerance used to deduplicate monomials.
    pub const DEDUP: f64 = 1e-10;
    /// A subspace-projected normalization at or below this annihilates the state.
    pub const NULL_REDUCTION: f64 = 1e-12;
    /// Vectors closer than this are treated as equal when merging no-label terms.
    pub const MERGE: f64 = 1e-12;
}
