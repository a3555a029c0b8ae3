//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by matrix routines, Pauli algebra, synthesis, evolution,
/// and search.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Two operands (or an operand and an expectation) disagree in dimension.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A matrix dimension is not a power of two, so it cannot describe a
    /// register of qubits.
    #[error("dimension {dim} is not a power of two")]
    NonQubitDimension { dim: usize },

    /// A matrix failed a unitarity check.
    #[error("matrix is not unitary: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotUnitary { residual: f64, tol: f64 },

    /// A matrix failed a Hermiticity check.
    #[error("matrix is not Hermitian: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian { residual: f64, tol: f64 },

    /// A branch choice does not carry one integer per eigenvalue cluster.
    #[error("branch carries {found} integers but the spectrum has {expected} clusters")]
    BranchLength { expected: usize, found: usize },

    /// The iterative eigensolver did not converge.
    #[error("eigensolver did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    /// An eigendecomposition failed its reconstruction check.
    #[error("eigendecomposition residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    BadReconstruction { residual: f64, tol: f64 },

    /// A character other than I, X, Y, Z appeared in a Pauli string.
    #[error("invalid Pauli letter {letter:?} (expected one of I, X, Y, Z)")]
    InvalidPauliLetter { letter: char },

    /// A Pauli string has the wrong length for the register.
    #[error("Pauli string length {found} does not match qubit count {expected}")]
    StringLength { expected: usize, found: usize },

    /// A Hermitian decomposition produced a coefficient with a non-negligible
    /// imaginary part.
    #[error("coefficient of {string} has imaginary part {imag:.3e}; input is not Hermitian")]
    NonRealCoefficient { string: String, imag: f64 },

    /// Values handed to a constrained constructor do not satisfy its
    /// defining relations.
    #[error("constraint violation: {detail}")]
    ConstraintViolation { detail: String },

    /// A drive protocol is malformed or violates the unit-area rule.
    #[error("invalid protocol: {detail}")]
    InvalidProtocol { detail: String },

    /// A coupling ansatz has no basis terms.
    #[error("coupling ansatz has no basis terms")]
    EmptyAnsatz,

    /// A coefficient vector does not match the ansatz dimension.
    #[error("expected {expected} coefficients, found {found}")]
    CoefficientCount { expected: usize, found: usize },

    /// Any other malformed input.
    #[error("invalid input: {detail}")]
    InvalidInput { detail: String },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
