//! Floating-point scalar abstraction.
//!
//! Every numerical routine in this crate is generic over [`Scalar`] so the
//! same code runs at `f64` (the default throughout the tests and the CLI) or
//! `f32`. Default tolerances are attached to the scalar type because a
//! sensible residual threshold for `f64` sits far below `f32` resolution.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real scalar type underlying all complex arithmetic in this crate.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` constant into this scalar type.
    ///
    /// Panics if the value is not representable, which cannot happen for the
    /// finite literals used internally.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal must be representable")
    }

    /// Lossy widening back to `f64`, used when reporting residuals in errors.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Default tolerance for unitarity residuals `‖M†M − I‖_F`.
    fn unitary_tol() -> Self;

    /// Default tolerance for Hermiticity residuals `‖M − M†‖_F`.
    fn hermitian_tol() -> Self;

    /// Default chord distance below which two unit-circle eigenvalues are
    /// treated as one degenerate cluster.
    fn cluster_tol() -> Self;

    /// Default tolerance for gate verification (squared leakage amplitude).
    fn verify_tol() -> Self;

    /// Coefficients with absolute value at or below this threshold are
    /// dropped from Pauli polynomials.
    fn prune_tol() -> Self;
}

impl Scalar for f64 {
    fn unitary_tol() -> Self {
        1e-10
    }
    fn hermitian_tol() -> Self {
        1e-10
    }
    fn cluster_tol() -> Self {
        1e-8
    }
    fn verify_tol() -> Self {
        1e-9
    }
    fn prune_tol() -> Self {
        1e-14
    }
}

impl Scalar for f32 {
    fn unitary_tol() -> Self {
        1e-4
    }
    fn hermitian_tol() -> Self {
        1e-4
    }
    fn cluster_tol() -> Self {
        1e-3
    }
    fn verify_tol() -> Self {
        1e-4
    }
    fn prune_tol() -> Self {
        1e-6
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_conversion_roundtrips() {
        assert_eq!(f64::of(0.25), 0.25);
        assert_eq!(f32::of(0.25), 0.25f32);
        assert_eq!((0.5f64).to_f64_lossy(), 0.5);
    }

    #[test]
    fn f32_tolerances_sit_above_machine_epsilon() {
        assert!(f32::unitary_tol() > f32::EPSILON);
        assert!(f32::cluster_tol() > f32::EPSILON);
    }
}
