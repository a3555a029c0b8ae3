//! Shared fixtures for integration tests, most importantly an
//! exponential oracle that shares no code with the library's
//! eigendecomposition path.

use gateforge_core::CMatrix64;
use num_complex::Complex;

/// `exp(−i·scale·H)` by scaling-and-squaring with a Taylor series —
/// an independent cross-check for the spectral exponential.
pub fn expm_oracle(h: &CMatrix64, scale: f64) -> CMatrix64 {
    let a = h.scale(Complex::new(0.0, -scale));
    let mut squarings = 0u32;
    let mut shrink = 1.0f64;
    while a.frobenius_norm() * shrink > 0.5 {
        squarings += 1;
        shrink *= 0.5;
    }
    let b = a.scale(Complex::new(shrink, 0.0));
    let n = h.dim();
    let mut result = CMatrix64::identity(n);
    let mut term = CMatrix64::identity(n);
    for k in 1..200u32 {
        term = &term * &b;
        term = term.scale(Complex::new(1.0 / f64::from(k), 0.0));
        result = &result + &term;
        if term.frobenius_norm() < 1e-22 {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}
