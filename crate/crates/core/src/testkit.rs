//! Deterministic random fixtures shared by tests, benchmarks, and
//! examples. All draws happen in `f64` and are narrowed afterwards, so a
//! seed produces the same sequence for every scalar type.

use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::CMatrix;
use crate::scalar::Scalar;

/// A seeded, portable generator.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform angle in `(−π, π)`.
pub fn random_angle<T: Scalar>(rng: &mut ChaCha8Rng) -> T {
    T::of(rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
}

/// One standard-normal draw via Box–Muller.
fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = 1.0 - rng.random::<f64>(); // (0, 1]
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// A random Hermitian matrix with Gaussian entries of the given scale.
pub fn random_hermitian<T: Scalar>(rng: &mut ChaCha8Rng, dim: usize, scale: f64) -> CMatrix<T> {
    let mut g = CMatrix::<T>::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            g[(i, j)] = Complex::new(T::of(gaussian(rng) * scale), T::of(gaussian(rng) * scale));
        }
    }
    g.hermitize()
}

/// A Haar-distributed random unitary: Gaussian matrix, then modified
/// Gram–Schmidt (whose triangular factor has a positive diagonal, which
/// is exactly the phase convention Haar sampling needs).
pub fn random_unitary<T: Scalar>(rng: &mut ChaCha8Rng, dim: usize) -> CMatrix<T> {
    let mut q = CMatrix::<T>::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            q[(i, j)] = Complex::new(T::of(gaussian(rng)), T::of(gaussian(rng)));
        }
    }
    for j in 0..dim {
        for k in 0..j {
            let mut overlap = Complex::new(T::zero(), T::zero());
            for i in 0..dim {
                overlap += q[(i, k)].conj() * q[(i, j)];
            }
            for i in 0..dim {
                let corr = overlap * q[(i, k)];
                q[(i, j)] -= corr;
            }
        }
        let mut norm_sq = T::zero();
        for i in 0..dim {
            norm_sq += q[(i, j)].norm_sqr();
        }
        let inv = T::one() / norm_sq.sqrt();
        for i in 0..dim {
            q[(i, j)] = q[(i, j)].scale(inv);
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_unitary_is_unitary_and_seed_stable() {
        let mut r1 = rng(5);
        let u1 = random_unitary::<f64>(&mut r1, 8);
        assert!(u1.unitarity_residual() < 1e-12);
        let mut r2 = rng(5);
        let u2 = random_unitary::<f64>(&mut r2, 8);
        assert!(u1.max_abs_diff(&u2) == 0.0);
    }

    #[test]
    fn random_hermitian_is_hermitian() {
        let mut r = rng(9);
        let h = random_hermitian::<f64>(&mut r, 4, 0.8);
        assert!(h.hermiticity_residual() < 1e-15);
    }
}
