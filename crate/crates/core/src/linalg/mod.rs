//! Dense complex linear algebra sized for few-qubit operators.
//!
//! The centrepiece is the spectral toolkit for unitary and Hermitian
//! matrices: eigendecomposition with degeneracy-aware clustering, the
//! matrix exponential `exp(−i·s·H)`, and the branch-resolved matrix
//! logarithm that recovers a generating Hamiltonian from a unitary.

mod matrix;
mod schur;

pub use matrix::CMatrix;

use num_complex::Complex;
use num_traits::Zero;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Outcome of a unitarity test: the Frobenius residual `‖M†M − I‖` and
/// whether it clears the supplied tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitarityCheck<T> {
    pub residual: T,
    pub tol: T,
    pub ok: bool,
}

/// Measure `‖M†M − I‖_F` against `tol`.
pub fn check_unitary<T: Scalar>(m: &CMatrix<T>, tol: T) -> UnitarityCheck<T> {
    let residual = m.unitarity_residual();
    UnitarityCheck {
        residual,
        tol,
        ok: residual <= tol,
    }
}

/// Integer winding numbers, one per degenerate eigenvalue cluster, that
/// select a branch of the matrix logarithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchChoice(Vec<i64>);

impl BranchChoice {
    pub fn new(integers: Vec<i64>) -> Self {
        BranchChoice(integers)
    }

    /// The principal branch: every winding number zero.
    pub fn zeros(clusters: usize) -> Self {
        BranchChoice(vec![0; clusters])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn integers(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for BranchChoice {
    fn from(v: Vec<i64>) -> Self {
        BranchChoice(v)
    }
}

/// Eigendecomposition of a normal matrix with degenerate eigenvalues
/// grouped into contiguous clusters.
///
/// Eigenvalues are sorted by principal argument (ascending, with a wrap
/// merge across ±π so a degenerate pair straddling the cut stays in one
/// cluster). Columns of `diagonalizer` follow the same order and are
/// orthonormal, including within clusters.
#[derive(Debug, Clone)]
pub struct Spectrum<T: Scalar> {
    eigenvalues: Vec<Complex<T>>,
    diagonalizer: CMatrix<T>,
    cluster_sizes: Vec<usize>,
}

impl<T: Scalar> Spectrum<T> {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[Complex<T>] {
        &self.eigenvalues
    }

    pub fn diagonalizer(&self) -> &CMatrix<T> {
        &self.diagonalizer
    }

    pub fn cluster_sizes(&self) -> &[usize] {
        &self.cluster_sizes
    }

    pub fn cluster_count(&self) -> usize {
        self.cluster_sizes.len()
    }

    /// Index ranges of the clusters within the sorted eigenvalue list.
    pub fn cluster_ranges(&self) -> Vec<Range<usize>> {
        let mut out = Vec::with_capacity(self.cluster_sizes.len());
        let mut start = 0;
        for &size in &self.cluster_sizes {
            out.push(start..start + size);
            start += size;
        }
        out
    }

    /// One representative eigenvalue per cluster (the normalized mean,
    /// which averages away per-member round-off).
    pub fn cluster_values(&self) -> Vec<Complex<T>> {
        self.cluster_ranges()
            .into_iter()
            .map(|r| {
                let sum = self.eigenvalues[r.clone()]
                    .iter()
                    .fold(Complex::<T>::zero(), |a, b| a + b);
                sum / Complex::new(T::of(r.len() as f64), T::zero())
            })
            .collect()
    }

    /// Assemble `Σ_k f(k) P_k` where `P_k` is the orthogonal projector onto
    /// cluster `k`'s eigenspace.
    pub fn assemble(&self, per_cluster: &[Complex<T>]) -> CMatrix<T> {
        let n = self.dim();
        let mut out = CMatrix::zeros(n);
        for (k, range) in self.cluster_ranges().into_iter().enumerate() {
            let w = per_cluster[k];
            for col in range {
                for i in 0..n {
                    let qi = self.diagonalizer[(i, col)];
                    for j in 0..n {
                        let qj = self.diagonalizer[(j, col)].conj();
                        out[(i, j)] += w * qi * qj;
                    }
                }
            }
        }
        out
    }
}

/// Principal argument in `(−π, π]`: `atan2`'s `−π` endpoint is folded to `+π`.
pub fn principal_arg<T: Scalar>(z: Complex<T>) -> T {
    let theta = z.arg();
    if theta == -T::PI() {
        T::PI()
    } else {
        theta
    }
}

/// Eigendecomposition of a unitary matrix with default degeneracy
/// clustering. Fails if `m` is not unitary within `tol` or if the spectral
/// factorization does not reproduce `m`.
pub fn eig_unitary<T: Scalar>(m: &CMatrix<T>, tol: T) -> Result<Spectrum<T>> {
    eig_unitary_with_cluster(m, tol, T::cluster_tol())
}

/// As [`eig_unitary`] with an explicit cluster radius: eigenvalues within
/// chord distance `cluster_tol` of their sorted neighbour share a cluster.
pub fn eig_unitary_with_cluster<T: Scalar>(
    m: &CMatrix<T>,
    tol: T,
    cluster_tol: T,
) -> Result<Spectrum<T>> {
    let check = check_unitary(m, tol);
    if !check.ok {
        return Err(Error::NotUnitary {
            residual: check.residual.to_f64_lossy(),
            tol: tol.to_f64_lossy(),
        });
    }
    let (raw_vals, raw_q) = schur::schur_normal(m)?;
    let n = raw_vals.len();

    // Sort eigenpairs by principal argument.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        principal_arg(raw_vals[a])
            .partial_cmp(&principal_arg(raw_vals[b]))
            .expect("eigenvalue arguments are finite")
    });
    let mut eigenvalues: Vec<Complex<T>> = order.iter().map(|&i| raw_vals[i]).collect();
    let mut diagonalizer = CMatrix::from_fn(n, |i, j| raw_q[(i, order[j])]);

    // Single-linkage clustering of consecutive eigenvalues by chord
    // distance, then a wrap merge across the ±π cut.
    let mut cluster_sizes: Vec<usize> = Vec::new();
    for i in 0..n {
        if i > 0 && (eigenvalues[i] - eigenvalues[i - 1]).norm() <= cluster_tol {
            *cluster_sizes.last_mut().expect("nonempty") += 1;
        } else {
            cluster_sizes.push(1);
        }
    }
    if cluster_sizes.len() > 1 && (eigenvalues[0] - eigenvalues[n - 1]).norm() <= cluster_tol {
        // The first and last sorted eigenvalues straddle the ±π cut but
        // belong to one physical cluster. Move the leading cluster's
        // members behind the trailing ones so the merged cluster is
        // contiguous; it ends up last in the flattened order.
        let head = cluster_sizes[0];
        eigenvalues.rotate_left(head);
        let old = diagonalizer;
        diagonalizer = CMatrix::from_fn(n, |i, j| old[(i, (j + head) % n)]);
        cluster_sizes.remove(0);
        *cluster_sizes.last_mut().expect("nonempty") += head;
    }

    // Re-orthonormalize within each cluster: Schur vectors of near-equal
    // eigenvalues are orthogonal only up to the degeneracy gap.
    let mut start = 0;
    for &size in &cluster_sizes {
        if size > 1 {
            gram_schmidt_columns(&mut diagonalizer, start..start + size);
        }
        start += size;
    }

    let spectrum = Spectrum {
        eigenvalues,
        diagonalizer,
        cluster_sizes,
    };
    let rebuilt = spectrum_product(&spectrum);
    let residual = rebuilt.max_abs_diff(m);
    let allowed = tol.max(T::of(100.0) * T::epsilon() * T::of(n as f64));
    if residual > allowed {
        return Err(Error::BadReconstruction {
            residual: residual.to_f64_lossy(),
            tol: allowed.to_f64_lossy(),
        });
    }
    Ok(spectrum)
}

fn spectrum_product<T: Scalar>(s: &Spectrum<T>) -> CMatrix<T> {
    let n = s.dim();
    let mut out = CMatrix::zeros(n);
    for col in 0..n {
        let lam = s.eigenvalues[col];
        for i in 0..n {
            let qi = s.diagonalizer[(i, col)];
            for j in 0..n {
                out[(i, j)] += lam * qi * s.diagonalizer[(j, col)].conj();
            }
        }
    }
    out
}

/// Modified Gram–Schmidt on a contiguous column range.
fn gram_schmidt_columns<T: Scalar>(m: &mut CMatrix<T>, range: Range<usize>) {
    let n = m.dim();
    for col in range.clone() {
        for prev in range.start..col {
            let mut dot = Complex::<T>::zero();
            for i in 0..n {
                dot += m[(i, prev)].conj() * m[(i, col)];
            }
            for i in 0..n {
                let upd = dot * m[(i, prev)];
                m[(i, col)] -= upd;
            }
        }
        let norm = (0..n)
            .map(|i| m[(i, col)].norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt();
        for i in 0..n {
            m[(i, col)] = m[(i, col)] / Complex::new(norm, T::zero());
        }
    }
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues ascending,
/// orthonormal columns in the same order.
pub fn eig_hermitian<T: Scalar>(m: &CMatrix<T>, tol: T) -> Result<(Vec<T>, CMatrix<T>)> {
    let residual = m.hermiticity_residual();
    if residual > tol {
        return Err(Error::NotHermitian {
            residual: residual.to_f64_lossy(),
            tol: tol.to_f64_lossy(),
        });
    }
    let sym = m.hermitize();
    let (raw_vals, raw_q) = schur::schur_normal(&sym)?;
    let n = raw_vals.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        raw_vals[a]
            .re
            .partial_cmp(&raw_vals[b].re)
            .expect("eigenvalues are finite")
    });
    let values: Vec<T> = order.iter().map(|&i| raw_vals[i].re).collect();
    let vectors = CMatrix::from_fn(n, |i, j| raw_q[(i, order[j])]);
    Ok((values, vectors))
}

/// Unitary propagator `exp(−i·scale·H)` of a Hermitian generator, via the
/// spectral theorem. `scale` carries the physical factor (time over ħ).
pub fn expm_hermitian<T: Scalar>(h: &CMatrix<T>, scale: T) -> Result<CMatrix<T>> {
    let (values, q) = eig_hermitian(h, T::hermitian_tol())?;
    let n = h.dim();
    let mut out = CMatrix::zeros(n);
    for col in 0..n {
        let phase = Complex::from_polar(T::one(), -scale * values[col]);
        for i in 0..n {
            let qi = q[(i, col)];
            for j in 0..n {
                out[(i, j)] += phase * qi * q[(j, col)].conj();
            }
        }
    }
    Ok(out)
}

/// Energy per cluster for a given logarithm branch:
/// `E_k = (−ħ·θ_k + 2πħ·N_k) / Δt` with `θ_k` the cluster's principal
/// argument, so that `exp(−i·E_k·Δt/ħ) = λ_k` for every integer `N_k`.
pub fn cluster_energies<T: Scalar>(
    spectrum: &Spectrum<T>,
    branch: &BranchChoice,
    delta_t: T,
    hbar: T,
) -> Result<Vec<T>> {
    if branch.len() != spectrum.cluster_count() {
        return Err(Error::BranchLength {
            expected: spectrum.cluster_count(),
            found: branch.len(),
        });
    }
    let two_pi = T::of(2.0) * T::PI();
    Ok(spectrum
        .cluster_values()
        .iter()
        .zip(branch.integers())
        .map(|(lam, &k)| {
            let theta = principal_arg(*lam);
            (-hbar * theta + two_pi * hbar * T::of(k as f64)) / delta_t
        })
        .collect())
}

/// Hermitian generator `H` with `exp(−i·H·Δt/ħ) = U`, on the logarithm
/// branch selected by one winding integer per eigenvalue cluster.
pub fn logm_unitary<T: Scalar>(
    u: &CMatrix<T>,
    branch: &BranchChoice,
    delta_t: T,
    hbar: T,
) -> Result<CMatrix<T>> {
    let spectrum = eig_unitary(u, T::unitary_tol())?;
    let energies = cluster_energies(&spectrum, branch, delta_t, hbar)?;
    let weights: Vec<Complex<T>> = energies
        .iter()
        .map(|&e| Complex::new(e, T::zero()))
        .collect();
    Ok(spectrum.assemble(&weights).hermitize())
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn check_unitary_accepts_rotation() {
        let t = 0.7f64;
        let m = CMatrix::from_entries(
            2,
            vec![c(t.cos(), 0.0), c(-t.sin(), 0.0), c(t.sin(), 0.0), c(t.cos(), 0.0)],
        )
        .unwrap();
        assert!(check_unitary(&m, 1e-12).ok);
        let bad = CMatrix::from_entries(2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)]).unwrap();
        assert!(!check_unitary(&bad, 1e-12).ok);
    }

    #[test]
    fn principal_arg_maps_negative_real_axis_to_pi() {
        assert_eq!(principal_arg(c(-1.0, 0.0)), std::f64::consts::PI);
        assert_eq!(principal_arg(c(-1.0, -0.0)), std::f64::consts::PI);
        assert!((principal_arg(c(0.0, -1.0)) + std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn degenerate_eigenvalues_cluster_together() {
        // diag(1, i, i) has a two-fold eigenvalue; clusters must reflect it.
        let m = CMatrix::from_fn(3, |i, j| {
            if i != j {
                c(0.0, 0.0)
            } else if i == 0 {
                c(1.0, 0.0)
            } else {
                c(0.0, 1.0)
            }
        });
        let s = eig_unitary(&m, 1e-10).unwrap();
        assert_eq!(s.cluster_sizes(), &[1, 2]);
        assert_eq!(s.cluster_ranges(), vec![0..1, 1..3]);
    }

    #[test]
    fn clusters_merge_across_branch_cut() {
        // Eigenvalues −1·e^{±iε} straddle the ±π argument cut but are a
        // single physical cluster.
        let eps = 1e-12;
        let m = CMatrix::from_fn(2, |i, j| {
            if i != j {
                c(0.0, 0.0)
            } else if i == 0 {
                C::from_polar(1.0, std::f64::consts::PI - eps)
            } else {
                C::from_polar(1.0, -std::f64::consts::PI + eps)
            }
        });
        let s = eig_unitary(&m, 1e-10).unwrap();
        assert_eq!(s.cluster_count(), 1);
        assert_eq!(s.cluster_sizes(), &[2]);
    }

    #[test]
    fn wrap_merge_moves_straddling_cluster_to_the_end() {
        // With a third, separated eigenvalue the straddling pair is not a
        // consecutive-neighbour cluster and must be joined by the wrap
        // merge, landing after the interior cluster.
        let eps = 1e-12;
        let angles = [std::f64::consts::PI - eps, -std::f64::consts::PI + eps, 0.5];
        let m = CMatrix::from_fn(3, |i, j| {
            if i == j {
                C::from_polar(1.0, angles[i])
            } else {
                c(0.0, 0.0)
            }
        });
        let s = eig_unitary(&m, 1e-10).unwrap();
        assert_eq!(s.cluster_sizes(), &[1, 2]);
        assert!((principal_arg(s.eigenvalues()[0]) - 0.5).abs() < 1e-12);
        let rep = s.cluster_values()[1];
        assert!(principal_arg(rep).abs() > 3.0, "representative sits near the cut");
        // The factorization still reproduces the input exactly.
        let weights = s.cluster_values();
        assert!(s.assemble(&weights).max_abs_diff(&m) < 1e-10);
    }

    #[test]
    fn eig_hermitian_sorts_ascending() {
        let m = CMatrix::from_entries(
            2,
            vec![c(2.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(-2.0, 0.0)],
        )
        .unwrap();
        let (vals, q) = eig_hermitian(&m, 1e-12).unwrap();
        let r = 5.0f64.sqrt();
        assert!((vals[0] + r).abs() < 1e-12);
        assert!((vals[1] - r).abs() < 1e-12);
        assert!(q.unitarity_residual() < 1e-12);
    }

    #[test]
    fn expm_of_zero_is_identity() {
        let h = CMatrix::<f64>::zeros(4);
        let u = expm_hermitian(&h, 1.0).unwrap();
        assert!(u.max_abs_diff(&CMatrix::identity(4)) < 1e-14);
    }

    #[test]
    fn expm_pauli_x_halfturn() {
        // exp(−i·(π/2)·σx) = −i·σx.
        let sx = CMatrix::from_entries(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let u = expm_hermitian(&sx, std::f64::consts::FRAC_PI_2).unwrap();
        let expect = CMatrix::from_entries(
            2,
            vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, -1.0), c(0.0, 0.0)],
        )
        .unwrap();
        assert!(u.max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn logm_inverts_expm_on_principal_branch() {
        // Spectrum of H chosen inside (−π, π] so the zero branch recovers it.
        let h = CMatrix::from_entries(
            2,
            vec![c(0.3, 0.0), c(0.1, 0.2), c(0.1, -0.2), c(-0.4, 0.0)],
        )
        .unwrap();
        let u = expm_hermitian(&h, 1.0).unwrap();
        let back = logm_unitary(&u, &BranchChoice::zeros(2), 1.0, 1.0).unwrap();
        assert!(back.max_abs_diff(&h) < 1e-10);
    }

    #[test]
    fn branch_integers_shift_energies_by_two_pi() {
        let h = CMatrix::from_entries(2, vec![c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.5, 0.0)]).unwrap();
        let u = expm_hermitian(&h, 1.0).unwrap();
        let s = eig_unitary(&u, 1e-10).unwrap();
        let e0 = cluster_energies(&s, &BranchChoice::zeros(2), 1.0, 1.0).unwrap();
        let e1 = cluster_energies(&s, &BranchChoice::new(vec![1, 0]), 1.0, 1.0).unwrap();
        assert!((e1[0] - e0[0] - 2.0 * std::f64::consts::PI).abs() < 1e-12);
        assert!((e1[1] - e0[1]).abs() < 1e-14);
        // Re-exponentiating either branch reproduces U.
        let back = logm_unitary(&u, &BranchChoice::new(vec![1, 0]), 1.0, 1.0).unwrap();
        let u2 = expm_hermitian(&back, 1.0).unwrap();
        assert!(u2.max_abs_diff(&u) < 1e-10);
    }

    #[test]
    fn branch_length_mismatch_is_reported() {
        let u = CMatrix::<f64>::identity(3);
        let err = logm_unitary(&u, &BranchChoice::zeros(2), 1.0, 1.0).unwrap_err();
        match err {
            Error::BranchLength { expected, found } => {
                assert_eq!(expected, 1);
                assert_eq!(found, 2);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }
}
