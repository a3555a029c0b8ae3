//! Complex Schur decomposition for normal matrices.
//!
//! The route is the classic dense one: unitary reduction to upper Hessenberg
//! form by Householder reflections, then shifted QR iteration with Givens
//! rotations until the matrix is triangular. For a normal input the
//! triangular factor is diagonal up to round-off, so the accumulated unitary
//! holds the eigenvectors. At the dimensions used here (≤ 16) this is fast
//! and robust; no blocking or implicit multi-shift machinery is warranted.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::matrix::CMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Eigenvalues (in Schur order) and the accumulated unitary `Q` such that
/// `M ≈ Q · diag(eigenvalues) · Q†` for normal `M`.
pub(crate) fn schur_normal<T: Scalar>(m: &CMatrix<T>) -> Result<(Vec<Complex<T>>, CMatrix<T>)> {
    let n = m.dim();
    if n == 0 {
        return Err(Error::InvalidInput {
            detail: "cannot decompose an empty matrix".into(),
        });
    }
    if n == 1 {
        return Ok((vec![m[(0, 0)]], CMatrix::identity(1)));
    }

    let mut h = m.clone();
    let mut q = CMatrix::identity(n);
    hessenberg(&mut h, &mut q);
    qr_iterate(&mut h, &mut q)?;

    let eigenvalues = (0..n).map(|i| h[(i, i)]).collect();
    Ok((eigenvalues, q))
}

/// In-place Householder reduction `H ← P† M P` with `P` accumulated into `q`.
fn hessenberg<T: Scalar>(h: &mut CMatrix<T>, q: &mut CMatrix<T>) {
    let n = h.dim();
    for k in 0..n.saturating_sub(2) {
        // Reflect the subcolumn below the subdiagonal entry onto e1.
        let mut v: Vec<Complex<T>> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let norm = v
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt();
        let below: T = v[1..]
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b);
        if norm == T::zero() || below.sqrt() <= T::epsilon() * norm {
            continue;
        }
        let phase = if v[0].norm() > T::zero() {
            v[0] / Complex::new(v[0].norm(), T::zero())
        } else {
            Complex::one()
        };
        v[0] += phase * Complex::new(norm, T::zero());
        let vnorm_sq = v.iter().map(|z| z.norm_sqr()).fold(T::zero(), |a, b| a + b);
        let tau = T::of(2.0) / vnorm_sq;

        // H ← (I − τ v v†) H, rows k+1.. only.
        for j in 0..n {
            let mut w = Complex::<T>::zero();
            for (i, vi) in v.iter().enumerate() {
                w += vi.conj() * h[(k + 1 + i, j)];
            }
            let w = w * Complex::new(tau, T::zero());
            for (i, vi) in v.iter().enumerate() {
                let upd = *vi * w;
                h[(k + 1 + i, j)] -= upd;
            }
        }
        // H ← H (I − τ v v†), columns k+1.. only; same update for Q.
        right_apply_reflector(h, k + 1, &v, tau);
        right_apply_reflector(q, k + 1, &v, tau);
    }
    // Clear the entries the reduction has annihilated so later steps can
    // rely on exact Hessenberg structure.
    for j in 0..n.saturating_sub(2) {
        for i in j + 2..n {
            h[(i, j)] = Complex::zero();
        }
    }
}

fn right_apply_reflector<T: Scalar>(m: &mut CMatrix<T>, offset: usize, v: &[Complex<T>], tau: T) {
    let n = m.dim();
    for r in 0..n {
        let mut w = Complex::<T>::zero();
        for (i, vi) in v.iter().enumerate() {
            w += m[(r, offset + i)] * *vi;
        }
        let w = w * Complex::new(tau, T::zero());
        for (i, vi) in v.iter().enumerate() {
            let upd = w * vi.conj();
            m[(r, offset + i)] -= upd;
        }
    }
}

/// Shifted QR iteration driving a Hessenberg matrix to triangular form.
fn qr_iterate<T: Scalar>(h: &mut CMatrix<T>, q: &mut CMatrix<T>) -> Result<()> {
    let n = h.dim();
    let max_total = 60 * n;
    let mut total = 0usize;
    let mut stagnation = 0usize;
    let mut ihi = n - 1;

    while ihi > 0 {
        // Deflate: walk up from the bottom of the active window until a
        // negligible subdiagonal entry splits off a block.
        let mut lo = ihi;
        while lo > 0 {
            let off = h[(lo, lo - 1)].norm();
            let scale = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            let reference = if scale > T::zero() { scale } else { h.frobenius_norm() };
            if off <= T::epsilon() * reference {
                h[(lo, lo - 1)] = Complex::zero();
                break;
            }
            lo -= 1;
        }
        if lo == ihi {
            // 1×1 block converged.
            ihi -= 1;
            stagnation = 0;
            continue;
        }

        total += 1;
        stagnation += 1;
        if total > max_total {
            return Err(Error::NoConvergence { iterations: total });
        }
        let shift = if stagnation % 16 == 0 {
            // Break potential shift cycles on symmetric spectra.
            let kick = h[(ihi, ihi - 1)].norm();
            h[(ihi, ihi)] + Complex::new(T::of(0.75) * kick, T::of(0.34) * kick)
        } else {
            wilkinson_shift(h, ihi)
        };
        qr_step(h, q, lo, ihi, shift);
    }
    Ok(())
}

/// Eigenvalue of the trailing 2×2 block closest to the corner entry.
fn wilkinson_shift<T: Scalar>(h: &CMatrix<T>, ihi: usize) -> Complex<T> {
    let a = h[(ihi - 1, ihi - 1)];
    let b = h[(ihi - 1, ihi)];
    let c = h[(ihi, ihi - 1)];
    let d = h[(ihi, ihi)];
    let half = Complex::new(T::of(0.5), T::zero());
    let mid = (a + d) * half;
    let rad = ((a - d) * (a - d) * half * half + b * c).sqrt();
    let l1 = mid + rad;
    let l2 = mid - rad;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// One explicit shifted QR sweep on the active block `lo..=ihi`.
fn qr_step<T: Scalar>(
    h: &mut CMatrix<T>,
    q: &mut CMatrix<T>,
    lo: usize,
    ihi: usize,
    shift: Complex<T>,
) {
    let n = h.dim();
    for i in lo..=ihi {
        h[(i, i)] -= shift;
    }

    // Left rotations eliminate the subdiagonal of H − σI.
    let mut rotations = Vec::with_capacity(ihi - lo);
    for i in lo..ihi {
        let (c, s) = givens(h[(i, i)], h[(i + 1, i)]);
        for j in 0..n {
            let a = h[(i, j)];
            let b = h[(i + 1, j)];
            h[(i, j)] = a * Complex::new(c, T::zero()) + b * s;
            h[(i + 1, j)] = b * Complex::new(c, T::zero()) - a * s.conj();
        }
        rotations.push((c, s));
    }
    // Right-multiply by the adjoints in the same order, restoring
    // Hessenberg structure and accumulating the similarity into Q.
    for (idx, (c, s)) in rotations.iter().enumerate() {
        let i = lo + idx;
        let cc = Complex::new(*c, T::zero());
        for r in 0..n {
            let a = h[(r, i)];
            let b = h[(r, i + 1)];
            h[(r, i)] = a * cc + b * s.conj();
            h[(r, i + 1)] = b * cc - a * *s;
            let qa = q[(r, i)];
            let qb = q[(r, i + 1)];
            q[(r, i)] = qa * cc + qb * s.conj();
            q[(r, i + 1)] = qb * cc - qa * *s;
        }
    }
    for i in lo..=ihi {
        h[(i, i)] += shift;
    }
    // Round-off can leave dust below the subdiagonal; clear it so the
    // Hessenberg invariant stays exact.
    for j in lo..ihi.saturating_sub(1) {
        for i in j + 2..=ihi {
            h[(i, j)] = Complex::zero();
        }
    }
}

/// Unitary rotation `[[c, s], [−s̄, c]]` with real `c` sending `(f, g)` to
/// `(r, 0)`.
fn givens<T: Scalar>(f: Complex<T>, g: Complex<T>) -> (T, Complex<T>) {
    if g.norm() == T::zero() {
        return (T::one(), Complex::zero());
    }
    if f.norm() == T::zero() {
        return (T::zero(), g.conj() / Complex::new(g.norm(), T::zero()));
    }
    let fnorm = f.norm();
    let denom = (f.norm_sqr() + g.norm_sqr()).sqrt();
    let c = fnorm / denom;
    let s = (f / Complex::new(fnorm, T::zero())) * g.conj() / Complex::new(denom, T::zero());
    (c, s)
}
