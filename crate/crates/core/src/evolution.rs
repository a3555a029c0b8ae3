//! Time evolution under constant and protocol-modulated Hamiltonians,
//! protocol normalization checks, commuting-split analysis, and gate
//! verification against [`GateSpec`] semantics.
//!
//! A protocol is a real envelope `f(t)` supported on one gate interval
//! `[t₀, t₀+Δt]`. Evolving a fixed generator `H` under `f(t)·H` needs no
//! time ordering — all factors share eigenvectors — so the midpoint-rule
//! product collapses to a single exponential whose weight is the midpoint
//! approximation of `∫f`. Evolving *several* generators, each with its
//! own envelope, keeps the literal ordered product; that path is exact
//! for commuting splits and exposes the ordering error for
//! non-commuting ones.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::gates::GateSpec;
use crate::linalg::{eig_hermitian, expm_hermitian, CMatrix};
use crate::pauli::PauliPolynomial;
use crate::scalar::Scalar;

/// Default number of midpoint slices for protocol evolution.
pub const DEFAULT_STEPS: usize = 256;

/// One cosine component of a [`Protocol::CosineSeries`]:
/// `amplitude · cos(2π·harmonic·(t−t₀)/Δt + phase)`.
///
/// The harmonic is the number of cycles per gate time and need not be an
/// integer; non-integer harmonics leave the envelope's endpoint slopes
/// unmatched, which is the generic case for convergence studies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosineTerm<T> {
    pub harmonic: T,
    pub amplitude: T,
    pub phase: T,
}

/// A real modulation envelope supported on `[t₀, t₀+Δt]` and zero
/// elsewhere. The expression grammar is deliberately small — constants,
/// a raised cosine, tables, and finite cosine series — so integrals are
/// cheap and verifiable.
#[derive(Debug, Clone, PartialEq)]
pub enum Protocol<T> {
    /// `f(t) = amplitude` on the support.
    Constant { amplitude: T, t0: T, delta_t: T },
    /// `f(t) = amplitude·(1 − cos(2π(t−t₀)/Δt))`: a smooth bump that
    /// switches on and off gently; unit amplitude has time-average 1.
    RaisedCosine { amplitude: T, t0: T, delta_t: T },
    /// Piecewise-constant over `values.len()` equal slices.
    Table { t0: T, delta_t: T, values: Vec<T> },
    /// `f(t) = constant + Σ aₖ·cos(2π·hₖ·(t−t₀)/Δt + φₖ)`.
    CosineSeries {
        t0: T,
        delta_t: T,
        constant: T,
        terms: Vec<CosineTerm<T>>,
    },
}

impl<T: Scalar> Protocol<T> {
    /// The half-open description `(t₀, Δt)` of the support interval.
    pub fn support(&self) -> (T, T) {
        match *self {
            Protocol::Constant { t0, delta_t, .. }
            | Protocol::RaisedCosine { t0, delta_t, .. }
            | Protocol::Table { t0, delta_t, .. }
            | Protocol::CosineSeries { t0, delta_t, .. } => (t0, delta_t),
        }
    }

    /// Structural validation: finite parameters, positive duration,
    /// nonempty tables, nonzero harmonics.
    pub fn validate(&self) -> Result<()> {
        let (t0, delta_t) = self.support();
        if !t0.is_finite() || !delta_t.is_finite() || delta_t <= T::zero() {
            return Err(Error::InvalidProtocol {
                detail: "support must have finite start and positive duration".into(),
            });
        }
        match self {
            Protocol::Constant { amplitude, .. } | Protocol::RaisedCosine { amplitude, .. } => {
                if !amplitude.is_finite() {
                    return Err(Error::InvalidProtocol {
                        detail: "amplitude must be finite".into(),
                    });
                }
            }
            Protocol::Table { values, .. } => {
                if values.is_empty() {
                    return Err(Error::InvalidProtocol {
                        detail: "table protocol needs at least one slice".into(),
                    });
                }
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(Error::InvalidProtocol {
                        detail: "table values must be finite".into(),
                    });
                }
            }
            Protocol::CosineSeries { constant, terms, .. } => {
                if !constant.is_finite() {
                    return Err(Error::InvalidProtocol {
                        detail: "constant part must be finite".into(),
                    });
                }
                for term in terms {
                    if !term.harmonic.is_finite() || term.harmonic == T::zero() {
                        return Err(Error::InvalidProtocol {
                            detail: "harmonic must be finite and nonzero; a zero \
                                     harmonic belongs in the constant part"
                                .into(),
                        });
                    }
                    if !term.amplitude.is_finite() || !term.phase.is_finite() {
                        return Err(Error::InvalidProtocol {
                            detail: "cosine term parameters must be finite".into(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Evaluate the envelope; zero outside the closed support.
    pub fn evaluate(&self, t: T) -> T {
        let (t0, delta_t) = self.support();
        if t < t0 || t > t0 + delta_t {
            return T::zero();
        }
        let phase_frac = (t - t0) / delta_t;
        let two_pi = T::of(2.0) * T::PI();
        match self {
            Protocol::Constant { amplitude, .. } => *amplitude,
            Protocol::RaisedCosine { amplitude, .. } => {
                *amplitude * (T::one() - (two_pi * phase_frac).cos())
            }
            Protocol::Table { values, .. } => {
                let n = values.len();
                let idx = (phase_frac * T::of(n as f64)).floor().to_f64_lossy() as usize;
                values[idx.min(n - 1)]
            }
            Protocol::CosineSeries { constant, terms, .. } => {
                let mut f = *constant;
                for term in terms {
                    f += term.amplitude * (two_pi * term.harmonic * phase_frac + term.phase).cos();
                }
                f
            }
        }
    }
}

/// `∫f` over the support. Piecewise-constant tables are summed exactly;
/// smooth kinds use adaptive Simpson quadrature to absolute error below
/// `1e−10·Δt`.
pub fn protocol_integral<T: Scalar>(f: &Protocol<T>) -> Result<T> {
    f.validate()?;
    let (t0, delta_t) = f.support();
    if let Protocol::Table { values, .. } = f {
        let width = delta_t / T::of(values.len() as f64);
        return Ok(values.iter().fold(T::zero(), |acc, &v| acc + v) * width);
    }
    let eval = |t: T| f.evaluate(t);
    Ok(adaptive_simpson(
        &eval,
        t0,
        t0 + delta_t,
        T::of(1e-10) * delta_t,
    ))
}

fn simpson<T: Scalar>(a: T, b: T, fa: T, fm: T, fb: T) -> T {
    (b - a) / T::of(6.0) * (fa + T::of(4.0) * fm + fb)
}

fn adaptive_simpson<T: Scalar, F: Fn(T) -> T>(f: &F, a: T, b: T, eps: T) -> T {
    let m = (a + b) * T::of(0.5);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    simpson_recurse(f, a, b, fa, fm, fb, whole, eps, 40)
}

#[allow(clippy::too_many_arguments)]
fn simpson_recurse<T: Scalar, F: Fn(T) -> T>(
    f: &F,
    a: T,
    b: T,
    fa: T,
    fm: T,
    fb: T,
    whole: T,
    eps: T,
    depth: u32,
) -> T {
    let m = (a + b) * T::of(0.5);
    let lm = (a + m) * T::of(0.5);
    let rm = (m + b) * T::of(0.5);
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= T::of(15.0) * eps {
        // Richardson correction of the composite estimate.
        left + right + delta / T::of(15.0)
    } else {
        let half_eps = eps * T::of(0.5);
        simpson_recurse(f, a, m, fa, flm, fm, left, half_eps, depth - 1)
            + simpson_recurse(f, m, b, fm, frm, fb, right, half_eps, depth - 1)
    }
}

/// Normalization report for a protocol: the gate-time condition is
/// `∫f = Δt`, and purely oscillatory envelopes (zero integral) can never
/// satisfy it at any amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolCheck<T> {
    /// `∫f` over the support.
    pub integral: T,
    /// `∫f / Δt`; 1 when the gate-time condition holds.
    pub normalized: T,
    /// Whether `∫f = Δt` within quadrature accuracy.
    pub satisfies_normalization: bool,
    /// Whether the envelope takes both signs on its support.
    pub changes_sign: bool,
}

/// Integrate and flag a protocol. Sign changes are reported but not
/// rejected — whether negative drive strengths are physical is left to
/// the caller.
pub fn check_protocol<T: Scalar>(f: &Protocol<T>) -> Result<ProtocolCheck<T>> {
    let integral = protocol_integral(f)?;
    let (t0, delta_t) = f.support();
    let (mut lo, mut hi) = (T::infinity(), T::neg_infinity());
    match f {
        Protocol::Table { values, .. } => {
            for &v in values {
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
        _ => {
            let samples = 4096;
            let step = delta_t / T::of(samples as f64);
            for k in 0..samples {
                let v = f.evaluate(t0 + (T::of(k as f64) + T::of(0.5)) * step);
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
    }
    let scale = lo.abs().max(hi.abs()).max(T::one());
    let sign_tol = T::of(1e-12) * scale;
    let norm_tol = T::of(1e-9) * delta_t.max(T::one());
    Ok(ProtocolCheck {
        integral,
        normalized: integral / delta_t,
        satisfies_normalization: (integral - delta_t).abs() <= norm_tol,
        changes_sign: lo < -sign_tol && hi > sign_tol,
    })
}

/// `U = exp(−i·H·Δt/ħ)` for a time-independent Hamiltonian.
pub fn evolve_const<T: Scalar>(h: &PauliPolynomial<T>, delta_t: T, hbar: T) -> Result<CMatrix<T>> {
    expm_hermitian(&h.to_matrix(), delta_t / hbar)
}

/// Midpoint-rule evolution of `f(t)·H` over the protocol's support.
///
/// The slice factors `exp(−i f(tₖ) H δt/ħ)` all commute, so their
/// ordered product is exactly `exp(−i (Σₖ f(tₖ)δt) H/ħ)`; the only
/// discretization error is the midpoint quadrature of `∫f`, which
/// converges at second order. With `∫f = Δt` this approaches
/// [`evolve_const`] of the same Hamiltonian.
pub fn evolve_protocol<T: Scalar>(
    h: &PauliPolynomial<T>,
    f: &Protocol<T>,
    steps: usize,
    hbar: T,
) -> Result<CMatrix<T>> {
    f.validate()?;
    if steps == 0 {
        return Err(Error::InvalidInput {
            detail: "protocol evolution needs at least one step".into(),
        });
    }
    let (t0, delta_t) = f.support();
    let dt = delta_t / T::of(steps as f64);
    let mut weight = T::zero();
    for k in 0..steps {
        weight += f.evaluate(t0 + (T::of(k as f64) + T::of(0.5)) * dt) * dt;
    }
    expm_hermitian(&h.to_matrix(), weight / hbar)
}

/// Literal time-ordered midpoint product for several independently
/// modulated generators sharing one support:
/// `U = Π_k Π_j exp(−i f_j(tₖ) H_j δt/ħ)`, later slices applied on the
/// left, generators applied in list order within a slice.
///
/// Exact (up to quadrature) when the generators commute; for
/// non-commuting generators the result genuinely depends on ordering and
/// differs from the exponential of the integrated Hamiltonian.
pub fn evolve_protocol_multi<T: Scalar>(
    terms: &[(PauliPolynomial<T>, Protocol<T>)],
    steps: usize,
    hbar: T,
) -> Result<CMatrix<T>> {
    if terms.is_empty() {
        return Err(Error::InvalidInput {
            detail: "multi-protocol evolution needs at least one term".into(),
        });
    }
    if steps == 0 {
        return Err(Error::InvalidInput {
            detail: "protocol evolution needs at least one step".into(),
        });
    }
    let (t0, delta_t) = terms[0].1.support();
    let dim = terms[0].0.dim();
    let mut factors = Vec::with_capacity(terms.len());
    for (h, f) in terms {
        f.validate()?;
        let (other_t0, other_dt) = f.support();
        let support_tol = T::of(1e-12) * delta_t.max(T::one());
        if (other_t0 - t0).abs() > support_tol || (other_dt - delta_t).abs() > support_tol {
            return Err(Error::InvalidProtocol {
                detail: "multi-protocol terms must share one support interval".into(),
            });
        }
        if h.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: h.dim(),
            });
        }
        let matrix = h.to_matrix();
        let (vals, vecs) = eig_hermitian(&matrix, T::hermitian_tol())?;
        factors.push((vals, vecs, f));
    }
    let dt = delta_t / T::of(steps as f64);
    let mut u = CMatrix::identity(dim);
    for k in 0..steps {
        let tk = t0 + (T::of(k as f64) + T::of(0.5)) * dt;
        for (vals, vecs, f) in &factors {
            let scale = f.evaluate(tk) * dt / hbar;
            let factor = exp_from_eigen(vals, vecs, scale);
            u = &factor * &u;
        }
    }
    Ok(u)
}

/// Rebuild `exp(−i·scale·H)` from a cached eigendecomposition of `H`.
fn exp_from_eigen<T: Scalar>(vals: &[T], vecs: &CMatrix<T>, scale: T) -> CMatrix<T> {
    let n = vecs.dim();
    let mut scaled = vecs.clone();
    for (j, &lam) in vals.iter().enumerate() {
        let phase = Complex::from_polar(T::one(), -scale * lam);
        for i in 0..n {
            scaled[(i, j)] *= phase;
        }
    }
    &scaled * &vecs.adjoint()
}

/// Pairwise commutator analysis of a proposed Hamiltonian split.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitReport<T> {
    /// True iff every pairwise commutator norm is below the tolerance.
    pub commutes: bool,
    /// `(i, j, ‖[Hᵢ, Hⱼ]‖_F)` for all `i < j`.
    pub pair_norms: Vec<(usize, usize, T)>,
    /// Threshold used for the verdict.
    pub tolerance: T,
}

/// Check whether a list of Hamiltonian terms pairwise commute — the
/// precondition for evolving each term under its own protocol without
/// time-ordering error.
pub fn split_commutes<T: Scalar>(terms: &[PauliPolynomial<T>]) -> Result<SplitReport<T>> {
    let tolerance = T::unitary_tol();
    if terms.is_empty() {
        return Ok(SplitReport {
            commutes: true,
            pair_norms: Vec::new(),
            tolerance,
        });
    }
    let n = terms[0].n_qubits();
    for t in terms {
        if t.n_qubits() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: t.n_qubits(),
            });
        }
    }
    let matrices: Vec<CMatrix<T>> = terms.iter().map(|t| t.to_matrix()).collect();
    let mut pair_norms = Vec::new();
    let mut commutes = true;
    for i in 0..matrices.len() {
        for j in (i + 1)..matrices.len() {
            let ab = &matrices[i] * &matrices[j];
            let ba = &matrices[j] * &matrices[i];
            let norm = (&ab - &ba).frobenius_norm();
            if norm > tolerance {
                commutes = false;
            }
            pair_norms.push((i, j, norm));
        }
    }
    Ok(SplitReport {
        commutes,
        pair_norms,
        tolerance,
    })
}

/// Leakage of one truth-table row under a candidate unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct RowLeakage<T> {
    pub label: String,
    pub leakage: T,
}

/// Outcome of checking a unitary against a gate's subspace semantics.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport<T> {
    pub passed: bool,
    pub rows: Vec<RowLeakage<T>>,
    pub worst_leakage: T,
    pub tolerance: T,
}

/// Verify that a unitary implements a gate's semantics: for every
/// truth-table row, apply `U` to each basis state of the row's input
/// subspace and measure the squared amplitude landing outside the
/// required output subspace. A row's leakage is the maximum over that
/// input basis, so global phases and intra-subspace phase freedom are
/// ignored automatically.
pub fn verify_gate<T: Scalar>(
    u: &CMatrix<T>,
    spec: &GateSpec,
    tol: T,
) -> Result<VerificationReport<T>> {
    if u.dim() != spec.dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.dim(),
            found: u.dim(),
        });
    }
    let mut rows = Vec::with_capacity(spec.semantics().len());
    let mut worst = T::zero();
    for row in spec.semantics() {
        let mut row_leak = T::zero();
        for &j in &row.inputs {
            let mut outside = T::zero();
            for i in 0..u.dim() {
                if !row.outputs.contains(&i) {
                    outside += u[(i, j)].norm_sqr();
                }
            }
            row_leak = row_leak.max(outside);
        }
        worst = worst.max(row_leak);
        rows.push(RowLeakage {
            label: row.label.clone(),
            leakage: row_leak,
        });
    }
    Ok(VerificationReport {
        passed: worst <= tol,
        rows,
        worst_leakage: worst,
        tolerance: tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliString;
    use crate::synthesis::{hamiltonian_not1, hamiltonian_not2, hamiltonian_xor};

    const PI: f64 = std::f64::consts::PI;

    fn s(text: &str) -> PauliString {
        text.parse().unwrap()
    }

    fn poly(n: usize, entries: &[(&str, f64)]) -> PauliPolynomial<f64> {
        let mut p = PauliPolynomial::zero(n).unwrap();
        for (string, coeff) in entries {
            p.add_term(s(string), *coeff).unwrap();
        }
        p
    }

    #[test]
    fn protocols_vanish_outside_support() {
        let f = Protocol::<f64>::RaisedCosine { amplitude: 1.0, t0: 2.0, delta_t: 3.0 };
        assert_eq!(f.evaluate(1.9), 0.0);
        assert_eq!(f.evaluate(5.1), 0.0);
        assert!((f.evaluate(3.5) - 2.0).abs() < 1e-15, "peak is twice the amplitude");
    }

    #[test]
    fn integrals_match_closed_forms() {
        let c = Protocol::<f64>::Constant { amplitude: 0.75, t0: -1.0, delta_t: 2.0 };
        assert!((protocol_integral(&c).unwrap() - 1.5).abs() < 1e-12);

        let rc = Protocol::<f64>::RaisedCosine { amplitude: 1.0, t0: 0.0, delta_t: 0.8 };
        assert!((protocol_integral(&rc).unwrap() - 0.8).abs() < 1e-11);

        let table = Protocol::<f64>::Table { t0: 0.0, delta_t: 0.6, values: vec![1.0, 3.0, -2.0] };
        assert!((protocol_integral(&table).unwrap() - 0.4).abs() < 1e-15);
    }

    #[test]
    fn purely_oscillatory_protocol_is_flagged() {
        // sin(2πt/Δt) as a cosine with phase −π/2.
        let f = Protocol::<f64>::CosineSeries {
            t0: 0.0,
            delta_t: 1.0,
            constant: 0.0,
            terms: vec![CosineTerm { harmonic: 1.0, amplitude: 1.0, phase: -PI / 2.0 }],
        };
        let check = check_protocol(&f).unwrap();
        assert!(check.integral.abs() < 1e-10);
        assert!(!check.satisfies_normalization);
        assert!(check.changes_sign);
    }

    #[test]
    fn raised_cosine_is_normalized_and_single_signed() {
        let f = Protocol::<f64>::RaisedCosine { amplitude: 1.0, t0: 0.3, delta_t: 1.7 };
        let check = check_protocol(&f).unwrap();
        assert!(check.satisfies_normalization);
        assert!((check.normalized - 1.0).abs() < 1e-9);
        assert!(!check.changes_sign);
    }

    #[test]
    fn structural_validation_rejects_bad_protocols() {
        let bad: [Protocol<f64>; 4] = [
            Protocol::Constant { amplitude: 1.0, t0: 0.0, delta_t: 0.0 },
            Protocol::Constant { amplitude: f64::NAN, t0: 0.0, delta_t: 1.0 },
            Protocol::Table { t0: 0.0, delta_t: 1.0, values: vec![] },
            Protocol::CosineSeries {
                t0: 0.0,
                delta_t: 1.0,
                constant: 0.0,
                terms: vec![CosineTerm { harmonic: 0.0, amplitude: 1.0, phase: 0.0 }],
            },
        ];
        for f in bad {
            assert!(matches!(f.validate(), Err(Error::InvalidProtocol { .. })), "{f:?}");
        }
    }

    #[test]
    fn zero_hamiltonian_evolves_to_identity() {
        let h = PauliPolynomial::<f64>::zero(2).unwrap();
        let u = evolve_const(&h, 1.0, 1.0).unwrap();
        assert!(u.max_abs_diff(&CMatrix::identity(4)) < 1e-15);
    }

    #[test]
    fn transverse_field_evolves_to_i_sigma_x() {
        let h = hamiltonian_not1(0, 0.0, 1.0, 1.0).unwrap();
        let u = evolve_const(&h, 1.0, 1.0).unwrap();
        assert!(u[(0, 0)].norm() < 1e-12);
        assert!((u[(0, 1)] - Complex::new(0.0, 1.0)).norm() < 1e-12);
        assert!((u[(1, 0)] - Complex::new(0.0, 1.0)).norm() < 1e-12);
        assert!(u.unitarity_residual() < 1e-10);
    }

    #[test]
    fn constant_unit_protocol_reproduces_const_evolution() {
        let h = hamiltonian_not2(0.7, 0, 1.1, 1.0, 1.0).unwrap();
        let f = Protocol::Constant { amplitude: 1.0, t0: 0.0, delta_t: 1.0 };
        let via_protocol = evolve_protocol(&h, &f, 7, 1.0).unwrap();
        let direct = evolve_const(&h, 1.0, 1.0).unwrap();
        assert!(via_protocol.max_abs_diff(&direct) < 1e-13);
    }

    #[test]
    fn raised_cosine_protocol_converges_to_const_evolution() {
        let h = hamiltonian_xor(0.0, 0.0, 0.0, 1.0, 1.0).unwrap();
        let f = Protocol::RaisedCosine { amplitude: 1.0, t0: 0.0, delta_t: 1.0 };
        let evolved = evolve_protocol(&h, &f, 512, 1.0).unwrap();
        let direct = evolve_const(&h, 1.0, 1.0).unwrap();
        assert!(evolved.max_abs_diff(&direct) < 1e-6);
    }

    #[test]
    fn incommensurate_cosine_protocol_converges_at_second_order() {
        // Whole-period cosine components are integrated exactly by the
        // midpoint rule (their slice sums cancel like roots of unity), so
        // the generic O(steps⁻²) behaviour only shows on a component
        // whose endpoint slopes differ — here 1.5 cycles per gate time.
        let f = Protocol::<f64>::CosineSeries {
            t0: 0.0,
            delta_t: 1.0,
            constant: 1.0,
            terms: vec![CosineTerm { harmonic: 1.5, amplitude: 1.0, phase: 0.3 }],
        };
        let h = hamiltonian_not1(0, 0.6, 1.0, 1.0).unwrap();
        let target = evolve_const(&h.scale(protocol_integral(&f).unwrap()), 1.0, 1.0).unwrap();
        let coarse = evolve_protocol(&h, &f, 128, 1.0).unwrap().max_abs_diff(&target);
        let fine = evolve_protocol(&h, &f, 512, 1.0).unwrap().max_abs_diff(&target);
        assert!(coarse > 1e-9, "error must be genuinely measurable, got {coarse:.3e}");
        let order = (coarse / fine).log2() / 2.0;
        assert!(
            (1.9..2.1).contains(&order),
            "observed order {order}, coarse {coarse:.3e}, fine {fine:.3e}"
        );
    }

    #[test]
    fn commuting_split_evolves_exactly_under_two_protocols() {
        let full = hamiltonian_not2(0.7, 0, 1.1, 1.0, 1.0).unwrap();
        let ising = poly(2, &[("ZZ", -0.7)]);
        let mut remainder = full.clone();
        remainder.add_term(s("ZZ"), 0.7).unwrap();
        let report = split_commutes(&[ising.clone(), remainder.clone()]).unwrap();
        assert!(report.commutes, "norms: {:?}", report.pair_norms);

        let f1 = Protocol::RaisedCosine { amplitude: 1.0, t0: 0.0, delta_t: 1.0 };
        let f2 = Protocol::Constant { amplitude: 1.0, t0: 0.0, delta_t: 1.0 };
        let split = evolve_protocol_multi(
            &[(ising, f1), (remainder, f2)],
            512,
            1.0,
        )
        .unwrap();
        let direct = evolve_const(&full, 1.0, 1.0).unwrap();
        assert!(split.max_abs_diff(&direct) < 1e-9);
    }

    #[test]
    fn non_commuting_split_is_detected() {
        let a = poly(1, &[("Z", 1.3)]);
        let b = poly(1, &[("X", 0.8), ("Y", 0.4)]);
        let report = split_commutes(&[a, b]).unwrap();
        assert!(!report.commutes);
        assert_eq!(report.pair_norms.len(), 1);
        assert!(report.pair_norms[0].2 > 1.0);
    }

    #[test]
    fn single_term_split_commutes_trivially() {
        let report = split_commutes(&[poly(1, &[("X", 1.0)])]).unwrap();
        assert!(report.commutes);
        assert!(report.pair_norms.is_empty());
    }

    #[test]
    fn split_rejects_mixed_qubit_counts() {
        let err = split_commutes(&[poly(1, &[("X", 1.0)]), poly(2, &[("XX", 1.0)])]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { expected: 1, found: 2 }));
    }

    #[test]
    fn rotating_frame_drive_needs_time_ordering() {
        // A static longitudinal field plus a transverse field rotating at
        // one cycle per gate time: the frozen-time terms do not commute,
        // and the ordered product differs from the exponential of the
        // time-averaged Hamiltonian (which is the static part alone).
        let zfield = poly(1, &[("Z", 1.3)]);
        let xdrive = poly(1, &[("X", 0.9)]);
        let ydrive = poly(1, &[("Y", 0.9)]);
        let one = Protocol::Constant { amplitude: 1.0, t0: 0.0, delta_t: 1.0 };
        let cosine = Protocol::CosineSeries {
            t0: 0.0,
            delta_t: 1.0,
            constant: 0.0,
            terms: vec![CosineTerm { harmonic: 1.0, amplitude: 1.0, phase: 0.0 }],
        };
        let sine = Protocol::CosineSeries {
            t0: 0.0,
            delta_t: 1.0,
            constant: 0.0,
            terms: vec![CosineTerm { harmonic: 1.0, amplitude: 1.0, phase: -PI / 2.0 }],
        };
        let ordered = evolve_protocol_multi(
            &[(zfield.clone(), one), (xdrive, cosine), (ydrive, sine)],
            2048,
            1.0,
        )
        .unwrap();
        let naive = evolve_const(&zfield, 1.0, 1.0).unwrap();
        let deviation = ordered.max_abs_diff(&naive);
        assert!(deviation > 1e-3, "deviation {deviation}");
        assert!(ordered.unitarity_residual() < 1e-10);
    }

    #[test]
    fn sigma_x_passes_not_gate_verification() {
        let u = crate::gates::not1_unitary(&crate::gates::Not1Params { alpha: 0.0, beta: 0.0 });
        let report = verify_gate(&u, &GateSpec::not1(), 1e-12).unwrap();
        assert!(report.passed);
        assert!(report.worst_leakage < 1e-15);
        assert_eq!(report.rows.len(), 2);
    }

    #[test]
    fn evolved_two_spin_not_passes_verification() {
        let h = hamiltonian_not2(0.7, 0, 1.1, 1.0, 1.0).unwrap();
        let u = evolve_const(&h, 1.0, 1.0).unwrap();
        let report = verify_gate(&u, &GateSpec::not2(), 1e-9).unwrap();
        assert!(report.passed, "worst leakage {}", report.worst_leakage);
    }

    #[test]
    fn evolved_xor_form_passes_verification() {
        let h = hamiltonian_xor(0.0, 0.0, 0.0, 1.0, 1.0).unwrap();
        let u = evolve_const(&h, 1.0, 1.0).unwrap();
        let report = verify_gate(&u, &GateSpec::xor(), 1e-9).unwrap();
        assert!(report.passed, "worst leakage {}", report.worst_leakage);
    }

    #[test]
    fn identity_fails_xor_verification_with_full_leakage() {
        let u = CMatrix::<f64>::identity(8);
        let report = verify_gate(&u, &GateSpec::xor(), 1e-9).unwrap();
        assert!(!report.passed);
        assert!((report.worst_leakage - 1.0).abs() < 1e-15);
        // Every row preserves one C value that contradicts A⊕B.
        for row in &report.rows {
            assert!((row.leakage - 1.0).abs() < 1e-15, "{}", row.label);
        }
    }

    #[test]
    fn verify_gate_rejects_dimension_mismatch() {
        let u = CMatrix::<f64>::identity(4);
        let err = verify_gate(&u, &GateSpec::xor(), 1e-9).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { expected: 8, found: 4 }));
    }
}
