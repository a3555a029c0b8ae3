//! Parametrized unitary families for one-shot spin gates, and the
//! block-pattern/truth-table specifications they must satisfy.
//!
//! Families: the single-spin NOT (2×2, zero diagonal), the two-spin NOT in
//! its full eight-parameter and restricted four-parameter forms, and the
//! three-spin XOR built from two phased four-cycles on the A-spin blocks.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::scalar::Scalar;

/// Angles of the single-spin NOT family `[[0, e^{iβ}], [e^{iα}, 0]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Not1Params<T> {
    pub alpha: T,
    pub beta: T,
}

/// Full parametrization of the two-spin NOT block pattern: six phases plus
/// two mixing angles confined to the first quadrant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Not2GeneralParams<T> {
    pub chi: T,
    pub beta: T,
    pub alpha: T,
    pub rho: T,
    pub eta: T,
    pub delta: T,
    omega_mix: T,
    upsilon_mix: T,
}

impl<T: Scalar> Not2GeneralParams<T> {
    /// Mixing angles are clamped to `[0, π/2]`; every unitary of the
    /// family is reachable within that range.
    #[allow(clippy::too_many_arguments)]
    pub fn new(chi: T, beta: T, alpha: T, rho: T, eta: T, delta: T, omega_mix: T, upsilon_mix: T) -> Self {
        let clamp = |x: T| x.max(T::zero()).min(T::FRAC_PI_2());
        Not2GeneralParams {
            chi,
            beta,
            alpha,
            rho,
            eta,
            delta,
            omega_mix: clamp(omega_mix),
            upsilon_mix: clamp(upsilon_mix),
        }
    }

    pub fn omega_mix(&self) -> T {
        self.omega_mix
    }

    pub fn upsilon_mix(&self) -> T {
        self.upsilon_mix
    }
}

/// The four-phase restriction of the two-spin NOT: one phase per
/// nonzero entry, no mixing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Not2RestrictedParams<T> {
    pub alpha: T,
    pub beta: T,
    pub rho: T,
    pub delta: T,
}

/// Eight phases of the three-spin XOR blocks: the V-cycle carries
/// `alpha, beta, gamma, delta`, the W-cycle `rho, omega_angle, xi, eta`.
/// (`omega_angle` avoids collision with frequency nomenclature.)
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XorParams<T> {
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
    pub delta: T,
    pub rho: T,
    pub omega_angle: T,
    pub xi: T,
    pub eta: T,
}

fn phase<T: Scalar>(angle: T) -> Complex<T> {
    Complex::from_polar(T::one(), angle)
}

/// Single-spin NOT unitary `[[0, e^{iβ}], [e^{iα}, 0]]`.
pub fn not1_unitary<T: Scalar>(p: &Not1Params<T>) -> CMatrix<T> {
    let mut u = CMatrix::zeros(2);
    u[(0, 1)] = phase(p.beta);
    u[(1, 0)] = phase(p.alpha);
    u
}

/// Two-spin NOT unitary in the full eight-parameter form. The zero
/// pattern fixes eight entries structurally; the remaining eight are
/// phased mixtures controlled by the two clamped angles.
pub fn not2_general_unitary<T: Scalar>(p: &Not2GeneralParams<T>) -> CMatrix<T> {
    let om = p.omega_mix();
    let up = p.upsilon_mix();
    let mut u = CMatrix::zeros(4);
    u[(0, 2)] = phase(p.chi).scale(om.sin());
    u[(0, 3)] = phase(p.beta).scale(om.cos());
    u[(1, 0)] = -phase(p.alpha + p.rho - p.eta).scale(up.sin());
    u[(1, 1)] = phase(p.rho).scale(up.cos());
    u[(2, 2)] = phase(p.delta).scale(om.cos());
    u[(2, 3)] = -phase(p.beta + p.delta - p.chi).scale(om.sin());
    u[(3, 0)] = phase(p.alpha).scale(up.cos());
    u[(3, 1)] = phase(p.eta).scale(up.sin());
    u
}

/// Two-spin NOT unitary in the restricted four-phase form: an
/// antidiagonal swap on the input-up/input-down pair plus two diagonal
/// phases.
pub fn not2_restricted_unitary<T: Scalar>(p: &Not2RestrictedParams<T>) -> CMatrix<T> {
    let mut u = CMatrix::zeros(4);
    u[(0, 3)] = phase(p.beta);
    u[(1, 1)] = phase(p.rho);
    u[(2, 2)] = phase(p.delta);
    u[(3, 0)] = phase(p.alpha);
    u
}

/// The two 4×4 cycle blocks of the XOR unitary: `V` acts on the A-up
/// subspace, `W` on the A-down subspace.
pub fn xor_blocks<T: Scalar>(p: &XorParams<T>) -> (CMatrix<T>, CMatrix<T>) {
    let mut v = CMatrix::zeros(4);
    v[(0, 2)] = phase(p.delta);
    v[(1, 0)] = phase(p.alpha);
    v[(2, 3)] = phase(p.beta);
    v[(3, 1)] = phase(p.gamma);
    let mut w = CMatrix::zeros(4);
    w[(0, 1)] = phase(p.rho);
    w[(1, 3)] = phase(p.omega_angle);
    w[(2, 0)] = phase(p.xi);
    w[(3, 2)] = phase(p.eta);
    (v, w)
}

/// Three-spin XOR unitary: block-diagonal in the A-spin,
/// `U = |up⟩⟨up|⊗V + |down⟩⟨down|⊗W`, equivalently
/// `2U = I_A⊗(V+W) + σ_zA⊗(V−W)`.
pub fn xor_unitary<T: Scalar>(p: &XorParams<T>) -> CMatrix<T> {
    let (v, w) = xor_blocks(p);
    let mut u = CMatrix::zeros(8);
    for i in 0..4 {
        for j in 0..4 {
            u[(i, j)] = v[(i, j)];
            u[(4 + i, 4 + j)] = w[(i, j)];
        }
    }
    u
}

/// One truth-table row: the basis states a gate input may occupy and the
/// basis states its image must stay within.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemanticRow {
    pub label: String,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
}

/// Structural specification of a gate: which unitary entries may be
/// nonzero, and the input→output subspace semantics per truth-table row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateSpec {
    name: String,
    n_qubits: usize,
    allowed: Vec<bool>,
    semantics: Vec<SemanticRow>,
}

impl GateSpec {
    fn from_semantics(name: &str, n_qubits: usize, semantics: Vec<SemanticRow>) -> Self {
        let dim = 1usize << n_qubits;
        // Entry (i, j) is allowed iff applying the gate to basis state j
        // may produce amplitude on i. Columns not covered by any row are
        // unconstrained.
        let mut allowed = vec![false; dim * dim];
        let mut covered = vec![false; dim];
        for row in &semantics {
            for &j in &row.inputs {
                covered[j] = true;
                for &i in &row.outputs {
                    allowed[i * dim + j] = true;
                }
            }
        }
        for j in 0..dim {
            if !covered[j] {
                for i in 0..dim {
                    allowed[i * dim + j] = true;
                }
            }
        }
        GateSpec {
            name: name.to_string(),
            n_qubits,
            allowed,
            semantics,
        }
    }

    /// Single-spin NOT: up maps to down and down to up, phases free.
    pub fn not1() -> Self {
        let semantics = vec![
            SemanticRow {
                label: "in=1".into(),
                inputs: vec![0],
                outputs: vec![1],
            },
            SemanticRow {
                label: "in=0".into(),
                inputs: vec![1],
                outputs: vec![0],
            },
        ];
        GateSpec::from_semantics("not1", 1, semantics)
    }

    /// Two-spin NOT: the output spin O (second letter) must end opposite
    /// to the input spin I (first letter); I's final state is free.
    /// Basis: 0=|11⟩, 1=|10⟩, 2=|01⟩, 3=|00⟩ as |IO⟩.
    pub fn not2() -> Self {
        let semantics = vec![
            SemanticRow {
                label: "I=1".into(),
                inputs: vec![0, 1],
                outputs: vec![1, 3],
            },
            SemanticRow {
                label: "I=0".into(),
                inputs: vec![2, 3],
                outputs: vec![0, 2],
            },
        ];
        GateSpec::from_semantics("not2", 2, semantics)
    }

    /// Three-spin XOR in C: for each AB basis value (with C in either
    /// state), the image's C-bit must equal A⊕B; final A, B states and
    /// the phase of C are unconstrained. Qubit order |ABC⟩, bit 1 = up,
    /// index 0 = |111⟩.
    pub fn xor() -> Self {
        // Spin value (1=up) of `qubit` in basis state `index`;
        // qubits are A=0, B=1, C=2.
        let spin = |index: usize, qubit: usize| 1 - ((index >> (2 - qubit)) & 1);
        let mut semantics = Vec::new();
        for a in [1usize, 0] {
            for b in [1usize, 0] {
                let want_c = a ^ b;
                let inputs: Vec<usize> = (0..8)
                    .filter(|&j| spin(j, 0) == a && spin(j, 1) == b)
                    .collect();
                let outputs: Vec<usize> = (0..8).filter(|&i| spin(i, 2) == want_c).collect();
                semantics.push(SemanticRow {
                    label: format!("A={a},B={b}"),
                    inputs,
                    outputs,
                });
            }
        }
        GateSpec::from_semantics("xor", 3, semantics)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1usize << self.n_qubits
    }

    pub fn is_allowed(&self, i: usize, j: usize) -> bool {
        self.allowed[i * self.dim() + j]
    }

    pub fn semantics(&self) -> &[SemanticRow] {
        &self.semantics
    }
}

/// Total squared magnitude of `u` on entries the spec forbids; zero iff
/// the block pattern is respected.
pub fn pattern_leakage<T: Scalar>(u: &CMatrix<T>, spec: &GateSpec) -> Result<T> {
    let dim = spec.dim();
    if u.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: u.dim(),
        });
    }
    let mut total = T::zero();
    for i in 0..dim {
        for j in 0..dim {
            if !spec.is_allowed(i, j) {
                total += u[(i, j)].norm_sqr();
            }
        }
    }
    Ok(total)
}
