//! Hamiltonian synthesis: energy assignment from unitary eigenvalues with
//! explicit branch integers, closed-form generators for the NOT and XOR
//! families, and the generic eigendecomposition pipeline for arbitrary
//! unitaries.
//!
//! Conventions: a gate unitary is `U = exp(−i·H·Δt/ħ)`. Recovering `H`
//! from `U` leaves each energy free up to `2πħ/Δt` times an integer; those
//! integers are the [`BranchChoice`]. Closed-form constructors take branch
//! integers in the family's own eigenvalue labelling; the generic
//! [`synthesize`] pipeline uses sorted-cluster order, and
//! [`branch_matching`] bridges the two.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::gates::{Not1Params, Not2RestrictedParams, XorParams};
use crate::linalg::{
    cluster_energies, eig_unitary, expm_hermitian, principal_arg, BranchChoice, CMatrix, Spectrum,
};
use crate::pauli::{decompose, PauliPolynomial, PauliString};
use crate::scalar::Scalar;

/// Energies assigned to a unitary's eigenvalue clusters, together with
/// the branch integers and physical constants that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyLevels<T> {
    energies: Vec<T>,
    branch: BranchChoice,
    delta_t: T,
    hbar: T,
}

impl<T: Scalar> EnergyLevels<T> {
    pub fn new(energies: Vec<T>, branch: BranchChoice, delta_t: T, hbar: T) -> Self {
        EnergyLevels {
            energies,
            branch,
            delta_t,
            hbar,
        }
    }

    /// Assign one energy per cluster of `spectrum` on the given branch.
    pub fn from_spectrum(
        spectrum: &Spectrum<T>,
        branch: &BranchChoice,
        delta_t: T,
        hbar: T,
    ) -> Result<Self> {
        let energies = cluster_energies(spectrum, branch, delta_t, hbar)?;
        Ok(EnergyLevels::new(energies, branch.clone(), delta_t, hbar))
    }

    pub fn energies(&self) -> &[T] {
        &self.energies
    }

    pub fn branch(&self) -> &BranchChoice {
        &self.branch
    }

    pub fn delta_t(&self) -> T {
        self.delta_t
    }

    pub fn hbar(&self) -> T {
        self.hbar
    }

    /// Max−min energy; reported because narrow spectra are physically
    /// preferable, though nothing optimizes this automatically.
    pub fn spread(&self) -> T {
        let mut min = T::infinity();
        let mut max = T::neg_infinity();
        for &e in &self.energies {
            min = min.min(e);
            max = max.max(e);
        }
        if self.energies.is_empty() {
            T::zero()
        } else {
            max - min
        }
    }

    /// Check the defining congruence `Eₖ·Δt/ħ ≡ −arg(λₖ) (mod 2π)` of
    /// every level against a spectrum's cluster representatives.
    pub fn consistent_with(&self, spectrum: &Spectrum<T>, tol: T) -> bool {
        if self.energies.len() != spectrum.cluster_count() {
            return false;
        }
        self.energies
            .iter()
            .zip(spectrum.cluster_values())
            .all(|(&e, lam)| {
                let defect = wrap_angle(e * self.delta_t / self.hbar + principal_arg(lam));
                defect.abs() <= tol
            })
    }
}

/// Map an angle into `(−π, π]`.
fn wrap_angle<T: Scalar>(theta: T) -> T {
    let two_pi = T::of(2.0) * T::PI();
    let mut t = theta % two_pi;
    if t > T::PI() {
        t -= two_pi;
    } else if t <= -T::PI() {
        t += two_pi;
    }
    t
}

fn string<T: Scalar>(s: &str) -> PauliString {
    s.parse().expect("literal Pauli string")
}

/// Single-spin NOT generator `(πħ/Δt)(N−½)(cos γ·X + sin γ·Y)` — the
/// traceless part of the general form, i.e. a transverse field at angle γ.
pub fn hamiltonian_not1<T: Scalar>(n: i64, gamma: T, delta_t: T, hbar: T) -> Result<PauliPolynomial<T>> {
    let k = T::PI() * hbar / delta_t * (T::of(n as f64) - T::of(0.5));
    let mut p = PauliPolynomial::zero(1)?;
    p.add_term(string::<T>("X"), k * gamma.cos())?;
    p.add_term(string::<T>("Y"), k * gamma.sin())?;
    Ok(p)
}

/// Full single-spin NOT generator for `U = [[0, e^{iβ}], [e^{iα}, 0]]`,
/// identity term included. Branch integers `[N₁, N₂]` attach to the
/// eigenvalues `±e^{i(α+β)/2}` in that order. Dropping the identity term
/// reproduces [`hamiltonian_not1`] with `N = N₁−N₂` and `γ = (α−β)/2`.
pub fn hamiltonian_not1_general<T: Scalar>(
    p: &Not1Params<T>,
    branch: &BranchChoice,
    delta_t: T,
    hbar: T,
) -> Result<PauliPolynomial<T>> {
    if branch.len() != 2 {
        return Err(Error::BranchLength {
            expected: 2,
            found: branch.len(),
        });
    }
    let two_pi = T::of(2.0) * T::PI();
    let n1 = T::of(branch.integers()[0] as f64);
    let n2 = T::of(branch.integers()[1] as f64);
    let half_sum = (p.alpha + p.beta) * T::of(0.5);
    let e1 = hbar / delta_t * (-half_sum + two_pi * n1);
    let e2 = hbar / delta_t * (-half_sum + T::PI() + two_pi * n2);
    let gamma = (p.alpha - p.beta) * T::of(0.5);
    let avg = (e1 + e2) * T::of(0.5);
    let dif = (e1 - e2) * T::of(0.5);
    let mut out = PauliPolynomial::zero(1)?;
    out.add_term(string::<T>("I"), avg)?;
    out.add_term(string::<T>("X"), dif * gamma.cos())?;
    out.add_term(string::<T>("Y"), dif * gamma.sin())?;
    Ok(out)
}

/// Two-spin NOT generator
/// `−ℰ·ZZ + (πħ/2Δt)(N−½)[cos γ(XX−YY) + sin γ(XY+YX)]`.
/// `e_ising` is the free Ising coupling ℰ; its spectrum is
/// `{−ℰ±(πħ/Δt)(N−½), ℰ, ℰ}`.
pub fn hamiltonian_not2<T: Scalar>(
    e_ising: T,
    n: i64,
    gamma: T,
    delta_t: T,
    hbar: T,
) -> Result<PauliPolynomial<T>> {
    let k = T::PI() * hbar / (T::of(2.0) * delta_t) * (T::of(n as f64) - T::of(0.5));
    let mut p = PauliPolynomial::zero(2)?;
    p.add_term(string::<T>("ZZ"), -e_ising)?;
    p.add_term(string::<T>("XX"), k * gamma.cos())?;
    p.add_term(string::<T>("YY"), -k * gamma.cos())?;
    p.add_term(string::<T>("XY"), k * gamma.sin())?;
    p.add_term(string::<T>("YX"), k * gamma.sin())?;
    Ok(p)
}

/// The four energies of the restricted two-spin NOT on a given branch.
/// Branch integers `[N₁..N₄]` attach to the family's eigenvalue labels
/// `u₁ = e^{i(α+β)/2}, u₂ = −e^{i(α+β)/2}, u₃ = e^{iρ}, u₄ = e^{iδ}`.
pub fn not2_energy_levels<T: Scalar>(
    p: &Not2RestrictedParams<T>,
    branch: &BranchChoice,
    delta_t: T,
    hbar: T,
) -> Result<[T; 4]> {
    if branch.len() != 4 {
        return Err(Error::BranchLength {
            expected: 4,
            found: branch.len(),
        });
    }
    let two_pi = T::of(2.0) * T::PI();
    let n = |i: usize| T::of(branch.integers()[i] as f64);
    let half_sum = (p.alpha + p.beta) * T::of(0.5);
    let scale = hbar / delta_t;
    Ok([
        scale * (-half_sum + two_pi * n(0)),
        scale * (-half_sum + T::PI() + two_pi * n(1)),
        scale * (-p.rho + two_pi * n(2)),
        scale * (-p.delta + two_pi * n(3)),
    ])
}

/// Full generator of the restricted two-spin NOT in terms of its four
/// level energies:
///
/// ```text
/// H = (E₁+E₂+E₃+E₄)/4·II + (E₃−E₄)/4·(ZI−IZ) + (E₁+E₂−E₃−E₄)/4·ZZ
///   + (E₁−E₂)/4·[cos γ(XX−YY) + sin γ(XY+YX)],  γ = (α−β)/2.
/// ```
///
/// With `E₃=E₄` the weight-1 terms vanish and, after dropping the
/// constant, this is [`hamiltonian_not2`] with `ℰ = −(E₁+E₂−E₃−E₄)/4`.
pub fn hamiltonian_not2_general<T: Scalar>(
    p: &Not2RestrictedParams<T>,
    branch: &BranchChoice,
    delta_t: T,
    hbar: T,
) -> Result<PauliPolynomial<T>> {
    let [e1, e2, e3, e4] = not2_energy_levels(p, branch, delta_t, hbar)?;
    let gamma = (p.alpha - p.beta) * T::of(0.5);
    let quarter = T::of(0.25);
    let c_id = (e1 + e2 + e3 + e4) * quarter;
    let c_z = (e3 - e4) * quarter;
    let c_zz = (e1 + e2 - e3 - e4) * quarter;
    let c_flip = (e1 - e2) * quarter;
    let mut out = PauliPolynomial::zero(2)?;
    out.add_term(string::<T>("II"), c_id)?;
    out.add_term(string::<T>("ZI"), c_z)?;
    out.add_term(string::<T>("IZ"), -c_z)?;
    out.add_term(string::<T>("ZZ"), c_zz)?;
    out.add_term(string::<T>("XX"), c_flip * gamma.cos())?;
    out.add_term(string::<T>("YY"), -c_flip * gamma.cos())?;
    out.add_term(string::<T>("XY"), c_flip * gamma.sin())?;
    out.add_term(string::<T>("YX"), c_flip * gamma.sin())?;
    Ok(out)
}

/// XOR phase angles with the five derived phases pinned so both cycle
/// blocks average to `μ = ν = −3π/4`, which nullifies the generators'
/// diagonals and keeps every interaction two-spin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XorAngleSolution<T> {
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
    pub delta: T,
    pub rho: T,
    pub omega_angle: T,
    pub xi: T,
    pub eta: T,
    pub mu: T,
    pub nu: T,
}

impl<T: Scalar> XorAngleSolution<T> {
    /// The gate-family parameter record for this solution.
    pub fn params(&self) -> XorParams<T> {
        XorParams {
            alpha: self.alpha,
            beta: self.beta,
            gamma: self.gamma,
            delta: self.delta,
            rho: self.rho,
            omega_angle: self.omega_angle,
            xi: self.xi,
            eta: self.eta,
        }
    }

    /// Verify the five constraint identities and both phase averages.
    /// Everything must hold to floating-point accuracy; violations mean
    /// the record was not produced by [`solve_xor_constraints`].
    pub fn validate(&self) -> Result<()> {
        let pi = T::PI();
        let scale = T::one()
            + [self.alpha, self.beta, self.gamma]
                .iter()
                .fold(T::zero(), |a, b| a.max(b.abs()));
        let tol = T::of(1e-9) * scale.max(T::one());
        let checks: [(&str, T); 7] = [
            (
                "delta = -3*pi - alpha - beta - gamma",
                self.delta + T::of(3.0) * pi + self.alpha + self.beta + self.gamma,
            ),
            ("rho = -pi + beta", self.rho + pi - self.beta),
            (
                "omega = -2*pi - alpha - beta - gamma",
                self.omega_angle + T::of(2.0) * pi + self.alpha + self.beta + self.gamma,
            ),
            ("xi = -pi + gamma", self.xi + pi - self.gamma),
            ("eta = pi + alpha", self.eta - pi - self.alpha),
            (
                "mu = (alpha+beta+gamma+delta)/4 = -3*pi/4",
                (self.alpha + self.beta + self.gamma + self.delta) * T::of(0.25) - self.mu,
            ),
            (
                "nu = (rho+omega+xi+eta)/4 = -3*pi/4",
                (self.rho + self.omega_angle + self.xi + self.eta) * T::of(0.25) - self.nu,
            ),
        ];
        for (name, defect) in checks {
            if !(defect.abs() <= tol) {
                return Err(Error::ConstraintViolation {
                    detail: format!("{name} violated by {:.3e}", defect.to_f64_lossy()),
                });
            }
        }
        let mu_defect = (self.mu + T::of(0.75) * pi).abs();
        let nu_defect = (self.nu + T::of(0.75) * pi).abs();
        if mu_defect > tol || nu_defect > tol {
            return Err(Error::ConstraintViolation {
                detail: "phase averages must equal -3*pi/4".into(),
            });
        }
        Ok(())
    }
}

/// Solve the XOR diagonal-nulling constraints for the three free angles:
/// `δ = −3π−α−β−γ`, `ρ = −π+β`, `ω = −2π−α−β−γ`, `ξ = −π+γ`, `η = π+α`,
/// which force `μ = ν = −3π/4`.
pub fn solve_xor_constraints<T: Scalar>(alpha: T, beta: T, gamma: T) -> XorAngleSolution<T> {
    let pi = T::PI();
    XorAngleSolution {
        alpha,
        beta,
        gamma,
        delta: -T::of(3.0) * pi - alpha - beta - gamma,
        rho: -pi + beta,
        omega_angle: -T::of(2.0) * pi - alpha - beta - gamma,
        xi: -pi + gamma,
        eta: pi + alpha,
        mu: -T::of(0.75) * pi,
        nu: -T::of(0.75) * pi,
    }
}

/// The linear-in-Pauli half of the XOR generator, determined by two
/// complex scalars:
///
/// ```text
/// [[ 0,  X,  Y,  0],
///  [ X*, 0,  0,  Y],
///  [ Y*, 0,  0,  X],
///  [ 0,  Y*, X*, 0]]
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstOrderForm<T> {
    pub x: Complex<T>,
    pub y: Complex<T>,
}

impl<T: Scalar> FirstOrderForm<T> {
    /// Closed form for a constrained solution:
    /// `X = κ(e^{−iα} − e^{iβ})`, `Y = κ(e^{−i(α+β+γ)} + e^{−iγ})` with
    /// `κ = −i·√2·πħ/4Δt`.
    pub fn from_solution(sol: &XorAngleSolution<T>, delta_t: T, hbar: T) -> Self {
        let kappa = Complex::new(T::zero(), -T::of(2.0).sqrt() * T::PI() * hbar / (T::of(4.0) * delta_t));
        let e = |t: T| Complex::from_polar(T::one(), t);
        FirstOrderForm {
            x: kappa * (e(-sol.alpha) - e(sol.beta)),
            y: kappa * (e(-(sol.alpha + sol.beta + sol.gamma)) + e(-sol.gamma)),
        }
    }

    pub fn materialize(&self) -> CMatrix<T> {
        let mut m = CMatrix::zeros(4);
        m[(0, 1)] = self.x;
        m[(0, 2)] = self.y;
        m[(1, 3)] = self.y;
        m[(2, 3)] = self.x;
        m[(1, 0)] = self.x.conj();
        m[(2, 0)] = self.y.conj();
        m[(3, 1)] = self.y.conj();
        m[(3, 2)] = self.x.conj();
        m
    }
}

/// Generators of the XOR blocks and the two combinations entering the
/// three-spin Hamiltonian. `p` and `q` are dimensionless
/// (`V = exp(ip)`, `W = exp(iq)`); `sum = P+Q` and `difference = P−Q`
/// carry energy units via `P = −(ħ/Δt)p`, `Q = −(ħ/Δt)q`.
#[derive(Debug, Clone)]
pub struct PqOperators<T: Scalar> {
    pub p: CMatrix<T>,
    pub q: CMatrix<T>,
    pub sum: CMatrix<T>,
    pub difference: CMatrix<T>,
}

/// Build the cycle-block generators for a constrained XOR solution.
/// Rejects records violating the constraint identities, since the closed
/// forms below hold only on the constraint surface.
pub fn build_pq<T: Scalar>(
    sol: &XorAngleSolution<T>,
    delta_t: T,
    hbar: T,
) -> Result<PqOperators<T>> {
    sol.validate()?;
    let p = cycle_generator(sol.mu, sol.alpha, sol.beta, sol.gamma, sol.delta, false);
    let q = cycle_generator(sol.nu, sol.rho, sol.omega_angle, sol.eta, sol.xi, true);
    let scale = Complex::new(-hbar / delta_t, T::zero());
    let big_p = p.scale(scale);
    let big_q = q.scale(scale);
    Ok(PqOperators {
        sum: &big_p + &big_q,
        difference: &big_p - &big_q,
        p,
        q,
    })
}

/// Hermitian logarithm of a phased 4-cycle, on the branch with
/// eigenvalues `{m, m+π/2, m+π, m+3π/2}` where `m` is the phase average.
///
/// The V-cycle (1→2→4→3→1) and W-cycle (2→1→3→4→2) differ by a basis
/// relabelling; `mirrored` selects the W layout. Arguments are the cycle's
/// phases in traversal order: for V `(α, β, γ, δ)` as (a₁→a₂, a₃→a₄,
/// a₂→a₄, a₃←…) matching the closed form below; for W `(ρ, ω, η, ξ)`.
fn cycle_generator<T: Scalar>(m: T, a: T, b: T, g: T, d: T, mirrored: bool) -> CMatrix<T> {
    let quarter_pi = T::FRAC_PI_4();
    // Scaled by π/4 below along with everything else, this lands on the
    // phase average plus 3π/4 — zero exactly on the constraint surface.
    let diag = Complex::new(T::of(4.0) * m / T::PI() + T::of(3.0), T::zero());
    let e = |t: T| Complex::from_polar(T::one(), t);
    let one_p = Complex::new(T::one(), T::one());
    let one_m = Complex::new(T::one(), -T::one());
    let mut out = CMatrix::zeros(4);
    for i in 0..4 {
        out[(i, i)] = diag;
    }
    if !mirrored {
        out[(0, 1)] = -one_p * e(m - a);
        out[(0, 2)] = -one_m * e(d - m);
        out[(0, 3)] = -e(T::of(2.0) * m - a - g);
        out[(1, 2)] = -e(T::of(2.0) * m - b - g);
        out[(1, 3)] = -one_p * e(m - g);
        out[(2, 3)] = -one_m * e(b - m);
    } else {
        // W layout: (a,b,g,d) = (ρ, ω, η, ξ).
        out[(0, 1)] = -one_m * e(a - m);
        out[(0, 2)] = -one_p * e(m - d);
        out[(0, 3)] = -e(a + b - T::of(2.0) * m);
        out[(1, 2)] = -e(b + g - T::of(2.0) * m);
        out[(1, 3)] = -one_m * e(b - m);
        out[(2, 3)] = -one_p * e(m - g);
    }
    // Hermitian closure of the strict upper triangle.
    for i in 0..4 {
        for j in 0..i {
            out[(i, j)] = out[(j, i)].conj();
        }
    }
    out.scale(Complex::new(quarter_pi, T::zero()))
}

/// Closed-form three-spin XOR generator for the three free angles:
/// `2H = I_A⊗(P+Q) + σ_zA⊗(P−Q)`, decomposed into Pauli terms. Every
/// term is a two-spin interaction.
pub fn hamiltonian_xor<T: Scalar>(
    alpha: T,
    beta: T,
    gamma: T,
    delta_t: T,
    hbar: T,
) -> Result<PauliPolynomial<T>> {
    let sol = solve_xor_constraints(alpha, beta, gamma);
    let pq = build_pq(&sol, delta_t, hbar)?;
    let h = assemble_xor_hamiltonian(&pq);
    decompose(&h)
}

/// `H = ½[I_A⊗(P+Q) + σ_zA⊗(P−Q)]` as an 8×8 matrix.
pub fn assemble_xor_hamiltonian<T: Scalar>(pq: &PqOperators<T>) -> CMatrix<T> {
    let mut h = CMatrix::zeros(8);
    let half = Complex::new(T::of(0.5), T::zero());
    for i in 0..4 {
        for j in 0..4 {
            h[(i, j)] = half * (pq.sum[(i, j)] + pq.difference[(i, j)]);
            h[(4 + i, 4 + j)] = half * (pq.sum[(i, j)] - pq.difference[(i, j)]);
        }
    }
    h
}

/// A synthesized Hamiltonian together with its level assignment.
#[derive(Debug, Clone)]
pub struct Synthesis<T: Scalar> {
    pub hamiltonian: PauliPolynomial<T>,
    pub levels: EnergyLevels<T>,
}

/// Generic pipeline: eigendecompose a unitary, assign one energy per
/// eigenvalue cluster on the given branch (sorted-cluster order), build
/// `H = Σ Eₖ Pₖ`, and expand in Pauli strings. The result is re-verified
/// by exponentiation before being returned.
pub fn synthesize<T: Scalar>(
    u: &CMatrix<T>,
    branch: &BranchChoice,
    delta_t: T,
    hbar: T,
) -> Result<Synthesis<T>> {
    let spectrum = eig_unitary(u, T::unitary_tol())?;
    let levels = EnergyLevels::from_spectrum(&spectrum, branch, delta_t, hbar)?;
    let weights: Vec<Complex<T>> = levels
        .energies()
        .iter()
        .map(|&e| Complex::new(e, T::zero()))
        .collect();
    let h = spectrum.assemble(&weights).hermitize();
    let roundtrip = expm_hermitian(&h, delta_t / hbar)?;
    let residual = roundtrip.max_abs_diff(u);
    if residual > T::verify_tol() {
        return Err(Error::BadReconstruction {
            residual: residual.to_f64_lossy(),
            tol: T::verify_tol().to_f64_lossy(),
        });
    }
    Ok(Synthesis {
        hamiltonian: decompose(&h)?,
        levels,
    })
}

/// Find the branch integers (in sorted-cluster order) under which the
/// spectrum's cluster energies equal a set of target energies given in
/// any order — the bridge between a family's own level labelling and the
/// generic pipeline. Fails if some cluster matches no target energy.
pub fn branch_matching<T: Scalar>(
    spectrum: &Spectrum<T>,
    target_energies: &[T],
    delta_t: T,
    hbar: T,
) -> Result<BranchChoice> {
    let two_pi = T::of(2.0) * T::PI();
    let tol = T::of(1e-6);
    let mut integers = Vec::with_capacity(spectrum.cluster_count());
    for lam in spectrum.cluster_values() {
        let theta = principal_arg(lam);
        let mut found = None;
        for &e in target_energies {
            // E·Δt/ħ + θ must be an integer multiple of 2π.
            let phi = e * delta_t / hbar + theta;
            let n = (phi / two_pi).round();
            if (phi - two_pi * n).abs() <= tol {
                found = Some(n.to_f64_lossy() as i64);
                break;
            }
        }
        match found {
            Some(n) => integers.push(n),
            None => {
                return Err(Error::InvalidInput {
                    detail: format!(
                        "no target energy matches eigenvalue cluster at argument {:.6}",
                        theta.to_f64_lossy()
                    ),
                })
            }
        }
    }
    Ok(BranchChoice::new(integers))
}
