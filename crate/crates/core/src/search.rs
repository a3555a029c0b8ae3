//! Derivative-free search for coupling constants within a structured
//! interaction ansatz that realize a target gate.
//!
//! The objective is the worst-case subspace leakage of the evolved
//! unitary against a [`GateSpec`]; it is smooth, cheap (small dense
//! exponentials), and nonconvex, so a restarted simplex method with a
//! plain random-search fallback covers the practical ground.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::evolution::{evolve_const, verify_gate};
use crate::gates::GateSpec;
use crate::pauli::{PauliPolynomial, PauliString};
use crate::scalar::Scalar;

/// An interaction ansatz: which Pauli strings may appear in the
/// Hamiltonian and the coefficient interval for each.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingAnsatz<T> {
    n_qubits: usize,
    terms: Vec<PauliString>,
    bounds: Vec<(T, T)>,
}

impl<T: Scalar> CouplingAnsatz<T> {
    /// Build an ansatz from explicit strings. Strings are sorted and
    /// deduplicated; every string must match `n_qubits`. Default bounds
    /// are `±2πħ/Δt` per coefficient, generously covering the magnitude
    /// any single level assignment needs on the principal branch.
    pub fn new(
        n_qubits: usize,
        strings: Vec<PauliString>,
        delta_t: T,
        hbar: T,
    ) -> Result<Self> {
        let mut terms = strings;
        terms.sort();
        terms.dedup();
        if terms.is_empty() {
            return Err(Error::EmptyAnsatz);
        }
        for s in &terms {
            if s.len() != n_qubits {
                return Err(Error::StringLength {
                    expected: n_qubits,
                    found: s.len(),
                });
            }
        }
        let cap = T::of(2.0) * T::PI() * hbar / delta_t;
        let bounds = vec![(-cap, cap); terms.len()];
        Ok(CouplingAnsatz {
            n_qubits,
            terms,
            bounds,
        })
    }

    /// Uniaxial (Ising) couplings: `ZZ` on every qubit pair.
    pub fn ising(n_qubits: usize, delta_t: T, hbar: T, include_fields: bool) -> Result<Self> {
        Self::from_pair_letters(n_qubits, &[('Z', 'Z')], delta_t, hbar, include_fields)
    }

    /// Planar (XY) couplings: `XX` and `YY` on every qubit pair, with
    /// independent coefficients.
    pub fn xy(n_qubits: usize, delta_t: T, hbar: T, include_fields: bool) -> Result<Self> {
        Self::from_pair_letters(n_qubits, &[('X', 'X'), ('Y', 'Y')], delta_t, hbar, include_fields)
    }

    /// Isotropic (Heisenberg) couplings: `XX`, `YY`, `ZZ` on every qubit
    /// pair, with independent coefficients.
    pub fn heisenberg(n_qubits: usize, delta_t: T, hbar: T, include_fields: bool) -> Result<Self> {
        Self::from_pair_letters(
            n_qubits,
            &[('X', 'X'), ('Y', 'Y'), ('Z', 'Z')],
            delta_t,
            hbar,
            include_fields,
        )
    }

    /// The four-string two-spin family `{ZZ, XX, YY, XY, YX}` in which
    /// the two-spin NOT has exact solutions.
    pub fn not2_family(delta_t: T, hbar: T) -> Result<Self> {
        let strings = ["ZZ", "XX", "YY", "XY", "YX"]
            .iter()
            .map(|s| s.parse().expect("literal Pauli string"))
            .collect();
        Self::new(2, strings, delta_t, hbar)
    }

    /// The twelve-string three-spin family in which the XOR gate has
    /// exact solutions; every string couples exactly two spins.
    pub fn xor_family(delta_t: T, hbar: T) -> Result<Self> {
        let strings = [
            "ZIX", "ZIY", "ZXI", "ZYI", "IZX", "IZY", "IXZ", "IYZ", "IXX", "IXY", "IYX", "IYY",
        ]
        .iter()
        .map(|s| s.parse().expect("literal Pauli string"))
        .collect();
        Self::new(3, strings, delta_t, hbar)
    }

    fn from_pair_letters(
        n_qubits: usize,
        pair_letters: &[(char, char)],
        delta_t: T,
        hbar: T,
        include_fields: bool,
    ) -> Result<Self> {
        let mut strings = Vec::new();
        for i in 0..n_qubits {
            for j in (i + 1)..n_qubits {
                for &(a, b) in pair_letters {
                    let mut letters = vec!['I'; n_qubits];
                    letters[i] = a;
                    letters[j] = b;
                    let text: String = letters.into_iter().collect();
                    strings.push(text.parse().expect("constructed Pauli string"));
                }
            }
        }
        if include_fields {
            for i in 0..n_qubits {
                for letter in ['X', 'Y', 'Z'] {
                    let mut letters = vec!['I'; n_qubits];
                    letters[i] = letter;
                    let text: String = letters.into_iter().collect();
                    strings.push(text.parse().expect("constructed Pauli string"));
                }
            }
        }
        Self::new(n_qubits, strings, delta_t, hbar)
    }

    /// Replace the per-coefficient bounds (one interval per term).
    pub fn set_bounds(&mut self, bounds: Vec<(T, T)>) -> Result<()> {
        if bounds.len() != self.terms.len() {
            return Err(Error::CoefficientCount {
                expected: self.terms.len(),
                found: bounds.len(),
            });
        }
        for &(lo, hi) in &bounds {
            if !lo.is_finite() || !hi.is_finite() || lo >= hi {
                return Err(Error::InvalidInput {
                    detail: "coefficient bounds must be finite nonempty intervals".into(),
                });
            }
        }
        self.bounds = bounds;
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// The interaction strings, in sorted order; objective coefficient
    /// vectors follow this order.
    pub fn terms(&self) -> &[PauliString] {
        &self.terms
    }

    pub fn bounds(&self) -> &[(T, T)] {
        &self.bounds
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True if every interaction couples at most two spins.
    pub fn two_spin_only(&self) -> bool {
        self.terms.iter().all(|s| s.weight() <= 2)
    }

    /// The Hamiltonian for a coefficient vector in [`terms`](Self::terms)
    /// order.
    pub fn hamiltonian(&self, coeffs: &[T]) -> Result<PauliPolynomial<T>> {
        if coeffs.len() != self.terms.len() {
            return Err(Error::CoefficientCount {
                expected: self.terms.len(),
                found: coeffs.len(),
            });
        }
        let mut h = PauliPolynomial::zero(self.n_qubits)?;
        for (s, &c) in self.terms.iter().zip(coeffs) {
            h.add_term(s.clone(), c)?;
        }
        Ok(h)
    }
}

/// Which optimizer drives the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Optimizer {
    /// Restarted reflection/expansion/contraction simplex with adaptive
    /// coefficients and shrinking reseed cycles.
    NelderMead,
    /// Uniform random sampling within bounds — a baseline and a
    /// robustness fallback.
    Random,
}

/// Search configuration. Determinism contract: identical config and
/// inputs produce an identical [`SearchResult`], bit for bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig<T> {
    /// Independent restarts; each gets its own derived RNG stream.
    pub restarts: usize,
    /// Objective-evaluation budget per restart.
    pub max_evaluations: usize,
    /// Master seed for all random draws.
    pub seed: u64,
    /// Stop as soon as a leakage at or below this is found.
    pub target_leakage: T,
    pub optimizer: Optimizer,
}

impl<T: Scalar> SearchConfig<T> {
    pub fn new(seed: u64) -> Self {
        SearchConfig {
            restarts: 8,
            max_evaluations: 2000,
            seed,
            target_leakage: T::of(1e-9),
            optimizer: Optimizer::NelderMead,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.max_evaluations == 0 {
            return Err(Error::InvalidInput {
                detail: "search needs at least one restart and one evaluation".into(),
            });
        }
        if !self.target_leakage.is_finite() || self.target_leakage < T::zero() {
            return Err(Error::InvalidInput {
                detail: "target leakage must be finite and nonnegative".into(),
            });
        }
        Ok(())
    }
}

/// One recorded improvement: the restart it happened in, the global
/// evaluation count at that moment, and the restart's best leakage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistoryPoint<T> {
    pub restart: usize,
    pub evaluation: usize,
    pub best_leakage: T,
}

/// Outcome of a search run.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult<T> {
    /// Best coefficient vector found, in ansatz term order.
    pub best_coefficients: Vec<T>,
    /// Objective value at `best_coefficients`, recomputed at the end.
    pub best_leakage: T,
    /// Total objective evaluations across all restarts.
    pub evaluations_used: usize,
    /// Per-restart improvement trace; non-increasing within a restart.
    pub history: Vec<HistoryPoint<T>>,
}

/// Worst-case gate leakage of the ansatz Hamiltonian with the given
/// coefficients, evolved for one gate time.
pub fn objective<T: Scalar>(
    coeffs: &[T],
    ansatz: &CouplingAnsatz<T>,
    spec: &GateSpec,
    delta_t: T,
    hbar: T,
) -> Result<T> {
    if ansatz.n_qubits() != spec.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: spec.n_qubits(),
            found: ansatz.n_qubits(),
        });
    }
    let h = ansatz.hamiltonian(coeffs)?;
    let u = evolve_const(&h, delta_t, hbar)?;
    // The tolerance only affects the pass flag, not the reported number.
    let report = verify_gate(&u, spec, T::verify_tol())?;
    Ok(report.worst_leakage)
}

/// Run a seeded, restarted search for coefficients realizing the gate.
///
/// Each restart draws a fresh starting point inside the bounds from its
/// own RNG stream, so restarts are independent and the whole run is
/// reproducible. The returned best leakage is recomputed from the best
/// coefficients, keeping the result self-consistent.
pub fn run_search<T: Scalar>(
    ansatz: &CouplingAnsatz<T>,
    spec: &GateSpec,
    config: &SearchConfig<T>,
    delta_t: T,
    hbar: T,
) -> Result<SearchResult<T>> {
    config.validate()?;
    if ansatz.is_empty() {
        return Err(Error::EmptyAnsatz);
    }

    let mut best_x: Option<Vec<T>> = None;
    let mut best_f = T::infinity();
    let mut evaluations_used = 0usize;
    let mut history = Vec::new();

    for restart in 0..config.restarts {
        let stream = config.seed ^ (restart as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let mut rng = ChaCha8Rng::seed_from_u64(stream);
        let x0: Vec<T> = ansatz
            .bounds()
            .iter()
            .map(|&(lo, hi)| draw_uniform(&mut rng, lo, hi))
            .collect();
        let mut tracker = Tracker {
            ansatz,
            spec,
            delta_t,
            hbar,
            restart,
            budget: config.max_evaluations,
            target: config.target_leakage,
            local_evals: 0,
            best_x: None,
            best_f: T::infinity(),
            evaluations_used: &mut evaluations_used,
            history: &mut history,
        };
        match config.optimizer {
            Optimizer::NelderMead => nelder_mead_drive(&mut tracker, ansatz.bounds(), x0)?,
            Optimizer::Random => random_drive(&mut tracker, ansatz.bounds(), &mut rng)?,
        }
        if tracker.best_f < best_f {
            best_f = tracker.best_f;
            best_x = tracker.best_x.take();
        }
        if best_f <= config.target_leakage {
            break;
        }
    }

    let best_coefficients = best_x.ok_or(Error::InvalidInput {
        detail: "search budget too small to evaluate any candidate".into(),
    })?;
    let best_leakage = objective(&best_coefficients, ansatz, spec, delta_t, hbar)?;
    Ok(SearchResult {
        best_coefficients,
        best_leakage,
        evaluations_used,
        history,
    })
}

fn draw_uniform<T: Scalar>(rng: &mut ChaCha8Rng, lo: T, hi: T) -> T {
    // Draws happen in f64 and are narrowed afterwards, so the stream of
    // random bits is identical for every scalar type.
    let lo_f = lo.to_f64_lossy();
    let hi_f = hi.to_f64_lossy();
    T::of(rng.random_range(lo_f..hi_f))
}

/// Per-restart evaluation bookkeeping: every objective call flows
/// through [`Tracker::eval`], so the incumbent and the improvement
/// history can never miss an evaluated point, regardless of where the
/// budget runs out.
struct Tracker<'a, T: Scalar> {
    ansatz: &'a CouplingAnsatz<T>,
    spec: &'a GateSpec,
    delta_t: T,
    hbar: T,
    restart: usize,
    budget: usize,
    target: T,
    local_evals: usize,
    best_x: Option<Vec<T>>,
    best_f: T,
    evaluations_used: &'a mut usize,
    history: &'a mut Vec<HistoryPoint<T>>,
}

impl<T: Scalar> Tracker<'_, T> {
    fn spent(&self) -> bool {
        self.local_evals >= self.budget
    }

    fn done(&self) -> bool {
        self.spent() || self.best_f <= self.target
    }

    fn eval(&mut self, x: &[T]) -> Result<T> {
        let f = objective(x, self.ansatz, self.spec, self.delta_t, self.hbar)?;
        self.local_evals += 1;
        *self.evaluations_used += 1;
        if f < self.best_f {
            self.best_f = f;
            self.best_x = Some(x.to_vec());
            self.history.push(HistoryPoint {
                restart: self.restart,
                evaluation: *self.evaluations_used,
                best_leakage: f,
            });
        }
        Ok(f)
    }
}

/// Adaptive Nelder–Mead with reseed cycles: run the simplex to
/// convergence, then rebuild it around the incumbent with a quarter of
/// the step and continue until the budget or the target is hit.
fn nelder_mead_drive<T: Scalar>(
    tracker: &mut Tracker<'_, T>,
    bounds: &[(T, T)],
    x0: Vec<T>,
) -> Result<()> {
    let n = x0.len();
    let nf = T::of(n as f64);
    let alpha = T::one();
    let gamma = T::one() + T::of(2.0) / nf;
    let rho = T::of(0.75) - T::one() / (T::of(2.0) * nf);
    let sigma = T::one() - T::one() / nf;
    let scales: Vec<T> = bounds.iter().map(|&(lo, hi)| (hi - lo) / T::of(8.0)).collect();

    let mut shrink = T::one();
    let mut center = x0;

    'outer: while !tracker.done() {
        // Fresh axis-aligned simplex around the current center.
        let mut pts: Vec<Vec<T>> = Vec::with_capacity(n + 1);
        pts.push(center.clone());
        for i in 0..n {
            let mut p = center.clone();
            p[i] += scales[i] * shrink;
            pts.push(p);
        }
        let mut fs: Vec<T> = Vec::with_capacity(n + 1);
        for p in &pts {
            if tracker.done() {
                break 'outer;
            }
            fs.push(tracker.eval(p)?);
        }

        loop {
            if tracker.done() {
                break 'outer;
            }
            let mut order: Vec<usize> = (0..pts.len()).collect();
            order.sort_by(|&a, &b| fs[a].partial_cmp(&fs[b]).expect("finite objective"));
            pts = order.iter().map(|&i| pts[i].clone()).collect();
            fs = order.iter().map(|&i| fs[i]).collect();

            let spread = fs[n] - fs[0];
            if spread < T::of(1e-16) * (fs[0].abs() + T::of(1e-30)) {
                break; // converged; reseed around the incumbent
            }

            let mut centroid = vec![T::zero(); n];
            for p in pts.iter().take(n) {
                for (c, &v) in centroid.iter_mut().zip(p) {
                    *c += v;
                }
            }
            for c in centroid.iter_mut() {
                *c /= nf;
            }
            let worst = pts[n].clone();
            let reflect: Vec<T> = centroid
                .iter()
                .zip(&worst)
                .map(|(&c, &w)| c + alpha * (c - w))
                .collect();
            let f_reflect = tracker.eval(&reflect)?;

            if f_reflect < fs[0] {
                if tracker.done() {
                    break 'outer;
                }
                let expand: Vec<T> = centroid
                    .iter()
                    .zip(&reflect)
                    .map(|(&c, &r)| c + gamma * (r - c))
                    .collect();
                let f_expand = tracker.eval(&expand)?;
                if f_expand < f_reflect {
                    replace_worst(&mut pts, &mut fs, expand, f_expand);
                } else {
                    replace_worst(&mut pts, &mut fs, reflect, f_reflect);
                }
            } else if f_reflect < fs[n - 1] {
                replace_worst(&mut pts, &mut fs, reflect, f_reflect);
            } else {
                if tracker.done() {
                    break 'outer;
                }
                let contract: Vec<T> = if f_reflect < fs[n] {
                    centroid
                        .iter()
                        .zip(&reflect)
                        .map(|(&c, &r)| c + rho * (r - c))
                        .collect()
                } else {
                    centroid
                        .iter()
                        .zip(&worst)
                        .map(|(&c, &w)| c - rho * (c - w))
                        .collect()
                };
                let f_contract = tracker.eval(&contract)?;
                if f_contract < f_reflect.min(fs[n]) {
                    replace_worst(&mut pts, &mut fs, contract, f_contract);
                } else {
                    // Shrink the whole simplex towards the best vertex.
                    for i in 1..=n {
                        for j in 0..n {
                            pts[i][j] = pts[0][j] + sigma * (pts[i][j] - pts[0][j]);
                        }
                        if tracker.done() {
                            break 'outer;
                        }
                        fs[i] = tracker.eval(&pts[i])?;
                    }
                }
            }
        }

        if let Some(x) = &tracker.best_x {
            center = x.clone();
        }
        shrink *= T::of(0.25);
        if shrink < T::of(1e-9) {
            shrink = T::of(0.01);
        }
    }
    Ok(())
}

fn replace_worst<T: Scalar>(pts: &mut [Vec<T>], fs: &mut [T], x: Vec<T>, f: T) {
    let last = pts.len() - 1;
    pts[last] = x;
    fs[last] = f;
}

/// Uniform sampling within bounds until the budget or target is hit.
fn random_drive<T: Scalar>(
    tracker: &mut Tracker<'_, T>,
    bounds: &[(T, T)],
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    while !tracker.done() {
        let x: Vec<T> = bounds
            .iter()
            .map(|&(lo, hi)| draw_uniform(rng, lo, hi))
            .collect();
        tracker.eval(&x)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthesis::{hamiltonian_not2, hamiltonian_xor};

    fn strings(ansatz: &CouplingAnsatz<f64>) -> Vec<String> {
        ansatz.terms().iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn conventional_ansatz_factories() {
        let ising2 = CouplingAnsatz::<f64>::ising(2, 1.0, 1.0, false).unwrap();
        assert_eq!(strings(&ising2), ["ZZ"]);

        let ising3 = CouplingAnsatz::<f64>::ising(3, 1.0, 1.0, false).unwrap();
        assert_eq!(strings(&ising3), ["IZZ", "ZIZ", "ZZI"]);

        let xy2 = CouplingAnsatz::<f64>::xy(2, 1.0, 1.0, false).unwrap();
        assert_eq!(strings(&xy2), ["XX", "YY"]);

        let heis2 = CouplingAnsatz::<f64>::heisenberg(2, 1.0, 1.0, false).unwrap();
        assert_eq!(strings(&heis2), ["XX", "YY", "ZZ"]);

        let with_fields = CouplingAnsatz::<f64>::ising(2, 1.0, 1.0, true).unwrap();
        assert_eq!(strings(&with_fields), ["IX", "IY", "IZ", "XI", "YI", "ZI", "ZZ"]);
        assert!(with_fields.two_spin_only());
    }

    #[test]
    fn default_bounds_scale_with_gate_time() {
        let a = CouplingAnsatz::<f64>::ising(2, 0.5, 2.0, false).unwrap();
        let (lo, hi) = a.bounds()[0];
        let cap = 2.0 * std::f64::consts::PI * 2.0 / 0.5;
        assert!((hi - cap).abs() < 1e-12);
        assert!((lo + cap).abs() < 1e-12);
    }

    #[test]
    fn empty_and_mismatched_ansatz_are_rejected() {
        assert!(matches!(
            CouplingAnsatz::<f64>::new(2, vec![], 1.0, 1.0),
            Err(Error::EmptyAnsatz)
        ));
        let err = CouplingAnsatz::<f64>::new(2, vec!["XXX".parse().unwrap()], 1.0, 1.0)
            .unwrap_err();
        assert!(matches!(err, Error::StringLength { expected: 2, found: 3 }));
        let mut ok = CouplingAnsatz::<f64>::ising(2, 1.0, 1.0, false).unwrap();
        assert!(matches!(
            ok.set_bounds(vec![(0.0, 1.0), (0.0, 1.0)]),
            Err(Error::CoefficientCount { expected: 1, found: 2 })
        ));
    }

    #[test]
    fn objective_is_zero_at_the_two_spin_closed_form() {
        let ansatz = CouplingAnsatz::<f64>::not2_family(1.0, 1.0).unwrap();
        let h = hamiltonian_not2(0.7, 0, 1.1, 1.0, 1.0).unwrap();
        let coeffs: Vec<f64> = ansatz.terms().iter().map(|s| h.coefficient(s)).collect();
        let leak = objective(&coeffs, &ansatz, &GateSpec::not2(), 1.0, 1.0).unwrap();
        assert!(leak < 1e-9, "leakage {leak}");
    }

    #[test]
    fn objective_is_zero_at_the_xor_closed_form() {
        let ansatz = CouplingAnsatz::<f64>::xor_family(1.0, 1.0).unwrap();
        let h = hamiltonian_xor(0.3, -0.8, 1.1, 1.0, 1.0).unwrap();
        assert_eq!(h.num_terms(), 12, "generic angles populate all strings");
        let coeffs: Vec<f64> = ansatz.terms().iter().map(|s| h.coefficient(s)).collect();
        let leak = objective(&coeffs, &ansatz, &GateSpec::xor(), 1.0, 1.0).unwrap();
        assert!(leak < 1e-9, "leakage {leak}");
    }

    #[test]
    fn objective_at_zero_coefficients_is_identity_leakage() {
        let ansatz = CouplingAnsatz::<f64>::xor_family(1.0, 1.0).unwrap();
        let leak = objective(&vec![0.0; 12], &ansatz, &GateSpec::xor(), 1.0, 1.0).unwrap();
        assert!((leak - 1.0).abs() < 1e-12, "identity leaks fully, got {leak}");
    }

    #[test]
    fn objective_checks_coefficient_count() {
        let ansatz = CouplingAnsatz::<f64>::not2_family(1.0, 1.0).unwrap();
        let err = objective(&[0.0; 3], &ansatz, &GateSpec::not2(), 1.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::CoefficientCount { expected: 5, found: 3 }));
    }

    #[test]
    fn search_recovers_the_two_spin_not_solution() {
        let ansatz = CouplingAnsatz::<f64>::not2_family(1.0, 1.0).unwrap();
        let mut config = SearchConfig::<f64>::new(7);
        config.restarts = 10;
        config.max_evaluations = 1200;
        config.target_leakage = 1e-8;
        let result = run_search(&ansatz, &GateSpec::not2(), &config, 1.0, 1.0).unwrap();
        assert!(result.best_leakage < 1e-6, "best {}", result.best_leakage);
    }

    #[test]
    fn search_is_deterministic_for_a_fixed_seed() {
        let ansatz = CouplingAnsatz::<f64>::not2_family(1.0, 1.0).unwrap();
        let mut config = SearchConfig::<f64>::new(42);
        config.restarts = 2;
        config.max_evaluations = 150;
        config.target_leakage = 0.0;
        let a = run_search(&ansatz, &GateSpec::not2(), &config, 1.0, 1.0).unwrap();
        let b = run_search(&ansatz, &GateSpec::not2(), &config, 1.0, 1.0).unwrap();
        assert_eq!(a.evaluations_used, b.evaluations_used);
        assert_eq!(a.history.len(), b.history.len());
        assert_eq!(a.best_leakage.to_bits(), b.best_leakage.to_bits());
        for (x, y) in a.best_coefficients.iter().zip(&b.best_coefficients) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }

    #[test]
    fn history_is_monotone_within_each_restart() {
        let ansatz = CouplingAnsatz::<f64>::not2_family(1.0, 1.0).unwrap();
        let mut config = SearchConfig::<f64>::new(3);
        config.restarts = 3;
        config.max_evaluations = 300;
        config.target_leakage = 0.0;
        let result = run_search(&ansatz, &GateSpec::not2(), &config, 1.0, 1.0).unwrap();
        for window in result.history.windows(2) {
            if window[0].restart == window[1].restart {
                assert!(window[1].best_leakage <= window[0].best_leakage);
                assert!(window[1].evaluation >= window[0].evaluation);
            }
        }
        // The recomputed best matches the recorded minimum.
        let recorded_min = result
            .history
            .iter()
            .map(|h| h.best_leakage)
            .fold(f64::INFINITY, f64::min);
        assert!((result.best_leakage - recorded_min).abs() < 1e-12);
    }

    #[test]
    fn ising_only_ansatz_cannot_flip_the_output_spin() {
        // A diagonal Hamiltonian can only produce diagonal unitaries, and
        // the two-spin NOT requires every diagonal entry to vanish.
        let ansatz = CouplingAnsatz::<f64>::ising(2, 1.0, 1.0, false).unwrap();
        let mut config = SearchConfig::<f64>::new(11);
        config.restarts = 4;
        config.max_evaluations = 400;
        config.target_leakage = 1e-12;
        config.optimizer = Optimizer::Random;
        let result = run_search(&ansatz, &GateSpec::not2(), &config, 1.0, 1.0).unwrap();
        assert!(result.best_leakage > 0.9, "diagonal floor, got {}", result.best_leakage);
    }
}
