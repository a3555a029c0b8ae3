//! n-qubit Pauli-string algebra.
//!
//! Operators on spin registers are represented as real-coefficient linear
//! combinations of Pauli strings — tensor products over qubits of
//! `{I, σx, σy, σz}`. The basis convention throughout: index 0 is the
//! all-up state, qubit A is the leftmost letter and the most significant
//! bit, and spin-up is the first basis vector of each 2×2 factor.

use num_complex::Complex;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::scalar::Scalar;

/// One single-qubit Pauli factor. The declaration order fixes the sort
/// order used in canonical term listings: `I < X < Y < Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PauliOp {
    I,
    X,
    Y,
    Z,
}

impl PauliOp {
    pub fn from_char(letter: char) -> Result<Self> {
        match letter {
            'I' => Ok(PauliOp::I),
            'X' => Ok(PauliOp::X),
            'Y' => Ok(PauliOp::Y),
            'Z' => Ok(PauliOp::Z),
            other => Err(Error::InvalidPauliLetter { letter: other }),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            PauliOp::I => 'I',
            PauliOp::X => 'X',
            PauliOp::Y => 'Y',
            PauliOp::Z => 'Z',
        }
    }

    /// Column index and matrix entry of this operator's only nonzero in
    /// row `row` (each Pauli matrix has exactly one nonzero per row).
    fn action<T: Scalar>(self, row: usize) -> (usize, Complex<T>) {
        let one = Complex::new(T::one(), T::zero());
        match self {
            PauliOp::I => (row, one),
            PauliOp::X => (1 - row, one),
            PauliOp::Y => {
                if row == 0 {
                    (1, Complex::new(T::zero(), -T::one()))
                } else {
                    (0, Complex::new(T::zero(), T::one()))
                }
            }
            PauliOp::Z => (row, if row == 0 { one } else { -one }),
        }
    }
}

/// A tensor product of Pauli factors, e.g. `"ZYI"` for σz⊗σy⊗I.
/// Leftmost letter acts on qubit A (the most significant basis bit).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString {
    letters: Vec<PauliOp>,
}

impl PauliString {
    pub fn new(letters: Vec<PauliOp>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidInput {
                detail: "a Pauli string needs at least one letter".into(),
            });
        }
        Ok(PauliString { letters })
    }

    /// The all-identity string on `n` qubits.
    pub fn identity(n: usize) -> Result<Self> {
        Self::new(vec![PauliOp::I; n])
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[PauliOp] {
        &self.letters
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&op| op != PauliOp::I).count()
    }

    /// Column index and value of the single nonzero entry in `row` of the
    /// string's matrix, without materializing the matrix.
    fn row_action<T: Scalar>(&self, row: usize) -> (usize, Complex<T>) {
        let n = self.letters.len();
        let mut col = 0usize;
        let mut factor = Complex::new(T::one(), T::zero());
        for (k, op) in self.letters.iter().enumerate() {
            let bit = (row >> (n - 1 - k)) & 1;
            let (cbit, f) = op.action::<T>(bit);
            col = (col << 1) | cbit;
            factor *= f;
        }
        (col, factor)
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s.chars().map(PauliOp::from_char).collect::<Result<Vec<_>>>()?;
        PauliString::new(letters)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.letters {
            write!(f, "{}", op.to_char())?;
        }
        Ok(())
    }
}

/// Dense 2ⁿ×2ⁿ matrix of a Pauli string (Hermitian and unitary).
pub fn string_matrix<T: Scalar>(s: &PauliString) -> CMatrix<T> {
    let dim = 1usize << s.len();
    let mut m = CMatrix::zeros(dim);
    for row in 0..dim {
        let (col, factor) = s.row_action::<T>(row);
        m[(row, col)] = factor;
    }
    m
}

/// Real-coefficient linear combination of Pauli strings on a fixed
/// register — the canonical Hermitian-operator representation. Terms are
/// kept canonical: sorted by string, no entries below the pruning
/// threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliPolynomial<T> {
    n_qubits: usize,
    terms: BTreeMap<PauliString, T>,
}

impl<T: Scalar> PauliPolynomial<T> {
    pub fn zero(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::InvalidInput {
                detail: "polynomial needs at least one qubit".into(),
            });
        }
        Ok(PauliPolynomial {
            n_qubits,
            terms: BTreeMap::new(),
        })
    }

    pub fn from_terms(
        n_qubits: usize,
        terms: impl IntoIterator<Item = (PauliString, T)>,
    ) -> Result<Self> {
        let mut p = Self::zero(n_qubits)?;
        for (s, c) in terms {
            p.add_term(s, c)?;
        }
        Ok(p)
    }

    /// Accumulate `coeff` onto `string`'s coefficient, pruning the entry
    /// if the running total falls below the canonical-form threshold.
    pub fn add_term(&mut self, string: PauliString, coeff: T) -> Result<()> {
        if string.len() != self.n_qubits {
            return Err(Error::StringLength {
                expected: self.n_qubits,
                found: string.len(),
            });
        }
        if !coeff.is_finite() {
            return Err(Error::InvalidInput {
                detail: format!("non-finite coefficient on {string}"),
            });
        }
        let entry = self.terms.entry(string).or_insert_with(T::zero);
        *entry += coeff;
        if entry.abs() < T::prune_tol() {
            // Remove the key we just touched; requires a lookup since the
            // entry API borrowed the map.
            let dead: Vec<PauliString> = self
                .terms
                .iter()
                .filter(|(_, c)| c.abs() < T::prune_tol())
                .map(|(s, _)| s.clone())
                .collect();
            for s in dead {
                self.terms.remove(&s);
            }
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1usize << self.n_qubits
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (sorted) order.
    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, T)> {
        self.terms.iter().map(|(s, &c)| (s, c))
    }

    /// Coefficient of `string`, zero if absent.
    pub fn coefficient(&self, string: &PauliString) -> T {
        self.terms.get(string).copied().unwrap_or_else(T::zero)
    }

    /// Largest term weight present (0 for the zero polynomial).
    pub fn max_weight(&self) -> usize {
        self.terms.keys().map(|s| s.weight()).max().unwrap_or(0)
    }

    pub fn scale(&self, factor: T) -> Self {
        PauliPolynomial {
            n_qubits: self.n_qubits,
            terms: self
                .terms
                .iter()
                .filter(|(_, &c)| (c * factor).abs() >= T::prune_tol())
                .map(|(s, &c)| (s.clone(), c * factor))
                .collect(),
        }
    }

    /// Materialize the polynomial as a dense Hermitian matrix.
    pub fn to_matrix(&self) -> CMatrix<T> {
        let dim = self.dim();
        let mut m = CMatrix::zeros(dim);
        for (s, c) in &self.terms {
            let cc = Complex::new(*c, T::zero());
            for row in 0..dim {
                let (col, factor) = s.row_action::<T>(row);
                m[(row, col)] += cc * factor;
            }
        }
        m
    }
}

/// Expand a Hermitian matrix in the Pauli-string basis:
/// `c_s = Tr(S·H)/2ⁿ`. Fails on non-power-of-two dimensions, non-Hermitian
/// input, or (belt and braces) coefficients with a measurable imaginary
/// part.
pub fn decompose<T: Scalar>(h: &CMatrix<T>) -> Result<PauliPolynomial<T>> {
    let dim = h.dim();
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::NonQubitDimension { dim });
    }
    let n = dim.trailing_zeros() as usize;
    let residual = h.hermiticity_residual();
    if residual > T::hermitian_tol() {
        return Err(Error::NotHermitian {
            residual: residual.to_f64_lossy(),
            tol: T::hermitian_tol().to_f64_lossy(),
        });
    }
    let mut poly = PauliPolynomial::zero(n)?;
    let norm = T::of(dim as f64);
    for code in 0..4usize.pow(n as u32) {
        let letters: Vec<PauliOp> = (0..n)
            .map(|k| match (code >> (2 * (n - 1 - k))) & 3 {
                0 => PauliOp::I,
                1 => PauliOp::X,
                2 => PauliOp::Y,
                _ => PauliOp::Z,
            })
            .collect();
        let s = PauliString::new(letters)?;
        // Tr(S·H) via the one-nonzero-per-row structure of S.
        let mut tr = Complex::<T>::zero();
        for row in 0..dim {
            let (col, factor) = s.row_action::<T>(row);
            tr += factor * h[(col, row)];
        }
        let coeff = tr / Complex::new(norm, T::zero());
        if coeff.im.abs() > T::hermitian_tol() {
            return Err(Error::NonRealCoefficient {
                string: s.to_string(),
                imag: coeff.im.to_f64_lossy(),
            });
        }
        if coeff.re.abs() >= T::prune_tol() {
            poly.add_term(s, coeff.re)?;
        }
    }
    Ok(poly)
}

/// Partition a polynomial's terms by weight; weights with no terms are
/// omitted.
pub fn locality_profile<T: Scalar>(
    p: &PauliPolynomial<T>,
) -> BTreeMap<usize, Vec<(PauliString, T)>> {
    let mut out: BTreeMap<usize, Vec<(PauliString, T)>> = BTreeMap::new();
    for (s, c) in p.terms() {
        out.entry(s.weight()).or_default().push((s.clone(), c));
    }
    out
}

/// Frobenius norms of the commutator `[A,B]` and anticommutator `{A,B}`
/// of two polynomials' matrices.
pub fn commutation_check<T: Scalar>(
    a: &PauliPolynomial<T>,
    b: &PauliPolynomial<T>,
) -> Result<(T, T)> {
    if a.n_qubits() != b.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let ma = a.to_matrix();
    let mb = b.to_matrix();
    let ab = &ma * &mb;
    let ba = &mb * &ma;
    Ok(((&ab - &ba).frobenius_norm(), (&ab + &ba).frobenius_norm()))
}
