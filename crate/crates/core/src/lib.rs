//! Synthesis, decomposition, and verification of interaction Hamiltonians
//! for one-shot few-spin logic gates.
//!
//! A gate here is a single unitary `U = exp(−i·H·Δt/ħ)` produced by
//! letting a fixed interaction Hamiltonian act for one interval — no
//! pulse sequences, no composition. The crate answers four questions:
//!
//! - **Synthesis**: given a target unitary (or a parametrized gate
//!   family), which Hamiltonians generate it, and how does the answer
//!   depend on the integer branch choice of each energy level?
//!   ([`synthesis`], [`linalg`])
//! - **Structure**: what does a Hamiltonian look like as a real
//!   combination of Pauli strings — how local is it? ([`pauli`])
//! - **Dynamics**: does the Hamiltonian implement the gate when evolved,
//!   also under time-dependent switching protocols, and do proposed
//!   commuting splits actually commute? ([`evolution`])
//! - **Search**: can coupling constants within a structured ansatz
//!   (Ising, XY, Heisenberg, or the two-spin tensor families) be found
//!   numerically to realize a gate? ([`search`])
//!
//! Everything is generic over the scalar precision through [`Scalar`]
//! (implemented for `f64` and `f32`); the `*64`/`*32` aliases at the
//! crate root pin the common choices.
//!
//! # Conventions
//!
//! Basis states are indexed so that bit 0 of the index is the *last*
//! qubit and "spin up" is the 0 bit value: index 0 is |↑↑…↑⟩ and qubit A
//! is the leftmost letter of a Pauli string. Unitaries act as
//! `U = exp(−i·H·Δt/ħ)`; recovering `H` from `U` fixes each eigenvalue's
//! energy only modulo `2πħ/Δt`, and every synthesis API takes that
//! [`linalg::BranchChoice`] explicitly.

pub mod error;
pub mod evolution;
pub mod gates;
pub mod linalg;
pub mod pauli;
pub mod scalar;
pub mod search;
pub mod synthesis;
pub mod testkit;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Double-precision complex matrix.
pub type CMatrix64 = linalg::CMatrix<f64>;
/// Single-precision complex matrix.
pub type CMatrix32 = linalg::CMatrix<f32>;
/// Double-precision Pauli-string polynomial.
pub type PauliPolynomial64 = pauli::PauliPolynomial<f64>;
/// Single-precision Pauli-string polynomial.
pub type PauliPolynomial32 = pauli::PauliPolynomial<f32>;
/// Double-precision eigenvalue clustering of a unitary.
pub type Spectrum64 = linalg::Spectrum<f64>;
/// Double-precision modulation protocol.
pub type Protocol64 = evolution::Protocol<f64>;
/// Single-precision modulation protocol.
pub type Protocol32 = evolution::Protocol<f32>;
/// Double-precision level assignment.
pub type EnergyLevels64 = synthesis::EnergyLevels<f64>;
/// Double-precision synthesis output.
pub type Synthesis64 = synthesis::Synthesis<f64>;
/// Double-precision coupling ansatz.
pub type CouplingAnsatz64 = search::CouplingAnsatz<f64>;
/// Double-precision search configuration.
pub type SearchConfig64 = search::SearchConfig<f64>;
/// Double-precision search result.
pub type SearchResult64 = search::SearchResult<f64>;
