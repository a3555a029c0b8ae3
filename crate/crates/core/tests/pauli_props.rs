//! Pauli-basis properties on random inputs: the expansion is an
//! isometry (Parseval), decomposition inverts assembly, and string
//! matrices behave as Hermitian involutions.

use gateforge_core::pauli::{decompose, locality_profile, string_matrix, PauliPolynomial, PauliString};
use gateforge_core::testkit::{random_hermitian, rng};
use gateforge_core::CMatrix64;
use proptest::prelude::*;
use rand::Rng;

#[test]
fn decomposition_satisfies_parseval() {
    let mut r = rng(11);
    for n_qubits in [1usize, 2, 3] {
        let dim = 1 << n_qubits;
        for _ in 0..20 {
            let h = random_hermitian::<f64>(&mut r, dim, 1.1);
            let poly = decompose::<f64>(&h).unwrap();
            let coeff_sq: f64 = poly.terms().map(|(_, c)| c * c).sum();
            let norm_sq = h.frobenius_norm().powi(2);
            assert!(
                (norm_sq - dim as f64 * coeff_sq).abs() < 1e-9 * (1.0 + norm_sq),
                "n={n_qubits}: ‖H‖² = {norm_sq}, 2ⁿΣc² = {}",
                dim as f64 * coeff_sq
            );
        }
    }
}

#[test]
fn decompose_inverts_assembly_on_random_polynomials() {
    let mut r = rng(22);
    let all_strings: Vec<PauliString> = {
        // Every 2-qubit string.
        let letters = ['I', 'X', 'Y', 'Z'];
        let mut v = Vec::new();
        for a in letters {
            for b in letters {
                v.push(format!("{a}{b}").parse().unwrap());
            }
        }
        v
    };
    for _ in 0..20 {
        let mut poly = PauliPolynomial::<f64>::zero(2).unwrap();
        for s in &all_strings {
            if r.random::<f64>() < 0.4 {
                poly.add_term(s.clone(), r.random_range(-2.0..2.0)).unwrap();
            }
        }
        let back = decompose::<f64>(&poly.to_matrix()).unwrap();
        assert_eq!(back.num_terms(), poly.num_terms());
        for (s, c) in poly.terms() {
            assert!((back.coefficient(s) - c).abs() < 1e-12, "{s}");
        }
    }
}

#[test]
fn locality_profile_partitions_all_terms() {
    let mut poly = PauliPolynomial::<f64>::zero(3).unwrap();
    for (s, c) in [("IIX", 0.5), ("ZYI", -0.25), ("XYZ", 1.5), ("III", 2.0)] {
        poly.add_term(s.parse().unwrap(), c).unwrap();
    }
    let profile = locality_profile(&poly);
    let total: usize = profile.values().map(Vec::len).sum();
    assert_eq!(total, poly.num_terms());
    assert_eq!(profile[&0].len(), 1);
    assert_eq!(profile[&1].len(), 1);
    assert_eq!(profile[&2].len(), 1);
    assert_eq!(profile[&3].len(), 1);
}

fn arb_string(n: usize) -> impl Strategy<Value = PauliString> {
    proptest::collection::vec(prop_oneof![Just('I'), Just('X'), Just('Y'), Just('Z')], n)
        .prop_map(|letters| letters.into_iter().collect::<String>().parse().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_display_roundtrip(s in arb_string(4)) {
        let text = s.to_string();
        let back: PauliString = text.parse().unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn string_matrices_are_hermitian_involutions(s in arb_string(3)) {
        let m: CMatrix64 = string_matrix(&s);
        prop_assert!(m.hermiticity_residual() < 1e-15);
        let sq = &m * &m;
        prop_assert!(sq.max_abs_diff(&CMatrix64::identity(8)) < 1e-15);
    }

    #[test]
    fn weight_counts_non_identity_letters(s in arb_string(5)) {
        let by_hand = s.to_string().chars().filter(|&c| c != 'I').count();
        prop_assert_eq!(s.weight(), by_hand);
    }
}
