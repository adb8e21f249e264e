mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use clifford_vqe::clifford::{anticonjugate_by_gates, conjugate_by_gates, transform_by_gates};
use clifford_vqe::{
    transform_hamiltonian, CliffordGate, CliffordTableau, Error, Hamiltonian, Letter, PauliString, QuarterTurns,
};

fn p(text: &str) -> PauliString {
    text.parse().unwrap()
}

fn letters_strategy(n: usize) -> impl Strategy<Value = (Vec<Letter>, bool)> {
    (prop::collection::vec(prop::sample::select(vec![Letter::I, Letter::X, Letter::Y, Letter::Z]), n), any::<bool>())
}

#[test]
fn parse_examples() {
    let a = PauliString::parse("IXIZ", 4).unwrap();
    assert_eq!(a.x_mask().ones().collect::<Vec<_>>(), vec![1]);
    assert_eq!(a.z_mask().ones().collect::<Vec<_>>(), vec![3]);
    assert_eq!(a.sign(), 1);
    let id = PauliString::parse("IIII", 4).unwrap();
    assert!(id.is_identity());
    assert_eq!(id.sign(), 1);
    let yy = PauliString::parse("-YY", 2).unwrap();
    assert_eq!(yy.x_mask().ones().collect::<Vec<_>>(), vec![0, 1]);
    assert_eq!(yy.z_mask().ones().collect::<Vec<_>>(), vec![0, 1]);
    assert_eq!(yy.sign(), -1);
}

#[test]
fn parse_errors_name_position_and_length() {
    assert!(matches!(PauliString::parse("IXQZ", 4), Err(Error::InvalidPauliChar { position: 2, found: 'Q' })));
    assert!(matches!(PauliString::parse("IXZ", 4), Err(Error::PauliLength { expected: 4, found: 3 })));
}

#[test]
fn weight_examples() {
    assert_eq!(p("IXIZ").weight(), 2);
    assert_eq!(p("IIII").weight(), 0);
    assert_eq!(p("XYZX").weight(), 4);
}

#[test]
fn product_examples_against_dense() {
    assert!(matches!(p("X").multiply(&p("Z")), Err(Error::ImaginaryPhase)));
    let prod = p("XX").multiply(&p("ZZ")).unwrap();
    assert_eq!(prod, p("-YY"));
    let dense = pauli_dense(&p("XX")).mul(&pauli_dense(&p("ZZ")));
    assert!(dense.max_diff(&pauli_dense(&prod)) < 1e-12);
}

#[test]
fn zero_state_examples() {
    assert_eq!(p("ZIZ").zero_state_expectation(), 1);
    assert_eq!(p("XZI").zero_state_expectation(), 0);
    assert_eq!(p("-ZZ").zero_state_expectation(), -1);
}

proptest! {
    #[test]
    fn display_parse_round_trip((letters, neg) in letters_strategy(9)) {
        let s = PauliString::from_letters(&letters, neg);
        prop_assert_eq!(PauliString::parse(&s.to_string(), 9).unwrap(), s);
    }

    #[test]
    fn square_is_identity((letters, neg) in letters_strategy(7)) {
        let s = PauliString::from_letters(&letters, neg);
        prop_assert_eq!(s.multiply(&s).unwrap(), PauliString::identity(7));
    }

    #[test]
    fn product_matches_dense_when_real(a in letters_strategy(3), b in letters_strategy(3)) {
        let (pa, pb) = (PauliString::from_letters(&a.0, a.1), PauliString::from_letters(&b.0, b.1));
        let dense = pauli_dense(&pa).mul(&pauli_dense(&pb));
        match pa.multiply(&pb) {
            Ok(prod) => prop_assert!(dense.max_diff(&pauli_dense(&prod)) < 1e-12),
            Err(_) => prop_assert!(!pa.commutes_with(&pb)),
        }
        let anti = pauli_dense(&pb).mul(&pauli_dense(&pa));
        let commute = dense.max_diff(&anti) < 1e-12;
        prop_assert_eq!(commute, pa.commutes_with(&pb));
    }

    #[test]
    fn product_is_associative(a in letters_strategy(4), b in letters_strategy(4), c in letters_strategy(4)) {
        let (pa, pb, pc) = (
            PauliString::from_letters(&a.0, a.1),
            PauliString::from_letters(&b.0, b.1),
            PauliString::from_letters(&c.0, c.1),
        );
        if let (Ok(ab), Ok(bc)) = (pa.multiply(&pb), pb.multiply(&pc)) {
            if let (Ok(left), Ok(right)) = (ab.multiply(&pc), pa.multiply(&bc)) {
                prop_assert_eq!(left, right);
            }
        }
    }

    #[test]
    fn zero_state_expectation_matches_dense((letters, neg) in letters_strategy(5)) {
        let s = PauliString::from_letters(&letters, neg);
        let dense = pauli_dense(&s).get(0, 0).re;
        prop_assert!((dense - s.zero_state_expectation() as f64).abs() < 1e-12);
    }
}

#[test]
fn hamiltonian_zero_state_energy_matches_dense() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=5 {
        let h = random_hamiltonian(n, 12, &mut rng);
        let dense = hamiltonian_dense(&h).get(0, 0).re;
        assert!((h.zero_state_energy() - dense).abs() < 1e-12);
    }
}

#[test]
fn hamiltonian_file_examples() {
    let h = Hamiltonian::from_text("2\n0.5 XX\n-1.0 ZI\n", "inline").unwrap();
    assert_eq!(h.len(), 2);
    assert!(matches!(Hamiltonian::from_text("2\n", "inline"), Err(Error::NoTerms(_))));
    let err = Hamiltonian::from_text("2\n0.5 XX\nfoo ZI\n", "h.txt").unwrap_err();
    assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
}

#[test]
fn large_hamiltonian_round_trips_through_file() {
    let mut rng = ChaCha8Rng::seed_from_u64(367);
    let mut terms = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    while terms.len() < 367 {
        let s = random_pauli(12, &mut rng).unsigned();
        if seen.insert(s.to_string()) {
            terms.push((rand::Rng::random_range(&mut rng, -2.0..2.0), s));
        }
    }
    let h = Hamiltonian::new(12, terms).unwrap();
    assert_eq!(h.len(), 367);
    let dir = std::env::temp_dir().join(format!("cvqe-roundtrip-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h.txt");
    h.write(&path).unwrap();
    let back = Hamiltonian::read(&path).unwrap();
    assert_eq!(back, h);
    assert_eq!(back.to_text(), h.to_text());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn cx_generator_images() {
    let t = CliffordTableau::from_gates(&[CliffordGate::Cx { control: 0, target: 1 }], 2).unwrap();
    assert_eq!(t.x_image(0), &p("XX"));
    assert_eq!(t.x_image(1), &p("IX"));
    assert_eq!(t.z_image(0), &p("ZI"));
    assert_eq!(t.z_image(1), &p("ZZ"));
    assert_eq!(t.conjugate(&p("XI")).unwrap(), p("XX"));
    assert_eq!(t.anticonjugate(&p("ZI")).unwrap(), p("ZI"));
    assert_eq!(format!("{t}").lines().next().unwrap(), "X0 -> +XX");
}

#[test]
fn empty_gate_list_is_identity() {
    let t = CliffordTableau::from_gates(&[], 3).unwrap();
    assert_eq!(t, CliffordTableau::identity(3));
    let q = p("-XYZ");
    assert_eq!(t.conjugate(&q).unwrap(), q);
    assert_eq!(t.anticonjugate(&q).unwrap(), q);
}

#[test]
fn swap_images_match_dense() {
    let gates = [CliffordGate::Swap(0, 1)];
    let t = CliffordTableau::from_gates(&gates, 2).unwrap();
    let u = clifford_dense(&gates, 2);
    for k in 0..2 {
        for (image, letter) in [(t.x_image(k), Letter::X), (t.z_image(k), Letter::Z)] {
            let gen = PauliString::single(2, k, letter);
            let dense = u.mul(&pauli_dense(&gen)).mul(&u.dagger());
            assert!(dense.max_diff(&pauli_dense(image)) < 1e-12);
            assert_eq!(image.sign(), 1);
        }
    }
    assert_eq!(t.x_image(0), &p("IX"));
    assert_eq!(t.z_image(1), &p("ZI"));
}

#[test]
fn rz_quarter_turn_sign_matches_dense() {
    let g = [CliffordGate::Rz(0, QuarterTurns::new(1).unwrap())];
    let image = CliffordTableau::from_gates(&g, 1).unwrap().conjugate(&p("X")).unwrap();
    assert!(image.same_letters(&p("Y")));
    let u = clifford_dense(&g, 1);
    let dense = u.mul(&pauli_dense(&p("X"))).mul(&u.dagger());
    assert!(dense.max_diff(&pauli_dense(&image)) < 1e-12, "image {image}");
}

#[test]
fn cx_full_two_qubit_table_matches_dense() {
    let gates = [CliffordGate::Cx { control: 0, target: 1 }];
    let t = CliffordTableau::from_gates(&gates, 2).unwrap();
    let u = clifford_dense(&gates, 2);
    for a in [Letter::I, Letter::X, Letter::Y, Letter::Z] {
        for b in [Letter::I, Letter::X, Letter::Y, Letter::Z] {
            let q = PauliString::from_letters(&[a, b], false);
            let image = t.conjugate(&q).unwrap();
            let dense = u.mul(&pauli_dense(&q)).mul(&u.dagger());
            assert!(dense.max_diff(&pauli_dense(&image)) < 1e-12, "{q} -> {image}");
        }
    }
}

#[test]
fn random_circuits_conjugate_like_dense_unitaries() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for trial in 0..200 {
        let n = 1 + trial % 3;
        let gates = random_clifford_circuit(n, 12, &mut rng);
        let t = CliffordTableau::from_gates(&gates, n).unwrap();
        assert!(t.is_symplectic());
        let u = clifford_dense(&gates, n);
        let q = random_pauli(n, &mut rng);
        let image = t.conjugate(&q).unwrap();
        let dense = u.mul(&pauli_dense(&q)).mul(&u.dagger());
        assert!(dense.max_diff(&pauli_dense(&image)) < 1e-10, "{gates:?} {q} -> {image}");
        assert_eq!(conjugate_by_gates(&gates, &q), image);
        let anti = t.anticonjugate(&q).unwrap();
        let dense_anti = u.dagger().mul(&pauli_dense(&q)).mul(&u);
        assert!(dense_anti.max_diff(&pauli_dense(&anti)) < 1e-10);
        assert_eq!(anticonjugate_by_gates(&gates, &q), anti);
        assert_eq!(t.conjugate(&anti).unwrap(), q);
    }
}

#[test]
fn inverse_properties() {
    let cx = CliffordTableau::from_gates(&[CliffordGate::Cx { control: 0, target: 1 }], 2).unwrap();
    assert_eq!(cx.inverse(), cx);
    assert_eq!(CliffordTableau::identity(4).inverse(), CliffordTableau::identity(4));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let t = CliffordTableau::from_gates(&random_clifford_circuit(5, 40, &mut rng), 5).unwrap();
        assert_eq!(t.inverse().inverse(), t);
        assert_eq!(t.then(&t.inverse()).unwrap(), CliffordTableau::identity(5));
    }
}

#[test]
fn commutation_and_composition_are_preserved() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let g1 = random_clifford_circuit(4, 15, &mut rng);
        let g2 = random_clifford_circuit(4, 15, &mut rng);
        let t1 = CliffordTableau::from_gates(&g1, 4).unwrap();
        let t2 = CliffordTableau::from_gates(&g2, 4).unwrap();
        let joined = CliffordTableau::from_gates(g1.iter().chain(&g2), 4).unwrap();
        assert_eq!(t1.then(&t2).unwrap(), joined);
        let (a, b) = (random_pauli(4, &mut rng), random_pauli(4, &mut rng));
        let (ca, cb) = (joined.conjugate(&a).unwrap(), joined.conjugate(&b).unwrap());
        assert_eq!(a.commutes_with(&b), ca.commutes_with(&cb));
    }
}

#[test]
fn transform_examples() {
    let h = Hamiltonian::new(2, [(1.0, p("XI"))]).unwrap();
    let gates = [CliffordGate::Cx { control: 0, target: 1 }];
    let t = CliffordTableau::from_gates(&gates, 2).unwrap();
    let out = transform_hamiltonian(&h, &t).unwrap();
    assert_eq!(out.terms(), &[(1.0, p("XX"))]);
    let u = clifford_dense(&gates, 2);
    let dense = u.dagger().mul(&hamiltonian_dense(&h)).mul(&u);
    assert!(dense.max_diff(&hamiltonian_dense(&out)) < 1e-12);
    assert_eq!(transform_hamiltonian(&h, &CliffordTableau::identity(2)).unwrap(), h);
}

#[test]
fn transform_matches_dense_conjugation_and_bounds_terms() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..30 {
        let h = random_hamiltonian(4, 10, &mut rng);
        let gates = random_clifford_circuit(4, 25, &mut rng);
        let t = CliffordTableau::from_gates(&gates, 4).unwrap();
        let out = transform_hamiltonian(&h, &t).unwrap();
        assert!(out.len() <= h.len());
        assert_eq!(transform_by_gates(&h, &gates).unwrap(), out);
        let u = clifford_dense(&gates, 4);
        let dense = u.dagger().mul(&hamiltonian_dense(&h)).mul(&u);
        assert!(dense.max_diff(&hamiltonian_dense(&out)) < 1e-10);
    }
}

#[test]
fn transform_preserves_spectrum_up_to_six_qubits() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for n in 2..=6 {
        let h = random_hamiltonian(n, 3 * n, &mut rng);
        let t = CliffordTableau::from_gates(&random_clifford_circuit(n, 10 * n, &mut rng), n).unwrap();
        let a = eigenvalues(&hamiltonian_dense(&h));
        let b = eigenvalues(&hamiltonian_dense(&transform_hamiltonian(&h, &t).unwrap()));
        let diff = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        assert!(diff <= 1e-9, "n={n} diff={diff}");
    }
}

#[test]
fn rotation_gates_at_clifford_angles_match_dense() {
    for step in 0..4u8 {
        for make in [CliffordGate::Rx, CliffordGate::Ry, CliffordGate::Rz] {
            let g = [make(0, QuarterTurns::new(step).unwrap())];
            let t = CliffordTableau::from_gates(&g, 1).unwrap();
            let u = clifford_dense(&g, 1);
            for q in ["X", "Y", "Z"] {
                let image = t.conjugate(&p(q)).unwrap();
                let dense = u.mul(&pauli_dense(&p(q))).mul(&u.dagger());
                assert!(dense.max_diff(&pauli_dense(&image)) < 1e-12);
            }
        }
    }
}
