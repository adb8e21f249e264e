mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use clifford_vqe::dense::{
    density_matrix_run, exact_ground_energy, fully_mixed_energy, noisy_dense_energy, DenseState, DensityMatrix,
};
use clifford_vqe::pipeline::benchmarks;
use clifford_vqe::stabilizer::{noiseless_energy_zero_state, sample_pauli_errors};
use clifford_vqe::{
    append_measurement, apply_gate_noise, build_vqe_ansatz, noisy_energy, AnsatzParams, Circuit, CliffordGate,
    Error, EstimatorMode, Gate, GateKind, Hamiltonian, Letter, NoiseModel, Op, PauliString, StabilizerState,
    Topology,
};

const INF: f64 = f64::INFINITY;

fn p(text: &str) -> PauliString {
    text.parse().unwrap()
}

/// Parses terms without the leading qubit-count line.
fn ham(terms: &str) -> Hamiltonian {
    let n = terms.split_whitespace().nth(1).unwrap().trim_start_matches(['+', '-']).len();
    Hamiltonian::from_text(&format!("{n}\n{terms}"), "test").unwrap()
}

fn circuit(n: usize, ops: impl IntoIterator<Item = Op>) -> Circuit {
    Circuit::from_ops(n, ops).unwrap()
}

fn bell() -> Circuit {
    circuit(2, [Op::Gate(Gate::H(0)), Op::Gate(Gate::Cx { control: 0, target: 1 })])
}

fn random_clifford_ansatz(n: usize, rng: &mut impl Rng) -> Circuit {
    let steps: Vec<u8> = (0..4 * n).map(|_| rng.random_range(0..4)).collect();
    build_vqe_ansatz(n, &AnsatzParams::from_steps(&steps).unwrap(), Topology::Ring).unwrap()
}

// ---------- stabilizer state ----------

#[test]
fn hadamard_stabilizes_plus() {
    let mut s = StabilizerState::zero(1);
    s.apply(&CliffordGate::H(0)).unwrap();
    assert_eq!(s.stabilizers(), &[p("X")]);
    assert_eq!(s.expectation(&p("X")).unwrap(), 1);
    assert_eq!(s.expectation(&p("Z")).unwrap(), 0);
}

#[test]
fn cx_on_zero_state_is_trivial() {
    let s = StabilizerState::zero(2).run(&circuit(2, [Op::Gate(Gate::Cx { control: 0, target: 1 })])).unwrap();
    assert_eq!(s.expectation(&p("ZZ")).unwrap(), 1);
    assert_eq!(s.expectation(&p("ZI")).unwrap(), 1);
    assert_eq!(s.expectation(&p("XI")).unwrap(), 0);
}

#[test]
fn bell_state_correlators_match_dense() {
    let s = StabilizerState::zero(2).run(&bell()).unwrap();
    let u = circuit_dense(bell().gates(), 2);
    for (text, want) in [("XX", 1), ("ZZ", 1), ("YY", -1), ("XI", 0), ("ZI", 0), ("XY", 0)] {
        assert_eq!(s.expectation(&p(text)).unwrap(), want, "{text}");
        let dense = zero_state_expectation_dense(&u, &pauli_dense(&p(text)));
        assert!((dense - want as f64).abs() < 1e-12, "{text}");
    }
}

#[test]
fn non_clifford_rotation_rejected() {
    let mut s = StabilizerState::zero(1);
    let err = s.apply_gate(&Gate::Rz(0, std::f64::consts::FRAC_PI_4)).unwrap_err();
    assert!(matches!(err, Error::NonClifford { .. }), "{err:?}");
}

#[test]
fn random_stabilizer_states_match_dense() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let n = rng.random_range(1..=5);
        let gates = random_clifford_circuit(n, 25, &mut rng);
        let mut s = StabilizerState::zero(n);
        for g in &gates {
            s.apply(g).unwrap();
        }
        assert!(s.is_valid());
        let u = clifford_dense(&gates, n);
        for _ in 0..10 {
            let q = random_pauli(n, &mut rng);
            let dense = zero_state_expectation_dense(&u, &pauli_dense(&q));
            assert!((s.expectation(&q).unwrap() as f64 - dense).abs() < 1e-9, "{q}");
        }
    }
}

#[test]
fn zero_state_energy_examples() {
    assert_eq!(noiseless_energy_zero_state(&benchmarks::ising(7, 0.5).unwrap()), 7.0);
    assert_eq!(noiseless_energy_zero_state(&benchmarks::xxz(7, 0.5).unwrap()), 6.0);
    assert_eq!(noiseless_energy_zero_state(&Hamiltonian::empty(3)), 0.0);
    assert_eq!(noiseless_energy_zero_state(&ham("2.0 ZZ\n-1.5 XI\n0.5 IZ")), 2.5);
}

// ---------- fault sampling ----------

fn chi_square(counts: &[usize]) -> f64 {
    let total: usize = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum()
}

#[test]
fn zero_probability_channels_never_fire() {
    let c = circuit(2, [Op::Depolarize1 { qubit: 0, p: 0.0 }, Op::Depolarize2 { a: 0, b: 1, p: 0.0 }]);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        assert!(sample_pauli_errors(&c, &mut rng).is_empty());
    }
}

#[test]
fn depolarize1_letters_are_uniform() {
    let c = circuit(1, [Op::Depolarize1 { qubit: 0, p: 1.0 }]);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut counts = [0usize; 3];
    for _ in 0..30_000 {
        let errs = sample_pauli_errors(&c, &mut rng);
        assert_eq!(errs.len(), 1);
        let idx = match errs[0].1.letter(0) {
            Letter::X => 0,
            Letter::Y => 1,
            Letter::Z => 2,
            Letter::I => panic!("identity error drawn"),
        };
        counts[idx] += 1;
    }
    // 99% quantile of chi-square with 2 degrees of freedom.
    assert!(chi_square(&counts) < 9.21, "{counts:?}");
}

#[test]
fn depolarize2_pairs_are_uniform() {
    let c = circuit(2, [Op::Depolarize2 { a: 0, b: 1, p: 1.0 }]);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut counts = [0usize; 15];
    let code = |l: Letter| match l {
        Letter::I => 0,
        Letter::X => 1,
        Letter::Y => 2,
        Letter::Z => 3,
    };
    for _ in 0..60_000 {
        let errs = sample_pauli_errors(&c, &mut rng);
        assert_eq!(errs.len(), 1);
        let e = &errs[0].1;
        let k = code(e.letter(0)) + 4 * code(e.letter(1));
        assert_ne!(k, 0, "identity error drawn");
        counts[k - 1] += 1;
    }
    // 99% quantile of chi-square with 14 degrees of freedom.
    assert!(chi_square(&counts) < 29.14, "{counts:?}");
}

#[test]
fn fault_rate_matches_probability() {
    let c = circuit(1, [Op::Depolarize1 { qubit: 0, p: 0.2 }]);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let n = 50_000;
    let fired = (0..n).filter(|_| !sample_pauli_errors(&c, &mut rng).is_empty()).count();
    let rate = fired as f64 / n as f64;
    let sd = (0.2 * 0.8 / n as f64).sqrt();
    assert!((rate - 0.2).abs() < 5.0 * sd, "{rate}");
}

// ---------- noisy estimator ----------

#[test]
fn noiseless_circuit_gives_exact_energy() {
    let h = benchmarks::ising(7, 0.5).unwrap();
    let zeros = AnsatzParams::zeros(28);
    let c = build_vqe_ansatz(7, &zeros, Topology::Ring).unwrap();
    let nm = NoiseModel::noiseless();
    let e = noisy_energy(&apply_gate_noise(&c, &nm).unwrap(), &h, &nm, 256, EstimatorMode::ExactExpectation, 9)
        .unwrap();
    assert_eq!(e.mean, 7.0);
    assert_eq!(e.std_error, 0.0);
    assert_eq!(e.n_samples, 256);
}

#[test]
fn depolarized_flip_matches_closed_form() {
    let pr = 0.3;
    let c = circuit(1, [Op::Gate(Gate::X(0)), Op::Depolarize1 { qubit: 0, p: pr }]);
    let h = ham("1.0 Z");
    let nm = NoiseModel::noiseless();
    let want = -1.0 + 4.0 * pr / 3.0;
    let dense = noisy_dense_energy(&c, &h, &nm, false).unwrap();
    assert!((dense - want).abs() < 1e-12);
    let est = noisy_energy(&c, &h, &nm, 100_000, EstimatorMode::ExactExpectation, 5).unwrap();
    assert!((est.mean - want).abs() < 4.0 * est.std_error, "{est:?} vs {want}");
}

#[test]
fn readout_flips_attenuate_bell_correlator() {
    let nm = NoiseModel::uniform(0.0, 0.0, 0.1, INF).unwrap();
    let h = ham("1.0 ZZ");
    let exact = noisy_energy(&bell(), &h, &nm, 1000, EstimatorMode::ExactExpectation, 1).unwrap();
    assert!((exact.mean - 0.64).abs() < 1e-12);
    let dense = noisy_dense_energy(&bell(), &h, &nm, false).unwrap();
    assert!((dense - 0.64).abs() < 1e-12);
    let sampled = noisy_energy(&bell(), &h, &nm, 100_000, EstimatorMode::MeasurementSampling, 1).unwrap();
    assert!((sampled.mean - 0.64).abs() < 4.0 * sampled.std_error, "{sampled:?}");
}

#[test]
fn exact_readout_factor_is_algebraic() {
    for p in [0.02, 0.1, 0.25] {
        let nm = NoiseModel::uniform(0.0, 0.0, p, INF).unwrap();
        let c = circuit(4, [Op::Gate(Gate::X(1))]);
        for (w, term) in [(1, "1.0 ZIII"), (2, "1.0 ZZII"), (4, "1.0 ZZZZ")] {
            let est = noisy_energy(&c, &ham(term), &nm, 777, EstimatorMode::ExactExpectation, 3).unwrap();
            let ideal = if w >= 2 { -1.0 } else { 1.0 };
            assert_eq!(est.mean, ideal * std::iter::repeat_n(1.0 - 2.0 * p, w).product::<f64>());
            assert_eq!(est.std_error, 0.0);
        }
    }
}

#[test]
fn estimator_agrees_with_density_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let nm = NoiseModel::uniform(0.02, 0.05, 0.03, INF).unwrap();
    for trial in 0..12 {
        let n = rng.random_range(2..=4);
        let c = apply_gate_noise(&random_clifford_ansatz(n, &mut rng), &nm).unwrap();
        let h = random_hamiltonian(n, 6, &mut rng);
        let dense = noisy_dense_energy(&c, &h, &nm, false).unwrap();
        for mode in [EstimatorMode::ExactExpectation, EstimatorMode::MeasurementSampling] {
            let est = noisy_energy(&c, &h, &nm, 40_000, mode, trial).unwrap();
            let tol = 4.0 * est.std_error + 1e-9;
            assert!((est.mean - dense).abs() <= tol, "trial {trial} {mode}: {} vs {dense} (tol {tol})", est.mean);
        }
    }
}

#[test]
fn exact_mode_has_smaller_spread_than_sampling() {
    let nm = NoiseModel::uniform(0.01, 0.03, 0.05, INF).unwrap();
    let h = benchmarks::xxz(4, 0.5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let c = apply_gate_noise(&random_clifford_ansatz(4, &mut rng), &nm).unwrap();
    let exact = noisy_energy(&c, &h, &nm, 20_000, EstimatorMode::ExactExpectation, 3).unwrap();
    let sampled = noisy_energy(&c, &h, &nm, 20_000, EstimatorMode::MeasurementSampling, 3).unwrap();
    assert!(exact.std_error <= sampled.std_error, "{exact:?} {sampled:?}");
    let combined = (exact.std_error.powi(2) + sampled.std_error.powi(2)).sqrt();
    assert!((exact.mean - sampled.mean).abs() <= 4.0 * combined);
}

#[test]
fn estimator_is_deterministic_per_seed() {
    let nm = NoiseModel::uniform(0.01, 0.03, 0.02, INF).unwrap();
    let h = benchmarks::ising(5, 0.25).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let c = apply_gate_noise(&random_clifford_ansatz(5, &mut rng), &nm).unwrap();
    for mode in [EstimatorMode::ExactExpectation, EstimatorMode::MeasurementSampling] {
        let a = noisy_energy(&c, &h, &nm, 2000, mode, 77).unwrap();
        let b = noisy_energy(&c, &h, &nm, 2000, mode, 77).unwrap();
        assert_eq!(a, b);
        let other = noisy_energy(&c, &h, &nm, 2000, mode, 78).unwrap();
        assert_ne!(a.mean, other.mean);
    }
}

#[test]
fn estimator_rejects_bad_inputs() {
    let nm = NoiseModel::noiseless();
    let c = Circuit::new(2);
    assert!(matches!(
        noisy_energy(&c, &ham("1.0 ZZ"), &nm, 0, EstimatorMode::ExactExpectation, 0),
        Err(Error::NoSamples)
    ));
    assert!(matches!(
        noisy_energy(&c, &ham("1.0 ZZZ"), &nm, 10, EstimatorMode::ExactExpectation, 0),
        Err(Error::WidthMismatch { .. })
    ));
}

// ---------- dense simulators ----------

#[test]
fn statevector_matches_oracle_on_rotations() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    for _ in 0..20 {
        let n = rng.random_range(1..=4);
        let theta: Vec<f64> = (0..4 * n).map(|_| rng.random_range(0.0..6.3)).collect();
        let c = build_vqe_ansatz(n, &AnsatzParams::new(n, theta).unwrap(), Topology::Ring).unwrap();
        let s = DenseState::<f64>::zero(n).unwrap().run(&c).unwrap();
        let u = circuit_dense(c.gates(), n);
        let h = random_hamiltonian(n, 5, &mut rng);
        let want = zero_state_expectation_dense(&u, &hamiltonian_dense(&h));
        assert!((s.expectation(&h).unwrap() - want).abs() < 1e-9);
        let rho = density_matrix_run::<f64>(&c, &NoiseModel::noiseless(), true).unwrap();
        assert!((rho.expectation(&h).unwrap() - want).abs() < 1e-9);
    }
}

#[test]
fn relaxation_decays_excited_population() {
    let (t, t1) = (30e-6, 100e-6);
    let nm = NoiseModel::uniform(0.0, 0.0, 0.0, t1).unwrap().with_duration(GateKind::X, t).unwrap();
    let c = circuit(1, [Op::Gate(Gate::X(0))]);
    let rho = density_matrix_run::<f64>(&c, &nm, true).unwrap();
    assert!((rho.diagonal()[1] - (-t / t1).exp()).abs() < 1e-12);
    assert!((rho.trace().re - 1.0).abs() < 1e-12);
    let frozen = density_matrix_run::<f64>(&c, &nm, false).unwrap();
    assert!((frozen.diagonal()[1] - 1.0).abs() < 1e-12);
}

#[test]
fn depolarizing_shrinks_bloch_vector() {
    let pr = 0.12;
    let mut rho = DensityMatrix::<f64>::zero(1).unwrap();
    rho.depolarize1(0, pr).unwrap();
    assert!((rho.pauli_expectation(&p("Z")).unwrap() - (1.0 - 4.0 * pr / 3.0)).abs() < 1e-12);
    let mut pair = DensityMatrix::<f64>::zero(2).unwrap();
    pair.depolarize2(0, 1, pr).unwrap();
    for text in ["ZI", "IZ", "ZZ"] {
        let got = pair.pauli_expectation(&p(text)).unwrap();
        // 8 of the 15 two-qubit errors anticommute with each weight-one or weight-two Z string.
        assert!((got - (1.0 - 2.0 * 8.0 * pr / 15.0)).abs() < 1e-12, "{text}: {got}");
    }
}

#[test]
fn ground_energies() {
    assert!((exact_ground_energy(&ham("1.0 Z")).unwrap() + 1.0).abs() < 1e-12);
    assert!((exact_ground_energy(&ham("1.0 XX\n1.0 YY\n1.0 ZZ")).unwrap() + 3.0).abs() < 1e-10);
    for n in [2, 4, 6] {
        let h = benchmarks::ising(n, 0.0).unwrap();
        assert!((exact_ground_energy(&h).unwrap() + n as f64).abs() < 1e-9, "n={n}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for _ in 0..5 {
        let h = random_hamiltonian(4, 10, &mut rng);
        let want = eigenvalues(&hamiltonian_dense(&h))[0];
        assert!((exact_ground_energy(&h).unwrap() - want).abs() < 1e-9);
    }
}

#[test]
fn fully_mixed_energy_is_normalized_trace() {
    assert_eq!(fully_mixed_energy(&benchmarks::ising(5, 0.5).unwrap()), 0.0);
    assert_eq!(fully_mixed_energy(&ham("2.5 II\n1.0 XZ")), 2.5);
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    let h = random_hamiltonian(3, 12, &mut rng);
    let m = hamiltonian_dense(&h);
    assert!((fully_mixed_energy(&h) - m.trace().re / 8.0).abs() < 1e-12);
    let rho = DensityMatrix::<f64>::fully_mixed(3).unwrap();
    assert!((rho.expectation(&h).unwrap() - fully_mixed_energy(&h)).abs() < 1e-12);
}

#[test]
fn dense_expectation_examples() {
    let s = DenseState::<f64>::zero(7).unwrap();
    assert_eq!(s.expectation(&benchmarks::ising(7, 0.5).unwrap()).unwrap(), 7.0);
    let b = DenseState::<f64>::zero(2).unwrap().run(&bell()).unwrap();
    assert!((b.expectation(&ham("1.0 XX\n1.0 ZZ")).unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn noisy_density_matrices_stay_physical() {
    let mut rng = ChaCha8Rng::seed_from_u64(81);
    let nm = NoiseModel::uniform(0.05, 0.1, 0.05, 40e-6).unwrap();
    for _ in 0..5 {
        let c = apply_gate_noise(&random_clifford_ansatz(3, &mut rng), &nm).unwrap();
        let rho = density_matrix_run::<f64>(&c, &nm, true).unwrap();
        assert!((rho.trace().re - 1.0).abs() < 1e-10);
        assert!(rho.is_hermitian(1e-10));
        assert!(rho.eigenvalues().iter().all(|&v| v > -1e-10));
    }
}

#[test]
fn single_precision_tracks_double() {
    let mut rng = ChaCha8Rng::seed_from_u64(91);
    let nm = NoiseModel::uniform(0.01, 0.02, 0.02, 80e-6).unwrap();
    let c = apply_gate_noise(&random_clifford_ansatz(3, &mut rng), &nm).unwrap();
    let h = random_hamiltonian(3, 6, &mut rng);
    let d = noisy_dense_energy(&c, &h, &nm, true).unwrap();
    let s = noisy_dense_energy(&c, &h.cast::<f32>(), &nm, true).unwrap();
    assert!((d - s as f64).abs() < 1e-4);
}

// ---------- circuits, ansatz and noise ----------

#[test]
fn ansatz_layout() {
    let c = build_vqe_ansatz(2, &AnsatzParams::zeros(8), Topology::Ring).unwrap();
    assert_eq!(c.gate_count(), 10);
    let cx: Vec<&Gate> = c.gates().filter(|g| matches!(g, Gate::Cx { .. })).collect();
    assert_eq!(cx, [&Gate::Cx { control: 0, target: 1 }, &Gate::Cx { control: 1, target: 0 }]);
    let line = build_vqe_ansatz(4, &AnsatzParams::zeros(16), Topology::Line).unwrap();
    assert_eq!(line.gates().filter(|g| matches!(g, Gate::Cx { .. })).count(), 3);
    assert!(matches!(
        build_vqe_ansatz(3, &AnsatzParams::zeros(11), Topology::Ring),
        Err(Error::ParamLength { expected: 12, found: 11 })
    ));
}

#[test]
fn zero_angle_ansatz_prepares_zero_state() {
    let c = build_vqe_ansatz(5, &AnsatzParams::zeros(20), Topology::Ring).unwrap();
    let s = StabilizerState::zero(5).run(&c).unwrap();
    for q in 0..5 {
        assert_eq!(s.expectation(&PauliString::single(5, q, Letter::Z)).unwrap(), 1);
    }
}

#[test]
fn gate_noise_adds_one_channel_per_gate() {
    let nm = NoiseModel::uniform(0.001, 0.01, 0.0, INF).unwrap();
    let c = build_vqe_ansatz(3, &AnsatzParams::zeros(12), Topology::Ring).unwrap();
    let noisy = apply_gate_noise(&c, &nm).unwrap();
    assert_eq!(noisy.channel_count(), c.gate_count());
    assert_eq!(noisy.noiseless(), c);
    let single = apply_gate_noise(&circuit(2, [Op::Gate(Gate::Cx { control: 0, target: 1 })]), &nm).unwrap();
    assert_eq!(single.ops()[1], Op::Depolarize2 { a: 0, b: 1, p: 0.01 });
    let quiet = apply_gate_noise(&c, &NoiseModel::noiseless()).unwrap();
    let a = density_matrix_run::<f64>(&quiet, &NoiseModel::noiseless(), false).unwrap();
    let b = density_matrix_run::<f64>(&c, &NoiseModel::noiseless(), false).unwrap();
    assert_eq!(a.diagonal(), b.diagonal());
}

#[test]
fn measurement_circuits() {
    let nm = NoiseModel::uniform(0.0, 0.0, 0.02, INF).unwrap();
    let base = Circuit::new(3);
    let zz = append_measurement(&base, &p("ZZI"), &nm).unwrap();
    assert_eq!(zz.gate_count(), 0);
    assert_eq!(zz.ops().iter().filter(|o| matches!(o, Op::Measure { .. })).count(), 2);
    assert!(zz.ops().contains(&Op::ReadoutFlip { qubit: 1, p: 0.02 }));
    let x = append_measurement(&base, &p("XII"), &nm).unwrap();
    assert_eq!(x.gates().collect::<Vec<_>>(), [&Gate::H(0)]);
    let y = append_measurement(&base, &p("YII"), &nm).unwrap();
    assert_eq!(y.gates().collect::<Vec<_>>(), [&Gate::Sdg(0), &Gate::H(0)]);
}

#[test]
fn y_readout_reproduces_y_expectation() {
    let prep = circuit(1, [Op::Gate(Gate::H(0)), Op::Gate(Gate::S(0))]);
    let nm = NoiseModel::noiseless();
    let readout = append_measurement(&prep, &p("Y"), &nm).unwrap();
    let rho = density_matrix_run::<f64>(&readout, &nm, false).unwrap();
    assert!((rho.z_parity(1) - 1.0).abs() < 1e-12);
    assert!((noisy_dense_energy(&prep, &ham("1.0 Y"), &nm, false).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn noise_file_parsing() {
    let text = "# calibration\ndefault\n  p1 1e-3\n  p2 1e-2\n  p_meas 3e-2\n  t1 100e-6\nqubit 2\n  p1 5e-3\npair 0 1\n  p2 2e-2\nduration CX 3e-7\n";
    let nm = NoiseModel::from_text(text, "noise.txt").unwrap();
    assert_eq!(nm.p1(0).unwrap(), 1e-3);
    assert_eq!(nm.p1(2).unwrap(), 5e-3);
    assert_eq!(nm.p2(0, 1).unwrap(), 2e-2);
    assert_eq!(nm.p2(1, 2).unwrap(), 1e-2);
    assert_eq!(nm.p_meas(3).unwrap(), 3e-2);
    assert_eq!(nm.t1(1).unwrap(), 100e-6);
    assert_eq!(nm.gate_duration(GateKind::Cx), 3e-7);
    let back = NoiseModel::from_text(&nm.to_text(), "round trip").unwrap();
    assert_eq!(back, nm);
}

#[test]
fn invalid_noise_rejected() {
    let err = NoiseModel::from_text("default\n  t1 0\n", "noise.txt").unwrap_err();
    assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
    assert!(NoiseModel::from_text("default\n  p1 1.5\n", "noise.txt").is_err());
    assert!(NoiseModel::from_text("p1 0.1\n", "noise.txt").is_err());
    assert!(NoiseModel::uniform(0.0, 0.0, 0.0, 0.0).is_err());
    assert!(NoiseModel::uniform(-0.1, 0.0, 0.0, 1.0).is_err());
}

#[test]
fn infinite_relaxation_time_is_noiseless() {
    let nm = NoiseModel::uniform(0.0, 0.0, 0.0, INF).unwrap();
    let c = circuit(1, [Op::Gate(Gate::X(0)), Op::Measure { qubit: 0 }]);
    let rho = density_matrix_run::<f64>(&c, &nm, true).unwrap();
    assert_eq!(rho.diagonal()[1], 1.0);
}
