//! Shared dense-matrix oracle and random generators for integration tests.
//! Gate and Pauli matrices are written out here independently of the crate.

#![allow(dead_code)]

use num_complex::Complex64 as C;
use rand::Rng;

use clifford_vqe::{CliffordGate, Gate, Hamiltonian, Letter, PauliString, QuarterTurns};

/// Dense square matrix, row-major.
#[derive(Clone, Debug)]
pub struct Mat {
    pub dim: usize,
    pub data: Vec<C>,
}

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);
const I: C = C::new(0.0, 1.0);

impl Mat {
    pub fn zeros(dim: usize) -> Self {
        Mat { dim, data: vec![ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Mat::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> C {
        self.data[r * self.dim + c]
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        let d = self.dim;
        let mut out = Mat::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let a = self.get(r, k);
                if a == ZERO {
                    continue;
                }
                for c in 0..d {
                    out.data[r * d + c] += a * other.get(k, c);
                }
            }
        }
        out
    }

    pub fn dagger(&self) -> Mat {
        let d = self.dim;
        let mut out = Mat::zeros(d);
        for r in 0..d {
            for c in 0..d {
                out.data[c * d + r] = self.get(r, c).conj();
            }
        }
        out
    }

    pub fn scale(&self, s: C) -> Mat {
        Mat { dim: self.dim, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        Mat { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn max_diff(&self, other: &Mat) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> C {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }
}

pub fn letter_matrix(l: Letter) -> [[C; 2]; 2] {
    match l {
        Letter::I => [[ONE, ZERO], [ZERO, ONE]],
        Letter::X => [[ZERO, ONE], [ONE, ZERO]],
        Letter::Y => [[ZERO, -I], [I, ZERO]],
        Letter::Z => [[ONE, ZERO], [ZERO, -ONE]],
    }
}

/// Matrix of a signed Pauli string; basis index bit `k` is qubit `k`.
pub fn pauli_dense(p: &PauliString) -> Mat {
    let n = p.n_qubits();
    let dim = 1 << n;
    let mut m = Mat::zeros(dim);
    let letters: Vec<Letter> = p.letters().collect();
    for col in 0..dim {
        let mut row = 0;
        let mut amp = C::new(p.sign() as f64, 0.0);
        for (q, l) in letters.iter().enumerate() {
            let bit = (col >> q) & 1;
            let lm = letter_matrix(*l);
            let out_bit = if lm[0][bit] != ZERO { 0 } else { 1 };
            amp *= lm[out_bit][bit];
            row |= out_bit << q;
        }
        m.data[row * dim + col] = amp;
    }
    m
}

pub fn hamiltonian_dense(h: &Hamiltonian) -> Mat {
    let dim = 1 << h.n_qubits();
    h.terms().iter().fold(Mat::zeros(dim), |acc, (c, p)| acc.add(&pauli_dense(p).scale(C::new(*c, 0.0))))
}

fn single_matrix(g: &Gate) -> [[C; 2]; 2] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let rot = |t: f64| (C::new((t / 2.0).cos(), 0.0), (t / 2.0).sin());
    match *g {
        Gate::H(_) => [[C::new(h, 0.0), C::new(h, 0.0)], [C::new(h, 0.0), C::new(-h, 0.0)]],
        Gate::S(_) => [[ONE, ZERO], [ZERO, I]],
        Gate::Sdg(_) => [[ONE, ZERO], [ZERO, -I]],
        Gate::X(_) => letter_matrix(Letter::X),
        Gate::Y(_) => letter_matrix(Letter::Y),
        Gate::Z(_) => letter_matrix(Letter::Z),
        Gate::Rx(_, t) => {
            let (c, s) = rot(t);
            [[c, C::new(0.0, -s)], [C::new(0.0, -s), c]]
        }
        Gate::Ry(_, t) => {
            let (c, s) = rot(t);
            [[c, C::new(-s, 0.0)], [C::new(s, 0.0), c]]
        }
        Gate::Rz(_, t) => [[C::from_polar(1.0, -t / 2.0), ZERO], [ZERO, C::from_polar(1.0, t / 2.0)]],
        Gate::Cx { .. } | Gate::Swap(..) => unreachable!("two-qubit gate"),
    }
}

/// Full `2^n × 2^n` unitary of one gate.
pub fn gate_dense(g: &Gate, n: usize) -> Mat {
    let dim = 1 << n;
    let mut m = Mat::zeros(dim);
    match *g {
        Gate::Cx { control, target } => {
            for b in 0..dim {
                let out = if (b >> control) & 1 == 1 { b ^ (1 << target) } else { b };
                m.data[out * dim + b] = ONE;
            }
        }
        Gate::Swap(a, c) => {
            for b in 0..dim {
                let (x, y) = ((b >> a) & 1, (b >> c) & 1);
                let out = (b & !(1 << a) & !(1 << c)) | (y << a) | (x << c);
                m.data[out * dim + b] = ONE;
            }
        }
        _ => {
            let q = match *g {
                Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) => q,
                Gate::Rx(q, _) | Gate::Ry(q, _) | Gate::Rz(q, _) => q,
                _ => unreachable!(),
            };
            let u = single_matrix(g);
            for b in 0..dim {
                let bit = (b >> q) & 1;
                for out_bit in 0..2 {
                    let out = (b & !(1 << q)) | (out_bit << q);
                    m.data[out * dim + b] += u[out_bit][bit];
                }
            }
        }
    }
    m
}

/// Unitary of a gate list applied first to last.
pub fn circuit_dense<'a>(gates: impl IntoIterator<Item = &'a Gate>, n: usize) -> Mat {
    gates.into_iter().fold(Mat::identity(1 << n), |acc, g| gate_dense(g, n).mul(&acc))
}

pub fn clifford_dense(gates: &[CliffordGate], n: usize) -> Mat {
    let gs: Vec<Gate> = gates.iter().map(|g| g.to_gate()).collect();
    circuit_dense(&gs, n)
}

/// `⟨ψ|M|ψ⟩` for `ψ = U|0…0⟩`.
pub fn zero_state_expectation_dense(u: &Mat, m: &Mat) -> f64 {
    let d = u.dim;
    let psi: Vec<C> = (0..d).map(|r| u.get(r, 0)).collect();
    let mut total = ZERO;
    for r in 0..d {
        for c in 0..d {
            total += psi[r].conj() * m.get(r, c) * psi[c];
        }
    }
    total.re
}

pub fn random_pauli(n: usize, rng: &mut impl Rng) -> PauliString {
    let letters: Vec<Letter> =
        (0..n).map(|_| [Letter::I, Letter::X, Letter::Y, Letter::Z][rng.random_range(0..4)]).collect();
    PauliString::from_letters(&letters, rng.random())
}

pub fn random_clifford_gate(n: usize, rng: &mut impl Rng) -> CliffordGate {
    let q = rng.random_range(0..n);
    let turns = QuarterTurns::wrapping(rng.random_range(0..4));
    let kinds = if n >= 2 { 11 } else { 9 };
    match rng.random_range(0..kinds) {
        0 => CliffordGate::H(q),
        1 => CliffordGate::S(q),
        2 => CliffordGate::Sdg(q),
        3 => CliffordGate::X(q),
        4 => CliffordGate::Y(q),
        5 => CliffordGate::Z(q),
        6 => CliffordGate::Rx(q, turns),
        7 => CliffordGate::Ry(q, turns),
        8 => CliffordGate::Rz(q, turns),
        k => {
            let mut r = rng.random_range(0..n - 1);
            if r >= q {
                r += 1;
            }
            if k == 9 {
                CliffordGate::Cx { control: q, target: r }
            } else {
                CliffordGate::Swap(q, r)
            }
        }
    }
}

pub fn random_clifford_circuit(n: usize, len: usize, rng: &mut impl Rng) -> Vec<CliffordGate> {
    (0..len).map(|_| random_clifford_gate(n, rng)).collect()
}

pub fn random_hamiltonian(n: usize, terms: usize, rng: &mut impl Rng) -> Hamiltonian {
    let ts = (0..terms).map(|_| (rng.random_range(-1.0..1.0), random_pauli(n, rng).unsigned()));
    Hamiltonian::new(n, ts).expect("valid terms")
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn eigenvalues(m: &Mat) -> Vec<f64> {
    let d = m.dim;
    let mat = nalgebra::DMatrix::from_fn(d, d, |r, c| m.get(r, c));
    let mut ev: Vec<f64> = mat.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}
