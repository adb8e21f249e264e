//! Exact small-instance reference simulators: state vectors, density
//! matrices with depolarizing, readout and amplitude-damping noise, and
//! dense diagonalization.

pub mod matrices;

use num_complex::Complex;

use crate::circuit::{Circuit, Gate, Op};
use crate::error::{Error, Result};
use crate::hamiltonian::PauliSum;
use crate::noise::{append_measurement, NoiseModel};
use crate::pauli::{Letter, PauliString};
use crate::scalar::Real;
use matrices::{amplitude_damping, kron2, pauli_matrix, single_qubit_matrix, two_qubit_matrix, Mat2, Mat4};

/// Largest register the state-vector simulator accepts.
pub const STATE_VECTOR_CAP: usize = 14;
/// Largest register the density-matrix simulator and eigensolver accept.
pub const DENSITY_MATRIX_CAP: usize = 12;

fn check_cap(n_qubits: usize, cap: usize) -> Result<()> {
    if n_qubits > cap {
        return Err(Error::SizeCap { n_qubits, cap });
    }
    Ok(())
}

fn check_width(n: usize, p: &PauliString) -> Result<()> {
    if p.n_qubits() != n {
        return Err(Error::WidthMismatch { left: n, right: p.n_qubits() });
    }
    Ok(())
}

/// `P|b⟩ = phase(b) |b ⊕ x⟩` for a Pauli with masks `(x, z)`.
#[derive(Clone, Copy)]
struct PauliAction {
    x: usize,
    z: usize,
    /// `i^{|x ∧ z|}` times the string sign, as a power of `i`.
    base: u32,
}

impl PauliAction {
    fn new(p: &PauliString) -> Self {
        let x = p.x_mask().low_word() as usize;
        let z = p.z_mask().low_word() as usize;
        let base = (x & z).count_ones() + if p.is_negative() { 2 } else { 0 };
        PauliAction { x, z, base }
    }

    #[inline]
    fn phase<T: Real>(&self, b: usize) -> Complex<T> {
        let k = (self.base + 2 * ((self.z & b).count_ones() & 1)) & 3;
        let (one, zero) = (T::one(), T::zero());
        match k {
            0 => Complex::new(one, zero),
            1 => Complex::new(zero, one),
            2 => Complex::new(-one, zero),
            _ => Complex::new(zero, -one),
        }
    }
}

/// Pure state on at most [`STATE_VECTOR_CAP`] qubits; qubit `k` is bit `k`
/// of the basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseState<T> {
    n_qubits: usize,
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> DenseState<T> {
    pub fn zero(n_qubits: usize) -> Result<Self> {
        check_cap(n_qubits, STATE_VECTOR_CAP)?;
        let mut amplitudes = vec![Complex::new(T::zero(), T::zero()); 1 << n_qubits];
        amplitudes[0] = Complex::new(T::one(), T::zero());
        Ok(DenseState { n_qubits, amplitudes })
    }

    pub fn from_amplitudes(n_qubits: usize, amplitudes: Vec<Complex<T>>) -> Result<Self> {
        check_cap(n_qubits, STATE_VECTOR_CAP)?;
        if amplitudes.len() != 1 << n_qubits {
            return Err(Error::InvalidInput(format!("{} amplitudes for {n_qubits} qubits", amplitudes.len())));
        }
        let s = DenseState { n_qubits, amplitudes };
        if (s.norm() - T::one()).abs() > T::of(T::STATE_TOLERANCE) {
            return Err(Error::InvalidInput("state is not normalized".into()));
        }
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn norm(&self) -> T {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        let n = self.n_qubits;
        match gate.qubits() {
            (q, None) => {
                if q >= n {
                    return Err(Error::QubitOutOfRange { qubit: q, n_qubits: n });
                }
                let u = single_qubit_matrix::<T>(gate).expect("single-qubit gate");
                let bit = 1 << q;
                for b in 0..self.amplitudes.len() {
                    if b & bit == 0 {
                        let (a0, a1) = (self.amplitudes[b], self.amplitudes[b | bit]);
                        self.amplitudes[b] = u[0][0] * a0 + u[0][1] * a1;
                        self.amplitudes[b | bit] = u[1][0] * a0 + u[1][1] * a1;
                    }
                }
            }
            (a, Some(c)) => {
                for q in [a, c] {
                    if q >= n {
                        return Err(Error::QubitOutOfRange { qubit: q, n_qubits: n });
                    }
                }
                let u = two_qubit_matrix::<T>(gate).expect("two-qubit gate");
                let (ba, bc) = (1 << a, 1 << c);
                let idx = |base: usize, local: usize| base | if local & 1 != 0 { ba } else { 0 } | if local & 2 != 0 { bc } else { 0 };
                for base in 0..self.amplitudes.len() {
                    if base & (ba | bc) == 0 {
                        let v: [Complex<T>; 4] = std::array::from_fn(|l| self.amplitudes[idx(base, l)]);
                        for (r, row) in u.iter().enumerate() {
                            self.amplitudes[idx(base, r)] = row.iter().zip(&v).map(|(m, x)| *m * *x).sum();
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Runs the gates of a noiseless circuit; measurements are ignored.
    pub fn run(mut self, c: &Circuit) -> Result<Self> {
        if c.n_qubits() != self.n_qubits {
            return Err(Error::WidthMismatch { left: self.n_qubits, right: c.n_qubits() });
        }
        for (i, op) in c.ops().iter().enumerate() {
            match op {
                Op::Gate(g) => self.apply_gate(g)?,
                Op::Measure { .. } => {}
                _ => return Err(Error::NoiseInNoiselessRun(i)),
            }
        }
        Ok(self)
    }

    /// `⟨ψ|P|ψ⟩` including the string sign.
    pub fn pauli_expectation(&self, p: &PauliString) -> Result<T> {
        check_width(self.n_qubits, p)?;
        let act = PauliAction::new(p);
        let v: Complex<T> = (0..self.amplitudes.len())
            .map(|b| self.amplitudes[b ^ act.x].conj() * act.phase::<T>(b) * self.amplitudes[b])
            .sum();
        Ok(v.re)
    }

    /// `⟨ψ|H|ψ⟩`.
    pub fn expectation(&self, h: &PauliSum<T>) -> Result<T> {
        if h.n_qubits() != self.n_qubits {
            return Err(Error::WidthMismatch { left: self.n_qubits, right: h.n_qubits() });
        }
        h.terms().iter().map(|(c, p)| Ok(*c * self.pauli_expectation(p)?)).sum()
    }
}

/// Runs a noiseless circuit on `|0…0⟩`.
pub fn statevector_run<T: Real>(c: &Circuit, initial: DenseState<T>) -> Result<DenseState<T>> {
    initial.run(c)
}

/// Superoperator `S[(i,j),(k,l)] = Σ_K K[i][k] conj(K[j][l])` on `D × D` blocks,
/// flattened row-major as `i·D + j`.
fn superop<T: Real, const D: usize>(kraus: &[[[Complex<T>; D]; D]]) -> Vec<Complex<T>> {
    let dd = D * D;
    let mut s = vec![Complex::new(T::zero(), T::zero()); dd * dd];
    for k in kraus {
        for i in 0..D {
            for j in 0..D {
                for a in 0..D {
                    for b in 0..D {
                        let e = &mut s[(i * D + j) * dd + a * D + b];
                        *e = *e + k[i][a] * k[j][b].conj();
                    }
                }
            }
        }
    }
    s
}

fn scale2<T: Real>(m: Mat2<T>, f: T) -> Mat2<T> {
    m.map(|row| row.map(|v| v * f))
}

fn scale4<T: Real>(m: Mat4<T>, f: T) -> Mat4<T> {
    m.map(|row| row.map(|v| v * f))
}

fn depolarize1_kraus<T: Real>(p: f64) -> Vec<Mat2<T>> {
    let mut ks = vec![scale2(pauli_matrix(Letter::I), T::of((1.0 - p).sqrt()))];
    for l in [Letter::X, Letter::Y, Letter::Z] {
        ks.push(scale2(pauli_matrix(l), T::of((p / 3.0).sqrt())));
    }
    ks
}

fn depolarize2_kraus<T: Real>(p: f64) -> Vec<Mat4<T>> {
    let letters = [Letter::I, Letter::X, Letter::Y, Letter::Z];
    let mut ks = Vec::with_capacity(16);
    for (i, &la) in letters.iter().enumerate() {
        for (j, &lb) in letters.iter().enumerate() {
            let w = if i == 0 && j == 0 { 1.0 - p } else { p / 15.0 };
            ks.push(scale4(kron2(&pauli_matrix(la), &pauli_matrix(lb)), T::of(w.sqrt())));
        }
    }
    ks
}

fn bit_flip_kraus<T: Real>(p: f64) -> Vec<Mat2<T>> {
    vec![scale2(pauli_matrix(Letter::I), T::of((1.0 - p).sqrt())), scale2(pauli_matrix(Letter::X), T::of(p.sqrt()))]
}

/// Mixed state on at most [`DENSITY_MATRIX_CAP`] qubits, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    n_qubits: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> DensityMatrix<T> {
    pub fn zero(n_qubits: usize) -> Result<Self> {
        check_cap(n_qubits, DENSITY_MATRIX_CAP)?;
        let dim = 1 << n_qubits;
        let mut data = vec![Complex::new(T::zero(), T::zero()); dim * dim];
        data[0] = Complex::new(T::one(), T::zero());
        Ok(DensityMatrix { n_qubits, data })
    }

    pub fn fully_mixed(n_qubits: usize) -> Result<Self> {
        check_cap(n_qubits, DENSITY_MATRIX_CAP)?;
        let dim = 1 << n_qubits;
        let mut data = vec![Complex::new(T::zero(), T::zero()); dim * dim];
        let w = T::one() / T::of(dim as f64);
        for b in 0..dim {
            data[b * dim + b] = Complex::new(w, T::zero());
        }
        Ok(DensityMatrix { n_qubits, data })
    }

    pub fn from_pure(state: &DenseState<T>) -> Result<Self> {
        check_cap(state.n_qubits, DENSITY_MATRIX_CAP)?;
        let a = &state.amplitudes;
        let data = a.iter().flat_map(|x| a.iter().map(move |y| *x * y.conj())).collect();
        Ok(DensityMatrix { n_qubits: state.n_qubits, data })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.data[row * self.dim() + col]
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim()).map(|b| self.get(b, b)).sum()
    }

    /// Populations `ρ_bb`.
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.dim()).map(|b| self.get(b, b).re).collect()
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        let d = self.dim();
        (0..d).all(|r| (r..d).all(|c| (self.get(r, c) - self.get(c, r).conj()).norm() <= tol))
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<T> {
        T::hermitian_eigenvalues(self.dim(), &self.data)
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n_qubits {
            return Err(Error::QubitOutOfRange { qubit: q, n_qubits: self.n_qubits });
        }
        Ok(())
    }

    /// Applies a single-qubit superoperator (4×4) on qubit `q`.
    fn apply_superop1(&mut self, q: usize, s: &[Complex<T>]) {
        let d = self.dim();
        let bit = 1 << q;
        for r in (0..d).filter(|r| r & bit == 0) {
            for c in (0..d).filter(|c| c & bit == 0) {
                let idx = |i: usize, j: usize| (r | i * bit) * d + (c | j * bit);
                let v = [self.data[idx(0, 0)], self.data[idx(0, 1)], self.data[idx(1, 0)], self.data[idx(1, 1)]];
                for (out, row) in s.chunks_exact(4).enumerate() {
                    self.data[idx(out >> 1, out & 1)] = row.iter().zip(&v).map(|(m, x)| *m * *x).sum();
                }
            }
        }
    }

    /// Applies a two-qubit superoperator (16×16); local bit 0 is `a`, bit 1 is `b`.
    fn apply_superop2(&mut self, a: usize, b: usize, s: &[Complex<T>]) {
        let d = self.dim();
        let (ba, bb) = (1 << a, 1 << b);
        let local = |base: usize, l: usize| base | if l & 1 != 0 { ba } else { 0 } | if l & 2 != 0 { bb } else { 0 };
        let mut v = [Complex::new(T::zero(), T::zero()); 16];
        for r in (0..d).filter(|r| r & (ba | bb) == 0) {
            for c in (0..d).filter(|c| c & (ba | bb) == 0) {
                for i in 0..4 {
                    for j in 0..4 {
                        v[i * 4 + j] = self.data[local(r, i) * d + local(c, j)];
                    }
                }
                for (out, row) in s.chunks_exact(16).enumerate() {
                    self.data[local(r, out >> 2) * d + local(c, out & 3)] =
                        row.iter().zip(&v).map(|(m, x)| *m * *x).sum();
                }
            }
        }
    }

    pub fn apply_channel1(&mut self, q: usize, kraus: &[Mat2<T>]) -> Result<()> {
        self.check_qubit(q)?;
        self.apply_superop1(q, &superop(kraus));
        Ok(())
    }

    pub fn apply_channel2(&mut self, a: usize, b: usize, kraus: &[Mat4<T>]) -> Result<()> {
        self.check_qubit(a)?;
        self.check_qubit(b)?;
        if a == b {
            return Err(Error::RepeatedQubit(a));
        }
        self.apply_superop2(a, b, &superop(kraus));
        Ok(())
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        match gate.qubits() {
            (q, None) => self.apply_channel1(q, &[single_qubit_matrix(gate).expect("single-qubit gate")]),
            (a, Some(b)) => self.apply_channel2(a, b, &[two_qubit_matrix(gate).expect("two-qubit gate")]),
        }
    }

    pub fn depolarize1(&mut self, q: usize, p: f64) -> Result<()> {
        self.apply_channel1(q, &depolarize1_kraus(p))
    }

    pub fn depolarize2(&mut self, a: usize, b: usize, p: f64) -> Result<()> {
        self.apply_channel2(a, b, &depolarize2_kraus(p))
    }

    pub fn bit_flip(&mut self, q: usize, p: f64) -> Result<()> {
        self.apply_channel1(q, &bit_flip_kraus(p))
    }

    /// Amplitude damping for an idle time `t` with relaxation time `t1`.
    pub fn relax(&mut self, q: usize, t: f64, t1: f64) -> Result<()> {
        let gamma = if t1.is_infinite() || t == 0.0 { 0.0 } else { 1.0 - (-t / t1).exp() };
        if gamma == 0.0 {
            return self.check_qubit(q);
        }
        self.apply_channel1(q, &amplitude_damping(gamma))
    }

    /// Applies one circuit op. With `t1` set, qubits touched by a gate or
    /// measurement relax for that op's duration afterwards.
    pub fn apply_op(&mut self, op: &Op, nm: &NoiseModel, include_t1: bool) -> Result<()> {
        match *op {
            Op::Gate(g) => self.apply_gate(&g)?,
            Op::Depolarize1 { qubit, p } => self.depolarize1(qubit, p)?,
            Op::Depolarize2 { a, b, p } => self.depolarize2(a, b, p)?,
            Op::ReadoutFlip { qubit, p } => self.bit_flip(qubit, p)?,
            Op::Measure { .. } => {}
        }
        if include_t1 {
            let t = nm.op_duration(op);
            let qubits: Vec<usize> = match *op {
                Op::Gate(g) => std::iter::once(g.qubits().0).chain(g.qubits().1).collect(),
                Op::Measure { qubit } => vec![qubit],
                _ => Vec::new(),
            };
            for q in qubits {
                self.relax(q, t, nm.t1(q)?)?;
            }
        }
        Ok(())
    }

    pub fn run(mut self, c: &Circuit, nm: &NoiseModel, include_t1: bool) -> Result<Self> {
        if c.n_qubits() != self.n_qubits {
            return Err(Error::WidthMismatch { left: self.n_qubits, right: c.n_qubits() });
        }
        for op in c.ops() {
            self.apply_op(op, nm, include_t1)?;
        }
        Ok(self)
    }

    /// `tr(ρ P)` including the string sign.
    pub fn pauli_expectation(&self, p: &PauliString) -> Result<T> {
        check_width(self.n_qubits, p)?;
        let act = PauliAction::new(p);
        let v: Complex<T> = (0..self.dim()).map(|b| self.get(b, b ^ act.x) * act.phase::<T>(b)).sum();
        Ok(v.re)
    }

    /// `tr(ρ H)`.
    pub fn expectation(&self, h: &PauliSum<T>) -> Result<T> {
        if h.n_qubits() != self.n_qubits {
            return Err(Error::WidthMismatch { left: self.n_qubits, right: h.n_qubits() });
        }
        h.terms().iter().map(|(c, p)| Ok(*c * self.pauli_expectation(p)?)).sum()
    }

    /// Expected parity `Σ_b ρ_bb (−1)^{|b ∧ mask|}` of a Z-basis readout.
    pub fn z_parity(&self, mask: usize) -> T {
        (0..self.dim())
            .map(|b| {
                let v = self.get(b, b).re;
                if (b & mask).count_ones() & 1 == 1 {
                    -v
                } else {
                    v
                }
            })
            .sum()
    }
}

/// Runs a (possibly noisy) circuit from `|0…0⟩`.
pub fn density_matrix_run<T: Real>(c: &Circuit, nm: &NoiseModel, include_t1: bool) -> Result<DensityMatrix<T>> {
    DensityMatrix::zero(c.n_qubits())?.run(c, nm, include_t1)
}

/// Either kind of dense state, for [`dense_expectation`].
pub enum DenseRef<'a, T> {
    State(&'a DenseState<T>),
    Density(&'a DensityMatrix<T>),
}

impl<'a, T> From<&'a DenseState<T>> for DenseRef<'a, T> {
    fn from(s: &'a DenseState<T>) -> Self {
        DenseRef::State(s)
    }
}

impl<'a, T> From<&'a DensityMatrix<T>> for DenseRef<'a, T> {
    fn from(s: &'a DensityMatrix<T>) -> Self {
        DenseRef::Density(s)
    }
}

/// `⟨ψ|H|ψ⟩` or `tr(ρH)`.
pub fn dense_expectation<'a, T: Real>(state: impl Into<DenseRef<'a, T>>, h: &PauliSum<T>) -> Result<T> {
    match state.into() {
        DenseRef::State(s) => s.expectation(h),
        DenseRef::Density(r) => r.expectation(h),
    }
}

/// Dense row-major matrix of `H`.
pub fn hamiltonian_matrix<T: Real>(h: &PauliSum<T>) -> Result<Vec<Complex<T>>> {
    check_cap(h.n_qubits(), DENSITY_MATRIX_CAP)?;
    let dim = 1usize << h.n_qubits();
    let mut m = vec![Complex::new(T::zero(), T::zero()); dim * dim];
    for (c, p) in h.terms() {
        let act = PauliAction::new(p);
        for b in 0..dim {
            let e = &mut m[(b ^ act.x) * dim + b];
            *e = *e + act.phase::<T>(b) * *c;
        }
    }
    Ok(m)
}

/// All eigenvalues of `H`, ascending.
pub fn spectrum<T: Real>(h: &PauliSum<T>) -> Result<Vec<T>> {
    let m = hamiltonian_matrix(h)?;
    Ok(T::hermitian_eigenvalues(1 << h.n_qubits(), &m))
}

/// Smallest eigenvalue of `H`.
pub fn exact_ground_energy<T: Real>(h: &PauliSum<T>) -> Result<T> {
    Ok(spectrum(h)?[0])
}

/// `tr(H) / 2^N`, read off the identity coefficient.
pub fn fully_mixed_energy<T: Real>(h: &PauliSum<T>) -> T {
    h.identity_coefficient()
}

/// Noisy energy of `H` on the state prepared by `c_noisy`, measuring every
/// term through its own noisy readout circuit (basis change with gate noise,
/// readout flips, relaxation when `include_t1`).
pub fn noisy_dense_energy<T: Real>(
    c_noisy: &Circuit,
    h: &PauliSum<T>,
    nm: &NoiseModel,
    include_t1: bool,
) -> Result<T> {
    if h.n_qubits() != c_noisy.n_qubits() {
        return Err(Error::WidthMismatch { left: c_noisy.n_qubits(), right: h.n_qubits() });
    }
    let rho = density_matrix_run::<T>(c_noisy, nm, include_t1)?;
    let empty = Circuit::new(c_noisy.n_qubits());
    let mut total = T::zero();
    for (c, p) in h.terms() {
        if p.is_identity() {
            total += *c;
            continue;
        }
        let readout = append_measurement(&empty, p, nm)?;
        let mut r = rho.clone();
        for op in readout.ops() {
            r.apply_op(op, nm, include_t1)?;
        }
        let mask = (p.x_mask().low_word() | p.z_mask().low_word()) as usize;
        let sign = if p.is_negative() { -T::one() } else { T::one() };
        total += *c * sign * r.z_parity(mask);
    }
    Ok(total)
}
