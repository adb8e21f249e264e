use crate::circuit::{Circuit, Gate, Op};
use crate::clifford::tables::conjugate_in_place;
use crate::clifford::CliffordGate;
use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliString, PhasedPauli};

/// Stabilizer state stored as `N` stabilizer generators and their paired
/// destabilizers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerState {
    n_qubits: usize,
    stabilizers: Vec<PauliString>,
    destabilizers: Vec<PauliString>,
}

impl StabilizerState {
    /// `|0…0⟩`: stabilizers `+Z_k`, destabilizers `+X_k`.
    pub fn zero(n_qubits: usize) -> Self {
        StabilizerState {
            n_qubits,
            stabilizers: (0..n_qubits).map(|k| PauliString::single(n_qubits, k, Letter::Z)).collect(),
            destabilizers: (0..n_qubits).map(|k| PauliString::single(n_qubits, k, Letter::X)).collect(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn stabilizers(&self) -> &[PauliString] {
        &self.stabilizers
    }

    pub fn destabilizers(&self) -> &[PauliString] {
        &self.destabilizers
    }

    pub fn apply(&mut self, gate: &CliffordGate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        for p in self.stabilizers.iter_mut().chain(self.destabilizers.iter_mut()) {
            conjugate_in_place(gate, p);
        }
        Ok(())
    }

    /// Applies a circuit gate, rejecting rotations off the π/2 grid.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        self.apply(&gate.to_clifford()?)
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

    /// Exact `⟨P⟩ ∈ {−1, 0, +1}`.
    pub fn expectation(&self, p: &PauliString) -> Result<i8> {
        if p.n_qubits() != self.n_qubits {
            return Err(Error::WidthMismatch { left: self.n_qubits, right: p.n_qubits() });
        }
        if self.stabilizers.iter().any(|s| !s.commutes_with(p)) {
            return Ok(0);
        }
        // P commutes with the group, so ±P is the product of the stabilizers
        // whose destabilizer partner anticommutes with P.
        let mut acc = PhasedPauli::identity(self.n_qubits);
        for (s, d) in self.stabilizers.iter().zip(&self.destabilizers) {
            if !d.commutes_with(p) {
                acc.mul_assign(s);
            }
        }
        let product = acc.into_signed()?;
        debug_assert!(product.same_letters(p));
        Ok(if product.is_negative() == p.is_negative() { 1 } else { -1 })
    }

    /// Mutual commutation of stabilizers and the pairing with destabilizers.
    pub fn is_valid(&self) -> bool {
        let n = self.n_qubits;
        (0..n).all(|i| {
            (0..n).all(|j| {
                self.stabilizers[i].commutes_with(&self.stabilizers[j])
                    && self.destabilizers[i].commutes_with(&self.destabilizers[j])
                    && (self.destabilizers[i].commutes_with(&self.stabilizers[j]) == (i != j))
            })
        })
    }
}
