//! Clifford gates, conjugation tableaus and Hamiltonian transformation.

mod gate;
mod tableau;
pub(crate) mod tables;

pub use gate::{CliffordGate, QuarterTurns};
pub use tableau::CliffordTableau;

use crate::error::{Error, Result};
use crate::hamiltonian::PauliSum;
use crate::pauli::PauliString;
use crate::scalar::Real;

/// `C P C†` for `C = g_L ⋯ g_1`, walking the gate list directly.
pub fn conjugate_by_gates(gates: &[CliffordGate], p: &PauliString) -> PauliString {
    let mut out = p.clone();
    for g in gates {
        tables::conjugate_in_place(g, &mut out);
    }
    out
}

/// `C† P C` for `C = g_L ⋯ g_1`, walking the gate list backwards with inverses.
pub fn anticonjugate_by_gates(gates: &[CliffordGate], p: &PauliString) -> PauliString {
    let mut out = p.clone();
    anticonjugate_in_place(gates, &mut out);
    out
}

pub(crate) fn anticonjugate_in_place(gates: &[CliffordGate], p: &mut PauliString) {
    for g in gates.iter().rev() {
        tables::conjugate_in_place(&g.inverse(), p);
    }
}

fn check_gates(gates: &[CliffordGate], n_qubits: usize) -> Result<()> {
    gates.iter().try_for_each(|g| g.validate(n_qubits))
}

/// `C† H C` with signs folded into coefficients and equal strings merged.
pub fn transform_hamiltonian<T: Real>(h: &PauliSum<T>, t: &CliffordTableau) -> Result<PauliSum<T>> {
    if h.n_qubits() != t.n_qubits() {
        return Err(Error::WidthMismatch { left: h.n_qubits(), right: t.n_qubits() });
    }
    let inv = t.inverse();
    let terms = h.terms().iter().map(|(c, p)| Ok((*c, inv.conjugate(p)?))).collect::<Result<Vec<_>>>()?;
    PauliSum::new(h.n_qubits(), terms)
}

/// Same as [`transform_hamiltonian`] for the Clifford given as a gate list.
pub fn transform_by_gates<T: Real>(h: &PauliSum<T>, gates: &[CliffordGate]) -> Result<PauliSum<T>> {
    check_gates(gates, h.n_qubits())?;
    let terms = h.terms().iter().map(|(c, p)| (*c, anticonjugate_by_gates(gates, p)));
    PauliSum::new(h.n_qubits(), terms)
}
