//! Spin-chain benchmark Hamiltonians with open boundaries.

use crate::error::{Error, Result};
use crate::hamiltonian::PauliSum;
use crate::pauli::{Letter, PauliString};

fn pair(n: usize, i: usize, letter: Letter) -> PauliString {
    let mut p = PauliString::single(n, i, letter);
    p.set_letter(i + 1, letter);
    p
}

fn check_size(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("chain needs at least 2 qubits, got {n}")));
    }
    Ok(())
}

/// Transverse-field Ising chain `J Σ X_i X_{i+1} + Σ Z_i`.
pub fn ising(n: usize, j: f64) -> Result<PauliSum<f64>> {
    check_size(n)?;
    let couplings = (0..n - 1).map(|i| (j, pair(n, i, Letter::X)));
    let fields = (0..n).map(|i| (1.0, PauliString::single(n, i, Letter::Z)));
    PauliSum::new(n, couplings.chain(fields).collect::<Vec<_>>())
}

/// XXZ chain `J Σ (X_i X_{i+1} + Y_i Y_{i+1}) + Σ Z_i Z_{i+1}`.
pub fn xxz(n: usize, j: f64) -> Result<PauliSum<f64>> {
    check_size(n)?;
    let terms = (0..n - 1).flat_map(|i| {
        [(j, pair(n, i, Letter::X)), (j, pair(n, i, Letter::Y)), (1.0, pair(n, i, Letter::Z))]
    });
    PauliSum::new(n, terms.collect::<Vec<_>>())
}
