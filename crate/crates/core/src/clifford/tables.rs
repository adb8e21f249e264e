//! Single-qubit conjugation tables, derived once from the explicit 2×2
//! matrices so that sign conventions follow the matrices by construction.

use std::sync::LazyLock;

use num_complex::Complex;

use super::gate::CliffordGate;
use crate::dense::matrices::{dagger2, mul2, pauli_matrix, single_qubit_matrix, Mat2};
use crate::pauli::{Letter, PauliString};

/// Signed single-qubit letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct SignedLetter {
    pub negative: bool,
    pub letter: Letter,
}

pub(crate) const TABLE_ROWS: usize = 18;

/// `TABLE[row][l]` is `U σ_l U†` for `l ∈ {X, Y, Z}` (indices 0, 1, 2).
pub(crate) static TABLE: LazyLock<[[SignedLetter; 3]; TABLE_ROWS]> = LazyLock::new(|| {
    std::array::from_fn(|row| {
        let gate = CliffordGate::from_table_index(row).to_gate();
        let u = single_qubit_matrix::<f64>(&gate).expect("single-qubit row");
        [Letter::X, Letter::Y, Letter::Z].map(|l| identify(&mul2(&mul2(&u, &pauli_matrix(l)), &dagger2(&u))))
    })
});

fn identify(m: &Mat2<f64>) -> SignedLetter {
    for letter in [Letter::I, Letter::X, Letter::Y, Letter::Z] {
        let p = pauli_matrix::<f64>(letter);
        for (negative, s) in [(false, 1.0), (true, -1.0)] {
            let matches = m
                .iter()
                .flatten()
                .zip(p.iter().flatten())
                .all(|(a, b)| (a - b * Complex::new(s, 0.0)).norm() < 1e-9);
            if matches {
                return SignedLetter { negative, letter };
            }
        }
    }
    panic!("conjugated Pauli is not a signed Pauli: {m:?}");
}

#[inline]
fn letter_index(l: Letter) -> usize {
    match l {
        Letter::X => 0,
        Letter::Y => 1,
        Letter::Z => 2,
        Letter::I => unreachable!(),
    }
}

/// Unsigned symplectic action of a table row: `(X ↦ (x,z), Z ↦ (x,z))`.
pub(crate) fn symplectic_action(row: usize) -> [(bool, bool); 2] {
    let t = &TABLE[row];
    [t[0].letter.bits(), t[2].letter.bits()]
}

/// `p ← g p g†` in place.
#[inline]
pub(crate) fn conjugate_in_place(gate: &CliffordGate, p: &mut PauliString) {
    if let Some(row) = gate.table_index() {
        let (q, _) = gate.qubits();
        let letter = p.letter(q);
        if letter == Letter::I {
            return;
        }
        let image = TABLE[row][letter_index(letter)];
        p.set_letter(q, image.letter);
        if image.negative {
            p.negate();
        }
        return;
    }
    match *gate {
        CliffordGate::Cx { control, target } => {
            let negative = p.is_negative();
            let (x, z) = p.masks_mut();
            let (xc, zc, xt, zt) = (x.get(control), z.get(control), x.get(target), z.get(target));
            if xc {
                x.flip(target);
            }
            if zt {
                z.flip(control);
            }
            let flip = xc && zt && !(xt ^ zc);
            p.set_negative(negative ^ flip);
        }
        CliffordGate::Swap(a, b) => {
            let (la, lb) = (p.letter(a), p.letter(b));
            p.set_letter(a, lb);
            p.set_letter(b, la);
        }
        _ => unreachable!("single-qubit gates use the table"),
    }
}
