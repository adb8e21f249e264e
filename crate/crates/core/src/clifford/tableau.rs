use std::fmt;

use super::gate::CliffordGate;
use super::tables::conjugate_in_place;
use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliString, PhasedPauli};

/// Conjugation images `C X_k C†` and `C Z_k C†` of every generator.
///
/// A tableau built from gates `g_1, …, g_L` (applied in that order)
/// represents `C = g_L ⋯ g_1`.
#[derive(Clone, PartialEq, Eq)]
pub struct CliffordTableau {
    n_qubits: usize,
    x_images: Vec<PauliString>,
    z_images: Vec<PauliString>,
}

impl CliffordTableau {
    pub fn identity(n_qubits: usize) -> Self {
        CliffordTableau {
            n_qubits,
            x_images: (0..n_qubits).map(|k| PauliString::single(n_qubits, k, Letter::X)).collect(),
            z_images: (0..n_qubits).map(|k| PauliString::single(n_qubits, k, Letter::Z)).collect(),
        }
    }

    pub fn from_gates<'a>(gates: impl IntoIterator<Item = &'a CliffordGate>, n_qubits: usize) -> Result<Self> {
        let mut t = Self::identity(n_qubits);
        for g in gates {
            t.apply(g)?;
        }
        Ok(t)
    }

    /// Builds a tableau from explicit images, checking symplectic consistency.
    pub fn from_images(x_images: Vec<PauliString>, z_images: Vec<PauliString>) -> Result<Self> {
        let n_qubits = x_images.len();
        if z_images.len() != n_qubits {
            return Err(Error::WidthMismatch { left: n_qubits, right: z_images.len() });
        }
        for p in x_images.iter().chain(&z_images) {
            if p.n_qubits() != n_qubits {
                return Err(Error::WidthMismatch { left: n_qubits, right: p.n_qubits() });
            }
        }
        let t = CliffordTableau { n_qubits, x_images, z_images };
        if !t.is_symplectic() {
            return Err(Error::InvalidInput("generator images violate commutation relations".into()));
        }
        Ok(t)
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x_image(&self, k: usize) -> &PauliString {
        &self.x_images[k]
    }

    pub fn z_image(&self, k: usize) -> &PauliString {
        &self.z_images[k]
    }

    /// Appends a gate: the tableau afterwards represents `g C`.
    pub fn apply(&mut self, gate: &CliffordGate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        for p in self.x_images.iter_mut().chain(self.z_images.iter_mut()) {
            conjugate_in_place(gate, p);
        }
        Ok(())
    }

    /// `X_j` anticommutes with `Z_j` and every other image pair commutes.
    pub fn is_symplectic(&self) -> bool {
        let n = self.n_qubits;
        (0..n).all(|i| {
            (0..n).all(|j| {
                self.x_images[i].commutes_with(&self.x_images[j])
                    && self.z_images[i].commutes_with(&self.z_images[j])
                    && (self.x_images[i].commutes_with(&self.z_images[j]) == (i != j))
            })
        })
    }

    fn check_width(&self, p: &PauliString) -> Result<()> {
        if p.n_qubits() != self.n_qubits {
            return Err(Error::WidthMismatch { left: self.n_qubits, right: p.n_qubits() });
        }
        Ok(())
    }

    /// `C P C†`.
    pub fn conjugate(&self, p: &PauliString) -> Result<PauliString> {
        self.check_width(p)?;
        let mut acc = PhasedPauli::identity(self.n_qubits);
        acc.phase = if p.is_negative() { 2 } else { 0 };
        for k in p.support() {
            match p.letter(k) {
                Letter::X => acc.mul_assign(&self.x_images[k]),
                Letter::Z => acc.mul_assign(&self.z_images[k]),
                Letter::Y => {
                    // Y = i X Z
                    acc.phase = (acc.phase + 1) & 3;
                    acc.mul_assign(&self.x_images[k]);
                    acc.mul_assign(&self.z_images[k]);
                }
                Letter::I => {}
            }
        }
        acc.into_signed()
    }

    /// `C† P C`.
    pub fn anticonjugate(&self, p: &PauliString) -> Result<PauliString> {
        self.check_width(p)?;
        self.inverse().conjugate(p)
    }

    /// Tableau of `C†`, obtained from the commutation structure of the
    /// images (no gate history needed).
    pub fn inverse(&self) -> CliffordTableau {
        let n = self.n_qubits;
        // R = C† X_j C is fixed by its commutation with every generator:
        // R anticommutes with X_k  ⇔  X_j anticommutes with C X_k C†, etc.
        let preimage = |target: &PauliString| -> PauliString {
            let mut r = PauliString::identity(n);
            {
                let (x, z) = r.masks_mut();
                for k in 0..n {
                    if !target.commutes_with(&self.x_images[k]) {
                        z.set(k, true);
                    }
                    if !target.commutes_with(&self.z_images[k]) {
                        x.set(k, true);
                    }
                }
            }
            let image = self.conjugate(&r).expect("Hermitian image");
            debug_assert!(image.same_letters(target));
            if image.is_negative() != target.is_negative() {
                r.negate();
            }
            r
        };
        CliffordTableau {
            n_qubits: n,
            x_images: (0..n).map(|j| preimage(&PauliString::single(n, j, Letter::X))).collect(),
            z_images: (0..n).map(|j| preimage(&PauliString::single(n, j, Letter::Z))).collect(),
        }
    }

    /// Tableau of `other ∘ self`, i.e. apply `self` first, then `other`.
    pub fn then(&self, other: &CliffordTableau) -> Result<CliffordTableau> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::WidthMismatch { left: self.n_qubits, right: other.n_qubits });
        }
        let map = |v: &[PauliString]| v.iter().map(|p| other.conjugate(p)).collect::<Result<Vec<_>>>();
        Ok(CliffordTableau { n_qubits: self.n_qubits, x_images: map(&self.x_images)?, z_images: map(&self.z_images)? })
    }
}

impl fmt::Display for CliffordTableau {
    /// One `X0 -> +XI` style line per generator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.x_images.iter().enumerate() {
            writeln!(f, "X{k} -> {p}")?;
        }
        for (k, p) in self.z_images.iter().enumerate() {
            writeln!(f, "Z{k} -> {p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CliffordTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CliffordTableau {{\n{self}}}")
    }
}
