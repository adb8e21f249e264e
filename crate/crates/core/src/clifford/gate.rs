use std::f64::consts::FRAC_PI_2;
use std::fmt;

use crate::circuit::Gate;
use crate::error::{Error, Result};

/// Rotation angle restricted to `step · π/2`, `step ∈ {0,1,2,3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QuarterTurns(u8);

impl QuarterTurns {
    pub fn new(step: u8) -> Result<Self> {
        if step > 3 {
            return Err(Error::ParamRange { index: 0, value: step as usize, limit: 4 });
        }
        Ok(QuarterTurns(step))
    }

    /// Reduces any integer step count mod 4.
    pub fn wrapping(step: i64) -> Self {
        QuarterTurns(step.rem_euclid(4) as u8)
    }

    #[inline]
    pub fn step(self) -> u8 {
        self.0
    }

    pub fn inverse(self) -> Self {
        QuarterTurns((4 - self.0) % 4)
    }

    pub fn radians(self) -> f64 {
        self.0 as f64 * FRAC_PI_2
    }
}

/// Gate whose conjugation action maps Pauli strings to signed Pauli strings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CliffordGate {
    H(usize),
    S(usize),
    Sdg(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Rx(usize, QuarterTurns),
    Ry(usize, QuarterTurns),
    Rz(usize, QuarterTurns),
    Cx { control: usize, target: usize },
    Swap(usize, usize),
}

impl CliffordGate {
    pub fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            CliffordGate::H(q)
            | CliffordGate::S(q)
            | CliffordGate::Sdg(q)
            | CliffordGate::X(q)
            | CliffordGate::Y(q)
            | CliffordGate::Z(q)
            | CliffordGate::Rx(q, _)
            | CliffordGate::Ry(q, _)
            | CliffordGate::Rz(q, _) => (q, None),
            CliffordGate::Cx { control, target } => (control, Some(target)),
            CliffordGate::Swap(a, b) => (a, Some(b)),
        }
    }

    /// Gate `g⁻¹` with `g⁻¹ g = I`.
    pub fn inverse(&self) -> CliffordGate {
        match *self {
            CliffordGate::S(q) => CliffordGate::Sdg(q),
            CliffordGate::Sdg(q) => CliffordGate::S(q),
            CliffordGate::Rx(q, t) => CliffordGate::Rx(q, t.inverse()),
            CliffordGate::Ry(q, t) => CliffordGate::Ry(q, t.inverse()),
            CliffordGate::Rz(q, t) => CliffordGate::Rz(q, t.inverse()),
            other => other,
        }
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let (a, b) = self.qubits();
        for q in std::iter::once(a).chain(b) {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange { qubit: q, n_qubits });
            }
        }
        if b == Some(a) {
            return Err(Error::RepeatedQubit(a));
        }
        Ok(())
    }

    /// Equivalent circuit gate (rotation angles in radians).
    pub fn to_gate(&self) -> Gate {
        match *self {
            CliffordGate::H(q) => Gate::H(q),
            CliffordGate::S(q) => Gate::S(q),
            CliffordGate::Sdg(q) => Gate::Sdg(q),
            CliffordGate::X(q) => Gate::X(q),
            CliffordGate::Y(q) => Gate::Y(q),
            CliffordGate::Z(q) => Gate::Z(q),
            CliffordGate::Rx(q, t) => Gate::Rx(q, t.radians()),
            CliffordGate::Ry(q, t) => Gate::Ry(q, t.radians()),
            CliffordGate::Rz(q, t) => Gate::Rz(q, t.radians()),
            CliffordGate::Cx { control, target } => Gate::Cx { control, target },
            CliffordGate::Swap(a, b) => Gate::Swap(a, b),
        }
    }

    /// Row of the single-qubit conjugation table, `None` for two-qubit gates.
    pub(crate) fn table_index(&self) -> Option<usize> {
        Some(match *self {
            CliffordGate::H(_) => 0,
            CliffordGate::S(_) => 1,
            CliffordGate::Sdg(_) => 2,
            CliffordGate::X(_) => 3,
            CliffordGate::Y(_) => 4,
            CliffordGate::Z(_) => 5,
            CliffordGate::Rx(_, t) => 6 + t.step() as usize,
            CliffordGate::Ry(_, t) => 10 + t.step() as usize,
            CliffordGate::Rz(_, t) => 14 + t.step() as usize,
            CliffordGate::Cx { .. } | CliffordGate::Swap(..) => return None,
        })
    }

    /// Representative gate for a table row, acting on qubit 0.
    pub(crate) fn from_table_index(index: usize) -> CliffordGate {
        let t = |k: usize| QuarterTurns((k % 4) as u8);
        match index {
            0 => CliffordGate::H(0),
            1 => CliffordGate::S(0),
            2 => CliffordGate::Sdg(0),
            3 => CliffordGate::X(0),
            4 => CliffordGate::Y(0),
            5 => CliffordGate::Z(0),
            6..=9 => CliffordGate::Rx(0, t(index - 6)),
            10..=13 => CliffordGate::Ry(0, t(index - 10)),
            14..=17 => CliffordGate::Rz(0, t(index - 14)),
            _ => panic!("table index {index} out of range"),
        }
    }
}

impl fmt::Display for CliffordGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_gate())
    }
}
