//! Hardware-efficient VQE ansatz `A(θ)` and the Clifford transformation
//! ansatz `C(γ)`.
//!
//! Both share one layered layout on `N` qubits:
//!
//! ```text
//! RY(·) on every qubit, RZ(·) on every qubit,
//! entangling slot on each pair (i, i+1 mod N),
//! RY(·) on every qubit, RZ(·) on every qubit
//! ```
//!
//! The VQE ansatz has `4N` angles and a fixed CX chain. The transformation
//! ansatz has `5N` genes: four Clifford-angle layers laid out as
//! `[RY | RZ | slots | RY | RZ]`, where each slot gene selects
//! `0 = I`, `1 = CX k→l`, `2 = CX l→k`, `3 = SWAP` on ring pair `(k, l)`.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use std::str::FromStr;

use crate::circuit::{Circuit, Gate};
use crate::clifford::{CliffordGate, QuarterTurns};
use crate::error::{Error, Result};

/// Connectivity of the entangling chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Topology {
    Line,
    #[default]
    Ring,
}

impl Topology {
    /// Ordered (control, target) pairs of the entangling chain.
    pub fn pairs(self, n_qubits: usize) -> Vec<(usize, usize)> {
        match self {
            _ if n_qubits < 2 => Vec::new(),
            Topology::Line => (0..n_qubits - 1).map(|i| (i, i + 1)).collect(),
            Topology::Ring => (0..n_qubits).map(|i| (i, (i + 1) % n_qubits)).collect(),
        }
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Topology::Line => "line",
            Topology::Ring => "ring",
        })
    }
}

impl FromStr for Topology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "line" => Ok(Topology::Line),
            "ring" => Ok(Topology::Ring),
            other => Err(Error::InvalidInput(format!("unknown topology {other:?}"))),
        }
    }
}

/// `4N` real rotation angles, stored reduced to `[0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzParams {
    theta: Vec<f64>,
}

impl AnsatzParams {
    pub fn new(n_qubits: usize, theta: Vec<f64>) -> Result<Self> {
        if theta.len() != 4 * n_qubits {
            return Err(Error::ParamLength { expected: 4 * n_qubits, found: theta.len() });
        }
        Self::from_angles(theta)
    }

    /// Angles for an arbitrary parameter count (custom ansatz templates).
    pub fn from_angles(theta: Vec<f64>) -> Result<Self> {
        if let Some(bad) = theta.iter().find(|a| !a.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite angle {bad}")));
        }
        Ok(AnsatzParams { theta: theta.into_iter().map(|a| a.rem_euclid(TAU)).collect() })
    }

    pub fn zeros(n_params: usize) -> Self {
        AnsatzParams { theta: vec![0.0; n_params] }
    }

    /// Clifford angles `step · π/2`.
    pub fn from_steps(steps: &[u8]) -> Result<Self> {
        let theta = steps
            .iter()
            .enumerate()
            .map(|(i, &s)| {
                if s > 3 {
                    return Err(Error::ParamRange { index: i, value: s as usize, limit: 4 });
                }
                Ok(s as f64 * FRAC_PI_2)
            })
            .collect::<Result<_>>()?;
        Ok(AnsatzParams { theta })
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    /// Whether every angle is a multiple of π/2.
    pub fn is_clifford(&self) -> bool {
        self.theta.iter().all(|&a| Gate::Ry(0, a).to_clifford().is_ok())
    }
}

/// `5N` discrete genes in `{0, 1, 2, 3}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransformParams {
    gamma: Vec<u8>,
}

impl TransformParams {
    pub fn new(n_qubits: usize, gamma: Vec<u8>) -> Result<Self> {
        if gamma.len() != 5 * n_qubits {
            return Err(Error::ParamLength { expected: 5 * n_qubits, found: gamma.len() });
        }
        if let Some((index, &value)) = gamma.iter().enumerate().find(|(_, &g)| g > 3) {
            return Err(Error::ParamRange { index, value: value as usize, limit: 4 });
        }
        Ok(TransformParams { gamma })
    }

    pub fn identity(n_qubits: usize) -> Self {
        TransformParams { gamma: vec![0; 5 * n_qubits] }
    }

    pub fn gamma(&self) -> &[u8] {
        &self.gamma
    }

    pub fn n_qubits(&self) -> usize {
        self.gamma.len() / 5
    }
}

/// Builds `A(θ)`; see the module docs for the layout.
pub fn build_vqe_ansatz(n_qubits: usize, theta: &AnsatzParams, topology: Topology) -> Result<Circuit> {
    if theta.len() != 4 * n_qubits {
        return Err(Error::ParamLength { expected: 4 * n_qubits, found: theta.len() });
    }
    let t = theta.theta();
    let n = n_qubits;
    let mut c = Circuit::new(n);
    let layer = |c: &mut Circuit, offset: usize, make: fn(usize, f64) -> Gate| -> Result<()> {
        (0..n).try_for_each(|q| c.push_gate(make(q, t[offset + q])))
    };
    layer(&mut c, 0, Gate::Ry)?;
    layer(&mut c, n, Gate::Rz)?;
    for (control, target) in topology.pairs(n) {
        c.push_gate(Gate::Cx { control, target })?;
    }
    layer(&mut c, 2 * n, Gate::Ry)?;
    layer(&mut c, 3 * n, Gate::Rz)?;
    Ok(c)
}

/// Builds the Clifford gate list of `C(γ)`. Slot pairs always follow the
/// ring; with a single qubit the slot gene is unused.
pub fn build_transform_circuit(n_qubits: usize, gamma: &TransformParams) -> Result<Vec<CliffordGate>> {
    if gamma.gamma.len() != 5 * n_qubits {
        return Err(Error::ParamLength { expected: 5 * n_qubits, found: gamma.gamma.len() });
    }
    Ok(transform_gates_unchecked(n_qubits, &gamma.gamma))
}

/// Layout of [`build_transform_circuit`] without validation; genes must be
/// `< 4` and `5N` long. Identity rotations and identity slots are omitted.
pub(crate) fn transform_gates_unchecked(n: usize, genes: &[u8]) -> Vec<CliffordGate> {
    let mut gates = Vec::with_capacity(5 * n);
    let rot = |gates: &mut Vec<CliffordGate>, offset: usize, make: fn(usize, QuarterTurns) -> CliffordGate| {
        for q in 0..n {
            let step = genes[offset + q];
            if step != 0 {
                gates.push(make(q, QuarterTurns::wrapping(step as i64)));
            }
        }
    };
    rot(&mut gates, 0, CliffordGate::Ry);
    rot(&mut gates, n, CliffordGate::Rz);
    for (slot, (k, l)) in Topology::Ring.pairs(n).into_iter().enumerate() {
        match genes[2 * n + slot] {
            1 => gates.push(CliffordGate::Cx { control: k, target: l }),
            2 => gates.push(CliffordGate::Cx { control: l, target: k }),
            3 => gates.push(CliffordGate::Swap(k, l)),
            _ => {}
        }
    }
    rot(&mut gates, 3 * n, CliffordGate::Ry);
    rot(&mut gates, 4 * n, CliffordGate::Rz);
    gates
}

/// Which VQE circuit family a run uses.
#[derive(Debug, Clone, PartialEq)]
pub enum AnsatzSpec {
    /// Layered hardware-efficient ansatz with `4N` parameters.
    Hardware { n_qubits: usize, topology: Topology },
    /// Pre-routed template circuit; each rotation gate is one parameter and
    /// its angle in the template is ignored.
    Custom(Circuit),
}

impl AnsatzSpec {
    pub fn hardware(n_qubits: usize, topology: Topology) -> Self {
        AnsatzSpec::Hardware { n_qubits, topology }
    }

    pub fn custom(template: Circuit) -> Result<Self> {
        if template.channel_count() > 0 || template.ops().len() != template.gate_count() {
            return Err(Error::InvalidInput("ansatz template must contain gates only".into()));
        }
        Ok(AnsatzSpec::Custom(template))
    }

    pub fn n_qubits(&self) -> usize {
        match self {
            AnsatzSpec::Hardware { n_qubits, .. } => *n_qubits,
            AnsatzSpec::Custom(c) => c.n_qubits(),
        }
    }

    pub fn n_params(&self) -> usize {
        match self {
            AnsatzSpec::Hardware { n_qubits, .. } => 4 * n_qubits,
            AnsatzSpec::Custom(c) => c.gates().filter(|g| g.angle().is_some()).count(),
        }
    }

    /// Two-qubit gate pairs used by the circuit (for noise coverage checks).
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        match self {
            AnsatzSpec::Hardware { n_qubits, topology } => topology.pairs(*n_qubits),
            AnsatzSpec::Custom(c) => c.gates().filter_map(|g| g.qubits().1.map(|b| (g.qubits().0, b))).collect(),
        }
    }

    pub fn build(&self, theta: &AnsatzParams) -> Result<Circuit> {
        match self {
            AnsatzSpec::Hardware { n_qubits, topology } => build_vqe_ansatz(*n_qubits, theta, *topology),
            AnsatzSpec::Custom(template) => {
                let expected = self.n_params();
                if theta.len() != expected {
                    return Err(Error::ParamLength { expected, found: theta.len() });
                }
                let mut angles = theta.theta().iter().copied();
                let mut c = Circuit::new(template.n_qubits());
                for g in template.gates() {
                    let g = match *g {
                        Gate::Rx(q, _) => Gate::Rx(q, angles.next().expect("counted")),
                        Gate::Ry(q, _) => Gate::Ry(q, angles.next().expect("counted")),
                        Gate::Rz(q, _) => Gate::Rz(q, angles.next().expect("counted")),
                        other => other,
                    };
                    c.push_gate(g)?;
                }
                Ok(c)
            }
        }
    }
}
