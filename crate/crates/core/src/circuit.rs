//! Circuit programs shared by the stabilizer and dense simulators.
//!
//! Text format, one op per line (`#` comments allowed):
//!
//! ```text
//! RY 0 1.5707963267948966
//! CX 0 1
//! DEPOLARIZE2 0 1 0.01
//! READOUT_FLIP 1 0.02
//! MEASURE 1
//! ```

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::path::Path;

use crate::clifford::{CliffordGate, QuarterTurns};
use crate::error::{io_error, Error, Result};

/// Angles within this distance of a multiple of π/2 count as Clifford.
pub const CLIFFORD_ANGLE_TOLERANCE: f64 = 1e-9;

/// Unitary gate with optional rotation angle (radians).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    H(usize),
    S(usize),
    Sdg(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Rx(usize, f64),
    Ry(usize, f64),
    Rz(usize, f64),
    Cx { control: usize, target: usize },
    Swap(usize, usize),
}

/// Gate family, used to key durations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    H,
    S,
    Sdg,
    X,
    Y,
    Z,
    Rx,
    Ry,
    Rz,
    Cx,
    Swap,
}

impl GateKind {
    pub const ALL: [GateKind; 11] = [
        GateKind::H,
        GateKind::S,
        GateKind::Sdg,
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::Rx,
        GateKind::Ry,
        GateKind::Rz,
        GateKind::Cx,
        GateKind::Swap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::Sdg => "SDG",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::Rx => "RX",
            GateKind::Ry => "RY",
            GateKind::Rz => "RZ",
            GateKind::Cx => "CX",
            GateKind::Swap => "SWAP",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        let upper = name.to_ascii_uppercase();
        let upper = match upper.as_str() {
            "S_DAG" | "SDAG" => "SDG",
            "CNOT" => "CX",
            other => other,
        };
        GateKind::ALL.into_iter().find(|k| k.name() == upper)
    }

    pub fn is_two_qubit(self) -> bool {
        matches!(self, GateKind::Cx | GateKind::Swap)
    }

    pub fn is_rotation(self) -> bool {
        matches!(self, GateKind::Rx | GateKind::Ry | GateKind::Rz)
    }
}

impl Gate {
    pub fn kind(&self) -> GateKind {
        match self {
            Gate::H(_) => GateKind::H,
            Gate::S(_) => GateKind::S,
            Gate::Sdg(_) => GateKind::Sdg,
            Gate::X(_) => GateKind::X,
            Gate::Y(_) => GateKind::Y,
            Gate::Z(_) => GateKind::Z,
            Gate::Rx(..) => GateKind::Rx,
            Gate::Ry(..) => GateKind::Ry,
            Gate::Rz(..) => GateKind::Rz,
            Gate::Cx { .. } => GateKind::Cx,
            Gate::Swap(..) => GateKind::Swap,
        }
    }

    /// Qubits acted on; the second entry is `None` for single-qubit gates.
    pub fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) => (q, None),
            Gate::Rx(q, _) | Gate::Ry(q, _) | Gate::Rz(q, _) => (q, None),
            Gate::Cx { control, target } => (control, Some(target)),
            Gate::Swap(a, b) => (a, Some(b)),
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            Gate::Rx(_, a) | Gate::Ry(_, a) | Gate::Rz(_, a) => Some(a),
            _ => None,
        }
    }

    /// Builds a gate from its kind, qubits and (for rotations) angle.
    pub fn from_parts(kind: GateKind, qubits: &[usize], angle: Option<f64>) -> Result<Gate> {
        let arity = if kind.is_two_qubit() { 2 } else { 1 };
        if qubits.len() != arity {
            return Err(Error::InvalidInput(format!("{} takes {arity} qubit(s)", kind.name())));
        }
        if kind.is_rotation() != angle.is_some() {
            return Err(Error::InvalidInput(format!("{}: angle given iff gate is a rotation", kind.name())));
        }
        let q = qubits[0];
        let a = angle.unwrap_or(0.0);
        Ok(match kind {
            GateKind::H => Gate::H(q),
            GateKind::S => Gate::S(q),
            GateKind::Sdg => Gate::Sdg(q),
            GateKind::X => Gate::X(q),
            GateKind::Y => Gate::Y(q),
            GateKind::Z => Gate::Z(q),
            GateKind::Rx => Gate::Rx(q, a),
            GateKind::Ry => Gate::Ry(q, a),
            GateKind::Rz => Gate::Rz(q, a),
            GateKind::Cx => Gate::Cx { control: q, target: qubits[1] },
            GateKind::Swap => Gate::Swap(q, qubits[1]),
        })
    }

    /// Clifford form; rotations must sit at multiples of π/2.
    pub fn to_clifford(&self) -> Result<CliffordGate> {
        let steps = |angle: f64| -> Result<QuarterTurns> {
            let turns = angle / FRAC_PI_2;
            let rounded = turns.round();
            if !angle.is_finite() || (turns - rounded).abs() * FRAC_PI_2 > CLIFFORD_ANGLE_TOLERANCE {
                return Err(Error::NonClifford { angle });
            }
            Ok(QuarterTurns::wrapping(rounded as i64))
        };
        Ok(match *self {
            Gate::H(q) => CliffordGate::H(q),
            Gate::S(q) => CliffordGate::S(q),
            Gate::Sdg(q) => CliffordGate::Sdg(q),
            Gate::X(q) => CliffordGate::X(q),
            Gate::Y(q) => CliffordGate::Y(q),
            Gate::Z(q) => CliffordGate::Z(q),
            Gate::Rx(q, a) => CliffordGate::Rx(q, steps(a)?),
            Gate::Ry(q, a) => CliffordGate::Ry(q, steps(a)?),
            Gate::Rz(q, a) => CliffordGate::Rz(q, steps(a)?),
            Gate::Cx { control, target } => CliffordGate::Cx { control, target },
            Gate::Swap(a, b) => CliffordGate::Swap(a, b),
        })
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.qubits();
        write!(f, "{} {a}", self.kind().name())?;
        if let Some(b) = b {
            write!(f, " {b}")?;
        }
        if let Some(angle) = self.angle() {
            write!(f, " {angle}")?;
        }
        Ok(())
    }
}

/// One instruction of a circuit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Op {
    Gate(Gate),
    /// X, Y or Z with probability `p/3` each.
    Depolarize1 { qubit: usize, p: f64 },
    /// One of the 15 non-identity two-qubit Paulis with probability `p/15` each.
    Depolarize2 { a: usize, b: usize, p: f64 },
    /// Classical bit flip of the readout, modeled as an X error before measurement.
    ReadoutFlip { qubit: usize, p: f64 },
    Measure { qubit: usize },
}

impl Op {
    pub fn is_channel(&self) -> bool {
        matches!(self, Op::Depolarize1 { .. } | Op::Depolarize2 { .. } | Op::ReadoutFlip { .. })
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Op::Gate(g) => write!(f, "{g}"),
            Op::Depolarize1 { qubit, p } => write!(f, "DEPOLARIZE1 {qubit} {p}"),
            Op::Depolarize2 { a, b, p } => write!(f, "DEPOLARIZE2 {a} {b} {p}"),
            Op::ReadoutFlip { qubit, p } => write!(f, "READOUT_FLIP {qubit} {p}"),
            Op::Measure { qubit } => write!(f, "MEASURE {qubit}"),
        }
    }
}

/// Ordered op list over a fixed number of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    ops: Vec<Op>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit { n_qubits, ops: Vec::new() }
    }

    pub fn from_ops(n_qubits: usize, ops: impl IntoIterator<Item = Op>) -> Result<Self> {
        let mut c = Circuit::new(n_qubits);
        for op in ops {
            c.push(op)?;
        }
        Ok(c)
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    pub fn gates(&self) -> impl Iterator<Item = &Gate> {
        self.ops.iter().filter_map(|op| match op {
            Op::Gate(g) => Some(g),
            _ => None,
        })
    }

    pub fn gate_count(&self) -> usize {
        self.gates().count()
    }

    pub fn channel_count(&self) -> usize {
        self.ops.iter().filter(|op| op.is_channel()).count()
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n_qubits {
            return Err(Error::QubitOutOfRange { qubit: q, n_qubits: self.n_qubits });
        }
        Ok(())
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<()> {
        self.check_qubit(a)?;
        self.check_qubit(b)?;
        if a == b {
            return Err(Error::RepeatedQubit(a));
        }
        Ok(())
    }

    fn check_probability(p: f64) -> Result<()> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Probability(p));
        }
        Ok(())
    }

    /// Appends an op after validating indices, probabilities and the
    /// gates-before-measurements ordering.
    pub fn push(&mut self, op: Op) -> Result<()> {
        match op {
            Op::Gate(g) => {
                match g.qubits() {
                    (a, Some(b)) => self.check_pair(a, b)?,
                    (a, None) => self.check_qubit(a)?,
                }
                if let Some(angle) = g.angle() {
                    if !angle.is_finite() {
                        return Err(Error::InvalidInput(format!("non-finite angle in {g}")));
                    }
                }
                if self.ops.iter().any(|o| matches!(o, Op::Measure { .. })) {
                    return Err(Error::GateAfterMeasure(self.ops.len()));
                }
            }
            Op::Depolarize1 { qubit, p } | Op::ReadoutFlip { qubit, p } => {
                self.check_qubit(qubit)?;
                Self::check_probability(p)?;
            }
            Op::Depolarize2 { a, b, p } => {
                self.check_pair(a, b)?;
                Self::check_probability(p)?;
            }
            Op::Measure { qubit } => self.check_qubit(qubit)?,
        }
        self.ops.push(op);
        Ok(())
    }

    pub fn push_gate(&mut self, gate: Gate) -> Result<()> {
        self.push(Op::Gate(gate))
    }

    /// Same circuit with every noise channel removed.
    pub fn noiseless(&self) -> Circuit {
        Circuit { n_qubits: self.n_qubits, ops: self.ops.iter().copied().filter(|op| !op.is_channel()).collect() }
    }

    /// Clifford gate list (channels and measurements are skipped).
    pub fn clifford_gates(&self) -> Result<Vec<CliffordGate>> {
        self.gates().map(Gate::to_clifford).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# qubits {}\n", self.n_qubits);
        for op in &self.ops {
            out.push_str(&op.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the circuit text format. The qubit count is taken from a
    /// `# qubits N` header when present, else from `n_qubits`, else from the
    /// largest index used.
    pub fn from_text(text: &str, n_qubits: Option<usize>, origin: &str) -> Result<Circuit> {
        let err = |line: usize, message: String| Error::Parse { path: origin.to_string(), line, message };
        let mut header_n = None;
        let mut parsed: Vec<(usize, Op)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let trimmed = raw.trim();
            if let Some(rest) = trimmed.strip_prefix('#') {
                let mut words = rest.split_whitespace();
                if words.next() == Some("qubits") {
                    header_n = words.next().and_then(|w| w.parse().ok());
                }
                continue;
            }
            let line = trimmed.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let name = fields[0].to_ascii_uppercase();
            let ints = |k: usize| -> Result<Vec<usize>> {
                if fields.len() < 1 + k {
                    return Err(err(line_no, format!("{name} needs {k} qubit index(es)")));
                }
                fields[1..=k]
                    .iter()
                    .map(|f| f.parse::<usize>().map_err(|_| err(line_no, format!("bad qubit index {f:?}"))))
                    .collect()
            };
            let real = |i: usize| -> Result<f64> {
                let f = fields.get(i).ok_or_else(|| err(line_no, format!("{name} needs a numeric argument")))?;
                f.parse::<f64>().map_err(|_| err(line_no, format!("bad number {f:?}")))
            };
            let arity = |expected: usize| -> Result<()> {
                if fields.len() != expected {
                    return Err(err(line_no, format!("{name} takes {} argument(s)", expected - 1)));
                }
                Ok(())
            };
            let op = match name.as_str() {
                "DEPOLARIZE1" => {
                    arity(3)?;
                    Op::Depolarize1 { qubit: ints(1)?[0], p: real(2)? }
                }
                "DEPOLARIZE2" => {
                    arity(4)?;
                    let q = ints(2)?;
                    Op::Depolarize2 { a: q[0], b: q[1], p: real(3)? }
                }
                "READOUT_FLIP" => {
                    arity(3)?;
                    Op::ReadoutFlip { qubit: ints(1)?[0], p: real(2)? }
                }
                "MEASURE" | "M" => {
                    arity(2)?;
                    Op::Measure { qubit: ints(1)?[0] }
                }
                other => {
                    let kind =
                        GateKind::from_name(other).ok_or_else(|| err(line_no, format!("unknown op {other:?}")))?;
                    let k = if kind.is_two_qubit() { 2 } else { 1 };
                    let has_angle = kind.is_rotation();
                    arity(1 + k + usize::from(has_angle))?;
                    let qubits = ints(k)?;
                    let angle = if has_angle { Some(real(1 + k)?) } else { None };
                    Op::Gate(Gate::from_parts(kind, &qubits, angle).map_err(|e| err(line_no, e.to_string()))?)
                }
            };
            parsed.push((line_no, op));
        }
        let max_index = parsed
            .iter()
            .flat_map(|(_, op)| match *op {
                Op::Gate(g) => {
                    let (a, b) = g.qubits();
                    vec![a, b.unwrap_or(a)]
                }
                Op::Depolarize1 { qubit, .. } | Op::ReadoutFlip { qubit, .. } | Op::Measure { qubit } => vec![qubit],
                Op::Depolarize2 { a, b, .. } => vec![a, b],
            })
            .max();
        let n = header_n.or(n_qubits).or(max_index.map(|m| m + 1)).ok_or_else(|| err(0, "empty circuit".into()))?;
        let mut circuit = Circuit::new(n);
        for (line_no, op) in parsed {
            circuit.push(op).map_err(|e| err(line_no, e.to_string()))?;
        }
        Ok(circuit)
    }

    pub fn read(path: impl AsRef<Path>, n_qubits: Option<usize>) -> Result<Circuit> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
        Self::from_text(&text, n_qubits, &path.display().to_string())
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_text()).map_err(|e| io_error(path, e))
    }
}
