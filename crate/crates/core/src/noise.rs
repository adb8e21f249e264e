//! Noise model, its text format, and noise insertion into circuits.
//!
//! ```text
//! # synthetic device
//! default
//!   p1 1e-3
//!   p2 1e-2
//!   p_meas 2e-2
//!   t1 100e-6
//! qubit 3
//!   p_meas 5e-2
//! pair 0 1
//!   p2 2e-2
//! duration CX 3e-7
//! duration MEASURE 7e-7
//! ```
//!
//! `qubit` blocks accept `p1`, `p_meas` and `t1`; `pair` blocks accept `p2`.
//! A pair entry applies to both orientations unless the reversed pair has its
//! own entry.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::circuit::{Circuit, Gate, GateKind, Op};
use crate::error::{io_error, Error, Result};
use crate::pauli::{Letter, PauliString};

pub const DEFAULT_SINGLE_QUBIT_DURATION: f64 = 35e-9;
pub const DEFAULT_TWO_QUBIT_DURATION: f64 = 300e-9;
pub const DEFAULT_MEASURE_DURATION: f64 = 700e-9;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct QubitEntry {
    p1: Option<f64>,
    p_meas: Option<f64>,
    t1: Option<f64>,
}

/// Per-qubit and per-pair error rates, relaxation times and op durations.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseModel {
    default: QubitEntry,
    default_p2: Option<f64>,
    qubits: BTreeMap<usize, QubitEntry>,
    pairs: BTreeMap<(usize, usize), f64>,
    durations: BTreeMap<GateKind, f64>,
    measure_duration: f64,
}

impl Default for NoiseModel {
    fn default() -> Self {
        Self::noiseless()
    }
}

fn check_probability(p: f64, what: &str) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidNoise(format!("{what} = {p} outside [0, 1]")));
    }
    Ok(p)
}

fn check_t1(t1: f64, what: &str) -> Result<f64> {
    if t1.is_nan() || t1 <= 0.0 {
        return Err(Error::InvalidNoise(format!("{what} = {t1} must be positive")));
    }
    Ok(t1)
}

impl NoiseModel {
    /// Model with no declared entries; every lookup fails until defaults or
    /// overrides are set.
    pub fn empty() -> Self {
        NoiseModel {
            default: QubitEntry::default(),
            default_p2: None,
            qubits: BTreeMap::new(),
            pairs: BTreeMap::new(),
            durations: BTreeMap::new(),
            measure_duration: DEFAULT_MEASURE_DURATION,
        }
    }

    /// Same global rates on every qubit and pair.
    pub fn uniform(p1: f64, p2: f64, p_meas: f64, t1: f64) -> Result<Self> {
        let mut m = Self::empty();
        m.default = QubitEntry {
            p1: Some(check_probability(p1, "p1")?),
            p_meas: Some(check_probability(p_meas, "p_meas")?),
            t1: Some(check_t1(t1, "t1")?),
        };
        m.default_p2 = Some(check_probability(p2, "p2")?);
        Ok(m)
    }

    /// All error rates zero and infinite relaxation time.
    pub fn noiseless() -> Self {
        Self::uniform(0.0, 0.0, 0.0, f64::INFINITY).expect("valid constants")
    }

    pub fn with_qubit_p1(mut self, qubit: usize, p1: f64) -> Result<Self> {
        self.qubits.entry(qubit).or_default().p1 = Some(check_probability(p1, "p1")?);
        Ok(self)
    }

    pub fn with_qubit_p_meas(mut self, qubit: usize, p_meas: f64) -> Result<Self> {
        self.qubits.entry(qubit).or_default().p_meas = Some(check_probability(p_meas, "p_meas")?);
        Ok(self)
    }

    pub fn with_qubit_t1(mut self, qubit: usize, t1: f64) -> Result<Self> {
        self.qubits.entry(qubit).or_default().t1 = Some(check_t1(t1, "t1")?);
        Ok(self)
    }

    pub fn with_pair_p2(mut self, a: usize, b: usize, p2: f64) -> Result<Self> {
        if a == b {
            return Err(Error::RepeatedQubit(a));
        }
        self.pairs.insert((a, b), check_probability(p2, "p2")?);
        Ok(self)
    }

    pub fn with_duration(mut self, kind: GateKind, seconds: f64) -> Result<Self> {
        if !(seconds >= 0.0 && seconds.is_finite()) {
            return Err(Error::InvalidNoise(format!("duration of {} = {seconds}", kind.name())));
        }
        self.durations.insert(kind, seconds);
        Ok(self)
    }

    pub fn with_measure_duration(mut self, seconds: f64) -> Result<Self> {
        if !(seconds >= 0.0 && seconds.is_finite()) {
            return Err(Error::InvalidNoise(format!("measurement duration = {seconds}")));
        }
        self.measure_duration = seconds;
        Ok(self)
    }

    fn lookup(&self, qubit: usize, field: &'static str, get: fn(&QubitEntry) -> Option<f64>) -> Result<f64> {
        self.qubits
            .get(&qubit)
            .and_then(get)
            .or_else(|| get(&self.default))
            .ok_or_else(|| Error::MissingNoise { field, target: format!("qubit {qubit}") })
    }

    pub fn p1(&self, qubit: usize) -> Result<f64> {
        self.lookup(qubit, "p1", |e| e.p1)
    }

    pub fn p_meas(&self, qubit: usize) -> Result<f64> {
        self.lookup(qubit, "p_meas", |e| e.p_meas)
    }

    pub fn t1(&self, qubit: usize) -> Result<f64> {
        self.lookup(qubit, "t1", |e| e.t1)
    }

    /// Two-qubit rate: exact ordered pair, then the reversed pair, then the default.
    pub fn p2(&self, a: usize, b: usize) -> Result<f64> {
        self.pairs
            .get(&(a, b))
            .or_else(|| self.pairs.get(&(b, a)))
            .copied()
            .or(self.default_p2)
            .ok_or_else(|| Error::MissingNoise { field: "p2", target: format!("pair {a} {b}") })
    }

    pub fn gate_duration(&self, kind: GateKind) -> f64 {
        self.durations.get(&kind).copied().unwrap_or(if kind.is_two_qubit() {
            DEFAULT_TWO_QUBIT_DURATION
        } else {
            DEFAULT_SINGLE_QUBIT_DURATION
        })
    }

    pub fn measure_duration(&self) -> f64 {
        self.measure_duration
    }

    /// Duration of an op; channels take no time.
    pub fn op_duration(&self, op: &Op) -> f64 {
        match op {
            Op::Gate(g) => self.gate_duration(g.kind()),
            Op::Measure { .. } => self.measure_duration,
            _ => 0.0,
        }
    }

    /// Copy with every gate and readout rate multiplied by `factor`, clamped to 1.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor >= 0.0 && factor.is_finite()) {
            return Err(Error::InvalidNoise(format!("scale factor {factor}")));
        }
        let s = |p: Option<f64>| p.map(|p| (p * factor).min(1.0));
        let mut m = self.clone();
        for e in std::iter::once(&mut m.default).chain(m.qubits.values_mut()) {
            e.p1 = s(e.p1);
            e.p_meas = s(e.p_meas);
        }
        m.default_p2 = s(m.default_p2);
        for p in m.pairs.values_mut() {
            *p = (*p * factor).min(1.0);
        }
        Ok(m)
    }

    /// Checks that every rate a circuit on `n_qubits` with the given
    /// two-qubit pairs would need is available.
    pub fn check_covers(&self, n_qubits: usize, pairs: &[(usize, usize)]) -> Result<()> {
        for q in 0..n_qubits {
            self.p1(q)?;
            self.p_meas(q)?;
            self.t1(q)?;
        }
        for &(a, b) in pairs {
            self.p2(a, b)?;
        }
        Ok(())
    }

    pub fn from_text(text: &str, origin: &str) -> Result<Self> {
        enum Block {
            None,
            Default,
            Qubit(usize),
            Pair(usize, usize),
        }
        let err = |line: usize, message: String| Error::Parse { path: origin.to_string(), line, message };
        let mut m = Self::empty();
        let mut block = Block::None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let index = |s: &str| s.parse::<usize>().map_err(|_| err(line_no, format!("bad qubit index {s:?}")));
            let number = |s: &str| s.parse::<f64>().map_err(|_| err(line_no, format!("bad number {s:?}")));
            let wrap = |path: String, e: Error| err(line_no, format!("{path}: {e}"));
            match fields.as_slice() {
                ["default"] => block = Block::Default,
                ["qubit", k] => block = Block::Qubit(index(k)?),
                ["pair", a, b] => {
                    let (a, b) = (index(a)?, index(b)?);
                    if a == b {
                        return Err(err(line_no, format!("pair {a} {b} repeats a qubit")));
                    }
                    block = Block::Pair(a, b);
                }
                ["duration", gate, seconds] => {
                    let seconds = number(seconds)?;
                    let upper = gate.to_ascii_uppercase();
                    m = if upper == "MEASURE" || upper == "M" {
                        m.with_measure_duration(seconds)
                    } else {
                        let kind = GateKind::from_name(&upper)
                            .ok_or_else(|| err(line_no, format!("unknown gate {gate:?} in duration")))?;
                        m.with_duration(kind, seconds)
                    }
                    .map_err(|e| wrap(format!("duration.{gate}"), e))?;
                }
                [key, value] => {
                    let v = number(value)?;
                    m = match (&block, *key) {
                        (Block::Default, "p1") => {
                            m.default.p1 = Some(check_probability(v, "p1").map_err(|e| wrap("default.p1".into(), e))?);
                            m
                        }
                        (Block::Default, "p2") => {
                            m.default_p2 =
                                Some(check_probability(v, "p2").map_err(|e| wrap("default.p2".into(), e))?);
                            m
                        }
                        (Block::Default, "p_meas") => {
                            m.default.p_meas =
                                Some(check_probability(v, "p_meas").map_err(|e| wrap("default.p_meas".into(), e))?);
                            m
                        }
                        (Block::Default, "t1") => {
                            m.default.t1 = Some(check_t1(v, "t1").map_err(|e| wrap("default.t1".into(), e))?);
                            m
                        }
                        (Block::Qubit(q), "p1") => m.with_qubit_p1(*q, v).map_err(|e| wrap(format!("qubit {q}.p1"), e))?,
                        (Block::Qubit(q), "p_meas") => {
                            m.with_qubit_p_meas(*q, v).map_err(|e| wrap(format!("qubit {q}.p_meas"), e))?
                        }
                        (Block::Qubit(q), "t1") => m.with_qubit_t1(*q, v).map_err(|e| wrap(format!("qubit {q}.t1"), e))?,
                        (Block::Pair(a, b), "p2") => {
                            m.with_pair_p2(*a, *b, v).map_err(|e| wrap(format!("pair {a} {b}.p2"), e))?
                        }
                        (Block::None, k) => return Err(err(line_no, format!("key {k:?} outside a block"))),
                        (_, k) => return Err(err(line_no, format!("key {k:?} not allowed in this block"))),
                    };
                }
                _ => return Err(err(line_no, format!("unrecognized line {line:?}"))),
            }
        }
        Ok(m)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let entry = |out: &mut String, e: &QubitEntry| {
            for (k, v) in [("p1", e.p1), ("p_meas", e.p_meas), ("t1", e.t1)] {
                if let Some(v) = v {
                    let _ = writeln!(out, "  {k} {v:e}");
                }
            }
        };
        out.push_str("default\n");
        entry(&mut out, &self.default);
        if let Some(p2) = self.default_p2 {
            let _ = writeln!(out, "  p2 {p2:e}");
        }
        for (q, e) in &self.qubits {
            let _ = writeln!(out, "qubit {q}");
            entry(&mut out, e);
        }
        for ((a, b), p2) in &self.pairs {
            let _ = writeln!(out, "pair {a} {b}\n  p2 {p2:e}");
        }
        for (kind, d) in &self.durations {
            let _ = writeln!(out, "duration {} {d:e}", kind.name());
        }
        let _ = writeln!(out, "duration MEASURE {:e}", self.measure_duration);
        out
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
        Self::from_text(&text, &path.display().to_string())
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_text()).map_err(|e| io_error(path, e))
    }
}

fn gate_channel(gate: &Gate, nm: &NoiseModel) -> Result<Op> {
    Ok(match gate.qubits() {
        (q, None) => Op::Depolarize1 { qubit: q, p: nm.p1(q)? },
        (a, Some(b)) => Op::Depolarize2 { a, b, p: nm.p2(a, b)? },
    })
}

/// Inserts a depolarizing channel after every gate (one channel per gate,
/// including zero-probability ones).
pub fn apply_gate_noise(c: &Circuit, nm: &NoiseModel) -> Result<Circuit> {
    let mut out = Circuit::new(c.n_qubits());
    for op in c.ops() {
        out.push(*op)?;
        if let Op::Gate(g) = op {
            out.push(gate_channel(g, nm)?)?;
        }
    }
    Ok(out)
}

/// Basis-change gates that map a measurement of `letter` onto a Z measurement.
pub fn basis_change(letter: Letter) -> &'static [fn(usize) -> Gate] {
    match letter {
        Letter::X => &[Gate::H],
        Letter::Y => &[Gate::Sdg, Gate::H],
        Letter::Z | Letter::I => &[],
    }
}

/// Appends noisy basis changes, readout flips and measurements for `observable`.
pub fn append_measurement(c: &Circuit, observable: &PauliString, nm: &NoiseModel) -> Result<Circuit> {
    if observable.n_qubits() != c.n_qubits() {
        return Err(Error::WidthMismatch { left: c.n_qubits(), right: observable.n_qubits() });
    }
    let mut out = c.clone();
    for q in observable.support() {
        for make in basis_change(observable.letter(q)) {
            let g = make(q);
            out.push_gate(g)?;
            out.push(gate_channel(&g, nm)?)?;
        }
    }
    for q in observable.support() {
        out.push(Op::ReadoutFlip { qubit: q, p: nm.p_meas(q)? })?;
        out.push(Op::Measure { qubit: q })?;
    }
    Ok(out)
}
