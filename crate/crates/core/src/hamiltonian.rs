//! Weighted Pauli sums and their text format.
//!
//! Text format: the first non-comment line holds the qubit count, each
//! following line holds `<coefficient> <letters>`. `#` starts a comment.
//!
//! ```text
//! # transverse-field Ising, N = 2
//! 2
//! 0.5 XX
//! 1 ZI
//! 1 IZ
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{io_error, Error, Result};
use crate::pauli::{BitMask, PauliString};
use crate::scalar::Real;

/// Merged terms whose coefficients sum to at most this magnitude are dropped.
pub const ZERO_COEFFICIENT: f64 = 1e-15;

/// `Σ c_i P_i` with real coefficients and unsigned, pairwise distinct strings.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum<T> {
    n_qubits: usize,
    terms: Vec<(T, PauliString)>,
}

impl<T: Real> PauliSum<T> {
    /// Builds a sum, folding string signs into coefficients and merging equal
    /// strings (first-occurrence order is kept).
    pub fn new(n_qubits: usize, terms: impl IntoIterator<Item = (T, PauliString)>) -> Result<Self> {
        let mut index: HashMap<(BitMask, BitMask), usize> = HashMap::new();
        let mut merged: Vec<(T, PauliString)> = Vec::new();
        for (c, p) in terms {
            if p.n_qubits() != n_qubits {
                return Err(Error::WidthMismatch { left: n_qubits, right: p.n_qubits() });
            }
            let c = if p.is_negative() { -c } else { c };
            let key = (p.x_mask().clone(), p.z_mask().clone());
            match index.get(&key) {
                Some(&i) => merged[i].0 += c,
                None => {
                    index.insert(key, merged.len());
                    merged.push((c, p.unsigned()));
                }
            }
        }
        let tol = T::of(ZERO_COEFFICIENT);
        merged.retain(|(c, _)| c.abs() > tol);
        Ok(PauliSum { n_qubits, terms: merged })
    }

    pub fn empty(n_qubits: usize) -> Self {
        PauliSum { n_qubits, terms: Vec::new() }
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn terms(&self) -> &[(T, PauliString)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the all-identity string (0 if absent).
    pub fn identity_coefficient(&self) -> T {
        self.terms.iter().find(|(_, p)| p.is_identity()).map(|(c, _)| *c).unwrap_or_else(T::zero)
    }

    /// `⟨0…0|H|0…0⟩`.
    pub fn zero_state_energy(&self) -> T {
        self.terms
            .iter()
            .map(|(c, p)| match p.zero_state_expectation() {
                0 => T::zero(),
                s => *c * T::of(s as f64),
            })
            .sum()
    }

    /// Sum of absolute coefficients; bounds every expectation value.
    pub fn one_norm(&self) -> T {
        self.terms.iter().map(|(c, _)| c.abs()).sum()
    }

    /// Converts the coefficients to another scalar type.
    pub fn cast<U: Real>(&self) -> PauliSum<U> {
        PauliSum {
            n_qubits: self.n_qubits,
            terms: self.terms.iter().map(|(c, p)| (U::of(c.to_f64().unwrap_or(f64::NAN)), p.clone())).collect(),
        }
    }

    /// Parses the text format. `origin` names the source in error messages.
    pub fn from_text(text: &str, origin: &str) -> Result<Self> {
        let parse_err =
            |line: usize, message: String| Error::Parse { path: origin.to_string(), line, message };
        let mut n_qubits = None;
        let mut terms = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some(n) = n_qubits else {
                let n: usize =
                    line.parse().map_err(|_| parse_err(line_no, format!("expected qubit count, got {line:?}")))?;
                if n == 0 {
                    return Err(parse_err(line_no, "qubit count must be positive".into()));
                }
                n_qubits = Some(n);
                continue;
            };
            let mut fields = line.split_whitespace();
            let (Some(coef), Some(letters), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(parse_err(line_no, format!("expected `<coefficient> <pauli>`, got {line:?}")));
            };
            let c: T = coef.parse().map_err(|_| parse_err(line_no, format!("bad coefficient {coef:?}")))?;
            if !c.is_finite() {
                return Err(parse_err(line_no, format!("non-finite coefficient {coef:?}")));
            }
            let p = PauliString::parse(letters, n).map_err(|e| parse_err(line_no, e.to_string()))?;
            terms.push((c, p));
        }
        let Some(n) = n_qubits else {
            return Err(Error::NoTerms(origin.to_string()));
        };
        if terms.is_empty() {
            return Err(Error::NoTerms(origin.to_string()));
        }
        PauliSum::new(n, terms)
    }

    /// Text form with shortest round-trip coefficients.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n_qubits);
        for (c, p) in &self.terms {
            let letters: String = p.letters().map(|l| l.as_char()).collect();
            let _ = writeln!(out, "{c} {letters}");
        }
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
