//! N-qubit Pauli strings in symplectic form.
//!
//! A string is stored as an X mask, a Z mask and a sign. Qubit `k` is bit `k`
//! of each mask and the `k`-th letter (from the left) of the text form. The
//! letter at a position decodes as `(x, z)`: `(0,0) = I`, `(1,0) = X`,
//! `(1,1) = Y`, `(0,1) = Z`, so a string denotes `±σ_0 ⊗ σ_1 ⊗ …` with the
//! Hermitian `Y`, not `XZ`.

use std::fmt;
use std::str::FromStr;

use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

/// Packed bit vector; stays on the stack up to 128 qubits.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitMask(SmallVec<[u64; 2]>);

impl BitMask {
    pub fn zeros(n_bits: usize) -> Self {
        BitMask(smallvec![0; n_bits.div_ceil(64)])
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.0[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        let bit = 1u64 << (i % 64);
        if value {
            self.0[i / 64] |= bit;
        } else {
            self.0[i / 64] &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.0[i / 64] ^= 1u64 << (i % 64);
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.0
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitMask) {
        for (a, b) in self.0.iter_mut().zip(other.0.iter()) {
            *a ^= *b;
        }
    }

    pub fn count_ones(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    /// Parity of the popcount of `self & other`.
    #[inline]
    pub fn dot(&self, other: &BitMask) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + tz)
            })
        })
    }

    /// Value of the low 64 bits, for small-width bookkeeping.
    pub fn low_word(&self) -> u64 {
        self.0.first().copied().unwrap_or(0)
    }
}

impl fmt::Debug for BitMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMask(")?;
        for w in self.0.iter().rev() {
            write!(f, "{w:016x}")?;
        }
        write!(f, ")")
    }
}

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    #[inline]
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    #[inline]
    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }
}

/// Signed N-qubit Pauli string.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n_qubits: usize,
    x: BitMask,
    z: BitMask,
    negative: bool,
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        PauliString { n_qubits, x: BitMask::zeros(n_qubits), z: BitMask::zeros(n_qubits), negative: false }
    }

    /// Builds a string from masks. Panics if the masks are shorter than `n_qubits`.
    pub fn from_masks(n_qubits: usize, x: BitMask, z: BitMask, negative: bool) -> Self {
        assert_eq!(x.words().len(), n_qubits.div_ceil(64));
        assert_eq!(z.words().len(), n_qubits.div_ceil(64));
        PauliString { n_qubits, x, z, negative }
    }

    /// Single non-identity letter on `qubit`.
    pub fn single(n_qubits: usize, qubit: usize, letter: Letter) -> Self {
        let mut p = Self::identity(n_qubits);
        p.set_letter(qubit, letter);
        p
    }

    pub fn from_letters(letters: &[Letter], negative: bool) -> Self {
        let mut p = Self::identity(letters.len());
        for (k, &l) in letters.iter().enumerate() {
            p.set_letter(k, l);
        }
        p.negative = negative;
        p
    }

    /// Parses an optional `+`/`-` followed by exactly `n_qubits` letters.
    pub fn parse(text: &str, n_qubits: usize) -> Result<Self> {
        let (negative, body, offset) = match text.as_bytes().first() {
            Some(b'+') => (false, &text[1..], 1),
            Some(b'-') => (true, &text[1..], 1),
            _ => (false, text, 0),
        };
        let found = body.chars().count();
        let mut p = Self::identity(n_qubits);
        for (k, c) in body.chars().enumerate() {
            let letter =
                Letter::from_char(c).ok_or(Error::InvalidPauliChar { position: k + offset, found: c })?;
            if k < n_qubits {
                p.set_letter(k, letter);
            }
        }
        if found != n_qubits {
            return Err(Error::PauliLength { expected: n_qubits, found });
        }
        p.negative = negative;
        Ok(p)
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn x_mask(&self) -> &BitMask {
        &self.x
    }

    #[inline]
    pub fn z_mask(&self) -> &BitMask {
        &self.z
    }

    #[inline]
    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// `+1` or `-1`.
    #[inline]
    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    #[inline]
    pub fn letter(&self, qubit: usize) -> Letter {
        Letter::from_bits(self.x.get(qubit), self.z.get(qubit))
    }

    #[inline]
    pub fn set_letter(&mut self, qubit: usize, letter: Letter) {
        let (x, z) = letter.bits();
        self.x.set(qubit, x);
        self.z.set(qubit, z);
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.n_qubits).map(|k| self.letter(k))
    }

    /// Number of non-identity positions.
    pub fn weight(&self) -> usize {
        self.x.words().iter().zip(self.z.words()).map(|(a, b)| (a | b).count_ones() as usize).sum()
    }

    /// Qubits carrying a non-identity letter, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n_qubits).filter(|&k| self.x.get(k) || self.z.get(k))
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn set_negative(&mut self, negative: bool) {
        self.negative = negative;
    }

    #[inline]
    pub fn negate(&mut self) {
        self.negative = !self.negative;
    }

    pub fn negated(&self) -> Self {
        let mut p = self.clone();
        p.negate();
        p
    }

    /// Same letters with a `+` sign.
    pub fn unsigned(&self) -> Self {
        let mut p = self.clone();
        p.negative = false;
        p
    }

    /// True when the two strings commute (signs are irrelevant).
    #[inline]
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        !(self.x.dot(&other.z) ^ self.z.dot(&other.x))
    }

    /// Letters agree, ignoring sign.
    pub fn same_letters(&self, other: &PauliString) -> bool {
        self.x == other.x && self.z == other.z
    }

    /// `⟨0…0|P|0…0⟩`: the sign if the string has no X/Y component, else 0.
    pub fn zero_state_expectation(&self) -> i8 {
        if self.x.is_zero() {
            self.sign()
        } else {
            0
        }
    }

    pub(crate) fn masks_mut(&mut self) -> (&mut BitMask, &mut BitMask) {
        (&mut self.x, &mut self.z)
    }

    fn check_width(&self, other: &PauliString) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::WidthMismatch { left: self.n_qubits, right: other.n_qubits });
        }
        Ok(())
    }

    /// Product `self · other`. Fails when the product carries a phase of `±i`,
    /// i.e. when the two strings anticommute.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        self.check_width(other)?;
        let mut acc = PhasedPauli::from(self);
        acc.mul_assign(other);
        acc.into_signed()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.negative { "-" } else { "+" })?;
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses with the width implied by the text.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim_start_matches(['+', '-']);
        PauliString::parse(s, body.chars().count())
    }
}

/// Phase exponent `m` (mod 4) such that `σ(a) σ(b) = i^m σ(a ⊕ b)` over all
/// qubits, for unsigned letter masks.
#[inline]
pub(crate) fn product_phase(ax: &[u64], az: &[u64], bx: &[u64], bz: &[u64]) -> u8 {
    let mut plus = 0u32;
    let mut minus = 0u32;
    for i in 0..ax.len() {
        let (a_x, a_y, a_z) = (ax[i] & !az[i], ax[i] & az[i], !ax[i] & az[i]);
        let (b_x, b_y, b_z) = (bx[i] & !bz[i], bx[i] & bz[i], !bx[i] & bz[i]);
        plus += ((a_x & b_y) | (a_y & b_z) | (a_z & b_x)).count_ones();
        minus += ((a_y & b_x) | (a_z & b_y) | (a_x & b_z)).count_ones();
    }
    (plus.wrapping_sub(minus) & 3) as u8
}

/// Pauli string with a full `i^phase` prefactor, used for intermediate
/// products inside the Clifford and stabilizer engines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct PhasedPauli {
    pub n_qubits: usize,
    pub x: BitMask,
    pub z: BitMask,
    pub phase: u8,
}

impl PhasedPauli {
    pub fn identity(n_qubits: usize) -> Self {
        PhasedPauli { n_qubits, x: BitMask::zeros(n_qubits), z: BitMask::zeros(n_qubits), phase: 0 }
    }

    /// `self ← self · other`.
    #[inline]
    pub fn mul_assign(&mut self, other: &PauliString) {
        let m = product_phase(self.x.words(), self.z.words(), other.x.words(), other.z.words());
        self.phase = (self.phase + m + if other.negative { 2 } else { 0 }) & 3;
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }

    pub fn into_signed(self) -> Result<PauliString> {
        match self.phase {
            0 | 2 => Ok(PauliString { n_qubits: self.n_qubits, x: self.x, z: self.z, negative: self.phase == 2 }),
            _ => Err(Error::ImaginaryPhase),
        }
    }
}

impl From<&PauliString> for PhasedPauli {
    fn from(p: &PauliString) -> Self {
        PhasedPauli { n_qubits: p.n_qubits, x: p.x.clone(), z: p.z.clone(), phase: if p.negative { 2 } else { 0 } }
    }
}
