//! Bit-packed Pauli fault frames: one frame per Monte-Carlo sample, 64
//! samples per machine word, propagated through the Clifford gates of a
//! noisy circuit so that every sampled error ends up expressed at the
//! circuit output.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Op};
use crate::clifford::tables::symplectic_action;
use crate::clifford::CliffordGate;
use crate::error::{Error, Result};
use crate::pauli::{BitMask, Letter, PauliString};
use crate::rng::{stream, DOMAIN_CHANNEL};

const LETTERS: [Letter; 4] = [Letter::I, Letter::X, Letter::Y, Letter::Z];

/// Calls `hit(sample)` for each sample in `0..n` independently with
/// probability `p`, skipping geometrically between hits.
pub(crate) fn for_each_hit(n: usize, p: f64, rng: &mut ChaCha8Rng, mut hit: impl FnMut(usize, &mut ChaCha8Rng)) {
    if p <= 0.0 {
        return;
    }
    if p >= 1.0 {
        for s in 0..n {
            hit(s, rng);
        }
        return;
    }
    let log_q = (-p).ln_1p();
    let mut s = 0usize;
    loop {
        let u: f64 = rng.random();
        let skip = ((1.0 - u).ln() / log_q).floor();
        if skip >= (n - s) as f64 {
            return;
        }
        s += skip as usize;
        hit(s, rng);
        s += 1;
        if s >= n {
            return;
        }
    }
}

/// Error frames for a batch of samples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameBatch {
    n_qubits: usize,
    n_samples: usize,
    words: usize,
    /// `x[q * words + w]`, bit `s % 64` of word `s / 64` is sample `s`.
    x: Vec<u64>,
    z: Vec<u64>,
}

impl FrameBatch {
    pub fn new(n_qubits: usize, n_samples: usize) -> Self {
        let words = n_samples.div_ceil(64);
        FrameBatch { n_qubits, n_samples, words, x: vec![0; n_qubits * words], z: vec![0; n_qubits * words] }
    }

    /// Samples errors for every channel of `c` and propagates them to the end.
    /// Channel `i` (op index) draws from its own stream of `seed`.
    pub fn sample(c: &Circuit, n_samples: usize, seed: u64) -> Result<Self> {
        if n_samples == 0 {
            return Err(Error::NoSamples);
        }
        let mut batch = FrameBatch::new(c.n_qubits(), n_samples);
        for (i, op) in c.ops().iter().enumerate() {
            match *op {
                Op::Gate(g) => batch.apply_gate(&g.to_clifford()?),
                Op::Depolarize1 { qubit, p } => {
                    let mut rng = stream(seed, DOMAIN_CHANNEL | i as u64);
                    batch.depolarize1(qubit, p, &mut rng);
                }
                Op::Depolarize2 { a, b, p } => {
                    let mut rng = stream(seed, DOMAIN_CHANNEL | i as u64);
                    batch.depolarize2(a, b, p, &mut rng);
                }
                Op::ReadoutFlip { qubit, p } => {
                    let mut rng = stream(seed, DOMAIN_CHANNEL | i as u64);
                    batch.bit_flip(qubit, p, &mut rng);
                }
                Op::Measure { .. } => {}
            }
        }
        Ok(batch)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    #[inline]
    fn row(&self, q: usize) -> std::ops::Range<usize> {
        q * self.words..(q + 1) * self.words
    }

    /// Multiplies `letter` on qubit `q` into the frame of `sample`.
    pub fn insert(&mut self, sample: usize, q: usize, letter: Letter) {
        let (xb, zb) = letter.bits();
        let (w, bit) = (q * self.words + sample / 64, 1u64 << (sample % 64));
        if xb {
            self.x[w] ^= bit;
        }
        if zb {
            self.z[w] ^= bit;
        }
    }

    pub fn depolarize1(&mut self, q: usize, p: f64, rng: &mut ChaCha8Rng) {
        for_each_hit(self.n_samples, p, rng, |s, rng| {
            let l = LETTERS[rng.random_range(1..4)];
            self.insert(s, q, l);
        });
    }

    pub fn depolarize2(&mut self, a: usize, b: usize, p: f64, rng: &mut ChaCha8Rng) {
        for_each_hit(self.n_samples, p, rng, |s, rng| {
            let r = rng.random_range(1..16usize);
            self.insert(s, a, LETTERS[r & 3]);
            self.insert(s, b, LETTERS[r >> 2]);
        });
    }

    pub fn bit_flip(&mut self, q: usize, p: f64, rng: &mut ChaCha8Rng) {
        for_each_hit(self.n_samples, p, rng, |s, _| self.insert(s, q, Letter::X));
    }

    /// Propagates every frame through `g` (signs are irrelevant for frames).
    pub fn apply_gate(&mut self, g: &CliffordGate) {
        let wds = self.words;
        if let Some(row) = g.table_index() {
            let [(xx, xz), (zx, zz)] = symplectic_action(row);
            if (xx, xz, zx, zz) == (true, false, false, true) {
                return;
            }
            let q = g.qubits().0;
            let r = self.row(q);
            let (xs, zs) = (&mut self.x[r.clone()], &mut self.z[r]);
            for w in 0..wds {
                let (x, z) = (xs[w], zs[w]);
                let sel = |on: bool, v: u64| if on { v } else { 0 };
                xs[w] = sel(xx, x) ^ sel(zx, z);
                zs[w] = sel(xz, x) ^ sel(zz, z);
            }
            return;
        }
        match *g {
            CliffordGate::Cx { control, target } => {
                for w in 0..wds {
                    self.x[target * wds + w] ^= self.x[control * wds + w];
                    self.z[control * wds + w] ^= self.z[target * wds + w];
                }
            }
            CliffordGate::Swap(a, b) => {
                for w in 0..wds {
                    self.x.swap(a * wds + w, b * wds + w);
                    self.z.swap(a * wds + w, b * wds + w);
                }
            }
            _ => unreachable!("single-qubit gates use the table"),
        }
    }

    /// Word `w` of the mask of samples whose frame anticommutes with `p`.
    #[inline]
    fn anticommute_word(&self, support: &[(usize, bool, bool)], w: usize) -> u64 {
        let mut acc = 0u64;
        for &(q, px, pz) in support {
            let i = q * self.words + w;
            if pz {
                acc ^= self.x[i];
            }
            if px {
                acc ^= self.z[i];
            }
        }
        acc
    }

    fn support_of(p: &PauliString) -> Vec<(usize, bool, bool)> {
        p.support()
            .map(|q| {
                let (x, z) = p.letter(q).bits();
                (q, x, z)
            })
            .collect()
    }

    /// Number of samples whose frame anticommutes with `p`.
    pub fn flip_count(&self, p: &PauliString) -> usize {
        let support = Self::support_of(p);
        (0..self.words).map(|w| self.anticommute_word(&support, w).count_ones() as usize).sum()
    }

    /// Packed anticommutation mask (one bit per sample).
    pub fn flip_mask(&self, p: &PauliString) -> Vec<u64> {
        let support = Self::support_of(p);
        (0..self.words).map(|w| self.anticommute_word(&support, w)).collect()
    }

    /// Frame of one sample as an unsigned Pauli string.
    pub fn frame(&self, sample: usize) -> PauliString {
        let (mut x, mut z) = (BitMask::zeros(self.n_qubits), BitMask::zeros(self.n_qubits));
        let (w, bit) = (sample / 64, 1u64 << (sample % 64));
        for q in 0..self.n_qubits {
            x.set(q, self.x[q * self.words + w] & bit != 0);
            z.set(q, self.z[q * self.words + w] & bit != 0);
        }
        PauliString::from_masks(self.n_qubits, x, z, false)
    }
}

/// One shot of the error process: every channel of `c` fires independently
/// and reports `(op index, error)` at the position it occurred.
pub fn sample_pauli_errors(c: &Circuit, rng: &mut impl Rng) -> Vec<(usize, PauliString)> {
    let n = c.n_qubits();
    let mut out = Vec::new();
    for (i, op) in c.ops().iter().enumerate() {
        match *op {
            Op::Depolarize1 { qubit, p } if rng.random::<f64>() < p => {
                out.push((i, PauliString::single(n, qubit, LETTERS[rng.random_range(1..4)])));
            }
            Op::Depolarize2 { a, b, p } if rng.random::<f64>() < p => {
                let r = rng.random_range(1..16usize);
                let mut e = PauliString::identity(n);
                e.set_letter(a, LETTERS[r & 3]);
                e.set_letter(b, LETTERS[r >> 2]);
                out.push((i, e));
            }
            Op::ReadoutFlip { qubit, p } if rng.random::<f64>() < p => {
                out.push((i, PauliString::single(n, qubit, Letter::X)));
            }
            _ => {}
        }
    }
    out
}
