//! Explicit gate, Pauli and Kraus matrices.

use num_complex::Complex;

use crate::circuit::Gate;
use crate::pauli::Letter;
use crate::scalar::Real;

pub type Mat2<T> = [[Complex<T>; 2]; 2];
pub type Mat4<T> = [[Complex<T>; 4]; 4];

fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::of(re), T::of(im))
}

pub fn pauli_matrix<T: Real>(letter: Letter) -> Mat2<T> {
    match letter {
        Letter::I => [[c(1., 0.), c(0., 0.)], [c(0., 0.), c(1., 0.)]],
        Letter::X => [[c(0., 0.), c(1., 0.)], [c(1., 0.), c(0., 0.)]],
        Letter::Y => [[c(0., 0.), c(0., -1.)], [c(0., 1.), c(0., 0.)]],
        Letter::Z => [[c(1., 0.), c(0., 0.)], [c(0., 0.), c(-1., 0.)]],
    }
}

/// `exp(-i θ/2 σ)`.
fn rotation<T: Real>(letter: Letter, theta: f64) -> Mat2<T> {
    let (cos, sin) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let p = pauli_matrix::<f64>(letter);
    let mut m = [[Complex::new(T::zero(), T::zero()); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let id = if i == j { 1.0 } else { 0.0 };
            let v = Complex::new(cos * id, 0.0) + Complex::new(0.0, -sin) * p[i][j];
            m[i][j] = c(v.re, v.im);
        }
    }
    m
}

/// Matrix of a single-qubit gate, `None` for two-qubit gates.
pub fn single_qubit_matrix<T: Real>(gate: &Gate) -> Option<Mat2<T>> {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    Some(match *gate {
        Gate::H(_) => [[c(r, 0.), c(r, 0.)], [c(r, 0.), c(-r, 0.)]],
        Gate::S(_) => [[c(1., 0.), c(0., 0.)], [c(0., 0.), c(0., 1.)]],
        Gate::Sdg(_) => [[c(1., 0.), c(0., 0.)], [c(0., 0.), c(0., -1.)]],
        Gate::X(_) => pauli_matrix(Letter::X),
        Gate::Y(_) => pauli_matrix(Letter::Y),
        Gate::Z(_) => pauli_matrix(Letter::Z),
        Gate::Rx(_, a) => rotation(Letter::X, a),
        Gate::Ry(_, a) => rotation(Letter::Y, a),
        Gate::Rz(_, a) => rotation(Letter::Z, a),
        Gate::Cx { .. } | Gate::Swap(..) => return None,
    })
}

/// Matrix of a two-qubit gate on the local basis `|b_first b_second⟩`, index
/// `b_first + 2 b_second`, where `first` is the control (CX) or first
/// operand (SWAP).
pub fn two_qubit_matrix<T: Real>(gate: &Gate) -> Option<Mat4<T>> {
    let mut m = [[c::<T>(0., 0.); 4]; 4];
    match gate {
        Gate::Cx { .. } => {
            // control = bit 0, target = bit 1
            for b in 0..4usize {
                let out = if b & 1 == 1 { b ^ 2 } else { b };
                m[out][b] = c(1., 0.);
            }
        }
        Gate::Swap(..) => {
            for b in 0..4usize {
                let out = ((b & 1) << 1) | (b >> 1);
                m[out][b] = c(1., 0.);
            }
        }
        _ => return None,
    }
    Some(m)
}

pub fn mul2<T: Real>(a: &Mat2<T>, b: &Mat2<T>) -> Mat2<T> {
    let mut m = [[Complex::new(T::zero(), T::zero()); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    m
}

pub fn dagger2<T: Real>(a: &Mat2<T>) -> Mat2<T> {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

/// Kronecker product `a ⊗ b` in the same local ordering as
/// [`two_qubit_matrix`]: `a` acts on bit 0, `b` on bit 1.
pub fn kron2<T: Real>(a: &Mat2<T>, b: &Mat2<T>) -> Mat4<T> {
    let mut m = [[Complex::new(T::zero(), T::zero()); 4]; 4];
    for r in 0..4 {
        for col in 0..4 {
            m[r][col] = a[r & 1][col & 1] * b[r >> 1][col >> 1];
        }
    }
    m
}

/// Amplitude damping with decay probability `gamma`.
pub fn amplitude_damping<T: Real>(gamma: f64) -> [Mat2<T>; 2] {
    [
        [[c(1., 0.), c(0., 0.)], [c(0., 0.), c((1.0 - gamma).sqrt(), 0.)]],
        [[c(0., 0.), c(gamma.sqrt(), 0.)], [c(0., 0.), c(0., 0.)]],
    ]
}
