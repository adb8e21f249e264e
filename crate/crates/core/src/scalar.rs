//! Scalar abstraction shared by the Hamiltonian algebra and the dense
//! reference simulators.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar (`f32` or `f64`).
///
/// Besides the usual arithmetic bounds this carries a Hermitian eigenvalue
/// hook so that generic code can diagonalize without naming a linear-algebra
/// backend.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + FromStr
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Tolerance used when checking density-matrix and state invariants.
    const STATE_TOLERANCE: f64;

    /// Eigenvalues of a Hermitian `dim x dim` matrix given in row-major order,
    /// sorted ascending.
    fn hermitian_eigenvalues(dim: usize, row_major: &[Complex<Self>]) -> Vec<Self>;

    /// Lossy conversion from `f64`.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 converts to any Real")
    }
}

macro_rules! impl_real {
    ($t:ty, $tol:expr) => {
        impl Real for $t {
            const STATE_TOLERANCE: f64 = $tol;

            fn hermitian_eigenvalues(dim: usize, row_major: &[Complex<Self>]) -> Vec<Self> {
                assert_eq!(row_major.len(), dim * dim, "matrix shape");
                let m = DMatrix::from_row_slice(dim, dim, row_major);
                let mut ev: Vec<$t> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
                ev.sort_by(|a, b| a.total_cmp(b));
                ev
            }
        }
    };
}

impl_real!(f32, 1e-4);
impl_real!(f64, 1e-10);
