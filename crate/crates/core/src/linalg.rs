//! Small dense complex-matrix utilities shared across the crate.
//!
//! Vectorization is column-stacking throughout: `vec(rho)[i + 3j] = rho[(i, j)]`,
//! which coincides with nalgebra's column-major storage. Under this convention
//! `vec(A X B) = (B^T ⊗ A) vec(X)`.

use nalgebra::SMatrix;
use num_complex::Complex64 as C64;

pub type Matrix3c = SMatrix<C64, 3, 3>;
pub type Vector3c = nalgebra::SVector<C64, 3>;
pub type Matrix9c = SMatrix<C64, 9, 9>;
pub type Vector9c = nalgebra::SVector<C64, 9>;

/// Kronecker product of two 3×3 complex matrices.
pub fn kron3(a: &Matrix3c, b: &Matrix3c) -> Matrix9c {
    let mut out = Matrix9c::zeros();
    for ia in 0..3 {
        for ja in 0..3 {
            let f = a[(ia, ja)];
            for ib in 0..3 {
                for jb in 0..3 {
                    out[(3 * ia + ib, 3 * ja + jb)] = f * b[(ib, jb)];
                }
            }
        }
    }
    out
}

/// Column-stack a 3×3 matrix into a 9-vector.
pub fn vectorize(m: &Matrix3c) -> Vector9c {
    Vector9c::from_column_slice(m.as_slice())
}

/// Inverse of [`vectorize`].
pub fn devectorize(v: &Vector9c) -> Matrix3c {
    Matrix3c::from_column_slice(v.as_slice())
}

/// Hermitian part `(m + m†)/2`.
pub fn hermitize(m: &Matrix3c) -> Matrix3c {
    (m + m.adjoint()).scale(0.5)
}

/// Largest entrywise deviation from Hermiticity, `max |m_ij - conj(m_ji)|`.
pub fn hermiticity_deviation(m: &Matrix3c) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Eigenvalues of a Hermitian 3×3 matrix, ascending.
pub fn hermitian_eigenvalues(m: &Matrix3c) -> [f64; 3] {
    let eig = m.symmetric_eigen();
    let mut ev = [eig.eigenvalues[0], eig.eigenvalues[1], eig.eigenvalues[2]];
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

/// `|i⟩⟨j|` in the three-level basis (0-indexed).
pub fn ketbra(i: usize, j: usize) -> Matrix3c {
    let mut m = Matrix3c::zeros();
    m[(i, j)] = C64::new(1.0, 0.0);
    m
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Dot-product accumulator using error-free transformations; the running
/// compensation tracks the rounding of every sum and product exactly.
#[derive(Default, Clone, Copy)]
struct Accum {
    sum: f64,
    comp: f64,
}

impl Accum {
    #[inline]
    fn add_prod(&mut self, a: f64, b: f64) {
        let (p, pe) = two_prod(a, b);
        let (s, se) = two_sum(self.sum, p);
        self.sum = s;
        self.comp += se + pe;
    }

    #[inline]
    fn value(self) -> f64 {
        self.sum + self.comp
    }
}

/// 9×9 complex matrix-vector product with compensated summation.
///
/// Accurate to a few ulp of the exact result even when the plain product
/// would lose digits to cancellation; used for iterative refinement of
/// near-singular solves.
pub fn matvec_compensated(a: &Matrix9c, x: &Vector9c) -> Vector9c {
    let mut out = Vector9c::zeros();
    for i in 0..9 {
        let mut re = Accum::default();
        let mut im = Accum::default();
        for j in 0..9 {
            let m = a[(i, j)];
            let v = x[j];
            re.add_prod(m.re, v.re);
            re.add_prod(-m.im, v.im);
            im.add_prod(m.re, v.im);
            im.add_prod(m.im, v.re);
        }
        out[i] = C64::new(re.value(), im.value());
    }
    out
}
