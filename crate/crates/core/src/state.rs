//! Density matrices of the three-level working medium.

use crate::linalg::{hermiticity_deviation, hermitian_eigenvalues, hermitize, Matrix3c};
use crate::{Error, Result};
use num_complex::Complex64 as C64;

/// Default absolute tolerance on Hermiticity and trace deviations.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Default tolerance below which an eigenvalue counts as negative.
pub const POSITIVITY_TOL: f64 = 1e-10;

/// A 3×3 complex density matrix over the basis {|1⟩, |2⟩, |3⟩}: Hermitian,
/// unit trace, positive semi-definite (within numerical tolerances).
///
/// Stored matrices are exactly Hermitian and trace-normalized; construction
/// goes through [`validate_density`] or one of the checked constructors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(Matrix3c);

impl DensityMatrix {
    /// Validate `m` with the default tolerances.
    pub fn try_from_matrix(m: Matrix3c) -> Result<Self> {
        Self::try_from_matrix_with(m, HERMITICITY_TOL, POSITIVITY_TOL)
    }

    /// Validate `m` against explicit Hermiticity/trace and positivity
    /// tolerances. On success the result is hermitized first and then
    /// trace-renormalized.
    pub fn try_from_matrix_with(m: Matrix3c, herm_tol: f64, pos_tol: f64) -> Result<Self> {
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let dev = hermiticity_deviation(&m);
        if dev > herm_tol {
            return Err(Error::NotHermitian {
                deviation: dev,
                tol: herm_tol,
            });
        }
        let h = hermitize(&m);
        let tr = h.trace().re;
        let tr_dev = (tr - 1.0).abs();
        if tr_dev > herm_tol {
            return Err(Error::TraceDeviation {
                deviation: tr_dev,
                tol: herm_tol,
            });
        }
        let h = h.unscale(tr);
        let min_eig = hermitian_eigenvalues(&h)[0];
        if min_eig < -pos_tol {
            return Err(Error::NotPositive {
                eigenvalue: min_eig,
                tol: pos_tol,
            });
        }
        Ok(Self(h))
    }

    /// Wrap a matrix that is already hermitized and trace-normalized.
    /// Used internally where the invariants hold by construction.
    pub(crate) fn new_unchecked(m: Matrix3c) -> Self {
        Self(m)
    }

    /// Diagonal state from populations (renormalized).
    pub fn from_populations(p1: f64, p2: f64, p3: f64) -> Result<Self> {
        let mut m = Matrix3c::zeros();
        m[(0, 0)] = C64::new(p1, 0.0);
        m[(1, 1)] = C64::new(p2, 0.0);
        m[(2, 2)] = C64::new(p3, 0.0);
        let tr = p1 + p2 + p3;
        if !tr.is_finite() || tr <= 0.0 {
            return Err(Error::Domain("populations must sum to a positive value".into()));
        }
        Self::try_from_matrix_with(m.unscale(tr), HERMITICITY_TOL, POSITIVITY_TOL)
    }

    /// Ground state |1⟩⟨1|.
    pub fn ground() -> Self {
        let mut m = Matrix3c::zeros();
        m[(0, 0)] = C64::new(1.0, 0.0);
        Self(m)
    }

    /// Maximally mixed state I/3.
    pub fn maximally_mixed() -> Self {
        Self(Matrix3c::identity().unscale(3.0))
    }

    pub fn matrix(&self) -> &Matrix3c {
        &self.0
    }

    /// Entry ρ_ij with 0-based indices.
    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    /// Populations (ρ₁₁, ρ₂₂, ρ₃₃).
    pub fn populations(&self) -> [f64; 3] {
        [self.0[(0, 0)].re, self.0[(1, 1)].re, self.0[(2, 2)].re]
    }

    /// l₁-norm of coherence, Σ_{i≠j} |ρ_ij|.
    pub fn coherence_l1(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    s += self.0[(i, j)].norm();
                }
            }
        }
        s
    }

    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> [f64; 3] {
        hermitian_eigenvalues(&self.0)
    }
}

/// Check the density-matrix invariants on `m` with a single tolerance applied
/// to all three checks; see [`DensityMatrix::try_from_matrix_with`].
pub fn validate_density(m: &Matrix3c, tol: f64) -> Result<DensityMatrix> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    DensityMatrix::try_from_matrix_with(*m, tol, tol)
}

/// Trace distance `(1/2) Σ singular values of (a - b)`; lies in [0, 1] and is
/// symmetric in its arguments.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    let d = a.matrix() - b.matrix();
    // difference of Hermitian matrices is Hermitian, so the singular values
    // are the absolute eigenvalues
    hermitian_eigenvalues(&d).iter().map(|l| l.abs()).sum::<f64>() * 0.5
}
