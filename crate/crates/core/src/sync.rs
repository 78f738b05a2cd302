//! SU(3) coherent states, the Husimi-Kano Q function, and the phase-space
//! synchronization measure.
//!
//! The coherent state is |n₃⟩ = (cos θ, e^{iφ₁} cos ξ sin θ, e^{iφ₂} sin ξ sin θ)ᵀ
//! with group measure dv = dθ dξ dφ₁ dφ₂ cos θ sin³θ cos ξ sin ξ over
//! θ, ξ ∈ [0, π/2] and φ₁, φ₂ ∈ [0, 2π). The synchronization measure is the
//! θ, ξ-marginal of Q minus the uniform phase density 1/4π²:
//!
//!   S(φ₁, φ₂) = (1/8π) { Re[e^{iφ₁}ρ₁₂] + Re[e^{iφ₂}ρ₁₃] + Re[e^{i(φ₂−φ₁)}ρ₂₃] }.

use crate::linalg::{Matrix3c, Vector3c};
use crate::quadrature::GaussLegendre;
use crate::state::DensityMatrix;
use crate::{Error, Result};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

/// Angles (θ, ξ, φ₁, φ₂) parameterizing an SU(3) coherent state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SU3Angles {
    theta: f64,
    xi: f64,
    phi1: f64,
    phi2: f64,
}

impl SU3Angles {
    /// Requires θ, ξ ∈ [0, π/2] and φ₁, φ₂ ∈ [0, 2π).
    pub fn new(theta: f64, xi: f64, phi1: f64, phi2: f64) -> Result<Self> {
        let half_pi = PI / 2.0;
        if !(0.0..=half_pi).contains(&theta) || !(0.0..=half_pi).contains(&xi) {
            return Err(Error::Domain(format!(
                "theta and xi must lie in [0, pi/2], got ({theta}, {xi})"
            )));
        }
        let tau = 2.0 * PI;
        if !(0.0..tau).contains(&phi1) || !(0.0..tau).contains(&phi2) {
            return Err(Error::Domain(format!(
                "phases must lie in [0, 2pi), got ({phi1}, {phi2})"
            )));
        }
        Ok(Self {
            theta,
            xi,
            phi1,
            phi2,
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn phi1(&self) -> f64 {
        self.phi1
    }

    pub fn phi2(&self) -> f64 {
        self.phi2
    }

    /// Weight cos θ sin³θ cos ξ sin ξ of the group measure at these angles.
    pub fn group_weight(&self) -> f64 {
        self.theta.cos() * self.theta.sin().powi(3) * self.xi.cos() * self.xi.sin()
    }
}

/// The SU(3) coherent state |n₃⟩; unit norm by construction.
pub fn su3_coherent_state(a: &SU3Angles) -> Vector3c {
    let (st, ct) = a.theta.sin_cos();
    let (sx, cx) = a.xi.sin_cos();
    Vector3c::new(
        C64::new(ct, 0.0),
        C64::from_polar(cx * st, a.phi1),
        C64::from_polar(sx * st, a.phi2),
    )
}

/// Husimi-Kano Q function `(6/π²)⟨n₃|ρ|n₃⟩`; non-negative.
pub fn husimi_q(rho: &DensityMatrix, a: &SU3Angles) -> f64 {
    let n = su3_coherent_state(a);
    let expectation = (n.adjoint() * rho.matrix() * n)[(0, 0)];
    6.0 / (PI * PI) * expectation.re
}

/// Synchronization measure from the closed form above.
pub fn sync_measure_closed(rho: &DensityMatrix, phi1: f64, phi2: f64) -> f64 {
    let m = rho.matrix();
    let e1 = C64::from_polar(1.0, phi1);
    let e2 = C64::from_polar(1.0, phi2);
    let e21 = C64::from_polar(1.0, phi2 - phi1);
    ((e1 * m[(0, 1)]).re + (e2 * m[(0, 2)]).re + (e21 * m[(1, 2)]).re) / (8.0 * PI)
}

/// Synchronization measure by Gauss-Legendre product quadrature of the
/// (θ, ξ)-marginal of Q, minus the uniform density 1/4π².
///
/// Converges to [`sync_measure_closed`] as `nodes` grows; the integrand is
/// entire, so modest node counts are already at rounding level.
///
/// # Panics
/// If `nodes < 8`.
pub fn sync_measure_quadrature(rho: &DensityMatrix, phi1: f64, phi2: f64, nodes: usize) -> f64 {
    assert!(nodes >= 8, "at least 8 quadrature nodes required");
    // Q is 2π-periodic in each phase
    let (phi1, phi2) = (wrap_phase(phi1), wrap_phase(phi2));
    let rule = GaussLegendre::new(nodes);
    let grid = rule.mapped(0.0, PI / 2.0);
    let mut total = 0.0;
    for &(theta, w_t) in &grid {
        for &(xi, w_x) in &grid {
            let a = SU3Angles::new(theta, xi, phi1, phi2).expect("nodes lie inside the domain");
            total += w_t * w_x * a.group_weight() * husimi_q(rho, &a);
        }
    }
    total - 1.0 / (4.0 * PI * PI)
}

/// The maximized synchronization measure together with the phases achieving
/// it; `s_max = max_{φ₁,φ₂} S(φ₁, φ₂)`.
#[derive(Debug, Clone)]
pub struct SyncProfile {
    rho: DensityMatrix,
    /// Maximum of S over the phases.
    pub s_max: f64,
    /// Maximizing phases (φ₁*, φ₂*) in [0, 2π)².
    pub argmax: (f64, f64),
    /// The unscaled maximum 8π·s_max, i.e. the coherence-weighted cosine sum
    /// at the maximizing phases (equals |ρ₂₃| when the other coherences
    /// vanish). Kept separately so downstream products can share rounding
    /// with quantities built from the same coherences.
    pub peak_amplitude: f64,
}

impl SyncProfile {
    /// S(φ₁, φ₂) for the profiled state.
    pub fn s(&self, phi1: f64, phi2: f64) -> f64 {
        sync_measure_closed(&self.rho, phi1, phi2)
    }
}

fn wrap_phase(phi: f64) -> f64 {
    let tau = 2.0 * PI;
    let mut x = phi % tau;
    if x < 0.0 {
        x += tau;
    }
    // the representative of 2π is 0
    if x >= tau {
        x = 0.0;
    }
    x
}

/// Maximize S(φ₁, φ₂) over the phases.
///
/// States with at most one nonzero coherence are handled exactly; in
/// particular ρ₁₂ = ρ₁₃ = 0 yields |ρ₂₃|/8π at φ₂ − φ₁ = −arg ρ₂₃. The
/// general case reduces to maximizing
/// a·cos(φ₁+ϑ₁₂) + b·cos(φ₂+ϑ₁₃) + c·cos(φ₂−φ₁+ϑ₂₃) and is solved by a
/// 360×360 grid seed followed by coordinate ascent with exact line maxima,
/// refined to 1e-10 in the objective. Always `s_max ≤ C_l1(ρ)/16π`, with
/// equality iff ϑ₂₃ = ϑ₁₃ − ϑ₁₂ or at most one coherence is nonzero.
pub fn sync_max(rho: &DensityMatrix) -> SyncProfile {
    let m = rho.matrix();
    let c12 = m[(0, 1)];
    let c13 = m[(0, 2)];
    let c23 = m[(1, 2)];
    let (a, b, c) = (c12.norm(), c13.norm(), c23.norm());
    let inv_8pi = 1.0 / (8.0 * PI);

    let nonzero = [a > 0.0, b > 0.0, c > 0.0];
    let profile = |peak: f64, argmax| SyncProfile {
        rho: *rho,
        s_max: peak * inv_8pi,
        argmax,
        peak_amplitude: peak,
    };
    match nonzero {
        [false, false, false] => return profile(0.0, (0.0, 0.0)),
        [true, false, false] => return profile(a, (wrap_phase(-c12.arg()), 0.0)),
        [false, true, false] => return profile(b, (0.0, wrap_phase(-c13.arg()))),
        [false, false, true] => return profile(c, (0.0, wrap_phase(-c23.arg()))),
        _ => {}
    }

    let (t12, t13, t23) = (c12.arg(), c13.arg(), c23.arg());
    let objective =
        |p1: f64, p2: f64| a * (p1 + t12).cos() + b * (p2 + t13).cos() + c * (p2 - p1 + t23).cos();

    // grid seed; strict improvement keeps the lexicographically smallest tie
    let n = 360;
    let step = 2.0 * PI / n as f64;
    let mut best = f64::NEG_INFINITY;
    let (mut p1, mut p2) = (0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            let val = objective(i as f64 * step, j as f64 * step);
            if val > best {
                best = val;
                p1 = i as f64 * step;
                p2 = j as f64 * step;
            }
        }
    }

    // coordinate ascent: for fixed φ₂ the objective is a single sinusoid in
    // φ₁ (and vice versa), so each line maximum is exact; run to stagnation
    let mut val = best;
    for _ in 0..500 {
        let w1 = C64::from_polar(a, t12) + C64::from_polar(c, -(p2 + t23));
        if w1.norm() > 0.0 {
            p1 = -w1.arg();
        }
        let w2 = C64::from_polar(b, t13) + C64::from_polar(c, t23 - p1);
        if w2.norm() > 0.0 {
            p2 = -w2.arg();
        }
        let new_val = objective(p1, p2);
        if new_val - val <= f64::EPSILON * val.abs() {
            val = val.max(new_val);
            break;
        }
        val = new_val;
    }

    profile(val, (wrap_phase(p1), wrap_phase(p2)))
}

/// Quadrature of |n₃⟩⟨n₃| over the full group measure with `nodes_continuous`
/// Gauss-Legendre points on each of θ, ξ and `nodes_phase` on each phase
/// axis; equals (π²/6)·I up to quadrature error.
///
/// The product rule factorizes over the axes, so the phase sums are folded
/// into per-entry harmonic factors rather than iterated explicitly.
pub fn completeness_matrix(nodes_continuous: usize, nodes_phase: usize) -> Matrix3c {
    let cont = GaussLegendre::new(nodes_continuous).mapped(0.0, PI / 2.0);
    let phase = GaussLegendre::new(nodes_phase).mapped(0.0, 2.0 * PI);

    // Σ w e^{ikφ} for k = -1, 0, 1
    let mut h = [C64::new(0.0, 0.0); 3];
    for &(phi, w) in &phase {
        h[0] += C64::from_polar(w, -phi);
        h[1] += C64::new(w, 0.0);
        h[2] += C64::from_polar(w, phi);
    }
    let harmonic = |k: i32| h[(k + 1) as usize];

    // amplitude moments T_ij = ∫ dθ dξ (weight) r_i r_j
    let mut t = [[0.0f64; 3]; 3];
    for &(theta, w_t) in &cont {
        for &(xi, w_x) in &cont {
            let w = w_t
                * w_x
                * theta.cos()
                * theta.sin().powi(3)
                * xi.cos()
                * xi.sin();
            let r = [
                theta.cos(),
                xi.cos() * theta.sin(),
                xi.sin() * theta.sin(),
            ];
            for (i, ri) in r.iter().enumerate() {
                for (j, rj) in r.iter().enumerate() {
                    t[i][j] += w * ri * rj;
                }
            }
        }
    }

    // φ₁ and φ₂ exponents of each component of |n₃⟩
    let u = [0, 1, 0];
    let v = [0, 0, 1];
    let mut k = Matrix3c::zeros();
    for i in 0..3 {
        for j in 0..3 {
            k[(i, j)] =
                C64::new(t[i][j], 0.0) * harmonic(u[i] - u[j]) * harmonic(v[i] - v[j]);
        }
    }
    k
}

/// ∫ Q dv over the full group measure, evaluated as `(6/π²) tr(ρ K)` with `K`
/// the quadrature of |n₃⟩⟨n₃|; equals 1 for any valid state up to quadrature
/// error.
pub fn husimi_normalization(rho: &DensityMatrix, completeness: &Matrix3c) -> f64 {
    let tr = (rho.matrix() * completeness).trace();
    6.0 / (PI * PI) * tr.re
}
