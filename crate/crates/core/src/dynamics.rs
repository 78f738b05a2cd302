//! Rotating-frame Lindblad generator, time evolution, and the steady state by
//! two independent routes.
//!
//! In the rotating frame of the drive the Hamiltonian is
//! `H̃ = Δσ₃₃ + ε(σ₂₃ + σ₃₂)` and the dissipators are the hot-bath pair
//! `γ_h(n̄_h+1)D[σ₁₃] + γ_h n̄_h D[σ₃₁]` and the cold-bath pair
//! `γ_c(n̄_c+1)D[σ₁₂] + γ_c n̄_c D[σ₂₁]`, with `D[O]ρ = OρO† − ½{O†O, ρ}`.

use crate::linalg::{
    devectorize, hermiticity_deviation, hermitize, ketbra, kron3, matvec_compensated, vectorize,
    Matrix3c, Matrix9c, Vector9c,
};
use crate::params::EngineParams;
use crate::state::DensityMatrix;
use crate::{Error, Result};
use num_complex::Complex64 as C64;

/// Second-smallest singular value below which the Liouvillian kernel is
/// treated as degenerate (no unique steady state).
pub const KERNEL_DEGENERACY_TOL: f64 = 1e-8;

/// Trace drift during integration above which [`evolve`] aborts.
pub const TRACE_DRIFT_LIMIT: f64 = 1e-6;

/// Eigenvalue below which a trajectory state triggers a positivity warning.
pub const POSITIVITY_WARN_LEVEL: f64 = -1e-8;

/// The Lindblad generator as a 9×9 matrix acting on the column-vectorized
/// density matrix: `vec(ρ̇) = L vec(ρ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperOperator {
    m: Matrix9c,
}

impl SuperOperator {
    pub fn matrix(&self) -> &Matrix9c {
        &self.m
    }

    /// Apply the generator to a (not necessarily valid) 3×3 matrix.
    pub fn apply(&self, rho: &Matrix3c) -> Matrix3c {
        devectorize(&(self.m * vectorize(rho)))
    }

    /// ‖L vec(ρ)‖₂, the fixed-point residual of `rho`.
    pub fn residual(&self, rho: &DensityMatrix) -> f64 {
        (self.m * vectorize(rho.matrix())).norm()
    }

    /// ‖vec(I)ᵀ L‖∞: how far the row-vectorized identity is from being a left
    /// null vector. Zero (to rounding) for any trace-preserving generator.
    pub fn trace_preservation_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for j in 0..9 {
            // diagonal positions of vec() are 0, 4, 8
            let col = self.m[(0, j)] + self.m[(4, j)] + self.m[(8, j)];
            worst = worst.max(col.norm());
        }
        worst
    }

    /// The nine eigenvalues of the generator (unordered).
    pub fn eigenvalues(&self) -> Result<[C64; 9]> {
        let ev = self
            .m
            .eigenvalues()
            .ok_or_else(|| Error::Domain("eigenvalue iteration failed to converge".into()))?;
        let mut out = [C64::new(0.0, 0.0); 9];
        for (o, v) in out.iter_mut().zip(ev.iter()) {
            *o = *v;
        }
        Ok(out)
    }
}

/// Superoperator of the dissipator D[O]: `conj(O) ⊗ O − ½ I ⊗ O†O − ½ (O†O)ᵀ ⊗ I`
/// under column stacking.
fn dissipator_super(o: &Matrix3c) -> Matrix9c {
    let i3 = Matrix3c::identity();
    let odo = o.adjoint() * o;
    kron3(&o.conjugate(), o)
        - (kron3(&i3, &odo) + kron3(&odo.transpose(), &i3)).scale(0.5)
}

/// Build the rotating-frame Lindblad generator for `p`.
pub fn build_liouvillian(p: &EngineParams) -> Result<SuperOperator> {
    p.validate()?;
    let i3 = Matrix3c::identity();
    let delta = p.delta();
    let eps = C64::new(p.epsilon, 0.0);

    let mut h = Matrix3c::zeros();
    h[(2, 2)] = C64::new(delta, 0.0);
    h[(1, 2)] = eps;
    h[(2, 1)] = eps;

    let commutator = kron3(&i3, &h) - kron3(&h.transpose(), &i3);
    let mut m = commutator * C64::new(0.0, -1.0);
    m += dissipator_super(&ketbra(0, 2)).scale(p.gamma_h * (p.nbar_h + 1.0));
    m += dissipator_super(&ketbra(2, 0)).scale(p.gamma_h * p.nbar_h);
    m += dissipator_super(&ketbra(0, 1)).scale(p.gamma_c * (p.nbar_c + 1.0));
    m += dissipator_super(&ketbra(1, 0)).scale(p.gamma_c * p.nbar_c);
    Ok(SuperOperator { m })
}

/// ρ̇ evaluated element-wise from the six scalar equations of motion.
///
/// Kept independent of [`build_liouvillian`] so the two routes cross-check
/// each other.
pub fn lindblad_rhs(rho: &DensityMatrix, p: &EngineParams) -> Result<Matrix3c> {
    p.validate()?;
    let r = rho.matrix();
    let (gh, gc) = (p.gamma_h, p.gamma_c);
    let (nh, nc) = (p.nbar_h, p.nbar_c);
    let ie = C64::new(0.0, p.epsilon);
    let rates = p.decay_rates();

    let (r11, r22, r33) = (r[(0, 0)], r[(1, 1)], r[(2, 2)]);
    let (r12, r13, r23) = (r[(0, 1)], r[(0, 2)], r[(1, 2)]);

    let d11 = r33 * (gh * (nh + 1.0)) + r22 * (gc * (nc + 1.0)) - r11 * (gh * nh + gc * nc);
    let d22 = ie * (r23 - r23.conj()) - r22 * (gc * (nc + 1.0)) + r11 * (gc * nc);
    let d33 = -ie * (r23 - r23.conj()) - r33 * (gh * (nh + 1.0)) + r11 * (gh * nh);
    let d12 = -rates.gamma12 * r12 + ie * r13;
    let d13 = -rates.gamma13 * r13 + ie * r12;
    let d23 = -rates.gamma23 * r23 - ie * (r33 - r22);

    let mut out = Matrix3c::zeros();
    out[(0, 0)] = d11;
    out[(1, 1)] = d22;
    out[(2, 2)] = d33;
    out[(0, 1)] = d12;
    out[(1, 0)] = d12.conj();
    out[(0, 2)] = d13;
    out[(2, 0)] = d13.conj();
    out[(1, 2)] = d23;
    out[(2, 1)] = d23.conj();
    Ok(out)
}

/// Closed-form steady state: populations and the ρ₂₃ coherence as ratios
/// α_i/β, with ρ₁₂ = ρ₁₃ = 0 exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyStateSolution {
    pub rho_ss: DensityMatrix,
    pub alpha1: C64,
    pub alpha2: C64,
    pub alpha3: C64,
    pub alpha4: C64,
    pub beta: f64,
}

/// Steady state from the closed-form solution of the equations of motion.
pub fn steady_state_analytic(p: &EngineParams) -> Result<SteadyStateSolution> {
    p.validate()?;
    let (gh, gc) = (p.gamma_h, p.gamma_c);
    let (nh, nc) = (p.nbar_h, p.nbar_c);
    let eps = p.epsilon;
    let g23 = p.decay_rates().gamma23;
    let re_g = g23.re;
    let abs2_g = g23.norm_sqr();

    let drive = 2.0 * eps * eps * re_g;
    let alpha1 = drive * (gc * (nc + 1.0) + gh * (nh + 1.0))
        + abs2_g * gc * gh * (nc + 1.0) * (nh + 1.0);
    let alpha2 = drive * (gc * nc + gh * nh) + abs2_g * gc * gh * nc * (nh + 1.0);
    let alpha3 = drive * (gc * nc + gh * nh) + abs2_g * gc * gh * (nc + 1.0) * nh;
    let alpha4 = C64::new(0.0, 1.0) * g23.conj() * (gc * gh * eps * (nc - nh));
    let beta = drive * (gc * (3.0 * nc + 1.0) + gh * (3.0 * nh + 1.0))
        + abs2_g * gc * gh * (nc * (3.0 * nh + 2.0) + 2.0 * nh + 1.0);

    if beta.is_nan() || beta <= 0.0 {
        return Err(Error::DegenerateParameters);
    }

    let mut m = Matrix3c::zeros();
    m[(0, 0)] = C64::new(alpha1 / beta, 0.0);
    m[(1, 1)] = C64::new(alpha2 / beta, 0.0);
    m[(2, 2)] = C64::new(alpha3 / beta, 0.0);
    m[(1, 2)] = alpha4 / beta;
    m[(2, 1)] = (alpha4 / beta).conj();
    let rho_ss = DensityMatrix::try_from_matrix(m)?;

    Ok(SteadyStateSolution {
        rho_ss,
        alpha1: C64::new(alpha1, 0.0),
        alpha2: C64::new(alpha2, 0.0),
        alpha3: C64::new(alpha3, 0.0),
        alpha4,
        beta,
    })
}

/// Steady state as the kernel vector of the superoperator, extracted from a
/// full SVD of the 9×9 generator.
///
/// The smallest-singular-value right vector is polished by two refinement
/// steps with compensated residuals, which removes the `u·σ₁/σ₂` forward
/// error a plain SVD carries when the rates span several decades. Errors if
/// the kernel is not one-dimensional (second-smallest singular value below
/// [`KERNEL_DEGENERACY_TOL`]).
pub fn steady_state_nullspace(p: &EngineParams) -> Result<DensityMatrix> {
    let l = build_liouvillian(p)?;
    let svd = l.matrix().svd(true, true);
    let s = svd.singular_values;
    let sigma2 = s[7];
    if sigma2 < KERNEL_DEGENERACY_TOL {
        return Err(Error::DegenerateKernel {
            sigma: sigma2,
            tol: KERNEL_DEGENERACY_TOL,
        });
    }
    let u = svd.u.expect("requested U");
    let vt = svd.v_t.expect("requested V^H");

    let mut v: Vector9c = vt.row(8).adjoint();
    for _ in 0..2 {
        let r = matvec_compensated(l.matrix(), &v);
        let coeffs = u.adjoint() * r;
        let mut correction = Vector9c::zeros();
        for k in 0..8 {
            let dir: Vector9c = vt.row(k).adjoint();
            correction += dir * (coeffs[k] / C64::new(s[k], 0.0));
        }
        v -= correction;
        v = v.unscale(v.norm());
    }

    let h = hermitize(&devectorize(&v));
    let tr = h.trace().re;
    if tr.abs() < 1e-12 {
        return Err(Error::DegenerateKernel {
            sigma: sigma2,
            tol: KERNEL_DEGENERACY_TOL,
        });
    }
    DensityMatrix::try_from_matrix(h.unscale(tr))
}

/// One fixed step of the classical fourth-order scheme for the linear system
/// `vec(ρ̇) = L vec(ρ)` equals multiplication by the degree-4 stability
/// polynomial `R(Z) = I + Z + Z²/2 + Z³/6 + Z⁴/24`, `Z = dt·L`.
fn rk4_step_matrix(l: &Matrix9c, dt: f64) -> Matrix9c {
    let z = l.scale(dt);
    let z2 = z * z;
    let z3 = z2 * z;
    let z4 = z3 * z;
    Matrix9c::identity() + z + z2.scale(1.0 / 2.0) + z3.scale(1.0 / 6.0) + z4.scale(1.0 / 24.0)
}

/// A sampled trajectory with the drift diagnostics accumulated while
/// propagating.
#[derive(Debug, Clone)]
pub struct Trajectory {
    /// `(time, state)` samples, starting at t = 0 and ending at t = t_final.
    pub samples: Vec<(f64, DensityMatrix)>,
    /// Worst `|tr ρ − 1|` seen among sampled raw states.
    pub max_trace_drift: f64,
    /// Worst Hermiticity deviation of the raw propagated states.
    pub max_hermiticity_drift: f64,
    /// Most negative eigenvalue seen among sampled states.
    pub min_eigenvalue: f64,
    /// True when some sampled eigenvalue dipped below the warning level.
    pub positivity_warning: bool,
}

fn check_time_args(t_final: f64, dt: f64) -> Result<()> {
    if !t_final.is_finite() || t_final <= 0.0 {
        return Err(Error::Domain("t_final must be positive and finite".into()));
    }
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::Domain("dt must be positive and finite".into()));
    }
    Ok(())
}

/// Split the horizon into full steps plus an optional remainder step.
fn step_plan(t_final: f64, dt: f64) -> (u64, f64) {
    let n = (t_final / dt).floor() as u64;
    let rem = t_final - n as f64 * dt;
    if rem > 1e-9 * dt {
        (n, rem)
    } else {
        (n, 0.0)
    }
}

/// Fixed-step explicit fourth-order integration of `vec(ρ̇) = L vec(ρ)`,
/// sampling every step. See [`evolve_sampled`].
pub fn evolve(
    rho0: &DensityMatrix,
    p: &EngineParams,
    t_final: f64,
    dt: f64,
) -> Result<Trajectory> {
    evolve_sampled(rho0, p, t_final, dt, 1)
}

/// Fixed-step integration sampling every `store_every`-th step (the initial
/// and final states are always sampled).
///
/// Sampled states are hermitized and trace-renormalized; drift is measured on
/// the raw propagated state first and the run aborts with a step-size error
/// if the trace drifts beyond [`TRACE_DRIFT_LIMIT`]. Negative eigenvalues
/// below [`POSITIVITY_WARN_LEVEL`] only set [`Trajectory::positivity_warning`].
pub fn evolve_sampled(
    rho0: &DensityMatrix,
    p: &EngineParams,
    t_final: f64,
    dt: f64,
    store_every: usize,
) -> Result<Trajectory> {
    check_time_args(t_final, dt)?;
    if store_every == 0 {
        return Err(Error::Domain("store_every must be at least 1".into()));
    }
    let l = build_liouvillian(p)?;
    let step = rk4_step_matrix(l.matrix(), dt);
    let (n_full, rem) = step_plan(t_final, dt);

    let mut traj = Trajectory {
        samples: Vec::new(),
        max_trace_drift: 0.0,
        max_hermiticity_drift: 0.0,
        min_eigenvalue: f64::INFINITY,
        positivity_warning: false,
    };
    let mut v = vectorize(rho0.matrix());
    traj.record(0.0, &v)?;
    for k in 1..=n_full {
        v = step * v;
        if k % store_every as u64 == 0 || (k == n_full && rem == 0.0) {
            traj.record(k as f64 * dt, &v)?;
        }
    }
    if rem > 0.0 {
        let last = rk4_step_matrix(l.matrix(), rem);
        v = last * v;
        traj.record(t_final, &v)?;
    }
    Ok(traj)
}

impl Trajectory {
    fn record(&mut self, t: f64, raw: &Vector9c) -> Result<()> {
        let m = devectorize(raw);
        self.max_hermiticity_drift = self.max_hermiticity_drift.max(hermiticity_deviation(&m));
        let h = hermitize(&m);
        let tr = h.trace().re;
        let drift = (tr - 1.0).abs();
        // NaN from a blown-up propagation must abort too
        if drift.is_nan() || drift > TRACE_DRIFT_LIMIT {
            return Err(Error::StepSize { drift });
        }
        self.max_trace_drift = self.max_trace_drift.max(drift);
        let state = DensityMatrix::new_unchecked(h.unscale(tr));
        let min_eig = state.eigenvalues()[0];
        self.min_eigenvalue = self.min_eigenvalue.min(min_eig);
        if min_eig < POSITIVITY_WARN_LEVEL {
            self.positivity_warning = true;
        }
        self.samples.push((t, state));
        Ok(())
    }

    /// Final sampled state.
    pub fn final_state(&self) -> &DensityMatrix {
        &self.samples.last().expect("trajectory is never empty").1
    }
}

/// Final state of the same fixed-step fourth-order scheme as [`evolve`],
/// evaluated by binary powering of the one-step matrix.
///
/// For a constant generator, `N` sequential steps compute exactly
/// `R(dt·L)^N vec(ρ₀)`, so powering agrees with step-by-step integration up
/// to floating-point association while costing O(log N) matrix products;
/// use it for long horizons.
pub fn evolve_final(
    rho0: &DensityMatrix,
    p: &EngineParams,
    t_final: f64,
    dt: f64,
) -> Result<DensityMatrix> {
    check_time_args(t_final, dt)?;
    let l = build_liouvillian(p)?;
    let (n_full, rem) = step_plan(t_final, dt);

    let mut propagator = Matrix9c::identity();
    let mut base = rk4_step_matrix(l.matrix(), dt);
    let mut n = n_full;
    while n > 0 {
        if n & 1 == 1 {
            propagator = base * propagator;
        }
        base = base * base;
        n >>= 1;
    }
    if rem > 0.0 {
        propagator = rk4_step_matrix(l.matrix(), rem) * propagator;
    }

    let v = propagator * vectorize(rho0.matrix());
    let h = hermitize(&devectorize(&v));
    let tr = h.trace().re;
    let drift = (tr - 1.0).abs();
    if drift.is_nan() || drift > TRACE_DRIFT_LIMIT {
        return Err(Error::StepSize { drift });
    }
    Ok(DensityMatrix::new_unchecked(h.unscale(tr)))
}
