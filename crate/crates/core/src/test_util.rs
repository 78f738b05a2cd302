//! Shared fixtures for unit tests.

use crate::linalg::Matrix3c;
use crate::params::EngineParams;
use crate::state::DensityMatrix;
use num_complex::Complex64 as C64;
use rand::Rng;

/// Parameters used throughout the test suite: γ_h = 1e-2, γ_c = 10 γ_h,
/// n̄_h = 5, n̄_c = 1e-3, ω₂₁ = 1/γ_h, ω₃₂ = 10/γ_h, ε = 0.05, resonant drive.
pub fn reference_params() -> EngineParams {
    EngineParams {
        omega1: 0.0,
        omega2: 100.0,
        omega3: 1100.0,
        omega_d: 1000.0,
        epsilon: 0.05,
        gamma_h: 1e-2,
        gamma_c: 1e-1,
        nbar_h: 5.0,
        nbar_c: 1e-3,
    }
}

/// Random full-rank density matrix (Ginibre construction).
pub fn random_density(rng: &mut impl Rng) -> DensityMatrix {
    let mut g = Matrix3c::zeros();
    for i in 0..3 {
        for j in 0..3 {
            g[(i, j)] = C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
        }
    }
    let gg = g * g.adjoint() + Matrix3c::identity().scale(1e-9);
    let tr = gg.trace().re;
    DensityMatrix::try_from_matrix(gg.unscale(tr)).unwrap()
}

/// Random parameter draw: log-uniform rates in [1e-4, 1], occupations in
/// [0, 10], ε in [0, 0.2], Δ in [−1, 1]; fixed level spacings ω₂₁ = 100,
/// ω₃₂ = 1000.
pub fn random_params(rng: &mut impl Rng) -> EngineParams {
    let lo = 1e-4f64.ln();
    let log_uniform_rate = |u: f64| (lo * (1.0 - u)).exp();
    let gamma_h = log_uniform_rate(rng.random());
    let gamma_c = log_uniform_rate(rng.random());
    let delta: f64 = rng.random_range(-1.0..1.0);
    EngineParams {
        omega1: 0.0,
        omega2: 100.0,
        omega3: 1100.0,
        omega_d: 1000.0,
        epsilon: rng.random_range(0.0..0.2),
        gamma_h,
        gamma_c,
        nbar_h: rng.random_range(0.0..10.0),
        nbar_c: rng.random_range(0.0..10.0),
    }
    .with_detuning(delta)
}
