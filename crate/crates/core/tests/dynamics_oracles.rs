//! Cross-checks between the independent routes through the dynamics:
//! element-wise equations of motion vs the vectorized generator, closed-form
//! steady state vs SVD null space, and the spectral structure that underpins
//! relaxation.

mod common;

use common::{random_density, random_params, reference_params};
use maser_core::{
    build_liouvillian, evolve, lindblad_rhs, steady_state_analytic, steady_state_nullspace,
    trace_distance, DensityMatrix,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn elementwise_equations_match_superoperator_action() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let p = random_params(&mut rng);
        let rho = random_density(&mut rng);
        let l = build_liouvillian(&p).unwrap();
        let via_superop = l.apply(rho.matrix());
        let via_equations = lindblad_rhs(&rho, &p).unwrap();
        let dev = (via_superop - via_equations)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        worst = worst.max(dev);
    }
    assert!(worst <= 1e-13, "worst elementwise deviation {worst:.3e}");
}

#[test]
fn analytic_steady_state_annihilated_by_generator() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let p = random_params(&mut rng);
        let sol = steady_state_analytic(&p).unwrap();
        let l = build_liouvillian(&p).unwrap();
        let residual = l.residual(&sol.rho_ss);
        assert!(
            residual <= 1e-10 * l.matrix().norm(),
            "residual {residual:.3e} for {p:?}"
        );
    }
}

#[test]
fn nullspace_agrees_with_closed_form_over_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    let mut worst = 0.0f64;
    for _ in 0..300 {
        let p = random_params(&mut rng);
        let a = steady_state_analytic(&p).unwrap().rho_ss;
        let b = steady_state_nullspace(&p).unwrap();
        let dev = (a.matrix() - b.matrix())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        worst = worst.max(dev);
    }
    assert!(worst <= 1e-10, "worst elementwise deviation {worst:.3e}");
}

#[test]
fn nonzero_spectrum_strictly_damped() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..50 {
        let mut p = random_params(&mut rng);
        // keep every relaxation channel open
        p.gamma_h = p.gamma_h.max(1e-3);
        p.gamma_c = p.gamma_c.max(1e-3);
        let l = build_liouvillian(&p).unwrap();
        let ev = l.eigenvalues().unwrap();
        let zero_modes = ev.iter().filter(|z| z.norm() <= 1e-10).count();
        assert_eq!(zero_modes, 1, "params {p:?}");
        for z in ev.iter().filter(|z| z.norm() > 1e-10) {
            assert!(z.re < 0.0, "eigenvalue {z} not damped for {p:?}");
        }
    }
}

#[test]
fn trace_preserved_for_random_parameters() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let p = random_params(&mut rng);
        let l = build_liouvillian(&p).unwrap();
        assert!(l.trace_preservation_residual() <= 1e-12);
    }
}

#[test]
fn evolution_preserves_hermiticity_and_trace() {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    for _ in 0..10 {
        let p = random_params(&mut rng);
        let rho0 = random_density(&mut rng);
        let dt = p.default_dt();
        let traj = evolve(&rho0, &p, 200.0 * dt, dt).unwrap();
        assert!(traj.max_hermiticity_drift <= 1e-10);
        assert!(traj.max_trace_drift <= 1e-9);
    }
}

#[test]
fn long_time_evolution_reaches_steady_state() {
    let p = reference_params();
    let sol = steady_state_analytic(&p).unwrap();
    let traj = maser_core::evolve_sampled(
        &DensityMatrix::ground(),
        &p,
        50.0 / p.gamma_h,
        p.default_dt(),
        128,
    )
    .unwrap();
    let dist = trace_distance(traj.final_state(), &sol.rho_ss);
    assert!(dist <= 1e-6, "distance to steady state {dist:.3e}");
    // distances to the fixed point decrease along the sampled trajectory
    let distances: Vec<f64> = traj
        .samples
        .iter()
        .map(|(_, s)| trace_distance(s, &sol.rho_ss))
        .collect();
    assert!(distances.windows(2).all(|w| w[1] <= w[0] + 1e-12));
}
