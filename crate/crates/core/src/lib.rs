//! Simulation library for a coherently driven three-level maser coupled to a
//! hot and a cold thermal bath.
//!
//! The library works in the rotating frame of the drive, where the generator
//! of the dynamics is time independent, and provides:
//!
//! - [`dynamics`]: the Lindblad generator as a 9×9 superoperator, fixed-step
//!   fourth-order time integration, and the steady state by two independent
//!   routes (closed form and SVD null space);
//! - [`sync`]: SU(3) coherent states, the Husimi-Kano Q function, and the
//!   phase-space synchronization measure S(φ₁, φ₂) with its maximum;
//! - [`thermo`]: steady-state power, heat currents, efficiency, entropy
//!   production, and the synchronization bound on the output power.
//!
//! Units: ħ = k_B = 1 throughout; all frequencies and rates share one
//! inverse-time unit. The basis {|1⟩, |2⟩, |3⟩} is ordered by increasing
//! energy, so matrix index 0 is the ground state.

pub mod dynamics;
mod error;
pub mod linalg;
pub mod params;
pub mod quadrature;
pub mod state;
pub mod sync;
#[cfg(test)]
pub(crate) mod test_util;
pub mod thermo;

pub use error::Error;
/// Library-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

pub use num_complex::Complex64 as C64;

pub use dynamics::{
    build_liouvillian, evolve, evolve_final, evolve_sampled, lindblad_rhs, steady_state_analytic,
    steady_state_nullspace, SteadyStateSolution, SuperOperator, Trajectory,
};
pub use linalg::{Matrix3c, Matrix9c, Vector3c, Vector9c};
pub use params::{DecayRates, EngineParams};
pub use state::{trace_distance, validate_density, DensityMatrix};
pub use sync::{
    husimi_q, su3_coherent_state, sync_max, sync_measure_closed, sync_measure_quadrature,
    SyncProfile, SU3Angles,
};
pub use thermo::{
    alicki_frame_diagnostics, nbar_from_temperature, temperature_from_nbar, thermo_report,
    BathSpec, FrameDiagnostics, Regime, ThermoReport,
};
