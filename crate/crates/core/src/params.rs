//! Physical constants of the driven three-level engine.

use crate::{Error, Result};
use num_complex::Complex64 as C64;

/// All physical constants of the model (ħ = k_B = 1).
///
/// Levels are ordered ω₃ > ω₂ > ω₁. The hot bath couples |1⟩↔|3⟩ with rate
/// `gamma_h` and occupation `nbar_h`; the cold bath couples |1⟩↔|2⟩ with
/// `gamma_c`, `nbar_c`. The drive of strength `epsilon` addresses |2⟩↔|3⟩ at
/// frequency `omega_d`, giving the rotating-frame detuning Δ = ω₃₂ − ω_d.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineParams {
    pub omega1: f64,
    pub omega2: f64,
    pub omega3: f64,
    pub omega_d: f64,
    pub epsilon: f64,
    pub gamma_h: f64,
    pub gamma_c: f64,
    pub nbar_h: f64,
    pub nbar_c: f64,
}

/// Complex decay rates of the coherences in the rotating frame,
/// Γ₁₃ and Γ₂₃ carrying the detuning as −iΔ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayRates {
    pub gamma12: C64,
    pub gamma13: C64,
    pub gamma23: C64,
}

impl EngineParams {
    /// Check all parameter invariants.
    pub fn validate(&self) -> Result<()> {
        let fields = [
            self.omega1,
            self.omega2,
            self.omega3,
            self.omega_d,
            self.epsilon,
            self.gamma_h,
            self.gamma_c,
            self.nbar_h,
            self.nbar_c,
        ];
        if fields.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParams("non-finite field".into()));
        }
        if !(self.omega3 > self.omega2 && self.omega2 > self.omega1) {
            return Err(Error::InvalidParams(format!(
                "level ordering requires omega3 > omega2 > omega1, got ({}, {}, {})",
                self.omega1, self.omega2, self.omega3
            )));
        }
        if self.gamma_h < 0.0 || self.gamma_c < 0.0 {
            return Err(Error::InvalidParams("bath rates must be non-negative".into()));
        }
        if self.nbar_h < 0.0 || self.nbar_c < 0.0 {
            return Err(Error::InvalidParams("bath occupations must be non-negative".into()));
        }
        if self.epsilon < 0.0 {
            return Err(Error::InvalidParams("drive strength must be non-negative".into()));
        }
        Ok(())
    }

    pub fn omega21(&self) -> f64 {
        self.omega2 - self.omega1
    }

    pub fn omega31(&self) -> f64 {
        self.omega3 - self.omega1
    }

    pub fn omega32(&self) -> f64 {
        self.omega3 - self.omega2
    }

    /// Detuning Δ = ω₃₂ − ω_d of the drive from the lasing transition.
    pub fn delta(&self) -> f64 {
        self.omega32() - self.omega_d
    }

    /// Copy with the drive frequency chosen to realize detuning `delta`.
    pub fn with_detuning(mut self, delta: f64) -> Self {
        self.omega_d = self.omega32() - delta;
        self
    }

    /// Coherence decay rates Γ₁₂, Γ₁₃, Γ₂₃.
    pub fn decay_rates(&self) -> DecayRates {
        let d = self.delta();
        let (gh, gc) = (self.gamma_h, self.gamma_c);
        let (nh, nc) = (self.nbar_h, self.nbar_c);
        DecayRates {
            gamma12: C64::new(0.5 * (gh * nh + gc * (2.0 * nc + 1.0)), 0.0),
            gamma13: C64::new(0.5 * (gh * (2.0 * nh + 1.0) + gc * nc), -d),
            gamma23: C64::new(0.5 * (gh * (nh + 1.0) + gc * (nc + 1.0)), -d),
        }
    }

    /// Default integration step `0.1 / max(|Δ|, ε, γ_h(n̄_h+1), γ_c(n̄_c+1))`.
    ///
    /// Infinite when every scale vanishes (the generator is then zero and any
    /// step is exact).
    pub fn default_dt(&self) -> f64 {
        let scale = self
            .delta()
            .abs()
            .max(self.epsilon)
            .max(self.gamma_h * (self.nbar_h + 1.0))
            .max(self.gamma_c * (self.nbar_c + 1.0));
        0.1 / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_util::reference_params;

    #[test]
    fn reference_params_validate() {
        let p = reference_params();
        p.validate().unwrap();
        assert_eq!(p.omega21(), 100.0);
        assert_eq!(p.omega31(), 1100.0);
        assert_eq!(p.omega32(), 1000.0);
        assert_eq!(p.delta(), 0.0);
    }

    #[test]
    fn with_detuning_round_trip() {
        let p = reference_params().with_detuning(0.25);
        assert!((p.delta() - 0.25).abs() < 1e-12);
        assert_eq!(p.omega_d, 999.75);
    }

    #[test]
    fn level_ordering_enforced() {
        let mut p = reference_params();
        p.omega2 = 2000.0;
        assert!(matches!(p.validate(), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn negative_rate_rejected() {
        let mut p = reference_params();
        p.gamma_c = -1.0;
        assert!(p.validate().is_err());
        p = reference_params();
        p.nbar_h = -0.1;
        assert!(p.validate().is_err());
        p = reference_params();
        p.epsilon = -1e-9;
        assert!(p.validate().is_err());
    }

    #[test]
    fn zero_rates_allowed() {
        // the dissipationless limit stays constructible so degenerate-kernel
        // handling can be exercised
        let mut p = reference_params();
        p.gamma_h = 0.0;
        p.gamma_c = 0.0;
        p.validate().unwrap();
    }

    #[test]
    fn decay_rates_match_definitions() {
        let p = reference_params().with_detuning(0.25);
        let r = p.decay_rates();
        // Γ₁₂ = [γ_h n̄_h + γ_c(2n̄_c+1)]/2, real
        assert!((r.gamma12.re - 0.5 * (1e-2 * 5.0 + 1e-1 * 1.002)).abs() < 1e-15);
        assert_eq!(r.gamma12.im, 0.0);
        // Γ₁₃ = [γ_h(2n̄_h+1) + γ_c n̄_c]/2 − iΔ
        assert!((r.gamma13.re - 0.5 * (1e-2 * 11.0 + 1e-1 * 1e-3)).abs() < 1e-15);
        assert!((r.gamma13.im + 0.25).abs() < 1e-15);
        // Γ₂₃ = [γ_h(n̄_h+1) + γ_c(n̄_c+1)]/2 − iΔ
        assert!((r.gamma23.re - 0.5 * (1e-2 * 6.0 + 1e-1 * 1.001)).abs() < 1e-15);
        assert!((r.gamma23.im + 0.25).abs() < 1e-15);
        // positive real parts whenever any rate is positive
        assert!(r.gamma12.re > 0.0 && r.gamma13.re > 0.0 && r.gamma23.re > 0.0);
    }

    #[test]
    fn default_dt_scales() {
        let p = reference_params();
        // max scale is γ_c(n̄_c+1) = 0.10010
        assert!((p.default_dt() - 0.1 / 0.10010).abs() < 1e-12);
        let q = p.with_detuning(0.5);
        assert!((q.default_dt() - 0.1 / 0.5).abs() < 1e-12);
    }
}
