//! JSON configuration: a single document mirroring the physical parameters
//! and the sweep definition. Command-line flags override file values.

use anyhow::{bail, Context, Result};
use maser_core::EngineParams;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// The bundled default configuration: the reference engine (γ_h = 10⁻²,
/// γ_c = 10γ_h, n̄_h = 5, n̄_c = 10⁻³, ω₂₁ = 1/γ_h, ω₃₂ = 10/γ_h, ε = 0.05,
/// resonant drive) with a Δ×ε window for arnold mode and a T_c/T_h axis for
/// temperature mode.
pub const DEFAULT_CONFIG: &str = include_str!("../config/default.json");

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamsConfig {
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

impl ParamsConfig {
    pub fn to_params(&self) -> Result<EngineParams> {
        let p = EngineParams {
            omega1: self.omega1,
            omega2: self.omega2,
            omega3: self.omega3,
            omega_d: self.omega_d,
            epsilon: self.epsilon,
            gamma_h: self.gamma_h,
            gamma_c: self.gamma_c,
            nbar_h: self.nbar_h,
            nbar_c: self.nbar_c,
        };
        p.validate().context("invalid parameters in configuration")?;
        Ok(p)
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AxisConfig {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepConfig {
    pub mode: String,
    #[serde(default)]
    pub delta: Option<AxisConfig>,
    #[serde(default)]
    pub epsilon: Option<AxisConfig>,
    #[serde(default)]
    pub tc_over_th: Option<AxisConfig>,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Config {
    pub params: ParamsConfig,
    pub sweep: SweepConfig,
    #[serde(default)]
    pub threads: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl Config {
    /// Parse a configuration document.
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Config = serde_json::from_str(text).context("malformed configuration JSON")?;
        if cfg.sweep.mode != "arnold" && cfg.sweep.mode != "temperature" {
            bail!("unknown sweep mode {:?} (expected \"arnold\" or \"temperature\")", cfg.sweep.mode);
        }
        Ok(cfg)
    }

    /// Load from `path`, or the bundled default when `path` is `None`.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .with_context(|| format!("cannot read config {}", p.display()))?;
                Self::from_json(&text)
            }
            None => Self::from_json(DEFAULT_CONFIG),
        }
    }
}
