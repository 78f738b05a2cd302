//! Parameter-grid sweeps over the engine's steady state.

use crate::config::{AxisConfig, Config};
use anyhow::{bail, Context, Result};
use maser_core::{
    nbar_from_temperature, steady_state_analytic, sync_max, temperature_from_nbar, thermo_report,
    EngineParams,
};
use rayon::prelude::*;

/// Hard ceiling on the number of grid cells.
pub const MAX_CELLS: usize = 10_000_000;

/// A linearly spaced sweep axis.
#[derive(Debug, Clone, Copy)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Axis {
    fn validate(&self, name: &str) -> Result<()> {
        if !self.min.is_finite() || !self.max.is_finite() {
            bail!("axis {name}: bounds must be finite");
        }
        match self.points {
            0 => bail!("axis {name}: needs at least one point"),
            1 => {
                if self.min != self.max {
                    bail!("axis {name}: a single-point axis requires min == max");
                }
            }
            _ => {
                if self.min >= self.max {
                    bail!("axis {name}: min must be below max");
                }
            }
        }
        Ok(())
    }

    /// Value at grid index `i`.
    pub fn value(&self, i: usize) -> f64 {
        if self.points == 1 {
            self.min
        } else {
            self.min + (self.max - self.min) * i as f64 / (self.points - 1) as f64
        }
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(|i| self.value(i))
    }
}

impl From<AxisConfig> for Axis {
    fn from(a: AxisConfig) -> Self {
        Axis {
            min: a.min,
            max: a.max,
            points: a.points,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    /// Sweep detuning × drive strength at fixed baths.
    Arnold,
    /// Sweep the bath-temperature ratio by varying n̄_c at fixed n̄_h.
    Temperature,
}

/// A fully validated sweep definition.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub mode: SweepMode,
    pub delta: Option<Axis>,
    pub epsilon: Option<Axis>,
    pub tc_over_th: Option<Axis>,
    pub base: EngineParams,
    pub threads: Option<usize>,
}

impl SweepSpec {
    pub fn from_config(cfg: &Config) -> Result<Self> {
        let base = cfg.params.to_params()?;
        let mode = match cfg.sweep.mode.as_str() {
            "arnold" => SweepMode::Arnold,
            "temperature" => SweepMode::Temperature,
            other => bail!("unknown sweep mode {other:?}"),
        };
        let spec = SweepSpec {
            mode,
            delta: cfg.sweep.delta.map(Into::into),
            epsilon: cfg.sweep.epsilon.map(Into::into),
            tc_over_th: cfg.sweep.tc_over_th.map(Into::into),
            base,
            threads: cfg.threads,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self.mode {
            SweepMode::Arnold => {
                let d = self.delta.context("arnold mode needs a delta axis")?;
                let e = self.epsilon.context("arnold mode needs an epsilon axis")?;
                d.validate("delta")?;
                e.validate("epsilon")?;
                if e.min < 0.0 {
                    bail!("axis epsilon: drive strengths must be non-negative");
                }
            }
            SweepMode::Temperature => {
                let t = self
                    .tc_over_th
                    .context("temperature mode needs a tc_over_th axis")?;
                t.validate("tc_over_th")?;
                if t.min < 0.0 {
                    bail!("axis tc_over_th: temperature ratios must be non-negative");
                }
                if self.base.nbar_h <= 0.0 {
                    bail!("temperature mode needs nbar_h > 0 to set the hot temperature");
                }
            }
        }
        let cells = self.grid_size();
        if cells > MAX_CELLS {
            bail!("grid has {cells} cells, above the {MAX_CELLS} guard");
        }
        Ok(())
    }

    pub fn grid_size(&self) -> usize {
        match self.mode {
            SweepMode::Arnold => {
                self.delta.map_or(0, |a| a.points) * self.epsilon.map_or(0, |a| a.points)
            }
            SweepMode::Temperature => self.tc_over_th.map_or(0, |a| a.points),
        }
    }
}

/// One evaluated grid cell.
#[derive(Debug, Clone)]
pub struct ResultRow {
    pub delta: Option<f64>,
    pub epsilon: Option<f64>,
    pub tc_over_th: Option<f64>,
    pub s_max: f64,
    pub power_ss: f64,
    pub abs_power: f64,
    pub bound: f64,
    pub qdot_h: f64,
    pub qdot_c: f64,
    pub efficiency: f64,
    pub carnot: f64,
    pub entropy: f64,
    /// engine / fridge / degenerate, or "error" when the cell failed.
    pub regime: String,
}

impl ResultRow {
    fn error_row(delta: Option<f64>, epsilon: Option<f64>, tc_over_th: Option<f64>) -> Self {
        ResultRow {
            delta,
            epsilon,
            tc_over_th,
            s_max: f64::NAN,
            power_ss: f64::NAN,
            abs_power: f64::NAN,
            bound: f64::NAN,
            qdot_h: f64::NAN,
            qdot_c: f64::NAN,
            efficiency: f64::NAN,
            carnot: f64::NAN,
            entropy: f64::NAN,
            regime: "error".into(),
        }
    }
}

fn evaluate_cell(
    p: &EngineParams,
    delta: Option<f64>,
    epsilon: Option<f64>,
    tc_over_th: Option<f64>,
) -> ResultRow {
    let Ok(sol) = steady_state_analytic(p) else {
        return ResultRow::error_row(delta, epsilon, tc_over_th);
    };
    let Ok(rep) = thermo_report(p, &sol.rho_ss) else {
        return ResultRow::error_row(delta, epsilon, tc_over_th);
    };
    ResultRow {
        delta,
        epsilon,
        tc_over_th,
        s_max: sync_max(&sol.rho_ss).s_max,
        power_ss: rep.power_ss,
        abs_power: rep.abs_power,
        bound: rep.bound,
        qdot_h: rep.qdot_h,
        qdot_c: rep.qdot_c,
        efficiency: rep.efficiency,
        carnot: rep.carnot,
        entropy: rep.entropy_production,
        regime: rep.regime.as_str().into(),
    }
}

fn cell_row(spec: &SweepSpec, index: usize) -> ResultRow {
    match spec.mode {
        SweepMode::Arnold => {
            let e_axis = spec.epsilon.expect("validated");
            let d_axis = spec.delta.expect("validated");
            // row-major over (delta, epsilon) as declared
            let delta = d_axis.value(index / e_axis.points);
            let epsilon = e_axis.value(index % e_axis.points);
            let mut p = spec.base.with_detuning(delta);
            p.epsilon = epsilon;
            evaluate_cell(&p, Some(delta), Some(epsilon), None)
        }
        SweepMode::Temperature => {
            let axis = spec.tc_over_th.expect("validated");
            let ratio = axis.value(index);
            // vary nbar_c at fixed nbar_h so T_c/T_h lands on the requested
            // ratio, then derive the reported column back from nbar_c
            let t_h = match temperature_from_nbar(spec.base.omega31(), spec.base.nbar_h) {
                Ok(t) => t,
                Err(_) => return ResultRow::error_row(None, None, Some(ratio)),
            };
            let nbar_c = match nbar_from_temperature(spec.base.omega21(), ratio * t_h) {
                Ok(n) => n,
                Err(_) => return ResultRow::error_row(None, None, Some(ratio)),
            };
            let mut p = spec.base;
            p.nbar_c = nbar_c;
            let derived_ratio = temperature_from_nbar(p.omega21(), p.nbar_c)
                .map(|t_c| t_c / t_h)
                .unwrap_or(f64::NAN);
            evaluate_cell(&p, None, None, Some(derived_ratio))
        }
    }
}

/// Evaluate every grid cell: closed-form steady state, synchronization
/// maximum, and thermodynamic report.
///
/// Cells are independent work items; output ordering is row-major over the
/// declared axes and identical for any worker count. Per-cell failures
/// become rows flagged `regime = "error"` rather than aborting the sweep.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<ResultRow>> {
    spec.validate()?;
    let n = spec.grid_size();
    let compute = |i: usize| {
        let row = cell_row(spec, i);
        debug_assert!(
            !(row.abs_power.is_finite() && row.abs_power > row.bound + 1e-12),
            "power bound violated at cell {i}"
        );
        row
    };
    let rows: Vec<ResultRow> = match spec.threads {
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .context("cannot build worker pool")?;
            pool.install(|| (0..n).into_par_iter().map(compute).collect())
        }
        None => (0..n).into_par_iter().map(compute).collect(),
    };
    // re-validate the power bound on every emitted row
    for (i, row) in rows.iter().enumerate() {
        if row.abs_power.is_finite() && row.abs_power > row.bound + 1e-12 {
            bail!(
                "cell {i}: |P| = {} exceeds the synchronization bound {}",
                row.abs_power,
                row.bound
            );
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;

    fn reference_spec(mode: SweepMode) -> SweepSpec {
        let cfg = Config::load(None).unwrap();
        let mut spec = SweepSpec::from_config(&cfg).unwrap();
        spec.mode = mode;
        spec
    }

    #[test]
    fn axis_values_hit_endpoints() {
        let a = Axis {
            min: -0.5,
            max: 0.5,
            points: 101,
        };
        assert_eq!(a.value(0), -0.5);
        assert_eq!(a.value(100), 0.5);
        assert_eq!(a.value(50), 0.0);
    }

    #[test]
    fn axis_validation() {
        assert!(Axis { min: 0.0, max: 1.0, points: 0 }.validate("x").is_err());
        assert!(Axis { min: 1.0, max: 0.0, points: 5 }.validate("x").is_err());
        assert!(Axis { min: 0.3, max: 0.3, points: 1 }.validate("x").is_ok());
        assert!(Axis { min: 0.3, max: 0.4, points: 1 }.validate("x").is_err());
        assert!(Axis { min: 0.0, max: f64::INFINITY, points: 2 }.validate("x").is_err());
    }

    #[test]
    fn grid_guard_rejects_huge_sweeps() {
        let mut spec = reference_spec(SweepMode::Arnold);
        spec.delta = Some(Axis { min: -0.5, max: 0.5, points: 100_000 });
        spec.epsilon = Some(Axis { min: 0.0, max: 0.1, points: 1_000 });
        assert!(spec.validate().is_err());
    }

    #[test]
    fn arnold_three_by_three_grid() {
        // ε columns {0.01, 0.05, 0.1} over Δ rows {−0.25, 0, 0.25}: the
        // resonance column wins for the two weaker drives, while at ε = 0.1
        // the coherence saturates on resonance and the detuned cells are
        // larger
        let mut spec = reference_spec(SweepMode::Arnold);
        spec.delta = Some(Axis { min: -0.25, max: 0.25, points: 3 });
        let mut columns: Vec<Vec<f64>> = vec![vec![]; 3];
        for (k, eps) in [0.01, 0.05, 0.1].iter().enumerate() {
            let mut s = spec.clone();
            s.epsilon = Some(Axis { min: *eps, max: *eps, points: 1 });
            let rows = run_sweep(&s).unwrap();
            assert_eq!(rows.len(), 3);
            columns[k] = rows.iter().map(|r| r.s_max).collect();
        }
        // argmax over Δ for each ε column
        let argmax = |v: &[f64]| {
            v.iter()
                .enumerate()
                .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                .unwrap()
                .0
        };
        assert_eq!(argmax(&columns[0]), 1, "eps=0.01 peaks at resonance");
        assert_eq!(argmax(&columns[1]), 1, "eps=0.05 peaks at resonance");
        assert_ne!(argmax(&columns[2]), 1, "eps=0.10 peaks off resonance");
        assert!((columns[2][0] - columns[2][2]).abs() <= 1e-15);
        assert!(columns[2][0] > columns[2][1]);
    }

    #[test]
    fn temperature_sweep_minimum_at_crossing() {
        let mut spec = reference_spec(SweepMode::Temperature);
        spec.base.epsilon = 0.05;
        spec.tc_over_th = Some(Axis { min: 0.02, max: 0.16, points: 29 });
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 29);
        let crossing = spec.base.omega21() / spec.base.omega31();
        let (i_min_s, _) = rows
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.s_max.partial_cmp(&b.1.s_max).unwrap())
            .unwrap();
        let (i_min_p, _) = rows
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.abs_power.partial_cmp(&b.1.abs_power).unwrap())
            .unwrap();
        // the grid cell nearest the ratio ω₂₁/ω₃₁ minimizes both
        let (i_cross, _) = rows
            .iter()
            .enumerate()
            .min_by(|a, b| {
                let da = (a.1.tc_over_th.unwrap() - crossing).abs();
                let db = (b.1.tc_over_th.unwrap() - crossing).abs();
                da.partial_cmp(&db).unwrap()
            })
            .unwrap();
        assert_eq!(i_min_s, i_cross);
        assert_eq!(i_min_p, i_cross);
        // regimes flip across the crossing
        assert_eq!(rows[i_cross - 1].regime, "engine");
        assert_eq!(rows[i_cross + 1].regime, "fridge");
        // requested and re-derived ratios agree to round-off
        for (i, row) in rows.iter().enumerate() {
            let requested = spec.tc_over_th.unwrap().value(i);
            assert!((row.tc_over_th.unwrap() - requested).abs() <= 1e-12 * requested);
        }
    }

    #[test]
    fn single_cell_matches_direct_library_calls() {
        let mut spec = reference_spec(SweepMode::Arnold);
        spec.delta = Some(Axis { min: 0.25, max: 0.25, points: 1 });
        spec.epsilon = Some(Axis { min: 0.05, max: 0.05, points: 1 });
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 1);
        let p = spec.base.with_detuning(0.25);
        let sol = steady_state_analytic(&p).unwrap();
        let rep = thermo_report(&p, &sol.rho_ss).unwrap();
        let row = &rows[0];
        assert_eq!(row.power_ss, rep.power_ss);
        assert_eq!(row.bound, rep.bound);
        assert_eq!(row.qdot_h, rep.qdot_h);
        assert_eq!(row.s_max, sync_max(&sol.rho_ss).s_max);
        assert_eq!(row.regime, "engine");
    }

    #[test]
    fn results_independent_of_worker_count() {
        let mut spec = reference_spec(SweepMode::Arnold);
        spec.delta = Some(Axis { min: -0.3, max: 0.3, points: 7 });
        spec.epsilon = Some(Axis { min: 0.0, max: 0.1, points: 5 });
        spec.threads = Some(1);
        let one = run_sweep(&spec).unwrap();
        spec.threads = Some(4);
        let four = run_sweep(&spec).unwrap();
        assert_eq!(one.len(), four.len());
        for (a, b) in one.iter().zip(&four) {
            assert_eq!(a.power_ss.to_bits(), b.power_ss.to_bits());
            assert_eq!(a.s_max.to_bits(), b.s_max.to_bits());
            assert_eq!(a.entropy.to_bits(), b.entropy.to_bits());
            assert_eq!(a.regime, b.regime);
        }
    }

    #[test]
    fn row_major_ordering_over_declared_axes() {
        let mut spec = reference_spec(SweepMode::Arnold);
        spec.delta = Some(Axis { min: -0.1, max: 0.1, points: 2 });
        spec.epsilon = Some(Axis { min: 0.01, max: 0.03, points: 3 });
        let rows = run_sweep(&spec).unwrap();
        let coords: Vec<(f64, f64)> = rows
            .iter()
            .map(|r| (r.delta.unwrap(), r.epsilon.unwrap()))
            .collect();
        let expected = [
            (-0.1, 0.01),
            (-0.1, 0.02),
            (-0.1, 0.03),
            (0.1, 0.01),
            (0.1, 0.02),
            (0.1, 0.03),
        ];
        for (got, want) in coords.iter().zip(&expected) {
            assert!((got.0 - want.0).abs() <= 1e-15);
            assert!((got.1 - want.1).abs() <= 1e-15);
        }
    }
}
