//! `maser` — steady states, trajectories, Arnold-tongue sweeps, and
//! self-verification for the driven three-level maser heat engine.
//!
//! Units: ħ = k_B = 1; every frequency and rate is in the same inverse-time
//! unit, temperatures in the same energy unit.

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use maser_cli::config::Config;
use maser_cli::csv_out::write_csv;
use maser_cli::sweep::{run_sweep, SweepMode, SweepSpec};
use maser_cli::verify::verify_suite;
use maser_core::{
    evolve_sampled, steady_state_analytic, steady_state_nullspace, sync_max, thermo_report,
    trace_distance, DensityMatrix, EngineParams,
};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "maser",
    version,
    about = "Driven three-level maser heat engine: steady states, synchronization, sweeps",
    after_help = "Units: hbar = k_B = 1; frequencies, rates and temperatures share one unit.\n\
                  Exit codes: 0 success, 1 verification failure, 2 configuration error."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Clone)]
struct ParamOverrides {
    /// JSON configuration file (bundled defaults when omitted)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override the drive detuning (delta = omega32 - omega_d)
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,
    /// Override the drive strength epsilon
    #[arg(long)]
    epsilon: Option<f64>,
    /// Override the cold-bath occupation nbar_c
    #[arg(long)]
    nbar_c: Option<f64>,
}

impl ParamOverrides {
    fn resolve(&self) -> Result<(Config, EngineParams)> {
        let cfg = Config::load(self.config.as_deref())?;
        let mut p = cfg.params.to_params()?;
        if let Some(delta) = self.delta {
            p = p.with_detuning(delta);
        }
        if let Some(eps) = self.epsilon {
            p.epsilon = eps;
        }
        if let Some(nc) = self.nbar_c {
            p.nbar_c = nc;
        }
        p.validate().context("overridden parameters are invalid")?;
        Ok((cfg, p))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the steady state by both routes and report its energetics
    Steady {
        #[command(flatten)]
        params: ParamOverrides,
    },
    /// Integrate the master equation from the ground state and emit the
    /// trajectory as CSV
    Evolve {
        #[command(flatten)]
        params: ParamOverrides,
        /// Final time (defaults to 50 / gamma_h)
        #[arg(long)]
        t_final: Option<f64>,
        /// Integration step (defaults to 0.1 over the fastest rate)
        #[arg(long)]
        dt: Option<f64>,
        /// Keep every N-th step
        #[arg(long, default_value_t = 1)]
        store_every: usize,
        /// Output CSV path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a parameter grid and write the results as CSV
    Sweep {
        /// JSON configuration file (bundled defaults when omitted)
        #[arg(long)]
        config: Option<PathBuf>,
        /// Sweep mode: arnold (delta x epsilon) or temperature (Tc/Th)
        #[arg(long)]
        mode: Option<String>,
        /// Output CSV path
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, allow_negative_numbers = true)]
        delta_min: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        delta_max: Option<f64>,
        #[arg(long)]
        delta_points: Option<usize>,
        #[arg(long)]
        epsilon_min: Option<f64>,
        #[arg(long)]
        epsilon_max: Option<f64>,
        #[arg(long)]
        epsilon_points: Option<usize>,
        #[arg(long)]
        tcth_min: Option<f64>,
        #[arg(long)]
        tcth_max: Option<f64>,
        #[arg(long)]
        tcth_points: Option<usize>,
        /// Worker threads (results are identical for any count)
        #[arg(long)]
        threads: Option<usize>,
        /// Recorded in the log; grid evaluation itself is deterministic
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the self-verification suite (exit code 1 on any failed check)
    Verify {
        /// RNG seed for the random draws
        #[arg(long)]
        seed: Option<u64>,
        /// Number of random parameter draws
        #[arg(long, default_value_t = 200)]
        draws: usize,
        /// Emit the report as JSON on stdout
        #[arg(long)]
        json: bool,
    },
}

fn cmd_steady(params: &ParamOverrides) -> Result<ExitCode> {
    let (_, p) = params.resolve()?;
    let sol = steady_state_analytic(&p)?;
    let ns = steady_state_nullspace(&p)?;
    let rep = thermo_report(&p, &sol.rho_ss)?;
    let sync = sync_max(&sol.rho_ss);
    let m = sol.rho_ss.matrix();

    println!("parameters:");
    println!(
        "  omega21 = {}, omega32 = {}, delta = {}, epsilon = {}",
        p.omega21(),
        p.omega32(),
        p.delta(),
        p.epsilon
    );
    println!(
        "  gamma_h = {}, nbar_h = {}, gamma_c = {}, nbar_c = {}",
        p.gamma_h, p.nbar_h, p.gamma_c, p.nbar_c
    );
    println!("steady state (closed form):");
    println!(
        "  populations = ({:.12e}, {:.12e}, {:.12e})",
        m[(0, 0)].re,
        m[(1, 1)].re,
        m[(2, 2)].re
    );
    println!(
        "  rho23 = {:.12e} {:+.12e} i   |rho23| = {:.12e}",
        m[(1, 2)].re,
        m[(1, 2)].im,
        m[(1, 2)].norm()
    );
    println!(
        "  cross-check: trace distance to null-space route = {:.3e}",
        trace_distance(&sol.rho_ss, &ns)
    );
    println!("synchronization:");
    println!(
        "  s_max = {:.12e} at (phi1, phi2) = ({:.6}, {:.6})",
        sync.s_max, sync.argmax.0, sync.argmax.1
    );
    println!("thermodynamics:");
    println!(
        "  power = {:.12e}  |power| = {:.12e}  bound = {:.12e}",
        rep.power_ss, rep.abs_power, rep.bound
    );
    println!(
        "  qdot_h = {:.12e}  qdot_c = {:.12e}",
        rep.qdot_h, rep.qdot_c
    );
    println!(
        "  efficiency = {:.12e}  carnot = {:.12e}  entropy production = {:.12e}",
        rep.efficiency, rep.carnot, rep.entropy_production
    );
    println!("  regime = {}", rep.regime);
    Ok(ExitCode::SUCCESS)
}

fn cmd_evolve(
    params: &ParamOverrides,
    t_final: Option<f64>,
    dt: Option<f64>,
    store_every: usize,
    out: Option<&PathBuf>,
) -> Result<ExitCode> {
    let (_, p) = params.resolve()?;
    let t_final = t_final.unwrap_or(50.0 / p.gamma_h.max(f64::MIN_POSITIVE));
    let dt = dt.unwrap_or_else(|| {
        let d = p.default_dt();
        if d.is_finite() {
            d
        } else {
            t_final / 100.0
        }
    });
    let rho0 = DensityMatrix::ground();
    let traj = evolve_sampled(&rho0, &p, t_final, dt, store_every)?;
    let steady = steady_state_analytic(&p).ok().map(|s| s.rho_ss);

    let mut text = String::from(
        "time,rho11,rho22,rho33,re_rho12,im_rho12,re_rho13,im_rho13,re_rho23,im_rho23,dist_to_steady\n",
    );
    for (t, state) in &traj.samples {
        let m = state.matrix();
        let dist = steady
            .as_ref()
            .map(|s| format!("{:.11e}", trace_distance(state, s)))
            .unwrap_or_default();
        text.push_str(&format!(
            "{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{}\n",
            t,
            m[(0, 0)].re,
            m[(1, 1)].re,
            m[(2, 2)].re,
            m[(0, 1)].re,
            m[(0, 1)].im,
            m[(0, 2)].re,
            m[(0, 2)].im,
            m[(1, 2)].re,
            m[(1, 2)].im,
            dist
        ));
    }
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    eprintln!(
        "evolved to t = {} in {} samples; max trace drift {:.2e}",
        t_final,
        traj.samples.len(),
        traj.max_trace_drift
    );
    if traj.positivity_warning {
        eprintln!(
            "warning: an eigenvalue dipped to {:.2e}; consider a smaller dt",
            traj.min_eigenvalue
        );
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    config: Option<&PathBuf>,
    mode: Option<&str>,
    out: Option<&PathBuf>,
    delta: (Option<f64>, Option<f64>, Option<usize>),
    epsilon: (Option<f64>, Option<f64>, Option<usize>),
    tcth: (Option<f64>, Option<f64>, Option<usize>),
    threads: Option<usize>,
    seed: Option<u64>,
) -> Result<ExitCode> {
    let mut cfg = Config::load(config.map(|p| p.as_path()))?;
    if let Some(mode) = mode {
        cfg.sweep.mode = mode.to_string();
    }
    if let Some(threads) = threads {
        cfg.threads = Some(threads);
    }
    if let Some(seed) = seed {
        cfg.seed = Some(seed);
    }
    let override_axis = |axis: &mut Option<maser_cli::config::AxisConfig>,
                         (min, max, points): (Option<f64>, Option<f64>, Option<usize>)| {
        if min.is_none() && max.is_none() && points.is_none() {
            return;
        }
        let mut a = axis.unwrap_or(maser_cli::config::AxisConfig {
            min: 0.0,
            max: 0.0,
            points: 2,
        });
        if let Some(v) = min {
            a.min = v;
        }
        if let Some(v) = max {
            a.max = v;
        }
        if let Some(v) = points {
            a.points = v;
        }
        *axis = Some(a);
    };
    override_axis(&mut cfg.sweep.delta, delta);
    override_axis(&mut cfg.sweep.epsilon, epsilon);
    override_axis(&mut cfg.sweep.tc_over_th, tcth);

    let spec = SweepSpec::from_config(&cfg)?;
    let out_path = out
        .cloned()
        .or(cfg.sweep.out.clone())
        .context("no output path: pass --out or set sweep.out in the config")?;

    eprintln!(
        "sweep: mode {}, {} cells, seed {:?}",
        match spec.mode {
            SweepMode::Arnold => "arnold",
            SweepMode::Temperature => "temperature",
        },
        spec.grid_size(),
        cfg.seed
    );
    let rows = run_sweep(&spec)?;
    write_csv(&rows, &out_path)?;
    eprintln!("wrote {} rows to {}", rows.len(), out_path.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(seed: Option<u64>, draws: usize, json: bool) -> Result<ExitCode> {
    let report = verify_suite(seed.unwrap_or(42), draws);
    if json {
        println!("{}", report.to_json());
    } else {
        println!("{report}");
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match &cli.cmd {
        Command::Steady { params } => cmd_steady(params),
        Command::Evolve {
            params,
            t_final,
            dt,
            store_every,
            out,
        } => cmd_evolve(params, *t_final, *dt, *store_every, out.as_ref()),
        Command::Sweep {
            config,
            mode,
            out,
            delta_min,
            delta_max,
            delta_points,
            epsilon_min,
            epsilon_max,
            epsilon_points,
            tcth_min,
            tcth_max,
            tcth_points,
            threads,
            seed,
        } => cmd_sweep(
            config.as_ref(),
            mode.as_deref(),
            out.as_ref(),
            (*delta_min, *delta_max, *delta_points),
            (*epsilon_min, *epsilon_max, *epsilon_points),
            (*tcth_min, *tcth_max, *tcth_points),
            *threads,
            *seed,
        ),
        Command::Verify { seed, draws, json } => cmd_verify(*seed, *draws, *json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
