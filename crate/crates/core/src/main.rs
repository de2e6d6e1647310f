use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use rwa_core::harness::{
    self, cmd_bounds, cmd_epswindow, cmd_fig2, cmd_sweep, run_suite, verify_ibp_report_with, write_rows, Axis,
    Fig2Options, Format, IbpReport, Record, MAX_LEVELS, StateSpec, SuiteOptions, SweepSpec, Values,
};
use rwa_core::{ModelParams, RwaError, Spin};

#[derive(Parser, Debug)]
#[command(name = "rwa", version, about = "Rabi vs Jaynes-Cummings evolution and RWA error bounds")]
struct Cli {
    /// Worker threads; 0 lets the pool decide.
    #[arg(long, global = true, env = "RWA_THREADS", default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true, default_value = "csv")]
    format: Format,
    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct ParamArgs {
    /// Field frequency.
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["g", "delta"])]
    omega: Option<f64>,
    /// Coupling strength.
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["g", "delta"])]
    lambda: Option<f64>,
    /// Atomic transition frequency (defaults to omega).
    #[arg(long = "Omega", allow_negative_numbers = true, conflicts_with_all = ["g", "delta"])]
    big_omega: Option<f64>,
    /// Coupling ratio lambda/omega, with omega = 1.
    #[arg(long, allow_negative_numbers = true)]
    g: Option<f64>,
    /// Detuning Omega - omega in units of omega.
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,
}

impl ParamArgs {
    fn build(&self) -> Result<ModelParams, RwaError> {
        if let Some(g) = self.g {
            return ModelParams::from_ratio(g, self.delta.unwrap_or(0.0));
        }
        if self.delta.is_some() {
            return Err(RwaError::InvalidArgument("--delta needs --g".into()));
        }
        let lambda = self
            .lambda
            .ok_or_else(|| RwaError::InvalidArgument("give --g or --lambda".into()))?;
        let omega = self.omega.unwrap_or(1.0);
        ModelParams::new(omega, lambda, self.big_omega.unwrap_or(omega))
    }
}

#[derive(Args, Debug, Clone)]
struct StateArgs {
    /// fock:N | coherent:RE,IM | cat:RE,IM
    #[arg(long, default_value = "fock:10")]
    state: String,
    /// Spin of the initial state: 1 (excited) or 2.
    #[arg(long, default_value_t = 1)]
    spin: u8,
}

impl StateArgs {
    fn build(&self) -> Result<StateSpec, RwaError> {
        Ok(self.state.parse::<StateSpec>()?.with_spin(Spin::from_index(self.spin)?))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact error and both bounds at one time.
    Bounds {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Sweep photon number, time or coupling ratio.
    Sweep {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        axis: Axis,
        /// a,b,c or MIN:MAX:COUNT[:lin|log]
        #[arg(long, allow_hyphen_values = true)]
        values: Values,
        /// Time for the n and g axes.
        #[arg(long, default_value_t = 0.04)]
        t: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Exact error and bounds versus photon number (Fock states, zero detuning).
    Fig2 {
        #[arg(long, default_value_t = 0.01)]
        g: f64,
        /// omega * t
        #[arg(long, default_value_t = 0.04)]
        t: f64,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 10_000)]
        n_max: usize,
        #[arg(long, default_value_t = 40)]
        points: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Worst error over omega*t in [0, t-max] against the analytic window.
    Epswindow {
        #[arg(long)]
        g: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = PI)]
        t_max: f64,
        #[arg(long, default_value_t = 128)]
        grid: usize,
        #[arg(long, default_value_t = 30)]
        refine: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Run the invariant suite.
    Verify {
        /// Comma-separated subset of checks.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
        /// Use the shifted off-diagonal block frequency; the suite must fail.
        #[arg(long)]
        fault_inject: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Residual of the integration-by-parts identity.
    Ibp {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        /// Quadrature tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Exit with status 1 above this residual.
        #[arg(long, default_value_t = 1e-6)]
        max_residual: f64,
        /// Panel halvings allowed before giving up.
        #[arg(long, default_value_t = MAX_LEVELS)]
        max_levels: usize,
    },
}

#[derive(Serialize)]
struct IbpRow {
    state: String,
    t: f64,
    #[serde(flatten)]
    report: IbpReport,
}

impl Record for IbpRow {
    const HEADER: &'static [&'static str] = &["state", "t", "residual", "levels", "quadrature_change", "propagation_error"];

    fn cells(&self) -> Vec<String> {
        vec![
            self.state.clone(),
            harness::fmt_f64(self.t),
            harness::fmt_f64(self.report.residual),
            self.report.levels.to_string(),
            harness::fmt_f64(self.report.quadrature_change),
            harness::fmt_f64(self.report.propagation_error),
        ]
    }
}

fn emit<R: Record>(rows: &[R], cli: &Cli) -> Result<(), RwaError> {
    match &cli.out {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| RwaError::InvalidArgument(format!("cannot create {}: {e}", path.display())))?;
            write_rows(rows, cli.format, BufWriter::new(file))
        }
        None => write_rows(rows, cli.format, io::stdout().lock()),
    }
}

/// Exit status 1 when an assertion fails, 0 otherwise.
fn run(cli: &Cli) -> Result<u8, RwaError> {
    let ok = match &cli.command {
        Command::Bounds { params, state, t, tol } => {
            let row = cmd_bounds(&params.build()?, &state.build()?, *t, *tol)?;
            emit(std::slice::from_ref(&row), cli)?;
            row.proven_ok() == Some(true)
        }
        Command::Sweep {
            params,
            state,
            axis,
            values,
            t,
            tol,
        } => {
            let spec = SweepSpec {
                axis: *axis,
                values: values.clone(),
                params: params.build()?,
                state: state.build()?,
                t: *t,
                tol: *tol,
            };
            let rows = cmd_sweep(&spec)?;
            emit(&rows, cli)?;
            rows.iter().all(|r| r.proven_ok() != Some(false))
        }
        Command::Fig2 {
            g,
            t,
            n_min,
            n_max,
            points,
            tol,
        } => {
            let rows = cmd_fig2(&Fig2Options {
                g: *g,
                t: *t,
                n_min: *n_min,
                n_max: *n_max,
                points: *points,
                tol: *tol,
            })?;
            emit(&rows, cli)?;
            rows.iter().all(|r| r.sandwich_ok())
        }
        Command::Epswindow {
            g,
            n,
            t_max,
            grid,
            refine,
            tol,
        } => {
            let row = cmd_epswindow(*g, *n, *t_max, *grid, *refine, *tol)?;
            emit(std::slice::from_ref(&row), cli)?;
            row.in_window != Some(false)
        }
        Command::Verify {
            only,
            fault_inject,
            seed,
        } => {
            let results = run_suite(&SuiteOptions {
                fault_inject: *fault_inject,
                only: only.clone(),
                seed: *seed,
            })?;
            emit(&results, cli)?;
            results.iter().all(|r| r.passed)
        }
        Command::Ibp {
            params,
            state,
            t,
            tol,
            max_residual,
            max_levels,
        } => {
            let spec = state.build()?;
            let report = verify_ibp_report_with(&params.build()?, &spec.build()?, *t, *tol, *max_levels)?;
            let ok = report.residual <= *max_residual;
            emit(
                &[IbpRow {
                    state: spec.to_string(),
                    t: *t,
                    report,
                }],
                cli,
            )?;
            ok
        }
    };
    Ok(if ok { 0 } else { 1 })
}

fn report_error(kind: &str, message: &str) {
    let body = serde_json::json!({ "error": kind, "message": message });
    let _ = writeln!(io::stderr(), "{body}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            report_error("Usage", e.to_string().trim_end());
            return ExitCode::from(2);
        }
    };
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            report_error("Usage", &e.to_string());
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            report_error(e.kind(), &e.to_string());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
