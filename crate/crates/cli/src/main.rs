use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use wickwalk_cli::commands::{
    run_fig3, run_geometry, run_kernels, run_triangle, GeometryParams, GeometryReportKind, KernelParams,
    TriangleKind,
};
use wickwalk_cli::{CliError, CliResult, Overrides, RunConfig, EXIT_OK, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(name = "wickwalk", version, about = "Square-root Brownian paths, quantum Pascal rows and friends")]
struct Cli {
    /// RNG seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of simulated paths.
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Steps per path.
    #[arg(long, global = true)]
    steps: Option<usize>,
    /// Final time T.
    #[arg(long, global = true)]
    horizon: Option<f64>,
    /// Histogram bins.
    #[arg(long, global = true)]
    bins: Option<usize>,
    /// KS significance level.
    #[arg(long, global = true)]
    alpha: Option<f64>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// `key = value` file or a previous manifest.json.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Brownian endpoints vs. Wick-rotated square-root endpoints.
    Fig3,
    /// Classical and quantum Pascal rows with convergence diagnostics.
    Triangle {
        #[arg(long, default_value_t = 20)]
        n_max: u32,
        #[arg(long, value_enum, default_value_t = TriangleKind::Both)]
        kind: TriangleKind,
    },
    /// Circle, oscillator and sphere checks.
    Geometry {
        #[arg(long, value_enum, default_value_t = GeometryReportKind::All)]
        report: GeometryReportKind,
        #[arg(long, default_value_t = 64)]
        n_points: usize,
        #[arg(long, default_value_t = 10)]
        max_quanta: u32,
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[arg(long, default_value_t = 1000)]
        sphere_samples: usize,
    },
    /// Heat and Schrödinger kernels and the identity linking them.
    Kernels {
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long, default_value_t = 40)]
        nx: usize,
        #[arg(long, default_value_t = 25)]
        nt: usize,
    },
}

fn finish<R: Serialize>(name: &str, report: &R, passed: bool) -> CliResult<()> {
    println!("{}", serde_json::to_string_pretty(report).expect("report serializes"));
    if passed {
        Ok(())
    } else {
        Err(CliError::Statistical(format!("{name}: one or more checks failed")))
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let flags = Overrides {
        seed: cli.seed,
        trials: cli.trials,
        steps: cli.steps,
        horizon: cli.horizon,
        n_bins: cli.bins,
        alpha: cli.alpha,
        output_dir: cli.out,
    };
    let config = RunConfig::resolve(cli.config.as_deref(), &flags)?;
    match cli.command {
        Command::Fig3 => {
            let r = run_fig3(&config)?;
            finish("fig3", &r, r.passed)
        }
        Command::Triangle { n_max, kind } => {
            let r = run_triangle(&config, n_max, kind)?;
            finish("triangle", &r, r.passed)
        }
        Command::Geometry { report, n_points, max_quanta, omega, hbar, sphere_samples } => {
            let params = GeometryParams { report, n_points, max_quanta, omega, hbar, sphere_samples };
            let r = run_geometry(&config, &params)?;
            finish("geometry", &r, r.passed)
        }
        Command::Kernels { hbar, mass, nx, nt } => {
            let r = run_kernels(&config, &KernelParams { hbar, mass, nx, nt })?;
            finish("kernels", &r, r.passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wickwalk: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
