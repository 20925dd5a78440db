use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ecd_core::spin::Vec3;
use ecd_sweep::output::write_file;
use ecd_sweep::{
    csv_string, parse_bins, parse_grid, parse_reals, parse_vec3, render_svg, run_sweep,
    ConfigLayer, Grid, SweepConfig, SweepError,
};

/// Entropic chaos degree of classical maps and spin dynamics.
#[derive(Parser)]
#[command(name = "ecd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep a parameter of the logistic, baker or Tinkerbell map.
    Classical {
        /// logistic, baker or tinkerbell.
        #[arg(long, default_value = "logistic")]
        map: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Sweep a parameter of the spin field dynamics.
    Spin {
        /// 1 or 2.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        example: u8,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run a sweep described by a TOML file; flags override its values.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// logistic, baker, tinkerbell, spin-example1 or spin-example2.
        #[arg(long)]
        target: Option<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run the built-in consistency checks.
    Selftest,
}

#[derive(Args, Default)]
struct RunArgs {
    /// Swept parameter (mu, x0, y0, a, b, c, d, theta, omega_tau).
    #[arg(long)]
    param: Option<String>,
    /// start:stop:count, inclusive of stop.
    #[arg(long, value_parser = grid_arg, allow_hyphen_values = true)]
    grid: Option<Grid>,
    /// Transient iterations discarded before the window.
    #[arg(long)]
    skip: Option<usize>,
    /// Window span.
    #[arg(long)]
    window: Option<usize>,
    /// Bins per axis; several values report the largest degree.
    #[arg(long)]
    bins: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Initial points pooled per grid point.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    workers: Option<usize>,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    mu: Option<f64>,
    /// Initial point, one or two comma-separated coordinates.
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<String>,
    /// Tinkerbell a,b,c,d.
    #[arg(long, allow_hyphen_values = true)]
    map_params: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    omega_tau: Option<f64>,
    /// Initial field x,y,z.
    #[arg(long, value_parser = vec3_arg, allow_hyphen_values = true)]
    e0: Option<Vec3>,
    /// Observable Bloch vector x,y,z.
    #[arg(long = "observable-vector", value_parser = vec3_arg, allow_hyphen_values = true)]
    a: Option<Vec3>,
    /// State Bloch vector x,y,z.
    #[arg(long, value_parser = vec3_arg, allow_hyphen_values = true)]
    rho: Option<Vec3>,
    /// full or reduced.
    #[arg(long)]
    observable: Option<String>,
}

fn grid_arg(s: &str) -> Result<Grid, String> {
    parse_grid(s).map_err(|e| e.to_string())
}

fn vec3_arg(s: &str) -> Result<Vec3, String> {
    parse_vec3(s).map_err(|e| e.to_string())
}

impl RunArgs {
    fn into_layer(self, target: Option<String>) -> Result<ConfigLayer, SweepError> {
        Ok(ConfigLayer {
            target,
            param: self.param,
            grid: self.grid,
            skip: self.skip,
            window: self.window,
            bins: self.bins.as_deref().map(parse_bins).transpose()?,
            seed: self.seed,
            samples: self.samples,
            workers: self.workers,
            csv: self.csv,
            svg: self.svg,
            mu: self.mu,
            x0: self.x0.as_deref().map(parse_reals).transpose()?,
            map_params: self.map_params.as_deref().map(parse_reals).transpose()?,
            theta: self.theta,
            omega_tau: self.omega_tau,
            e0: self.e0,
            a: self.a,
            rho: self.rho,
            observable: self.observable,
        })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let layer = match cli.command {
        Command::Selftest => return selftest(),
        Command::Classical { map, run } => run.into_layer(Some(map)),
        Command::Spin { example, run } => run.into_layer(Some(format!("spin-example{example}"))),
        Command::Sweep {
            config,
            target,
            run,
        } => {
            let flags = run.into_layer(target);
            ConfigLayer::from_file(&config).and_then(|file| Ok(file.overlay(flags?)))
        }
    };
    match layer
        .and_then(SweepConfig::resolve)
        .and_then(|cfg| execute(&cfg))
    {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(cfg: &SweepConfig) -> Result<(), SweepError> {
    let result = run_sweep(cfg)?;
    let csv = csv_string(&result.rows);
    match &cfg.csv {
        Some(path) => write_file(path, &csv)?,
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(csv.as_bytes())
                .map_err(|source| SweepError::Io {
                    path: "<stdout>".into(),
                    source,
                })?;
        }
    }
    if let Some(path) = &cfg.svg {
        write_file(path, &render_svg(&result.rows, result.param_name))?;
    }
    Ok(())
}

fn selftest() -> ExitCode {
    let outcomes = ecd_core::selftest::run_all();
    let mut failed = 0;
    for o in &outcomes {
        println!(
            "{} {}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.detail
        );
        failed += usize::from(!o.passed);
    }
    println!("{} checks, {failed} failed", outcomes.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}
