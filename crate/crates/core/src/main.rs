use std::fs::File;
use std::io::{self, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use photon_frames::sweep::{
    convergence_gap, convergence_tolerance, plot_script, preset_fig2, preset_fig3, run_sweep,
    single_point, write_csv, SweepConfig, SweepRow,
};
use photon_frames::validate::validate;
use photon_frames::Error;

const EXIT_INVALID_CONFIG: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_CONVERGENCE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "photon-frames",
    version,
    about = "Polarization entanglement of photon beam pairs in boosted frames"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Log negativity at a single boost
    Single {
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma_theta: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        xi: f64,
        #[arg(long, default_value_t = 64)]
        n_theta: usize,
        #[arg(long, default_value_t = 64)]
        n_phi: usize,
        #[arg(long, default_value_t = 1.0)]
        p0: f64,
    },
    /// Rapidity sweep from a JSON config and/or flags
    Sweep {
        /// JSON file with SweepConfig fields
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        #[arg(long)]
        sigma_theta: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        xi_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        xi_max: Option<f64>,
        #[arg(long)]
        xi_steps: Option<usize>,
        #[arg(long)]
        n_theta: Option<usize>,
        #[arg(long)]
        n_phi: Option<usize>,
        #[arg(long)]
        p0: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Boost-direction curves at fixed spread
    Fig2 {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Spread curves at fixed boost direction
    Fig3 {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the invariant suite and print a JSON report
    Validate,
}

#[derive(Args)]
struct OutputArgs {
    /// CSV output path
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a gnuplot script next to the CSV
    #[arg(long)]
    plot: bool,
    /// Append a wall_time_ms column
    #[arg(long)]
    timing: bool,
    /// Recompute on a doubled grid and fail if the curves move
    #[arg(long)]
    check_convergence: bool,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure::Sim(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID_CONFIG)
        }
    }
}

enum Failure {
    Sim(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Sim(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Single {
            alpha,
            sigma_theta,
            xi,
            n_theta,
            n_phi,
            p0,
        } => {
            let r = single_point(alpha, sigma_theta, xi, n_theta, n_phi, p0)?;
            println!("{}", r.log_negativity);
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            config,
            alpha,
            sigma_theta,
            xi_min,
            xi_max,
            xi_steps,
            n_theta,
            n_phi,
            p0,
            output,
        } => {
            let mut cfg = match &config {
                Some(path) => SweepConfig::from_path(path)?,
                None => SweepConfig::default(),
            };
            macro_rules! apply {
                ($($f:ident),*) => { $( if let Some(v) = $f { cfg.$f = v; } )* };
            }
            apply!(
                alpha,
                sigma_theta,
                xi_min,
                xi_max,
                xi_steps,
                n_theta,
                n_phi,
                p0
            );
            if let Some(out) = &output.out {
                cfg.output_path = out.display().to_string();
            }
            cfg.validate()?;
            let path = PathBuf::from(&cfg.output_path);
            emit(&[cfg], &path, &output, "sweep")
        }
        Command::Fig2 { output } => {
            let path = output.out.clone().unwrap_or_else(|| "fig2.csv".into());
            emit(
                &preset_fig2(),
                &path,
                &output,
                "log negativity vs rapidity, sigma = 1",
            )
        }
        Command::Fig3 { output } => {
            let path = output.out.clone().unwrap_or_else(|| "fig3.csv".into());
            emit(
                &preset_fig3(),
                &path,
                &output,
                "log negativity vs rapidity, alpha = 2pi/5",
            )
        }
        Command::Validate => {
            let report = validate();
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VALIDATION)
            })
        }
    }
}

fn emit(
    configs: &[SweepConfig],
    path: &Path,
    opts: &OutputArgs,
    title: &str,
) -> Result<ExitCode, Failure> {
    let mut rows: Vec<SweepRow> = Vec::new();
    for cfg in configs {
        rows.extend(run_sweep(cfg)?);
    }
    write_csv(&rows, BufWriter::new(File::create(path)?), opts.timing)?;
    eprintln!("wrote {} rows to {}", rows.len(), path.display());

    if opts.plot {
        let script = path.with_extension("gp");
        std::fs::write(
            &script,
            plot_script(&path.display().to_string(), &rows, title),
        )?;
        eprintln!("wrote {}", script.display());
    }

    let mut converged = true;
    if opts.check_convergence {
        for cfg in configs {
            let gap = convergence_gap(cfg)?;
            let tol = convergence_tolerance(cfg.sigma_theta);
            if gap > tol {
                converged = false;
                eprintln!(
                    "warning: alpha={} sigma_theta={} changes by {gap:e} on a doubled grid (tolerance {tol:e})",
                    cfg.alpha, cfg.sigma_theta
                );
            }
        }
    }
    Ok(if converged {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CONVERGENCE)
    })
}
