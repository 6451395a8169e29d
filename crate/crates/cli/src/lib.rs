//! Command-line front end for `icewave-core`: region classification, curve
//! tracing, resonance certification, mode spectra, Lyapunov centre branches
//! and deterministic parameter scans, with CSV, JSON and SVG output.

pub mod commands;
pub mod error;
pub mod output;
pub mod svg;
pub mod system_file;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use icewave_core::dispersion::FluidParams;

pub use error::{CliError, CliResult};

use commands::centre::{check_converged, run_centre, write_outputs, CentreOptions};
use commands::resonance::{certification_error, ResonanceFile};
use commands::scan::ScanConfig;
use commands::validate::BranchBounds;
use output::{json, read_file, resolve, write_file};

#[derive(Debug, Parser)]
#[command(
    name = "icewave",
    version,
    about = "Hydroelastic spectra and Lyapunov centre branches"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a point of the (beta, gamma) plane.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
        /// Also write the JSON report to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Trace the positive-quadrant dispersion curve.
    Trace {
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long)]
        a_min: Option<f64>,
        /// Defaults to just beyond the outermost axis root.
        #[arg(long)]
        a_max: Option<f64>,
        #[arg(long, default_value_t = commands::trace::DEFAULT_SAMPLES)]
        n: usize,
        /// Defaults to trace.csv in the output directory.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Select angles and speed for a 1:1 resonance and certify it.
    Resonance {
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        #[arg(long, allow_hyphen_values = true)]
        nu0: f64,
        #[arg(long, allow_hyphen_values = true)]
        dtheta: f64,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        /// Also write the JSON report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Eigenvalue table of one Fourier mode of a resonance configuration.
    Spectrum {
        /// JSON written by `resonance`.
        #[arg(long)]
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        mode: i64,
        /// Defaults to spectrum_mode<k>.csv in the output directory.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Collocation points of the depth grid used for residuals.
        #[arg(long, default_value_t = icewave_core::spectral::DEFAULT_POINTS)]
        grid_points: usize,
    },
    /// Two-parameter branch of periodic orbits near a semisimple resonance.
    Centre {
        /// Builtin (BASIC_4D, BASIC_4D_OPPOSITE, TRANSLATION_6D) or a system JSON file.
        #[arg(long)]
        system: String,
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        coupling: f64,
        /// Fourier modes kept in the loop space.
        #[arg(long = "n", default_value_t = icewave_core::centre::DEFAULT_MODES)]
        n_modes: usize,
        #[arg(long, default_value_t = icewave_core::centre::DEFAULT_EPS)]
        eps: f64,
        #[arg(long, default_value_t = icewave_core::centre::DEFAULT_GRID)]
        grid: usize,
        /// Defaults to the output directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        parallelism: Option<usize>,
    },
    /// Evaluate an operation over a parameter grid described by a JSON file.
    Scan {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the output path of the config.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Overrides the parallelism of the config.
        #[arg(long)]
        parallelism: Option<usize>,
    },
    /// Re-check a trace or branch CSV.
    Validate {
        #[arg(long, conflicts_with = "branch", required_unless_present = "branch")]
        trace: Option<PathBuf>,
        #[arg(long)]
        branch: Option<PathBuf>,
        /// With --gamma, also check D(l1, l2) = 0 on trace rows.
        #[arg(long, requires = "gamma")]
        beta: Option<f64>,
        #[arg(long, requires = "beta")]
        gamma: Option<f64>,
    },
}

fn available_parallelism() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Classify {
            beta,
            gamma,
            json: path,
        } => {
            let report = commands::classify::classify(beta, gamma)?;
            let text = json(&report)?;
            print!("{text}");
            if let Some(p) = path {
                write_file(&p, &text)?;
            }
        }
        Command::Trace {
            beta,
            gamma,
            a_min,
            a_max,
            n,
            csv,
            svg,
        } => {
            let out = commands::trace::trace(beta, gamma, a_min, a_max, n)?;
            let csv_path = resolve(csv.as_deref(), "trace.csv");
            write_file(&csv_path, &out.csv)?;
            if let Some(p) = svg {
                write_file(&p, &out.svg)?;
            }
            if out.is_empty() {
                eprintln!(
                    "warning: the dispersion curve is empty for beta = {beta}, gamma = {gamma}"
                );
            }
            let samples: usize = out.branches.iter().map(|b| b.samples.len()).sum();
            println!(
                "{} branches, {samples} samples -> {}",
                out.branches.len(),
                csv_path.display()
            );
        }
        Command::Resonance {
            beta,
            s,
            nu0,
            dtheta,
            kmax,
            out,
        } => {
            let report = commands::resonance::resonance(beta, s, nu0, dtheta, kmax)?;
            let text = json(&report)?;
            print!("{text}");
            if let Some(p) = out {
                write_file(&p, &text)?;
            }
            if let Some(e) = certification_error(&report) {
                return Err(e);
            }
        }
        Command::Spectrum {
            config,
            mode,
            csv,
            grid_points,
        } => {
            let file: ResonanceFile = serde_json::from_str(&read_file(&config)?)?;
            let report = commands::spectrum::spectrum(&file.config()?, mode, grid_points)?;
            let path = resolve(csv.as_deref(), &format!("spectrum_mode{mode}.csv"));
            write_file(&path, &report.csv())?;
            print!("{}", json(&report)?);
        }
        Command::Centre {
            system,
            kappa,
            coupling,
            n_modes,
            eps,
            grid,
            out,
            parallelism,
        } => {
            let sys = system_file::load_system(&system, kappa, coupling)?;
            let opts = CentreOptions {
                n_modes,
                eps,
                grid,
                parallelism: parallelism.unwrap_or_else(available_parallelism),
            };
            let run = run_centre(&sys, &opts)?;
            let dir = out.unwrap_or_else(output::default_dir);
            write_outputs(&run, &dir)?;
            print!("{}", json(&run.report)?);
            check_converged(&run)?;
        }
        Command::Scan {
            config,
            output: out,
            parallelism,
        } => {
            let mut cfg: ScanConfig = serde_json::from_str(&read_file(&config)?)?;
            if let Some(p) = parallelism {
                cfg.parallelism = p;
            }
            let result = commands::scan::run_scan(&cfg)?;
            let default_name = format!(
                "scan_{}.csv",
                serde_json::to_value(cfg.target)?.as_str().unwrap_or("scan")
            );
            let path = out
                .or(cfg.output.clone())
                .unwrap_or_else(|| resolve(None, &default_name));
            write_file(&path, &result.csv)?;
            println!(
                "{} rows ({} failed) -> {}",
                result.rows,
                result.failed,
                path.display()
            );
        }
        Command::Validate {
            trace,
            branch,
            beta,
            gamma,
        } => {
            let report = match (trace, branch) {
                (Some(p), _) => {
                    let params = match (beta, gamma) {
                        (Some(b), Some(g)) => Some(FluidParams::new(b, g)?),
                        _ => None,
                    };
                    commands::validate::validate_trace(&read_file(&p)?, params.as_ref())?
                }
                (None, Some(p)) => {
                    commands::validate::validate_branch(&read_file(&p)?, BranchBounds::default())?
                }
                (None, None) => return Err(CliError::Invalid("give --trace or --branch".into())),
            };
            print!("{}", json(&report)?);
            report.into_result()?;
        }
    }
    Ok(())
}
