use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use numrange::septools::{SeesawConfig, SepOracle};
use numrange::RatioConfig;
use numrange_cli::commands::confidence::{cmd_confidence, ConfidenceParams};
use numrange_cli::commands::goe::{cmd_goe, GoeParams};
use numrange_cli::commands::ratio::{cmd_ratio, RatioParams};
use numrange_cli::commands::simulate::{cmd_simulate, StateName};
use numrange_cli::commands::sweep::{cmd_product_sweep, SweepParams};
use numrange_cli::commands::tables::{cmd_bounds, cmd_instances};
use numrange_cli::io::load_observables;
use numrange_cli::report::write_outputs;
use numrange_cli::{CliError, CliResult, Format, Report};

/// Joint and separable numerical ranges: volume ratios, GOE experiments and
/// entanglement certificates from measurement data.
#[derive(Parser)]
#[command(name = "numrange", version)]
struct Cli {
    /// Master seed; every random stream is derived from it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory for report files and SVG plots.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Volume ratio of the separable to the joint numerical range.
    Ratio {
        observables: PathBuf,
        #[arg(long, default_value_t = 720)]
        directions: usize,
        #[arg(long, default_value_t = 200_000)]
        mc_samples: usize,
        /// Sphere grid per axis for certified separable supports.
        #[arg(long, default_value_t = 32)]
        grid: usize,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
    },
    /// GOE averages of λ⊗min/λmin and of the volume ratio.
    Goe {
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        k: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Support directions for k ≥ 2 (default 360 for k = 2, 800 for k = 3).
        #[arg(long)]
        directions: Option<usize>,
        #[arg(long, default_value_t = 20_000)]
        mc_samples: usize,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
    },
    /// Analytic against numeric ratios for the product pair on an angle grid.
    ProductSweep {
        #[arg(long, default_value_t = 16)]
        grid: usize,
        #[arg(long, default_value_t = 720)]
        directions: usize,
        #[arg(long, default_value_t = 32)]
        sep_grid: usize,
    },
    /// Certify entanglement from per-shot outcomes (exit 3 if not certified).
    Confidence {
        observables: PathBuf,
        data: PathBuf,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        /// Custom half widths in unit-scaled coordinates.
        #[arg(long, value_delimiter = ',')]
        half_widths: Option<Vec<f64>>,
    },
    /// Lower bounds on the minimal ratio next to named instances.
    Bounds {
        #[arg(long, value_delimiter = ',', default_value = "2,2")]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 4)]
        k: usize,
    },
    /// Named instances: exact ratios, numeric brackets and bound checks.
    Instances {
        #[arg(long, default_value_t = 720)]
        directions: usize,
        #[arg(long, default_value_t = 200_000)]
        mc_samples: usize,
        #[arg(long, default_value_t = 32)]
        grid: usize,
    },
    /// Simulated per-shot outcomes in the CSV layout `confidence` reads.
    Simulate {
        observables: PathBuf,
        #[arg(long, value_enum, default_value_t = StateName::PhiPlus)]
        state: StateName,
        /// Weight of the pure state against white noise.
        #[arg(long, default_value_t = 1.0)]
        visibility: f64,
        #[arg(long, default_value_t = 10_000)]
        shots: usize,
    },
}

fn emit<R: Report>(report: &R, cli: &Cli) -> CliResult<()> {
    print!("{}", report.render(cli.format)?);
    if let Some(dir) = &cli.out_dir {
        for p in write_outputs(report, cli.format, dir)? {
            eprintln!("wrote {}", p.display());
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> CliResult<u8> {
    let seed = cli.seed;
    match &cli.command {
        Command::Ratio {
            observables,
            directions,
            mc_samples,
            grid,
            restarts,
        } => {
            let p = RatioParams {
                directions: *directions,
                mc_samples: *mc_samples,
                grid: *grid,
                restarts: *restarts,
                seed,
            };
            emit(&cmd_ratio(observables, &p)?, cli)?;
        }
        Command::Goe {
            d,
            k,
            samples,
            directions,
            mc_samples,
            restarts,
        } => {
            let p = GoeParams {
                directions: *directions,
                mc_samples: *mc_samples,
                restarts: *restarts,
                ..GoeParams::new(*d, k.clone(), *samples, seed)
            };
            emit(&cmd_goe(&p)?, cli)?;
        }
        Command::ProductSweep {
            grid,
            directions,
            sep_grid,
        } => {
            let p = SweepParams {
                directions: *directions,
                sep_grid: *sep_grid,
                ..SweepParams::new(*grid, seed)
            };
            let out = cmd_product_sweep(&p)?;
            emit(&out, cli)?;
        }
        Command::Confidence {
            observables,
            data,
            alpha,
            half_widths,
        } => {
            let p = ConfidenceParams {
                alpha: *alpha,
                half_widths: half_widths.clone(),
                seed,
            };
            let out = cmd_confidence(observables, data, &p)?;
            emit(&out, cli)?;
            if !out.certified {
                return Ok(CliError::NoCertificate.exit_code());
            }
        }
        Command::Bounds { dims, k } => {
            let out = cmd_bounds(dims, *k)?;
            emit(&out, cli)?;
            if out.violations > 0 {
                return Err(CliError::Invariant(format!("{} bound violations", out.violations)));
            }
        }
        Command::Instances {
            directions,
            mc_samples,
            grid,
        } => {
            let cfg = RatioConfig {
                directions: *directions,
                mc_samples: *mc_samples,
                seed,
                sep: SepOracle {
                    seesaw: SeesawConfig::default(),
                    grid_per_axis: *grid,
                },
            };
            let out = cmd_instances(&cfg)?;
            emit(&out, cli)?;
            if out.violations > 0 {
                return Err(CliError::Invariant(format!("{} bound violations", out.violations)));
            }
        }
        Command::Simulate {
            observables,
            state,
            visibility,
            shots,
        } => {
            let obs = load_observables(observables)?;
            let csv = cmd_simulate(&obs, *state, *visibility, *shots, seed)?;
            match &cli.out_dir {
                Some(dir) => {
                    std::fs::create_dir_all(dir)?;
                    let path = dir.join("simulate.csv");
                    std::fs::write(&path, csv)?;
                    eprintln!("wrote {}", path.display());
                }
                None => print!("{csv}"),
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
