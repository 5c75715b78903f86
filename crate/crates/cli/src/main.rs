//! Command-line front end over the `qbox` library: every subcommand is a
//! thin wrapper that builds a lattice, calls one library operation, and
//! renders the report. No numerics live here.
//!
//! Exit codes: 0 success, 1 usage error, 2 numeric/domain error, 3 I/O
//! error.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use qbox::{
    evolve_recurrence, heisenberg_scan, lattice_uncertainties, make_lattice, q_eigenfunction,
    report, sweep, verify_spectrum_with, EvolutionParams, GhostPolicy, PhysicalParams, QboxError,
    Quantity, Seed,
};

#[derive(Parser)]
#[command(
    name = "qbox",
    version,
    about = "Particle in a box on a space-time lattice: spectra, uncertainties, evolution"
)]
struct Cli {
    #[command(flatten)]
    params: ParamArgs,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ParamArgs {
    /// Box length.
    #[arg(long = "L", default_value_t = 1.0, global = true, allow_negative_numbers = true)]
    l: f64,

    #[arg(long, default_value_t = 1.0, global = true, allow_negative_numbers = true)]
    hbar: f64,

    #[arg(long, default_value_t = 1.0, global = true, allow_negative_numbers = true)]
    mass: f64,

    /// Lattice signal speed; sets tau0 = lambda0 / c.
    #[arg(long = "c", default_value_t = 1.0, global = true, allow_negative_numbers = true)]
    light_speed: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    /// Odd extension past the walls; reproduces the closed forms.
    Odd,
    /// Literal truncation: references beyond the walls read zero.
    Hardzero,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeedArg {
    /// Seed the recurrence with the closed-form first step.
    Closed,
    /// Seed with one Euler step; excites the parasitic root.
    Euler,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuantityArg {
    /// Continuum minus lattice energy.
    Energy,
    /// Continuum minus lattice momentum uncertainty.
    Dp,
    /// Continuum minus lattice position variance.
    Dx2,
    /// Relative correction of the uncertainty product.
    Product,
    /// Accumulated phase drift of the time sector.
    Phase,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form spectrum against the dense-matrix oracle.
    Spectrum {
        #[arg(long = "J0")]
        j0: usize,
        #[arg(long, value_enum, default_value_t = PolicyArg::Odd)]
        policy: PolicyArg,
    },
    /// Dump one eigenmode as (j, x, u).
    Mode {
        #[arg(long)]
        n: usize,
        #[arg(long = "J0")]
        j0: usize,
    },
    /// Uncertainty product of one mode.
    Uncertainty {
        #[arg(long)]
        n: usize,
        #[arg(long = "J0")]
        j0: usize,
    },
    /// Uncertainty products of every mode of one lattice.
    Scan {
        #[arg(long = "J0")]
        j0: usize,
    },
    /// Step the time-sector recurrence and dump the phase factor.
    Evolve {
        #[arg(long, allow_negative_numbers = true)]
        omega: f64,
        #[arg(long)]
        tau0: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = SeedArg::Closed)]
        seed: SeedArg,
    },
    /// Convergence sweep over lattice resolutions with a power-law fit.
    Sweep {
        #[arg(long)]
        n: usize,
        /// Comma-separated list of resolutions, e.g. 16,32,64.
        #[arg(long = "J0", value_delimiter = ',', required = true)]
        j0: Vec<usize>,
        #[arg(long, value_enum)]
        quantity: QuantityArg,
    },
}

fn run(cli: &Cli) -> Result<String, QboxError> {
    let params = PhysicalParams::new(
        cli.params.hbar,
        cli.params.mass,
        cli.params.l,
        cli.params.light_speed,
    )?;
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Spectrum { j0, policy } => {
            let lat = make_lattice(params, *j0)?;
            let pol = match policy {
                PolicyArg::Odd => GhostPolicy::OddExtension,
                PolicyArg::Hardzero => GhostPolicy::HardZero,
            };
            let rep = verify_spectrum_with(&lat, pol)?;
            Ok(if json {
                report::to_json(&rep)
            } else {
                report::spectrum_csv(&rep)
            })
        }
        Command::Mode { n, j0 } => {
            let lat = make_lattice(params, *j0)?;
            let mode = q_eigenfunction(*n, &lat)?;
            Ok(if json {
                report::to_json(&mode)
            } else {
                report::mode_csv(&mode, &lat)
            })
        }
        Command::Uncertainty { n, j0 } => {
            let lat = make_lattice(params, *j0)?;
            let rep = lattice_uncertainties(*n, &lat)?;
            Ok(if json {
                report::to_json(&rep)
            } else {
                report::uncertainty_csv(&rep)
            })
        }
        Command::Scan { j0 } => {
            let lat = make_lattice(params, *j0)?;
            let rep = heisenberg_scan(&lat)?;
            Ok(if json {
                report::to_json(&rep)
            } else {
                report::scan_csv(&rep)
            })
        }
        Command::Evolve {
            omega,
            tau0,
            steps,
            seed,
        } => {
            let p = EvolutionParams {
                omega: *omega,
                tau0: *tau0,
                steps: *steps,
            };
            let s = match seed {
                SeedArg::Closed => Seed::ClosedFormSeed,
                SeedArg::Euler => Seed::EulerSeed,
            };
            let seq = evolve_recurrence(&p, s)?;
            Ok(if json {
                report::to_json(&seq)
            } else {
                report::phase_csv(&seq, *tau0)
            })
        }
        Command::Sweep { n, j0, quantity } => {
            let q = match quantity {
                QuantityArg::Energy => Quantity::EnergyError,
                QuantityArg::Dp => Quantity::DeltaPError,
                QuantityArg::Dx2 => Quantity::DeltaX2Error,
                QuantityArg::Product => Quantity::ProductRelCorrection,
                QuantityArg::Phase => Quantity::PhaseDrift,
            };
            let series = sweep(*n, j0, q, &params)?;
            Ok(if json {
                report::to_json(&series)
            } else {
                report::sweep_csv(&series)
            })
        }
    }
}

fn emit(cli: &Cli, body: &str) -> Result<(), QboxError> {
    match &cli.out {
        Some(path) => std::fs::write(path, body).map_err(QboxError::Io),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not usage errors
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let out = run(&cli).and_then(|body| emit(&cli, &body));
    match out {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                QboxError::Io(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
