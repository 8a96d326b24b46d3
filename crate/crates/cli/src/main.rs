//! `gascatter`: single-photon scattering spectra for a driven three-level
//! emitter coupled to a 1D waveguide at two separated points.
//!
//! Subcommands: `spectrum`, `contrast`, `bic`, `optimize`, `verify`. All
//! angles (and the delay `tau-gamma`) are given in units of pi; detunings in
//! units of the total decay rate. Exit codes: 2 config/usage error, 3 closed
//! channel, 4 verification failure.

mod args;
mod bic;
mod error;
mod optimize_cmd;
mod output;
mod presets;
mod spectrum;
mod verify;

use clap::{Parser, Subcommand};

use crate::error::{CliError, Result};

#[derive(Parser)]
#[command(
    name = "gascatter",
    version,
    about = "Scattering spectra for a driven three-level emitter coupled to a waveguide at two points",
    after_help = "Set GASCATTER_THREADS to cap sweep parallelism."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transmission/reflection/conversion spectrum for both travel directions (CSV)
    Spectrum(spectrum::SpectrumArgs),
    /// Directional conversion contrast I2 over detuning (CSV)
    Contrast(spectrum::SpectrumArgs),
    /// Report trapped-state locks and suppression combs (text)
    Bic(bic::BicArgs),
    /// Maximize Tc, I2 or |I2| over free parameters (text, optional CSV)
    Optimize(optimize_cmd::OptimizeArgs),
    /// Randomized closed-form vs real-space equivalence campaign (text)
    Verify(verify::VerifyArgs),
}

/// `GASCATTER_THREADS` caps the data-parallel sweep width. With the
/// sequential build the variable is accepted and ignored.
fn init_threads() -> Result<()> {
    let raw = match std::env::var("GASCATTER_THREADS") {
        Ok(raw) => raw,
        Err(_) => return Ok(()),
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            CliError::Usage(format!(
                "GASCATTER_THREADS must be a positive integer, got `{raw}`"
            ))
        })?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool setup: {e}")))?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Spectrum(args) => spectrum::run(&args, false),
        Command::Contrast(args) => spectrum::run(&args, true),
        Command::Bic(args) => bic::run(&args),
        Command::Optimize(args) => optimize_cmd::run(&args),
        Command::Verify(args) => verify::run(&args),
    }
}

fn main() {
    let cli = Cli::parse();
    let outcome = init_threads().and_then(|_| run(cli));
    if let Err(err) = outcome {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
