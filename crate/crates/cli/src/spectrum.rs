//! `spectrum` and `contrast`: detuning sweeps over both travel directions,
//! emitted as manifest-headed CSV.

use clap::Args;
use gascatter_core::analysis::{linear_grid, sweep, SpectrumRow};
use gascatter_core::config::PI;
use gascatter_core::scattering::Channel;
use gascatter_core::{Regime, System};

use crate::args::{regime_name, ModelArgs};
use crate::error::{CliError, Result};
use crate::output::{self, Manifest};

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Number of grid points
    #[arg(long, default_value_t = 2001, value_name = "N")]
    pub points: usize,

    /// Lower edge of the detuning grid, units of Gamma (default: regime window)
    #[arg(long, value_name = "x", allow_hyphen_values = true)]
    pub delta_min: Option<f64>,

    /// Upper edge of the detuning grid, units of Gamma
    #[arg(long, value_name = "x", allow_hyphen_values = true)]
    pub delta_max: Option<f64>,

    /// Output CSV path; `-` writes the data to stdout
    #[arg(long, default_value = "-", value_name = "PATH")]
    pub output: String,
}

/// Default window in units of Gamma: +-10 delay-free, four delay periods
/// otherwise.
pub fn default_window(sys: &System, regime: Regime) -> (f64, f64) {
    let tau_gamma = sys.rates.tau * sys.rates.decay;
    let half = match regime {
        Regime::Markovian => 10.0,
        Regime::Exact => {
            if tau_gamma > 0.0 {
                4.0 * PI / tau_gamma
            } else {
                10.0
            }
        }
    };
    (-half, half)
}

pub struct GridSpec {
    /// Grid in units of Gamma (what the CSV reports).
    pub scaled: Vec<f64>,
    /// Same grid in model units (what the engine consumes).
    pub raw: Vec<f64>,
    pub descr: String,
}

pub fn build_grid(args: &SpectrumArgs, sys: &System, regime: Regime) -> Result<GridSpec> {
    if args.points < 2 {
        return Err(CliError::Usage(format!(
            "--points must be at least 2, got {}",
            args.points
        )));
    }
    let (def_lo, def_hi) = default_window(sys, regime);
    let lo = args.delta_min.unwrap_or(def_lo);
    let hi = args.delta_max.unwrap_or(def_hi);
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(CliError::Usage(format!(
            "empty detuning grid: delta-min {lo} must lie below delta-max {hi}"
        )));
    }
    let scaled = linear_grid(lo, hi, args.points);
    let raw: Vec<f64> = scaled.iter().map(|x| x * sys.rates.decay).collect();

    // In a bare-Hamiltonian model both dressed channels must stay
    // propagating over the whole grid; the propagation energy grows with
    // detuning, so the lower edge decides.
    for channel in [Channel::Plus, Channel::Minus] {
        if let Some(vk) = sys.propagation_energy(channel, raw[0]) {
            if vk <= 0.0 {
                return Err(CliError::Core(gascatter_core::CoreError::ClosedChannel {
                    channel: match channel {
                        Channel::Plus => "upper",
                        Channel::Minus => "lower",
                    },
                    energy: vk,
                }));
            }
        }
    }

    let descr = format!("delta/gamma from {lo} to {hi}, {} points", args.points);
    Ok(GridSpec { scaled, raw, descr })
}

fn warn_flagged(rows: &[SpectrumRow]) {
    let flagged = rows.iter().filter(|r| r.any_flagged()).count();
    if flagged > 0 {
        eprintln!(
            "note: {flagged} grid point(s) sat on a resolvent pole; values reported from \
             just beside it"
        );
    }
}

pub fn run(args: &SpectrumArgs, contrast_only: bool) -> Result<()> {
    let resolved = args.model.resolve()?;
    for w in &resolved.warnings {
        eprintln!("warning: {w}");
    }
    let sys = System::from_config(&resolved.model)?;
    let grid = build_grid(args, &sys, resolved.regime)?;
    let rows = sweep(&sys.frame, &sys.rates, resolved.regime, &grid.raw);
    warn_flagged(&rows);

    let manifest = Manifest::new(
        regime_name(resolved.regime),
        output::config_line(&resolved.model),
        grid.descr,
    );
    let mut text = manifest.header();
    if contrast_only {
        text.push_str("delta_over_gamma,Tc,Tc_b,I2\n");
        for (x, row) in grid.scaled.iter().zip(&rows) {
            text.push_str(&output::csv_line(&[
                *x,
                row.forward.conversion(),
                row.backward.conversion(),
                row.i2(),
            ]));
        }
    } else {
        text.push_str("delta_over_gamma,T,R,Tc,T_b,R_b,Tc_b,I1,I2\n");
        for (x, row) in grid.scaled.iter().zip(&rows) {
            text.push_str(&output::csv_line(&[
                *x,
                row.forward.transmission(),
                row.forward.reflection(),
                row.forward.conversion(),
                row.backward.transmission(),
                row.backward.reflection(),
                row.backward.conversion(),
                row.i1(),
                row.i2(),
            ]));
        }
    }
    let what = format!("{} rows", rows.len());
    output::emit(&args.output, &text, &what)
}
