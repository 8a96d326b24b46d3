//! `verify`: run the randomized closed-form-vs-real-space equivalence
//! campaign and fail loudly (exit 4) on a tolerance breach. The report
//! carries no timing, so a fixed seed reproduces it byte for byte.

use clap::Args;
use gascatter_core::config::PI;
use gascatter_core::oracle::{campaign, markovian_campaign, CampaignSummary};
use gascatter_core::Regime;

use crate::args::{regime_name, RegimeArg};
use crate::error::{CliError, Result};
use crate::output::field;

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Random parameter points in the campaign
    #[arg(long, default_value_t = 10_000, value_name = "N")]
    pub points: usize,

    /// Campaign RNG seed (printed in the report)
    #[arg(long, default_value_t = 7, value_name = "SEED")]
    pub seed: u64,

    /// exact: closed forms vs solver at sampled delays;
    /// markov: delay-free forms vs solver at a forced short delay
    #[arg(long, value_enum, default_value_t = RegimeArg::Exact)]
    pub regime: RegimeArg,

    /// Forced delay tau*Gamma for the markov campaign, units of pi
    #[arg(long, default_value_t = 1e-6, value_name = "xPI")]
    pub tau_gamma: f64,
}

/// Exact agreement is demanded near machine precision; the delay-free
/// campaign instead measures a genuine approximation error that shrinks
/// linearly with the forced delay, and is held to the documented envelope
/// for tau*Gamma <= pi * 1e-6.
const EXACT_TOL: f64 = 1e-9;
const MARKOV_TOL: f64 = 1e-4;

pub fn run(args: &VerifyArgs) -> Result<()> {
    if args.points == 0 {
        return Err(CliError::Usage("--points must be positive".to_string()));
    }
    let regime: Regime = args.regime.into();
    let (summary, tol): (CampaignSummary, f64) = match regime {
        Regime::Exact => (campaign(args.points, args.seed), EXACT_TOL),
        Regime::Markovian => {
            if !(args.tau_gamma > 0.0) {
                return Err(CliError::Usage(
                    "the markov campaign needs --tau-gamma > 0".to_string(),
                ));
            }
            (markovian_campaign(args.points, args.seed, args.tau_gamma * PI), MARKOV_TOL)
        }
    };

    let mut report = String::new();
    report.push_str(&format!("campaign: {}\n", regime_name(regime)));
    report.push_str(&format!("seed: {}\n", args.seed));
    if regime == Regime::Markovian {
        report.push_str(&format!("forced delay tau*gamma: {}pi\n", args.tau_gamma));
    }
    report.push_str(&format!(
        "points: {} kept, {} excluded for ill conditioning\n",
        summary.samples, summary.excluded
    ));
    report.push_str(&format!(
        "max amplitude deviation:  {}\n",
        field(summary.max_amplitude_err)
    ));
    report.push_str(&format!(
        "max excitation deviation: {}\n",
        field(summary.max_excitation_err)
    ));
    report.push_str(&format!(
        "max boundary residual:    {}\n",
        field(summary.max_residual)
    ));
    if let Some(worst) = &summary.worst {
        report.push_str(&format!("worst: {worst}\n"));
    }
    report.push_str(&format!("tolerance: {}\n", field(tol)));

    let pass = summary.max_amplitude_err < tol
        && summary.max_excitation_err < tol
        && summary.max_residual < tol
        && summary.samples > 0;
    report.push_str(if pass { "PASS\n" } else { "FAIL\n" });
    print!("{report}");

    if pass {
        Ok(())
    } else {
        Err(CliError::Tolerance(format!(
            "max deviation {} exceeds {}",
            field(summary.max_amplitude_err.max(summary.max_excitation_err)),
            field(tol)
        )))
    }
}
