//! Shared model-selection flags and their resolution order: defaults, then
//! `--config` file or `--figure` preset, then individual flag overrides.
//! Angles and the delay are given in units of pi everywhere on the CLI.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use gascatter_core::config::{parse_config, ModelConfig, PhenomConfig, PI};
use gascatter_core::Regime;

use crate::error::{io_err, CliError, Result};
use crate::presets;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    /// Full delay retention between the coupling points.
    Exact,
    /// Delay-free evaluation (static channel phases kept).
    #[value(alias = "markovian")]
    Markov,
}

impl From<RegimeArg> for Regime {
    fn from(arg: RegimeArg) -> Regime {
        match arg {
            RegimeArg::Exact => Regime::Exact,
            RegimeArg::Markov => Regime::Markovian,
        }
    }
}

pub fn regime_name(regime: Regime) -> &'static str {
    match regime {
        Regime::Exact => "exact",
        Regime::Markovian => "markov",
    }
}

#[derive(Args, Debug)]
pub struct ModelArgs {
    /// `key = value` config file with `mode = phenom | physical`
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Bundled dataset preset (fig1a, fig1d, fig1g, fig3a-c, fig4a-d, fig5a-d)
    #[arg(long, value_name = "NAME", conflicts_with = "config")]
    pub figure: Option<String>,

    /// Total decay rate Gamma
    #[arg(long, value_name = "RATE")]
    pub gamma: Option<f64>,

    /// Mixing angle theta, units of pi
    #[arg(long, value_name = "xPI")]
    pub theta: Option<f64>,

    /// Coupling-phase difference phi_J, units of pi
    #[arg(long = "phi-J", alias = "phi-j", value_name = "xPI")]
    pub phi_j: Option<f64>,

    /// Upper-channel propagation phase phi_+, units of pi
    #[arg(long, value_name = "xPI")]
    pub phi_plus: Option<f64>,

    /// Lower-channel propagation phase phi_-, units of pi
    #[arg(long, value_name = "xPI")]
    pub phi_minus: Option<f64>,

    /// Delay between the coupling points, tau*Gamma in units of pi
    #[arg(long, value_name = "xPI")]
    pub tau_gamma: Option<f64>,

    /// Coupling magnitude ratio |J2|/|J1|
    #[arg(long, value_name = "RATIO")]
    pub ratio: Option<f64>,

    /// Evaluation regime; defaults to the preset's natural one, else exact
    #[arg(long, value_enum)]
    pub regime: Option<RegimeArg>,
}

#[derive(Debug)]
pub struct ResolvedModel {
    pub model: ModelConfig,
    pub regime: Regime,
    /// Where the base parameters came from, for the manifest.
    pub source: String,
    pub warnings: Vec<String>,
}

impl ModelArgs {
    /// Names of the phenomenological overrides the user typed, for deciding
    /// which optimizer dimensions stay free.
    pub fn pinned_phenom_params(&self) -> Vec<&'static str> {
        let mut pinned = Vec::new();
        if self.theta.is_some() {
            pinned.push("theta");
        }
        if self.phi_j.is_some() {
            pinned.push("phi-J");
        }
        if self.phi_plus.is_some() {
            pinned.push("phi-plus");
        }
        if self.phi_minus.is_some() {
            pinned.push("phi-minus");
        }
        pinned
    }

    fn has_phenom_override(&self) -> bool {
        self.gamma.is_some()
            || self.theta.is_some()
            || self.phi_j.is_some()
            || self.phi_plus.is_some()
            || self.phi_minus.is_some()
            || self.tau_gamma.is_some()
            || self.ratio.is_some()
    }

    pub fn resolve(&self) -> Result<ResolvedModel> {
        let (mut model, mut regime, source, mut warnings) = if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| io_err(&format!("reading {}", path.display()), e))?;
            let (model, warnings) = parse_config(&text)?;
            (model, Regime::Exact, format!("config {}", path.display()), warnings)
        } else if let Some(name) = &self.figure {
            let preset = presets::lookup(name).ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown figure preset `{name}`; available: {}",
                    presets::NAMES.join(", ")
                ))
            })?;
            (
                preset.model,
                preset.regime,
                format!("figure {} ({})", name.to_ascii_lowercase(), preset.note),
                Vec::new(),
            )
        } else {
            (
                ModelConfig::Phenom(PhenomConfig::default()),
                Regime::Exact,
                "flags".to_string(),
                Vec::new(),
            )
        };

        if self.has_phenom_override() {
            match &mut model {
                ModelConfig::Phenom(cfg) => {
                    if let Some(x) = self.gamma {
                        cfg.gamma = x;
                    }
                    if let Some(x) = self.theta {
                        cfg.theta = x * PI;
                    }
                    if let Some(x) = self.phi_j {
                        cfg.phi_j = x * PI;
                    }
                    if let Some(x) = self.phi_plus {
                        cfg.phi_plus = x * PI;
                    }
                    if let Some(x) = self.phi_minus {
                        cfg.phi_minus = x * PI;
                    }
                    if let Some(x) = self.tau_gamma {
                        cfg.tau_gamma = x * PI;
                    }
                    if let Some(x) = self.ratio {
                        cfg.coupling_ratio = x;
                    }
                    warnings.extend(cfg.validate()?);
                }
                ModelConfig::Physical(_) => {
                    return Err(CliError::Usage(
                        "phenomenological flag overrides do not apply to a bare-Hamiltonian \
                         model; edit the config file instead"
                            .to_string(),
                    ));
                }
            }
        }

        if let Some(arg) = self.regime {
            regime = arg.into();
        }
        Ok(ResolvedModel { model, regime, source, warnings })
    }
}
