//! `optimize`: maximize a spectral objective over the free phases, mixing
//! angle and detuning, with `--lock name=value` pinning any subset.

use clap::Args;
use gascatter_core::analysis::{linear_grid, sweep};
use gascatter_core::config::{ModelConfig, PhenomConfig, PI};
use gascatter_core::optimize::{optimize, Dim, Objective, OptimizeSpec, ParamName};
use gascatter_core::rates::induced_phenom;
use gascatter_core::System;

use crate::args::{regime_name, ModelArgs};
use crate::error::{CliError, Result};
use crate::output::{self, Manifest};

#[derive(Args, Debug)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// What to maximize: Tc (forward conversion), I2 (signed contrast),
    /// or I2-abs (|I2|); case-insensitive
    #[arg(long, value_name = "NAME")]
    pub objective: String,

    /// Pin a parameter, e.g. `--lock phi-J=0` (angles and tau-gamma in
    /// units of pi, delta in units of Gamma); repeatable
    #[arg(long = "lock", value_name = "NAME=VALUE")]
    pub locks: Vec<String>,

    /// Lower edge of the detuning search box, units of Gamma
    #[arg(long, default_value_t = -10.0, value_name = "x", allow_hyphen_values = true)]
    pub delta_min: f64,

    /// Upper edge of the detuning search box, units of Gamma
    #[arg(long, default_value_t = 10.0, value_name = "x", allow_hyphen_values = true)]
    pub delta_max: f64,

    /// Coarse grid resolution per free dimension (capped by a global budget)
    #[arg(long, default_value_t = 64, value_name = "N")]
    pub grid_per_dim: usize,

    /// Number of coarse-grid seeds polished by the simplex stage
    #[arg(long, default_value_t = 16, value_name = "N")]
    pub refine_seeds: usize,

    /// Also write the spectrum at the optimum as CSV (`-` for stdout)
    #[arg(long, value_name = "PATH")]
    pub output: Option<String>,

    /// Grid points for the optional spectrum output
    #[arg(long, default_value_t = 2001, value_name = "N")]
    pub points: usize,
}

fn parse_objective(raw: &str) -> Result<(Objective, &'static str)> {
    match raw.to_ascii_lowercase().as_str() {
        "tc" => Ok((Objective::ConversionProbability, "Tc (forward conversion probability)")),
        "i2" => Ok((Objective::SignedContrast, "I2 (signed conversion contrast)")),
        "i2-abs" | "i2_abs" | "abs-i2" | "|i2|" => {
            Ok((Objective::ContrastMagnitude, "|I2| (conversion contrast magnitude)"))
        }
        other => Err(CliError::Usage(format!(
            "unknown objective `{other}`; expected Tc, I2 or I2-abs"
        ))),
    }
}

/// A pinned parameter from `--lock name=value`.
struct Lock {
    name: &'static str,
    param: Option<ParamName>,
    value: f64,
}

fn parse_lock(raw: &str) -> Result<Lock> {
    let (name, value) = raw.split_once('=').ok_or_else(|| {
        CliError::Usage(format!("lock `{raw}` must look like name=value"))
    })?;
    let value: f64 = value.trim().parse().map_err(|_| {
        CliError::Usage(format!("lock `{raw}`: `{}` is not a number", value.trim()))
    })?;
    let key = name.trim().to_ascii_lowercase().replace('_', "-");
    let (name, param, value) = match key.as_str() {
        "phi-j" => ("phi-J", Some(ParamName::PhiJ), value * PI),
        "phi-plus" => ("phi-plus", Some(ParamName::PhiPlus), value * PI),
        "phi-minus" => ("phi-minus", Some(ParamName::PhiMinus), value * PI),
        "theta" => ("theta", Some(ParamName::Theta), value * PI),
        "tau-gamma" => ("tau-gamma", Some(ParamName::TauGamma), value * PI),
        "delta" => ("delta", Some(ParamName::Delta), value),
        "ratio" => ("ratio", None, value),
        "gamma" => ("gamma", None, value),
        other => {
            return Err(CliError::Usage(format!(
                "unknown lock target `{other}`; expected phi-J, phi-plus, phi-minus, theta, \
                 tau-gamma, delta, ratio or gamma"
            )))
        }
    };
    Ok(Lock { name, param, value })
}

fn apply_lock(base: &mut PhenomConfig, fixed_delta: &mut f64, lock: &Lock) {
    match lock.param {
        Some(ParamName::PhiJ) => base.phi_j = lock.value,
        Some(ParamName::PhiPlus) => base.phi_plus = lock.value,
        Some(ParamName::PhiMinus) => base.phi_minus = lock.value,
        Some(ParamName::Theta) => base.theta = lock.value,
        Some(ParamName::TauGamma) => base.tau_gamma = lock.value,
        Some(ParamName::Delta) => *fixed_delta = lock.value * base.gamma,
        None if lock.name == "ratio" => base.coupling_ratio = lock.value,
        None => base.gamma = lock.value,
    }
}

pub fn run(args: &OptimizeArgs) -> Result<()> {
    let (objective, objective_label) = parse_objective(&args.objective)?;
    if !(args.delta_min.is_finite() && args.delta_max.is_finite())
        || args.delta_min >= args.delta_max
    {
        return Err(CliError::Usage(format!(
            "degenerate detuning box [{}, {}]",
            args.delta_min, args.delta_max
        )));
    }

    let resolved = args.model.resolve()?;
    for w in &resolved.warnings {
        eprintln!("warning: {w}");
    }
    // the search lives in phenomenological space; bare-Hamiltonian input is
    // mapped onto the point it induces
    let mut base = match &resolved.model {
        ModelConfig::Phenom(cfg) => cfg.clone(),
        ModelConfig::Physical(cfg) => {
            let sys = System::from_config(&resolved.model)?;
            induced_phenom(cfg, &sys.frame, &sys.rates)
        }
    };

    let mut pinned: Vec<String> = args
        .model
        .pinned_phenom_params()
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut fixed_delta = 0.0;
    for raw in &args.locks {
        let lock = parse_lock(raw)?;
        apply_lock(&mut base, &mut fixed_delta, &lock);
        pinned.push(lock.name.to_string());
    }
    base.validate()?;

    let is_pinned = |name: &str| pinned.iter().any(|p| p == name);
    let mut dims = Vec::new();
    let mut free_descr = Vec::new();
    if !is_pinned("theta") {
        dims.push(Dim { param: ParamName::Theta, lo: 0.0, hi: PI });
        free_descr.push("theta in [0, 1]pi".to_string());
    }
    for (name, param) in [
        ("phi-J", ParamName::PhiJ),
        ("phi-plus", ParamName::PhiPlus),
        ("phi-minus", ParamName::PhiMinus),
    ] {
        if !is_pinned(name) {
            dims.push(Dim { param, lo: 0.0, hi: 2.0 * PI });
            free_descr.push(format!("{name} in [0, 2)pi"));
        }
    }
    if !is_pinned("delta") {
        dims.push(Dim {
            param: ParamName::Delta,
            lo: args.delta_min * base.gamma,
            hi: args.delta_max * base.gamma,
        });
        free_descr.push(format!("delta/gamma in [{}, {}]", args.delta_min, args.delta_max));
    }

    let mut spec = OptimizeSpec::new(base, resolved.regime, objective, dims);
    spec.fixed_delta = fixed_delta;
    spec.grid_per_dim = args.grid_per_dim;
    spec.refine_seeds = args.refine_seeds;
    let opt = optimize(&spec)?;

    let best = ModelConfig::Phenom(opt.config.clone());
    let mut report = String::new();
    report.push_str(&format!("objective: {objective_label}\n"));
    report.push_str(&format!("regime: {}\n", regime_name(resolved.regime)));
    report.push_str(&format!("base: {} ({})\n", output::config_line(&resolved.model), resolved.source));
    report.push_str(&format!("free: {}\n", free_descr.join(", ")));
    if pinned.is_empty() {
        report.push_str("locked: (nothing)\n");
    } else {
        report.push_str(&format!("locked: {}\n", pinned.join(", ")));
    }
    report.push_str(&format!("best value = {}\n", output::field(opt.value)));
    report.push_str(&format!("at: {}\n", output::config_line(&best)));
    report.push_str(&format!(
        "    delta/gamma = {}\n",
        output::field(opt.delta / opt.config.gamma)
    ));
    if let Some(bw) = opt.bandwidth {
        report.push_str(&format!(
            "full width at half maximum = {} gamma\n",
            output::field(bw / opt.config.gamma)
        ));
    }
    report.push_str(&format!("objective evaluations: {}\n", opt.evaluations));
    print!("{report}");

    if let Some(path) = &args.output {
        let sys = System::from_config(&best)?;
        let scaled = linear_grid(args.delta_min, args.delta_max, args.points.max(2));
        let raw: Vec<f64> = scaled.iter().map(|x| x * sys.rates.decay).collect();
        let rows = sweep(&sys.frame, &sys.rates, resolved.regime, &raw);
        let manifest = Manifest::new(
            regime_name(resolved.regime),
            output::config_line(&best),
            format!(
                "delta/gamma from {} to {}, {} points (spectrum at the optimum)",
                args.delta_min,
                args.delta_max,
                scaled.len()
            ),
        );
        let mut text = manifest.header();
        text.push_str("delta_over_gamma,T,R,Tc,T_b,R_b,Tc_b,I1,I2\n");
        for (x, row) in scaled.iter().zip(&rows) {
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
        output::emit(path, &text, "spectrum at the optimum")?;
    }
    Ok(())
}
