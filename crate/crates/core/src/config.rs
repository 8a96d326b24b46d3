//! Model parameterizations and the plain-text config format.
//!
//! Two entry points describe the same scatterer:
//! * [`PhysicalConfig`] — bare Hamiltonian quantities (level energies, drive,
//!   complex coupling amplitudes, coupling-point separation, group velocity).
//! * [`PhenomConfig`] — the phenomenological set used throughout the analysis:
//!   total decay rate, mixing angle, the three phases and the dimensionless
//!   delay. In this mode v = 1 and all energies are in units of the total
//!   decay rate.
//!
//! Config files are `key = value` lines with `#` comments. Angles (and the
//! delay `tau_gamma`) are given in units of pi, matching how parameter points
//! are usually quoted.

use crate::error::{CoreError, Result};

pub const PI: f64 = std::f64::consts::PI;

/// Raw Hamiltonian parameters. Energies and rates share one (user-chosen)
/// unit; `v` converts wavenumbers to energies.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalConfig {
    /// Energy of the excited level coupled to the waveguide.
    pub omega_e: f64,
    /// Energy of the driven level.
    pub omega_f: f64,
    /// Drive frequency.
    pub omega_d: f64,
    /// Drive amplitude (Rabi), >= 0.
    pub rabi: f64,
    pub j1_mag: f64,
    /// Coupling phase at the first point (radians).
    pub j1_phase: f64,
    pub j2_mag: f64,
    pub j2_phase: f64,
    /// Separation between the two coupling points, >= 0.
    pub distance: f64,
    /// Group velocity, > 0.
    pub velocity: f64,
}

/// Phenomenological parameters. `v = 1`; energies are in units of `gamma`
/// unless stated otherwise. Phases are plain radians and are accepted modulo
/// 2*pi with no realizability constraint.
#[derive(Debug, Clone, PartialEq)]
pub struct PhenomConfig {
    /// Total decay rate (both coupling points combined), > 0.
    pub gamma: f64,
    /// Dressing mixing angle in [0, pi].
    pub theta: f64,
    /// Propagation phase of the upper dressed channel (radians).
    pub phi_plus: f64,
    /// Propagation phase of the lower dressed channel (radians).
    pub phi_minus: f64,
    /// Coupling-phase difference between the two points (radians).
    pub phi_j: f64,
    /// Dimensionless delay tau * gamma, >= 0. Zero means the delay-free
    /// (Markovian) point.
    pub tau_gamma: f64,
    /// |J2|/|J1|, > 0. Default 1 (equal coupling magnitudes).
    pub coupling_ratio: f64,
}

impl Default for PhenomConfig {
    fn default() -> Self {
        PhenomConfig {
            gamma: 1.0,
            theta: 0.5 * PI,
            phi_plus: 0.0,
            phi_minus: 0.0,
            phi_j: 0.0,
            tau_gamma: 0.0,
            coupling_ratio: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelConfig {
    Physical(PhysicalConfig),
    Phenom(PhenomConfig),
}

impl PhysicalConfig {
    /// Reject unusable parameters; collect non-fatal oddities as warnings.
    pub fn validate(&self) -> Result<Vec<String>> {
        let fin = [
            self.omega_e,
            self.omega_f,
            self.omega_d,
            self.rabi,
            self.j1_mag,
            self.j1_phase,
            self.j2_mag,
            self.j2_phase,
            self.distance,
            self.velocity,
        ];
        if fin.iter().any(|x| !x.is_finite()) {
            return Err(CoreError::Config("non-finite physical parameter".into()));
        }
        if self.rabi < 0.0 {
            return Err(CoreError::Config("rabi must be >= 0".into()));
        }
        if self.j1_mag < 0.0 || self.j2_mag < 0.0 {
            return Err(CoreError::Config("coupling magnitudes must be >= 0".into()));
        }
        if self.j1_mag == 0.0 && self.j2_mag == 0.0 {
            return Err(CoreError::Config("at least one coupling must be nonzero".into()));
        }
        if self.distance < 0.0 {
            return Err(CoreError::Config("distance must be >= 0".into()));
        }
        if !(self.velocity > 0.0) {
            return Err(CoreError::Config("velocity must be > 0".into()));
        }

        let mut warnings = Vec::new();
        let gamma = PI / self.velocity * (self.j1_mag.powi(2) + self.j2_mag.powi(2));
        // The rotating-wave treatment wants the carrier far above the decay
        // scale; warn, don't reject.
        if self.omega_e < 20.0 * gamma {
            warnings.push(format!(
                "omega_e = {:.6e} is below 20*Gamma = {:.6e}; narrow-band assumptions degrade",
                self.omega_e,
                20.0 * gamma
            ));
        }
        if self.rabi == 0.0 && self.omega_f == self.omega_d {
            warnings.push("degenerate drive (rabi = 0, omega_f = omega_d): mixing angle pinned to 0".into());
        }
        Ok(warnings)
    }
}

impl PhenomConfig {
    pub fn validate(&self) -> Result<Vec<String>> {
        let fin = [
            self.gamma,
            self.theta,
            self.phi_plus,
            self.phi_minus,
            self.phi_j,
            self.tau_gamma,
            self.coupling_ratio,
        ];
        if fin.iter().any(|x| !x.is_finite()) {
            return Err(CoreError::Config("non-finite phenomenological parameter".into()));
        }
        if !(self.gamma > 0.0) {
            return Err(CoreError::Config("gamma must be > 0".into()));
        }
        if !(0.0..=PI).contains(&self.theta) {
            return Err(CoreError::Config(format!(
                "theta must lie in [0, pi], got {:.6e}",
                self.theta
            )));
        }
        if self.tau_gamma < 0.0 {
            return Err(CoreError::Config("tau_gamma must be >= 0".into()));
        }
        if !(self.coupling_ratio > 0.0) {
            return Err(CoreError::Config("coupling_ratio must be > 0".into()));
        }
        Ok(Vec::new())
    }
}

/// Parse the `key = value` config format. Returns the parsed model plus
/// validation warnings.
pub fn parse_config(text: &str) -> Result<(ModelConfig, Vec<String>)> {
    let mut pairs: Vec<(String, f64, usize)> = Vec::new();
    let mut mode: Option<String> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CoreError::Config(format!("line {}: expected `key = value`", lineno + 1))
        })?;
        let key = key.trim().to_ascii_lowercase();
        let value = value.trim();
        if key == "mode" {
            if mode.is_some() {
                return Err(CoreError::Config("duplicate key `mode`".into()));
            }
            mode = Some(value.to_ascii_lowercase());
            continue;
        }
        let num: f64 = value.parse().map_err(|_| {
            CoreError::Config(format!("line {}: `{}` is not a number", lineno + 1, value))
        })?;
        if pairs.iter().any(|(k, _, _)| *k == key) {
            return Err(CoreError::Config(format!("duplicate key `{key}`")));
        }
        pairs.push((key, num, lineno + 1));
    }

    let mode = mode.ok_or_else(|| CoreError::Config("missing `mode = physical | phenom`".into()))?;
    let take = |pairs: &mut Vec<(String, f64, usize)>, key: &str| -> Option<f64> {
        pairs
            .iter()
            .position(|(k, _, _)| k == key)
            .map(|i| pairs.remove(i).1)
    };

    let model = match mode.as_str() {
        "phenom" => {
            let mut cfg = PhenomConfig::default();
            if let Some(x) = take(&mut pairs, "gamma") {
                cfg.gamma = x;
            }
            // angles arrive in units of pi
            if let Some(x) = take(&mut pairs, "theta") {
                cfg.theta = x * PI;
            }
            if let Some(x) = take(&mut pairs, "phi_plus") {
                cfg.phi_plus = x * PI;
            }
            if let Some(x) = take(&mut pairs, "phi_minus") {
                cfg.phi_minus = x * PI;
            }
            if let Some(x) = take(&mut pairs, "phi_j") {
                cfg.phi_j = x * PI;
            }
            if let Some(x) = take(&mut pairs, "tau_gamma") {
                cfg.tau_gamma = x * PI;
            }
            if let Some(x) = take(&mut pairs, "coupling_ratio") {
                cfg.coupling_ratio = x;
            }
            ModelConfig::Phenom(cfg)
        }
        "physical" => {
            let mut cfg = PhysicalConfig {
                omega_e: 0.0,
                omega_f: 0.0,
                omega_d: 0.0,
                rabi: 0.0,
                j1_mag: 0.0,
                j1_phase: 0.0,
                j2_mag: 0.0,
                j2_phase: 0.0,
                distance: 0.0,
                velocity: 1.0,
            };
            if let Some(x) = take(&mut pairs, "omega_e") {
                cfg.omega_e = x;
            }
            if let Some(x) = take(&mut pairs, "omega_f") {
                cfg.omega_f = x;
            }
            if let Some(x) = take(&mut pairs, "omega_d") {
                cfg.omega_d = x;
            }
            if let Some(x) = take(&mut pairs, "rabi") {
                cfg.rabi = x;
            }
            if let Some(x) = take(&mut pairs, "j1_mag") {
                cfg.j1_mag = x;
            }
            if let Some(x) = take(&mut pairs, "j1_phase") {
                cfg.j1_phase = x * PI;
            }
            if let Some(x) = take(&mut pairs, "j2_mag") {
                cfg.j2_mag = x;
            }
            if let Some(x) = take(&mut pairs, "j2_phase") {
                cfg.j2_phase = x * PI;
            }
            if let Some(x) = take(&mut pairs, "distance") {
                cfg.distance = x;
            }
            if let Some(x) = take(&mut pairs, "velocity") {
                cfg.velocity = x;
            }
            ModelConfig::Physical(cfg)
        }
        other => {
            return Err(CoreError::Config(format!(
                "mode must be `physical` or `phenom`, got `{other}`"
            )))
        }
    };

    if let Some((key, _, lineno)) = pairs.first() {
        return Err(CoreError::Config(format!(
            "line {lineno}: unknown key `{key}` for mode `{mode}`"
        )));
    }

    let warnings = match &model {
        ModelConfig::Physical(cfg) => cfg.validate()?,
        ModelConfig::Phenom(cfg) => cfg.validate()?,
    };
    Ok((model, warnings))
}
