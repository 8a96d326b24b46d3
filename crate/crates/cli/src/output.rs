//! Dataset plumbing: the manifest comment header every CSV embeds, fixed
//! 17-significant-digit row formatting, and the stdout/file switch.
//!
//! Outputs carry no timestamps; re-running the same command reproduces the
//! file byte for byte.

use std::io::Write;

use gascatter_core::config::{ModelConfig, PI};
use sha2::{Digest, Sha256};

use crate::error::{io_err, Result};

/// Everything that determined a dataset. Rendered as `#` comment lines and
/// hashed so outputs are self-describing.
pub struct Manifest {
    pub command: String,
    pub regime: &'static str,
    pub config: String,
    pub grid: String,
}

impl Manifest {
    pub fn new(regime: &'static str, config: String, grid: String) -> Manifest {
        // argv without the binary path: stable across installations
        let command: Vec<String> = std::env::args().skip(1).collect();
        Manifest { command: command.join(" "), regime, config, grid }
    }

    pub fn header(&self) -> String {
        let mut hasher = Sha256::new();
        for part in [&self.command, &self.config, &self.grid] {
            hasher.update(part.as_bytes());
            hasher.update(b"\n");
        }
        hasher.update(self.regime.as_bytes());
        let hash = hasher.finalize();
        format!(
            "# gascatter v{}\n# command: {}\n# regime: {}\n# config: {}\n# grid: {}\n# input-hash: sha256:{:x}\n",
            env!("CARGO_PKG_VERSION"),
            self.command,
            self.regime,
            self.config,
            self.grid,
            hash,
        )
    }
}

fn pi_units(x: f64) -> String {
    format!("{}pi", x / PI)
}

/// One-line rendering of the fully resolved parameters, angles back in
/// units of pi.
pub fn config_line(model: &ModelConfig) -> String {
    match model {
        ModelConfig::Phenom(c) => format!(
            "mode=phenom gamma={} theta={} phi_plus={} phi_minus={} phi_j={} tau_gamma={} coupling_ratio={}",
            c.gamma,
            pi_units(c.theta),
            pi_units(c.phi_plus),
            pi_units(c.phi_minus),
            pi_units(c.phi_j),
            pi_units(c.tau_gamma),
            c.coupling_ratio,
        ),
        ModelConfig::Physical(c) => format!(
            "mode=physical omega_e={} omega_f={} omega_d={} rabi={} j1_mag={} j1_phase={} j2_mag={} j2_phase={} distance={} velocity={}",
            c.omega_e,
            c.omega_f,
            c.omega_d,
            c.rabi,
            c.j1_mag,
            pi_units(c.j1_phase),
            c.j2_mag,
            pi_units(c.j2_phase),
            c.distance,
            c.velocity,
        ),
    }
}

/// 17 significant digits, enough to round-trip any f64.
pub fn field(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn csv_line(values: &[f64]) -> String {
    let mut line = String::with_capacity(values.len() * 24);
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            line.push(',');
        }
        line.push_str(&field(*v));
    }
    line.push('\n');
    line
}

/// Write to the given path, `-` meaning stdout. File writes leave a note on
/// stderr; stdout stays data-only either way.
pub fn emit(path: &str, content: &str, what: &str) -> Result<()> {
    if path == "-" {
        let stdout = std::io::stdout();
        let mut lock = stdout.lock();
        lock.write_all(content.as_bytes())
            .and_then(|_| lock.flush())
            .map_err(|e| io_err("writing to stdout", e))?;
    } else {
        std::fs::write(path, content).map_err(|e| io_err(&format!("writing {path}"), e))?;
        eprintln!("wrote {what} to {path}");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use gascatter_core::config::PhenomConfig;

    #[test]
    fn fields_carry_seventeen_significant_digits() {
        assert_eq!(field(1.0), "1.0000000000000000e0");
        assert_eq!(field(-0.125), "-1.2500000000000000e-1");
        assert_eq!(csv_line(&[1.0, 2.0]), "1.0000000000000000e0,2.0000000000000000e0\n");
    }

    #[test]
    fn config_line_prints_angles_in_pi_units() {
        let cfg = PhenomConfig { theta: 0.5 * PI, phi_j: PI, ..PhenomConfig::default() };
        let line = config_line(&ModelConfig::Phenom(cfg));
        assert!(line.contains("theta=0.5pi"), "{line}");
        assert!(line.contains("phi_j=1pi"), "{line}");
        assert!(line.contains("gamma=1 "), "{line}");
    }

    #[test]
    fn manifest_header_is_stable_for_fixed_inputs() {
        let m = Manifest {
            command: "spectrum --figure fig3a".into(),
            regime: "markov",
            config: "mode=phenom".into(),
            grid: "[-10, 10] x 2001".into(),
        };
        let a = m.header();
        let b = m.header();
        assert_eq!(a, b);
        assert!(a.contains("# input-hash: sha256:"));
        assert!(!a.to_lowercase().contains("time"), "no timestamps in the manifest");
    }
}
