//! Dressing of the driven doublet and the per-channel couplings.
//!
//! The drive hybridizes the ground and driven levels into two dressed states.
//! In the dressed basis the waveguide vertex splits into an upper-channel
//! coupling J_j*sin(theta/2) and a lower-channel coupling J_j*cos(theta/2)
//! (the lower vertex enters with a minus sign; the scattering code carries it
//! in the channel weight, not in these magnitudes).

use num_complex::Complex64;

use crate::config::PhysicalConfig;

/// Dressed-state energies. Only available when the model was specified
/// physically; the phenomenological route never needs them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedEnergies {
    pub nu_plus: f64,
    pub nu_minus: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DressedFrame {
    /// Mixing angle in [0, pi]: tan(theta) = 2*rabi / (omega_f - omega_d).
    pub theta: f64,
    /// Dressed energies; `None` in phenomenological mode.
    pub energies: Option<DressedEnergies>,
    /// Upper-channel couplings J_j * sin(theta/2).
    pub j1s: Complex64,
    pub j2s: Complex64,
    /// Lower-channel couplings J_j * cos(theta/2).
    pub j1c: Complex64,
    pub j2c: Complex64,
    /// True when rabi = 0 and omega_f = omega_d: theta is pinned to 0 by
    /// convention and the doublet is degenerate.
    pub degenerate_drive: bool,
}

impl DressedFrame {
    pub fn sin_half(&self) -> f64 {
        (0.5 * self.theta).sin()
    }
    pub fn cos_half(&self) -> f64 {
        (0.5 * self.theta).cos()
    }
}

/// Diagonalize the driven doublet and split the couplings per channel.
pub fn build_dressed_frame(cfg: &PhysicalConfig) -> DressedFrame {
    let delta_fd = cfg.omega_f - cfg.omega_d;
    let degenerate = cfg.rabi == 0.0 && delta_fd == 0.0;
    // atan2 puts theta in [0, pi] for rabi >= 0 and selects theta = 0 at the
    // degenerate point.
    let theta = (2.0 * cfg.rabi).atan2(delta_fd);
    let root = (delta_fd * delta_fd + 4.0 * cfg.rabi * cfg.rabi).sqrt();
    let energies = DressedEnergies {
        nu_plus: 0.5 * (delta_fd + root),
        nu_minus: 0.5 * (delta_fd - root),
    };

    let j1 = Complex64::from_polar(cfg.j1_mag, cfg.j1_phase);
    let j2 = Complex64::from_polar(cfg.j2_mag, cfg.j2_phase);
    let (s, c) = ((0.5 * theta).sin(), (0.5 * theta).cos());
    DressedFrame {
        theta,
        energies: Some(energies),
        j1s: j1 * s,
        j2s: j2 * s,
        j1c: j1 * c,
        j2c: j2 * c,
        degenerate_drive: degenerate,
    }
}

/// Frame for a phenomenological model: mixing angle given directly, dressed
/// energies unset, couplings expressed in the v = 1 rate embedding
/// (|J_j|^2 = Gamma_j / pi).
pub fn phenom_frame(theta: f64, gamma1: f64, gamma2: f64, phi_j: f64) -> DressedFrame {
    let j1 = Complex64::from_polar((gamma1 / std::f64::consts::PI).sqrt(), 0.0);
    let j2 = Complex64::from_polar((gamma2 / std::f64::consts::PI).sqrt(), -phi_j);
    let (s, c) = ((0.5 * theta).sin(), (0.5 * theta).cos());
    DressedFrame {
        theta,
        energies: None,
        j1s: j1 * s,
        j2s: j2 * s,
        j1c: j1 * c,
        j2c: j2 * c,
        degenerate_drive: false,
    }
}
