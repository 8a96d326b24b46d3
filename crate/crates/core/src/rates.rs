//! Decay rates, interference rates and propagation phases.
//!
//! Everything downstream of this module works in rate units: the two
//! coupling points enter only through the complex "leg" amplitudes
//! a_j = sqrt(Gamma_j) * exp(i*phase_j) with Gamma_j = pi*|J_j|^2/v, so that
//! any product pi/v * J_a * conj(J_b) appearing in an amplitude formula is
//! exactly leg_a * conj(leg_b). Raw coupling magnitudes never cross this
//! boundary.

use num_complex::Complex64;

use crate::config::{PhenomConfig, PhysicalConfig};
use crate::dressed::{phenom_frame, DressedFrame};

/// Rates and phases that fully determine the scattering coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct RatePhaseSet {
    /// Total decay rate Gamma = Gamma_1 + Gamma_2.
    pub decay: f64,
    /// Interference (cooperative) rate gamma = 2*sqrt(Gamma_1*Gamma_2)*cos(phi_j); signed.
    pub coop: f64,
    /// Channel splits: Gamma_+ = Gamma*sin^2(theta/2), Gamma_- = Gamma*cos^2(theta/2).
    pub decay_plus: f64,
    pub decay_minus: f64,
    /// Same split applied to the interference rate.
    pub coop_plus: f64,
    pub coop_minus: f64,
    /// Photon delay between the coupling points, tau = d/v.
    pub tau: f64,
    /// Propagation phases of the dressed channels (radians, not wrapped).
    pub phi_plus: f64,
    pub phi_minus: f64,
    /// Half the dressed splitting accumulated over the delay:
    /// phi = (phi_minus - phi_plus)/2.
    pub phi: f64,
    /// Coupling-phase difference between the two points.
    pub phi_j: f64,
    /// Per-point rate amplitudes sqrt(Gamma_j)*exp(i*phase_j).
    pub leg1: Complex64,
    pub leg2: Complex64,
}

impl RatePhaseSet {
    /// Per-point decay rates (Gamma_1, Gamma_2).
    pub fn leg_rates(&self) -> (f64, f64) {
        (self.leg1.norm_sqr(), self.leg2.norm_sqr())
    }
}

/// Rates and phases from bare Hamiltonian quantities.
pub fn build_rate_phase_set(cfg: &PhysicalConfig, frame: &DressedFrame) -> RatePhaseSet {
    let pi_v = std::f64::consts::PI / cfg.velocity;
    let gamma1 = pi_v * cfg.j1_mag * cfg.j1_mag;
    let gamma2 = pi_v * cfg.j2_mag * cfg.j2_mag;
    let phi_j = cfg.j1_phase - cfg.j2_phase;
    let decay = gamma1 + gamma2;
    let coop = 2.0 * (gamma1 * gamma2).sqrt() * phi_j.cos();

    let tau = cfg.distance / cfg.velocity;
    let energies = frame
        .energies
        .expect("physical frame always carries dressed energies");
    let phi_plus = (cfg.omega_e - energies.nu_plus) * tau;
    let phi_minus = (cfg.omega_e - energies.nu_minus) * tau;

    let (s2, c2) = (frame.sin_half().powi(2), frame.cos_half().powi(2));
    RatePhaseSet {
        decay,
        coop,
        decay_plus: decay * s2,
        decay_minus: decay * c2,
        coop_plus: coop * s2,
        coop_minus: coop * c2,
        tau,
        phi_plus,
        phi_minus,
        phi: 0.5 * (phi_minus - phi_plus),
        phi_j,
        leg1: Complex64::from_polar(gamma1.sqrt(), cfg.j1_phase),
        leg2: Complex64::from_polar(gamma2.sqrt(), cfg.j2_phase),
    }
}

/// Rates and phases straight from the phenomenological parameters
/// (v = 1; dressed energies stay unset in the returned frame).
pub fn phenom_to_rateset(cfg: &PhenomConfig) -> (DressedFrame, RatePhaseSet) {
    let rho2 = cfg.coupling_ratio * cfg.coupling_ratio;
    let gamma1 = cfg.gamma / (1.0 + rho2);
    let gamma2 = cfg.gamma * rho2 / (1.0 + rho2);
    let coop = 2.0 * (gamma1 * gamma2).sqrt() * cfg.phi_j.cos();
    let tau = cfg.tau_gamma / cfg.gamma;

    let frame = phenom_frame(cfg.theta, gamma1, gamma2, cfg.phi_j);
    let (s2, c2) = (frame.sin_half().powi(2), frame.cos_half().powi(2));
    let rps = RatePhaseSet {
        decay: cfg.gamma,
        coop,
        decay_plus: cfg.gamma * s2,
        decay_minus: cfg.gamma * c2,
        coop_plus: coop * s2,
        coop_minus: coop * c2,
        tau,
        phi_plus: cfg.phi_plus,
        phi_minus: cfg.phi_minus,
        phi: 0.5 * (cfg.phi_minus - cfg.phi_plus),
        phi_j: cfg.phi_j,
        // phase convention: first leg real, second carries -phi_j
        leg1: Complex64::new(gamma1.sqrt(), 0.0),
        leg2: Complex64::from_polar(gamma2.sqrt(), -cfg.phi_j),
    };
    (frame, rps)
}

/// The phenomenological parameters a physical model induces. Feeding the
/// result back through [`phenom_to_rateset`] reproduces the same rates and
/// phases (energies measured in the same user units).
pub fn induced_phenom(cfg: &PhysicalConfig, frame: &DressedFrame, rps: &RatePhaseSet) -> PhenomConfig {
    PhenomConfig {
        gamma: rps.decay,
        theta: frame.theta,
        phi_plus: rps.phi_plus,
        phi_minus: rps.phi_minus,
        phi_j: rps.phi_j,
        tau_gamma: rps.tau * rps.decay,
        coupling_ratio: if cfg.j1_mag > 0.0 {
            cfg.j2_mag / cfg.j1_mag
        } else {
            f64::INFINITY
        },
    }
}
