//! Single-photon scattering coefficients.
//!
//! All formulas are evaluated in rate units: with the per-point rate
//! amplitudes a_j = sqrt(Gamma_j)*exp(i*phase_j) from [`RatePhaseSet`], every
//! coupling product pi/v * J_a * conj(J_b) that appears in a coefficient is
//! a_a * conj(a_b), and channel weights carry the dressing factors
//! sin(theta/2) (upper channel) and -cos(theta/2) (lower channel). No raw
//! coupling magnitude appears below this line.
//!
//! Two evaluators exist on purpose:
//! * [`amplitudes_exact`] / [`amplitudes_markov`] transcribe the closed-form
//!   coefficients for lower-channel incidence, forward and backward.
//! * [`s_matrix_reduced`] reduces the full S-matrix for an arbitrary incident
//!   channel from the pole expression of the excitation amplitude.
//!
//! They are independent enough to cross-check each other (and both are
//! checked against the real-space oracle).

use num_complex::Complex64;

use crate::dressed::DressedFrame;
use crate::error::{CoreError, Result};
use crate::rates::RatePhaseSet;
use crate::system::{Embedding, System};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Denominator magnitudes below `POLE_TOL_FACTOR * Gamma` mark a sample as
/// sitting on (or numerically indistinguishable from) a bound-state pole.
pub const POLE_TOL_FACTOR: f64 = 1e-13;
/// Relative detuning nudge used to report a finite value at a flagged pole.
const POLE_NUDGE_FACTOR: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Full delay retention: propagation factors exp(i*Delta*tau) kept.
    Exact,
    /// Delay-free limit: exp(i*Delta*tau) -> 1 with the channel phases kept.
    Markovian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// Dressed channel of a propagating photon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    Plus,
    Minus,
}

impl Channel {
    pub fn other(self) -> Channel {
        match self {
            Channel::Plus => Channel::Minus,
            Channel::Minus => Channel::Plus,
        }
    }
}

/// An incident photon: travel direction, dressed channel, and detuning
/// Delta = E - omega_e of the total energy from the bare excited level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Incidence {
    pub direction: Direction,
    pub channel: Channel,
    pub detuning: f64,
}

/// The four outgoing amplitudes for one incidence.
///
/// `t`/`r` stay in the incident channel (same/reversed direction);
/// `t_conv`/`r_conv` leave in the other channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeSet {
    pub t: Complex64,
    pub r: Complex64,
    pub t_conv: Complex64,
    pub r_conv: Complex64,
    /// Set when the sample sat on a near-singular denominator and was
    /// evaluated at a nudged detuning instead.
    pub flagged: bool,
}

impl AmplitudeSet {
    pub fn transmission(&self) -> f64 {
        self.t.norm_sqr()
    }
    pub fn reflection(&self) -> f64 {
        self.r.norm_sqr()
    }
    pub fn conversion(&self) -> f64 {
        self.t_conv.norm_sqr() + self.r_conv.norm_sqr()
    }
    /// T + R + Tc - 1; zero for any lossless scatterer.
    pub fn unitarity_defect(&self) -> f64 {
        self.transmission() + self.reflection() + self.conversion() - 1.0
    }
    pub fn as_array(&self) -> [Complex64; 4] {
        [self.t, self.r, self.t_conv, self.r_conv]
    }
}

/// exp(i*Delta*tau), or 1 in the delay-free regime.
fn delay_factor(rps: &RatePhaseSet, regime: Regime, delta: f64) -> Complex64 {
    match regime {
        Regime::Exact => Complex64::from_polar(1.0, delta * rps.tau),
        Regime::Markovian => Complex64::new(1.0, 0.0),
    }
}

/// Common resolvent denominator
/// Delta + i*(Gamma_+ + gamma_+ e^{i phi_+} z) + i*(Gamma_- + gamma_- e^{i phi_-} z).
pub fn denominator(rps: &RatePhaseSet, regime: Regime, delta: f64) -> Complex64 {
    let z = delay_factor(rps, regime, delta);
    let ep = Complex64::from_polar(1.0, rps.phi_plus);
    let em = Complex64::from_polar(1.0, rps.phi_minus);
    Complex64::new(delta, 0.0)
        + I * (rps.decay_plus + rps.coop_plus * ep * z)
        + I * (rps.decay_minus + rps.coop_minus * em * z)
}

fn eval_lower_incidence(
    rps: &RatePhaseSet,
    frame: &DressedFrame,
    direction: Direction,
    regime: Regime,
    delta: f64,
) -> (AmplitudeSet, Complex64) {
    let s = frame.sin_half();
    let c = frame.cos_half();
    let c2 = c * c;
    let z = delay_factor(rps, regime, delta);
    let e_chi_p = z * Complex64::from_polar(1.0, rps.phi_plus);
    let e_chi_m = z * Complex64::from_polar(1.0, rps.phi_minus);
    let (g1, g2) = rps.leg_rates();
    let p12 = rps.leg1 * rps.leg2.conj();
    let denom = denominator(rps, regime, delta);
    let phase = Complex64::from_polar(1.0, rps.phi);

    let common = Complex64::new(delta, 0.0)
        + I * rps.decay_plus
        + I * rps.coop_plus * e_chi_p;

    let set = match direction {
        Direction::Forward => {
            let t = (common - 2.0 * c2 * p12 * e_chi_m.im) / denom;
            let r = -I * (rps.coop_minus + c2 * (g1 * e_chi_m + g2 * e_chi_m.conj())) / denom;
            let cross = rps.leg1.conj() + rps.leg2.conj() * e_chi_m.conj();
            let t_conv = I * phase * s * c * (rps.leg1 + rps.leg2 * e_chi_p) * cross / denom;
            let r_conv = I * phase * s * c * (rps.leg1 * e_chi_p + rps.leg2) * cross / denom;
            AmplitudeSet { t, r, t_conv, r_conv, flagged: false }
        }
        Direction::Backward => {
            let t = (common - 2.0 * c2 * p12.conj() * e_chi_m.im) / denom;
            let r = -I * (rps.coop_minus + c2 * (g1 * e_chi_m.conj() + g2 * e_chi_m)) / denom;
            let cross = rps.leg1.conj() + rps.leg2.conj() * e_chi_m;
            let t_conv =
                I * phase.conj() * s * c * (rps.leg1 + rps.leg2 * e_chi_p.conj()) * cross / denom;
            let r_conv =
                I * phase.conj() * s * c * (rps.leg1 * e_chi_p.conj() + rps.leg2) * cross / denom;
            AmplitudeSet { t, r, t_conv, r_conv, flagged: false }
        }
    };
    (set, denom)
}

fn finite(set: &AmplitudeSet) -> bool {
    set.as_array().iter().all(|a| a.re.is_finite() && a.im.is_finite())
}

fn with_pole_guard<F>(rps: &RatePhaseSet, delta: f64, eval: F) -> AmplitudeSet
where
    F: Fn(f64) -> (AmplitudeSet, Complex64),
{
    let (set, denom) = eval(delta);
    if denom.norm() >= POLE_TOL_FACTOR * rps.decay && finite(&set) {
        return set;
    }
    // On a pole the raw quotient is meaningless; report the value a hair off
    // the singular point and flag the sample.
    let (mut nudged, _) = eval(delta + POLE_NUDGE_FACTOR * rps.decay);
    nudged.flagged = true;
    nudged
}

/// Closed-form coefficients with full delay retention, lower-channel
/// incidence. `direction` picks which end the photon comes from.
pub fn amplitudes_exact(
    rps: &RatePhaseSet,
    frame: &DressedFrame,
    direction: Direction,
    delta: f64,
) -> AmplitudeSet {
    with_pole_guard(rps, delta, |d| {
        eval_lower_incidence(rps, frame, direction, Regime::Exact, d)
    })
}

/// Delay-free closed-form coefficients, lower-channel incidence.
pub fn amplitudes_markov(
    rps: &RatePhaseSet,
    frame: &DressedFrame,
    direction: Direction,
    delta: f64,
) -> AmplitudeSet {
    with_pole_guard(rps, delta, |d| {
        eval_lower_incidence(rps, frame, direction, Regime::Markovian, d)
    })
}

pub fn amplitudes(
    rps: &RatePhaseSet,
    frame: &DressedFrame,
    regime: Regime,
    direction: Direction,
    delta: f64,
) -> AmplitudeSet {
    match regime {
        Regime::Exact => amplitudes_exact(rps, frame, direction, delta),
        Regime::Markovian => amplitudes_markov(rps, frame, direction, delta),
    }
}

/// Excitation amplitude of the bare excited level for a monochromatic
/// incident photon, in rate units (the bare-coupling version is this value
/// times sqrt(v/pi)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExcitationAmplitude {
    pub u: Complex64,
    pub flagged: bool,
}

pub fn excitation_amplitude(
    rps: &RatePhaseSet,
    frame: &DressedFrame,
    regime: Regime,
    inc: &Incidence,
) -> ExcitationAmplitude {
    let weight = match inc.channel {
        Channel::Plus => frame.sin_half(),
        Channel::Minus => -frame.cos_half(),
    };
    let phi_n = match inc.channel {
        Channel::Plus => rps.phi_plus,
        Channel::Minus => rps.phi_minus,
    };
    let eval = |delta: f64| {
        let half = match regime {
            Regime::Exact => Complex64::from_polar(1.0, 0.5 * (delta * rps.tau + phi_n)),
            Regime::Markovian => Complex64::from_polar(1.0, 0.5 * phi_n),
        };
        // backward incidence sees the mirror image: legs swap
        let (a1, a2) = match inc.direction {
            Direction::Forward => (rps.leg1, rps.leg2),
            Direction::Backward => (rps.leg2, rps.leg1),
        };
        let num = weight * (a1.conj() * half + a2.conj() * half.conj());
        let denom = denominator(rps, regime, delta);
        (num / denom, denom)
    };
    let (u, denom) = eval(inc.detuning);
    if denom.norm() >= POLE_TOL_FACTOR * rps.decay && u.re.is_finite() && u.im.is_finite() {
        ExcitationAmplitude { u, flagged: false }
    } else {
        let (u, _) = eval(inc.detuning + POLE_NUDGE_FACTOR * rps.decay);
        ExcitationAmplitude { u, flagged: true }
    }
}

/// Reduced S-matrix elements for an arbitrary incident channel, assembled
/// from the excitation-amplitude pole expression. Agrees with
/// [`amplitudes_exact`]/[`amplitudes_markov`] for lower-channel incidence and
/// covers upper-channel incidence, where no transcription is kept.
///
/// In a physical embedding every participating channel must be propagating
/// (v|k| = Delta + omega_e - nu > 0); otherwise the scatterer has an
/// evanescent port and the reduction is refused.
pub fn s_matrix_reduced(sys: &System, regime: Regime, inc: &Incidence) -> Result<AmplitudeSet> {
    if let Embedding::Physical { .. } = sys.embedding {
        for channel in [Channel::Plus, Channel::Minus] {
            let vk = sys
                .propagation_energy(channel, inc.detuning)
                .expect("physical embedding defines propagation energies");
            if vk <= 0.0 {
                return Err(CoreError::ClosedChannel {
                    channel: match channel {
                        Channel::Plus => "upper",
                        Channel::Minus => "lower",
                    },
                    energy: vk,
                });
            }
        }
    }

    let rps = &sys.rates;
    let frame = &sys.frame;
    let weight = |ch: Channel| match ch {
        Channel::Plus => frame.sin_half(),
        Channel::Minus => -frame.cos_half(),
    };
    let phi_of = |ch: Channel| match ch {
        Channel::Plus => rps.phi_plus,
        Channel::Minus => rps.phi_minus,
    };

    let eval = |delta: f64| {
        let denom = denominator(rps, regime, delta);
        // half-phases exp(i k_l d / 2) per channel
        let half = |ch: Channel| match regime {
            Regime::Exact => Complex64::from_polar(1.0, 0.5 * (delta * rps.tau + phi_of(ch))),
            Regime::Markovian => Complex64::from_polar(1.0, 0.5 * phi_of(ch)),
        };
        let (a1, a2) = match inc.direction {
            Direction::Forward => (rps.leg1, rps.leg2),
            Direction::Backward => (rps.leg2, rps.leg1),
        };
        let h_n = half(inc.channel);
        let source = a1.conj() * h_n + a2.conj() * h_n.conj();
        let w_n = weight(inc.channel);

        let out = |ch: Channel, reversed: bool| {
            let h = half(ch);
            let emit = if reversed {
                a1 * h + a2 * h.conj()
            } else {
                a1 * h.conj() + a2 * h
            };
            let kron = if !reversed && ch == inc.channel {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            kron - I * weight(ch) * w_n * emit * source / denom
        };

        let set = AmplitudeSet {
            t: out(inc.channel, false),
            r: out(inc.channel, true),
            t_conv: out(inc.channel.other(), false),
            r_conv: out(inc.channel.other(), true),
            flagged: false,
        };
        (set, denom)
    };
    Ok(with_pole_guard(rps, inc.detuning, eval))
}
