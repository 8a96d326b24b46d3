//! Spectral sweeps and feature analysis on top of the closed-form
//! coefficients: detuning grids, directional contrast, trapped-state locks,
//! suppression combs, and peak/dip extraction.

use crate::config::{PhenomConfig, PI};
use crate::dressed::DressedFrame;
use crate::rates::{phenom_to_rateset, RatePhaseSet};
use crate::scattering::{amplitudes, AmplitudeSet, Channel, Direction, Regime};

/// Phase-lock detection tolerance, radians.
pub const ANGLE_LOCK_TOL: f64 = 1e-9;

/// One detuning sample: both travel directions, lower-channel incidence.
#[derive(Debug, Clone, Copy)]
pub struct SpectrumRow {
    pub delta: f64,
    pub forward: AmplitudeSet,
    pub backward: AmplitudeSet,
}

impl SpectrumRow {
    /// Transmission contrast T - T~ between the travel directions.
    pub fn i1(&self) -> f64 {
        self.forward.transmission() - self.backward.transmission()
    }
    /// Conversion contrast Tc - Tc~ between the travel directions.
    pub fn i2(&self) -> f64 {
        self.forward.conversion() - self.backward.conversion()
    }
    pub fn any_flagged(&self) -> bool {
        self.forward.flagged || self.backward.flagged
    }
}

pub fn linear_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points <= 1 {
        return vec![lo];
    }
    let step = (hi - lo) / ((points - 1) as f64);
    (0..points).map(|i| lo + step * i as f64).collect()
}

/// Default detuning grid: +-10 Gamma for the delay-free regime, four delay
/// periods (+-4 pi / tau) for the exact one, falling back to +-10 Gamma when
/// the delay vanishes.
pub fn default_grid(rps: &RatePhaseSet, regime: Regime, points: usize) -> Vec<f64> {
    let half = match regime {
        Regime::Markovian => 10.0 * rps.decay,
        Regime::Exact => {
            if rps.tau > 0.0 {
                4.0 * PI / rps.tau
            } else {
                10.0 * rps.decay
            }
        }
    };
    linear_grid(-half, half, points)
}

/// Evaluate both travel directions over a detuning grid (in parallel when
/// the `parallel` feature is active; ordering is grid order either way).
pub fn sweep(
    frame: &DressedFrame,
    rps: &RatePhaseSet,
    regime: Regime,
    grid: &[f64],
) -> Vec<SpectrumRow> {
    crate::parallel::map_collect(grid, |&delta| SpectrumRow {
        delta,
        forward: amplitudes(rps, frame, regime, Direction::Forward, delta),
        backward: amplitudes(rps, frame, regime, Direction::Backward, delta),
    })
}

fn angle_locked(value: f64, target: f64) -> bool {
    let d = (value - target).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d) < ANGLE_LOCK_TOL
}

/// A detuning-independent lock of the delay-free spectrum, with the shifted
/// mirror resonance where reflection reaches exactly 1 (conversion locks
/// only).
#[derive(Debug, Clone)]
pub struct BicLock {
    pub family: &'static str,
    /// Dressed channel whose emission the trapped state blocks.
    pub channel: Channel,
    /// Detuning of the R = 1 resonance, for conversion-suppressing locks.
    pub mirror_resonance: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct BicAssessment {
    /// Locks require the two coupling points to carry equal rates.
    pub equal_legs: bool,
    pub locks: Vec<BicLock>,
}

/// Detect the four delay-free trapped-state locks: with equal legs and the
/// leg phase difference at 0 or pi, pinning the matching channel phase
/// freezes part of the spectrum at every detuning. Suppressed conversion
/// turns the scatterer into a two-level mirror whose R = 1 resonance sits at
/// -+ Gamma_- sin(phi_-) (sign set by the leg phase family); a locked lower
/// channel phase instead makes the scatterer fully transparent.
pub fn locate_bics(cfg: &PhenomConfig) -> BicAssessment {
    let (_, rps) = phenom_to_rateset(cfg);
    let (g1, g2) = rps.leg_rates();
    let equal_legs = (g1 - g2).abs() <= 1e-9 * rps.decay;
    let mut locks = Vec::new();
    if equal_legs {
        let anti = angle_locked(rps.phi_j, PI);
        let in_phase = angle_locked(rps.phi_j, 0.0);
        if anti && angle_locked(rps.phi_plus, 0.0) {
            locks.push(BicLock {
                family: "conversion suppressed (antiphase legs, upper phase 0)",
                channel: Channel::Plus,
                mirror_resonance: Some(-rps.decay_minus * rps.phi_minus.sin()),
            });
        }
        if anti && angle_locked(rps.phi_minus, 0.0) {
            locks.push(BicLock {
                family: "fully transparent (antiphase legs, lower phase 0)",
                channel: Channel::Minus,
                mirror_resonance: None,
            });
        }
        if in_phase && angle_locked(rps.phi_plus, PI) {
            locks.push(BicLock {
                family: "conversion suppressed (in-phase legs, upper phase pi)",
                channel: Channel::Plus,
                mirror_resonance: Some(rps.decay_minus * rps.phi_minus.sin()),
            });
        }
        if in_phase && angle_locked(rps.phi_minus, PI) {
            locks.push(BicLock {
                family: "fully transparent (in-phase legs, lower phase pi)",
                channel: Channel::Minus,
                mirror_resonance: None,
            });
        }
    }
    BicAssessment { equal_legs, locks }
}

/// Forward-direction suppression combs of the exact spectrum.
///
/// With equal legs, the lower-channel absorption factor shared by every
/// forward outgoing wave vanishes whenever Delta*tau + phi_- = pi + phi_j
/// (mod 2 pi): there the photon cannot be absorbed at all, so T = 1 exactly
/// (`transmission_ones`). The conversion channel additionally dies on its
/// emission side at Delta*tau + phi_+ = pi + phi_j, but only the co-moving
/// half does for a general leg phase difference; both halves share that zero
/// exactly when the legs are in phase or antiphase, and only then does the
/// comb suppress Tc completely (`conversion_zeros`, empty otherwise).
///
/// `None` when the legs are unequal or the delay vanishes (no comb exists).
#[derive(Debug, Clone)]
pub struct SuppressionComb {
    pub conversion_zeros: Vec<f64>,
    pub transmission_ones: Vec<f64>,
}

pub fn suppression_comb(rps: &RatePhaseSet, lo: f64, hi: f64) -> Option<SuppressionComb> {
    let (g1, g2) = rps.leg_rates();
    if (g1 - g2).abs() > 1e-9 * rps.decay || rps.tau <= 0.0 {
        return None;
    }
    let comb = |phi: f64| {
        let base = PI + rps.phi_j - phi;
        let period = 2.0 * PI / rps.tau;
        let m_lo = ((lo - base / rps.tau) / period).ceil() as i64;
        let m_hi = ((hi - base / rps.tau) / period).floor() as i64;
        (m_lo..=m_hi)
            .map(|m| (base + 2.0 * PI * m as f64) / rps.tau)
            .collect::<Vec<_>>()
    };
    let half_turn = rps.phi_j.rem_euclid(PI);
    let aligned_legs = half_turn.min(PI - half_turn) < ANGLE_LOCK_TOL;
    Some(SuppressionComb {
        conversion_zeros: if aligned_legs { comb(rps.phi_plus) } else { Vec::new() },
        transmission_ones: comb(rps.phi_minus),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeatureKind {
    Peak,
    Dip,
}

/// A local extremum of a sampled spectrum, parabolic-refined.
#[derive(Debug, Clone, Copy)]
pub struct Feature {
    pub kind: FeatureKind,
    pub position: f64,
    pub value: f64,
    pub prominence: f64,
    /// Full width at half prominence; `None` when a flank leaves the grid.
    pub width: Option<f64>,
}

fn peak_indices(ys: &[f64]) -> Vec<usize> {
    (1..ys.len().saturating_sub(1))
        .filter(|&i| ys[i] > ys[i - 1] && ys[i] > ys[i + 1])
        .collect()
}

fn prominence(ys: &[f64], i: usize) -> f64 {
    let walk = |range: &mut dyn Iterator<Item = usize>| -> f64 {
        let mut base = ys[i];
        for j in range {
            if ys[j] > ys[i] {
                break;
            }
            base = base.min(ys[j]);
        }
        base
    };
    let left = walk(&mut (0..i).rev());
    let right = walk(&mut (i + 1..ys.len()));
    ys[i] - left.max(right)
}

fn half_prominence_width(xs: &[f64], ys: &[f64], i: usize, prom: f64) -> Option<f64> {
    let level = ys[i] - 0.5 * prom;
    let crossing = |a: usize, b: usize| {
        let f = (ys[a] - level) / (ys[a] - ys[b]);
        xs[a] + f * (xs[b] - xs[a])
    };
    let mut left = None;
    for j in (0..i).rev() {
        if ys[j] <= level {
            left = Some(crossing(j + 1, j));
            break;
        }
    }
    let mut right = None;
    for j in i + 1..ys.len() {
        if ys[j] <= level {
            right = Some(crossing(j - 1, j));
            break;
        }
    }
    match (left, right) {
        (Some(l), Some(r)) => Some((r - l).abs()),
        _ => None,
    }
}

fn parabolic_refine(xs: &[f64], ys: &[f64], i: usize) -> (f64, f64) {
    let denom = ys[i - 1] - 2.0 * ys[i] + ys[i + 1];
    if denom.abs() < 1e-300 {
        return (xs[i], ys[i]);
    }
    let shift = 0.5 * (ys[i - 1] - ys[i + 1]) / denom;
    let h = 0.5 * (xs[i + 1] - xs[i - 1]);
    (xs[i] + shift * h, ys[i] - 0.25 * (ys[i - 1] - ys[i + 1]) * shift)
}

/// Peaks and dips of `ys` over `xs` with at least `min_prominence`, sorted
/// by position. A featureless (monotonic or flat) trace yields nothing.
pub fn extract_features(xs: &[f64], ys: &[f64], min_prominence: f64) -> Vec<Feature> {
    assert_eq!(xs.len(), ys.len());
    let mut out = Vec::new();
    let mut harvest = |vals: &[f64], kind: FeatureKind| {
        for i in peak_indices(vals) {
            let prom = prominence(vals, i);
            if prom < min_prominence {
                continue;
            }
            let (pos, refined) = parabolic_refine(xs, vals, i);
            let value = match kind {
                FeatureKind::Peak => refined,
                FeatureKind::Dip => -refined,
            };
            out.push(Feature {
                kind,
                position: pos,
                value,
                prominence: prom,
                width: half_prominence_width(xs, vals, i, prom),
            });
        }
    };
    harvest(ys, FeatureKind::Peak);
    let negated: Vec<f64> = ys.iter().map(|v| -v).collect();
    harvest(&negated, FeatureKind::Dip);
    out.sort_by(|a, b| a.position.total_cmp(&b.position));
    out
}

/// Golden-section maximization of a unimodal function on [lo, hi]; returns
/// (argmax, max). Used to push grid extrema to solver precision.
pub fn refine_peak(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut a = hi - INV_PHI * (hi - lo);
    let mut b = lo + INV_PHI * (hi - lo);
    let mut fa = f(a);
    let mut fb = f(b);
    for _ in 0..300 {
        if (hi - lo).abs() < 1e-13 * (1.0 + lo.abs() + hi.abs()) {
            break;
        }
        if fa < fb {
            lo = a;
            a = b;
            fa = fb;
            b = lo + INV_PHI * (hi - lo);
            fb = f(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - INV_PHI * (hi - lo);
            fa = f(a);
        }
    }
    let mid = 0.5 * (lo + hi);
    (mid, f(mid))
}
