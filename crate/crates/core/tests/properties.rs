//! Randomized invariants of the scattering coefficients and the supporting
//! rate algebra. Anything that must hold at *every* parameter point lives
//! here; pinned-value checks stay in the unit tests.

use gascatter_core::config::{PhenomConfig, PhysicalConfig, PI};
use gascatter_core::dressed::build_dressed_frame;
use gascatter_core::oracle;
use gascatter_core::rates::{build_rate_phase_set, induced_phenom, phenom_to_rateset};
use gascatter_core::scattering::{
    amplitudes, excitation_amplitude, s_matrix_reduced, Channel, Direction, Incidence, Regime,
};
use gascatter_core::System;
use proptest::prelude::*;

prop_compose! {
    /// Generic phenomenological point: both channels weighted, positive
    /// delay, legs allowed to be lopsided.
    fn arb_phenom()(
        theta in 0.02..0.98f64,
        phi_plus in 0.0..2.0f64,
        phi_minus in 0.0..2.0f64,
        phi_j in 0.0..2.0f64,
        tau_gamma in 0.05..4.0f64,
        coupling_ratio in 0.3..3.0f64,
    ) -> PhenomConfig {
        PhenomConfig {
            gamma: 1.0,
            theta: theta * PI,
            phi_plus: phi_plus * PI,
            phi_minus: phi_minus * PI,
            phi_j: phi_j * PI,
            tau_gamma,
            coupling_ratio,
        }
    }
}

fn regime_of(exact: bool) -> Regime {
    if exact {
        Regime::Exact
    } else {
        Regime::Markovian
    }
}

fn direction_of(fwd: bool) -> Direction {
    if fwd {
        Direction::Forward
    } else {
        Direction::Backward
    }
}

proptest! {
    /// Probability leaves through some port at every real detuning, in both
    /// regimes and travel directions.
    #[test]
    fn unitarity_holds_everywhere(
        cfg in arb_phenom(),
        delta in -12.0..12.0f64,
        exact in any::<bool>(),
    ) {
        let (frame, rps) = phenom_to_rateset(&cfg);
        for direction in [Direction::Forward, Direction::Backward] {
            let set = amplitudes(&rps, &frame, regime_of(exact), direction, delta);
            prop_assume!(!set.flagged);
            prop_assert!(
                set.unitarity_defect().abs() < 1e-12,
                "defect {:.3e} at {direction:?}",
                set.unitarity_defect()
            );
        }
    }

    /// Elastic reflection never cares which end the photon came from, and the
    /// two directional contrasts cancel: I1 = -I2. Both facts hold for any
    /// leg imbalance and any incident channel.
    #[test]
    fn reflection_reciprocity_and_contrast_cancellation(
        cfg in arb_phenom(),
        delta in -12.0..12.0f64,
        exact in any::<bool>(),
        upper in any::<bool>(),
    ) {
        let sys = System::from_phenom(&cfg).unwrap();
        let channel = if upper { Channel::Plus } else { Channel::Minus };
        let regime = regime_of(exact);
        let fwd = s_matrix_reduced(&sys, regime, &Incidence {
            direction: Direction::Forward, channel, detuning: delta,
        }).unwrap();
        let bwd = s_matrix_reduced(&sys, regime, &Incidence {
            direction: Direction::Backward, channel, detuning: delta,
        }).unwrap();
        prop_assume!(!fwd.flagged && !bwd.flagged);

        prop_assert!(fwd.unitarity_defect().abs() < 1e-12);
        prop_assert!(bwd.unitarity_defect().abs() < 1e-12);
        prop_assert!(
            (fwd.reflection() - bwd.reflection()).abs() < 1e-12,
            "R {:.3e} vs R~ {:.3e}",
            fwd.reflection(),
            bwd.reflection()
        );
        let i1 = fwd.transmission() - bwd.transmission();
        let i2 = fwd.conversion() - bwd.conversion();
        prop_assert!((i1 + i2).abs() < 1e-12, "i1 {i1:.3e} i2 {i2:.3e}");
    }

    /// When the two coupling phases are parallel or antiparallel every
    /// scattering probability (not just R) is direction-blind, whatever the
    /// leg imbalance.
    #[test]
    fn aligned_leg_phases_make_probabilities_reciprocal(
        cfg in arb_phenom(),
        n in 0..4i32,
        delta in -12.0..12.0f64,
        exact in any::<bool>(),
    ) {
        let cfg = PhenomConfig { phi_j: n as f64 * PI, ..cfg };
        let (frame, rps) = phenom_to_rateset(&cfg);
        let regime = regime_of(exact);
        let f = amplitudes(&rps, &frame, regime, Direction::Forward, delta);
        let b = amplitudes(&rps, &frame, regime, Direction::Backward, delta);
        prop_assume!(!f.flagged && !b.flagged);
        prop_assert!((f.transmission() - b.transmission()).abs() < 1e-12);
        prop_assert!((f.conversion() - b.conversion()).abs() < 1e-12);
        prop_assert!((f.t_conv.norm() - b.t_conv.norm()).abs() < 1e-12);
        prop_assert!((f.r_conv.norm() - b.r_conv.norm()).abs() < 1e-12);
    }

    /// In the delay-free regime a real lower-channel loop factor
    /// (sin(phi_-) = 0) makes the elastic transmission amplitude itself, not
    /// just its modulus, identical in the two directions.
    #[test]
    fn real_lower_loop_makes_transmission_amplitude_reciprocal(
        cfg in arb_phenom(),
        m in 0..4i32,
        delta in -12.0..12.0f64,
    ) {
        let cfg = PhenomConfig { phi_minus: m as f64 * PI, ..cfg };
        let (frame, rps) = phenom_to_rateset(&cfg);
        let f = amplitudes(&rps, &frame, Regime::Markovian, Direction::Forward, delta);
        let b = amplitudes(&rps, &frame, Regime::Markovian, Direction::Backward, delta);
        prop_assume!(!f.flagged && !b.flagged);
        prop_assert!((f.t - b.t).norm() < 1e-12, "t {} vs {}", f.t, b.t);
    }

    /// Rate bookkeeping: channel splits recombine to the totals, the
    /// interference rate never beats the decay rate, and the per-leg rates
    /// add up.
    #[test]
    fn rate_sum_rules(cfg in arb_phenom()) {
        let (_, rps) = phenom_to_rateset(&cfg);
        prop_assert!((rps.decay_plus + rps.decay_minus - rps.decay).abs() < 1e-12);
        prop_assert!((rps.coop_plus + rps.coop_minus - rps.coop).abs() < 1e-12);
        prop_assert!(rps.coop.abs() <= rps.decay * (1.0 + 1e-12));
        let (g1, g2) = rps.leg_rates();
        prop_assert!((g1 + g2 - rps.decay).abs() < 1e-12);
        prop_assert!((rps.phi - 0.5 * (rps.phi_minus - rps.phi_plus)).abs() < 1e-12);
    }

    /// A bare-Hamiltonian description and the phenomenological point it
    /// induces scatter identically.
    #[test]
    fn physical_and_induced_phenom_scatter_identically(
        omega_e in 80.0..400.0f64,
        omega_f in -1.5..1.5f64,
        rabi in 0.3..2.5f64,
        g1 in 0.2..1.2f64,
        g2 in 0.2..1.2f64,
        phase1 in 0.0..6.28f64,
        phase2 in 0.0..6.28f64,
        dist in 0.05..4.0f64,
        velocity in 0.5..2.0f64,
        delta in -6.0..6.0f64,
        exact in any::<bool>(),
    ) {
        let cfg = PhysicalConfig {
            omega_e,
            omega_f,
            omega_d: 0.0,
            rabi,
            j1_mag: (g1 * velocity / PI).sqrt(),
            j1_phase: phase1,
            j2_mag: (g2 * velocity / PI).sqrt(),
            j2_phase: phase2,
            distance: dist * velocity,
            velocity,
        };
        let frame = build_dressed_frame(&cfg);
        let rps = build_rate_phase_set(&cfg, &frame);
        let (frame2, rps2) = phenom_to_rateset(&induced_phenom(&cfg, &frame, &rps));

        let regime = regime_of(exact);
        for direction in [Direction::Forward, Direction::Backward] {
            let a = amplitudes(&rps, &frame, regime, direction, delta);
            let b = amplitudes(&rps2, &frame2, regime, direction, delta);
            prop_assume!(!a.flagged && !b.flagged);
            prop_assert!(
                oracle::deviation(&a, &b) < 1e-11,
                "{direction:?}: {:.3e}",
                oracle::deviation(&a, &b)
            );
        }
    }

    /// The general reduced S-matrix reproduces the dedicated lower-incidence
    /// forms element by element.
    #[test]
    fn reduced_s_matrix_matches_lower_incidence_forms(
        cfg in arb_phenom(),
        delta in -12.0..12.0f64,
        exact in any::<bool>(),
        fwd in any::<bool>(),
    ) {
        let sys = System::from_phenom(&cfg).unwrap();
        let regime = regime_of(exact);
        let direction = direction_of(fwd);
        let inc = Incidence { direction, channel: Channel::Minus, detuning: delta };
        let reduced = s_matrix_reduced(&sys, regime, &inc).unwrap();
        let closed = amplitudes(&sys.rates, &sys.frame, regime, direction, delta);
        prop_assume!(!reduced.flagged && !closed.flagged);
        prop_assert!(
            oracle::deviation(&closed, &reduced) < 1e-12,
            "{:.3e}",
            oracle::deviation(&closed, &reduced)
        );
    }

    /// The excited-level amplitude stays finite for any open configuration.
    #[test]
    fn excitation_amplitude_is_finite(
        cfg in arb_phenom(),
        delta in -12.0..12.0f64,
        exact in any::<bool>(),
        fwd in any::<bool>(),
        upper in any::<bool>(),
    ) {
        let (frame, rps) = phenom_to_rateset(&cfg);
        let inc = Incidence {
            direction: direction_of(fwd),
            channel: if upper { Channel::Plus } else { Channel::Minus },
            detuning: delta,
        };
        let u = excitation_amplitude(&rps, &frame, regime_of(exact), &inc);
        prop_assert!(u.u.re.is_finite() && u.u.im.is_finite());
    }

    /// Trapped-state locks freeze the delay-free spectrum at every detuning
    /// and every mixing angle: antiparallel legs with the matching channel
    /// phase at 0, or parallel legs with it at pi.
    #[test]
    fn trapped_state_locks_freeze_the_spectrum(
        theta in 0.02..0.98f64,
        other_phase in 0.0..2.0f64,
        delta in -12.0..12.0f64,
        anti in any::<bool>(),
    ) {
        let (phi_j, locked) = if anti { (PI, 0.0) } else { (0.0, PI) };

        // upper-channel phase locked: conversion dies identically
        let cfg = PhenomConfig {
            theta: theta * PI,
            phi_plus: locked,
            phi_minus: other_phase * PI,
            phi_j,
            ..PhenomConfig::default()
        };
        let (frame, rps) = phenom_to_rateset(&cfg);
        for direction in [Direction::Forward, Direction::Backward] {
            let set = amplitudes(&rps, &frame, Regime::Markovian, direction, delta);
            prop_assume!(!set.flagged);
            prop_assert!(set.conversion() < 1e-24, "Tc {:.3e}", set.conversion());
        }

        // lower-channel phase locked: full transparency
        let cfg = PhenomConfig {
            theta: theta * PI,
            phi_plus: other_phase * PI,
            phi_minus: locked,
            phi_j,
            ..PhenomConfig::default()
        };
        let (frame, rps) = phenom_to_rateset(&cfg);
        for direction in [Direction::Forward, Direction::Backward] {
            let set = amplitudes(&rps, &frame, Regime::Markovian, direction, delta);
            prop_assume!(!set.flagged);
            prop_assert!(
                (set.transmission() - 1.0).abs() < 1e-12,
                "T {:.16}",
                set.transmission()
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    /// The independent piecewise solver and the closed forms agree for a
    /// random incidence (direction and channel both sampled).
    #[test]
    fn real_space_solver_agrees_with_closed_forms(
        cfg in arb_phenom(),
        delta in -8.0..8.0f64,
        fwd in any::<bool>(),
        upper in any::<bool>(),
    ) {
        let sys = System::from_phenom(&cfg).unwrap();
        let inc = Incidence {
            direction: direction_of(fwd),
            channel: if upper { Channel::Plus } else { Channel::Minus },
            detuning: delta,
        };
        let out = oracle::compare(&sys, &inc).unwrap();
        prop_assume!(out.condition < 1e10);
        prop_assert!(out.amplitude_err < 1e-9, "amplitude {:.3e}", out.amplitude_err);
        prop_assert!(out.excitation_err < 1e-9, "excitation {:.3e}", out.excitation_err);
        prop_assert!(out.residual < 1e-9, "residual {:.3e}", out.residual);
    }
}
