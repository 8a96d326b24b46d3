//! A ready-to-scatter model: rates + frame + how energies map to wavenumbers.

use crate::config::{ModelConfig, PhenomConfig, PhysicalConfig};
use crate::dressed::{build_dressed_frame, DressedFrame};
use crate::error::Result;
use crate::rates::{build_rate_phase_set, phenom_to_rateset, RatePhaseSet};

/// How the detuning relates to real wavenumbers.
///
/// Physical models know the carrier and the group velocity, so channel
/// openness (v|k| > 0) can be checked honestly. Phenomenological models treat
/// the detuning as the primary variable and never expose k; openness checks
/// don't apply there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Embedding {
    Physical { omega_e: f64, velocity: f64 },
    Phenomenological,
}

#[derive(Debug, Clone)]
pub struct System {
    pub rates: RatePhaseSet,
    pub frame: DressedFrame,
    pub embedding: Embedding,
}

impl System {
    pub fn from_physical(cfg: &PhysicalConfig) -> Result<System> {
        cfg.validate()?;
        let frame = build_dressed_frame(cfg);
        let rates = build_rate_phase_set(cfg, &frame);
        Ok(System {
            rates,
            frame,
            embedding: Embedding::Physical {
                omega_e: cfg.omega_e,
                velocity: cfg.velocity,
            },
        })
    }

    pub fn from_phenom(cfg: &PhenomConfig) -> Result<System> {
        cfg.validate()?;
        let (frame, rates) = phenom_to_rateset(cfg);
        Ok(System {
            rates,
            frame,
            embedding: Embedding::Phenomenological,
        })
    }

    pub fn from_config(cfg: &ModelConfig) -> Result<System> {
        match cfg {
            ModelConfig::Physical(c) => System::from_physical(c),
            ModelConfig::Phenom(c) => System::from_phenom(c),
        }
    }

    /// v|k| of the incident photon in the given dressed channel at detuning
    /// `delta`, when the embedding defines it.
    pub fn propagation_energy(&self, channel: crate::scattering::Channel, delta: f64) -> Option<f64> {
        match self.embedding {
            Embedding::Physical { omega_e, .. } => {
                let e = self.frame.energies?;
                let nu = match channel {
                    crate::scattering::Channel::Plus => e.nu_plus,
                    crate::scattering::Channel::Minus => e.nu_minus,
                };
                Some(delta + omega_e - nu)
            }
            Embedding::Phenomenological => None,
        }
    }
}
