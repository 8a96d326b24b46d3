//! Scattering engine for a driven three-level emitter coupled to a 1D
//! waveguide at two separated points.
//!
//! The crate models a V-type system whose ground-to-excited transition talks
//! to the waveguide at two coupling points while a classical drive dresses
//! the ground doublet. Incoming single photons then scatter in a two-channel
//! ("dressed") basis; this crate computes the full set of outgoing
//! amplitudes, spectra, interference features, and optimal operating points,
//! and carries an independent real-space solver used to validate the closed
//! forms.

pub mod analysis;
pub mod config;
pub mod dressed;
pub mod error;
pub mod optimize;
pub mod oracle;
pub mod parallel;
pub mod rates;
pub mod scattering;
pub mod system;

pub use config::{ModelConfig, PhenomConfig, PhysicalConfig};
pub use error::{CoreError, Result};
pub use scattering::{AmplitudeSet, Channel, Direction, Incidence, Regime};
pub use system::System;
