//! Translation between sampled wave functions and the relational
//! structures, plus the gauge-invariant observables.
//!
//! Moduli and phases are snapped to a lattice before any comparison, so
//! extracted relations are exactly consistent. Phase ticks are read
//! relative to the first nonzero entry, which makes extraction blind to a
//! global phase by construction.

mod extract;
mod gauge;
mod grid;
mod sample;

use crate::represent::BuildError;
use crate::structures::RegionId;

pub use extract::{extract_amplitude, extract_phase, snap, ExtractionConfig, Snapped};
pub use gauge::{apply_gauge, born_probability, compare_up_to_gauge, conjugate, reconstruct, GaugeFit};
pub use grid::{Entry, GridError, WaveFunctionGrid};
pub use sample::{random_lattice_grid, LatticeShape};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BridgeError {
    #[error("invalid extraction settings: {0}")]
    InvalidConfig(String),
    #[error("entry {config:?} lies {distance:e} from the lattice")]
    SnapFailure { config: Vec<usize>, distance: f64 },
    #[error("scale must be a positive real, got {0}")]
    NonPositiveScale(f64),
    #[error("configuration {0:?} is not in the grid")]
    UnknownConfig(Vec<usize>),
    #[error("grid has zero norm")]
    ZeroNorm,
    #[error("representation has no value for {0}")]
    MissingValue(RegionId),
    #[error("not gauge equivalent: entry {config:?} deviates by {residual:e}")]
    NotGaugeEquivalent { config: Vec<usize>, residual: f64 },
    #[error(transparent)]
    Build(#[from] BuildError),
}
