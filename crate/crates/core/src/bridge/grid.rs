use std::collections::HashSet;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::structures::RegionId;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GridError {
    #[error("particle count must be at least 1")]
    NoParticles,
    #[error("{points} space points cannot hold {particles}-point regions")]
    TooFewPoints { particles: usize, points: usize },
    #[error("entry {index} has {found} points, expected {expected}")]
    Arity { index: usize, found: usize, expected: usize },
    #[error("entry {index} mentions point {point}, outside the grid")]
    OutOfRange { index: usize, point: usize },
    #[error("entry {index} is not strictly ascending")]
    Unsorted { index: usize },
    #[error("configuration {0:?} appears twice")]
    Duplicate(Vec<usize>),
    #[error("entry {index} has a non-finite value")]
    NonFinite { index: usize },
    #[error("every entry has zero modulus")]
    ZeroNorm,
}

/// One sampled value `ψ(config)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub config: Vec<usize>,
    pub re: f64,
    pub im: f64,
}

impl Entry {
    pub fn new(config: Vec<usize>, value: Complex64) -> Self {
        Entry { config, re: value.re, im: value.im }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// A wave function of `particles` identical particles sampled on the
/// `N`-point regions of a 1-D grid with `space_points` sites.
///
/// Each configuration is a strictly ascending tuple of distinct sites, so
/// it names a region rather than an ordered point of configuration space.
/// Entry `i` is region `g{i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunctionGrid {
    particles: usize,
    space_points: usize,
    entries: Vec<Entry>,
}

impl WaveFunctionGrid {
    pub fn new(particles: usize, space_points: usize, entries: Vec<Entry>) -> Result<Self, GridError> {
        let g = WaveFunctionGrid::unchecked(particles, space_points, entries)?;
        if g.entries.iter().all(|e| e.value().norm() == 0.0) {
            return Err(GridError::ZeroNorm);
        }
        Ok(g)
    }

    /// Same checks as [`WaveFunctionGrid::new`] minus the nonzero-norm one;
    /// gauge maps use it so that underflow does not turn into a panic.
    pub(crate) fn unchecked(particles: usize, space_points: usize, entries: Vec<Entry>) -> Result<Self, GridError> {
        if particles == 0 {
            return Err(GridError::NoParticles);
        }
        if space_points < particles {
            return Err(GridError::TooFewPoints { particles, points: space_points });
        }
        let mut seen = HashSet::new();
        for (index, e) in entries.iter().enumerate() {
            if e.config.len() != particles {
                return Err(GridError::Arity { index, found: e.config.len(), expected: particles });
            }
            if let Some(&point) = e.config.iter().find(|&&p| p >= space_points) {
                return Err(GridError::OutOfRange { index, point });
            }
            if e.config.windows(2).any(|w| w[0] >= w[1]) {
                return Err(GridError::Unsorted { index });
            }
            if !e.re.is_finite() || !e.im.is_finite() {
                return Err(GridError::NonFinite { index });
            }
            if !seen.insert(&e.config) {
                return Err(GridError::Duplicate(e.config.clone()));
            }
        }
        Ok(WaveFunctionGrid { particles, space_points, entries })
    }

    pub fn particles(&self) -> usize {
        self.particles
    }

    pub fn space_points(&self) -> usize {
        self.space_points
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Region id of entry `index`.
    pub fn region(index: usize) -> RegionId {
        RegionId::new(format!("g{index}"))
    }

    pub fn position(&self, config: &[usize]) -> Option<usize> {
        self.entries.iter().position(|e| e.config == config)
    }

    pub(crate) fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        WaveFunctionGrid {
            particles: self.particles,
            space_points: self.space_points,
            entries: self.entries.iter().map(|e| Entry::new(e.config.clone(), f(e.value()))).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("grids serialize")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridFile {
    particles: usize,
    space_points: usize,
    entries: Vec<Entry>,
}

impl Serialize for WaveFunctionGrid {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        GridFile { particles: self.particles, space_points: self.space_points, entries: self.entries.clone() }
            .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for WaveFunctionGrid {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let file = GridFile::deserialize(de)?;
        WaveFunctionGrid::new(file.particles, file.space_points, file.entries).map_err(serde::de::Error::custom)
    }
}
