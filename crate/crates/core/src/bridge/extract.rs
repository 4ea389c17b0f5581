use std::f64::consts::{PI, TAU};

use num_traits::Signed;

use super::{BridgeError, WaveFunctionGrid};
use crate::rational::{self, Rational};
use crate::structures::{AmplitudeStructure, PhaseStructure, RegionId};

/// Snapping lattice: moduli to multiples of `amplitude_lattice`, phases
/// to multiples of `2π / phase_divisions`, each within `tolerance`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtractionConfig {
    amplitude_lattice: Rational,
    phase_divisions: u64,
    tolerance: f64,
}

impl ExtractionConfig {
    pub fn new(amplitude_lattice: Rational, phase_divisions: u64, tolerance: f64) -> Result<Self, BridgeError> {
        if !amplitude_lattice.is_positive() {
            return Err(BridgeError::InvalidConfig("amplitude lattice must be positive".into()));
        }
        if phase_divisions == 0 {
            return Err(BridgeError::InvalidConfig("phase divisions must be at least 1".into()));
        }
        if !(tolerance.is_finite() && tolerance >= 0.0) {
            return Err(BridgeError::InvalidConfig("tolerance must be a nonnegative real".into()));
        }
        let delta = rational::to_f64(&amplitude_lattice);
        if tolerance >= delta / 2.0 {
            return Err(BridgeError::InvalidConfig(format!("tolerance {tolerance} is not below half the lattice {delta}")));
        }
        if tolerance >= PI / phase_divisions as f64 {
            return Err(BridgeError::InvalidConfig(format!(
                "tolerance {tolerance} is not below pi/{phase_divisions}"
            )));
        }
        Ok(ExtractionConfig { amplitude_lattice, phase_divisions, tolerance })
    }

    pub fn amplitude_lattice(&self) -> &Rational {
        &self.amplitude_lattice
    }

    pub fn phase_divisions(&self) -> u64 {
        self.phase_divisions
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Same phase lattice and tolerance, different amplitude unit.
    pub fn with_amplitude_lattice(&self, amplitude_lattice: Rational) -> Result<Self, BridgeError> {
        ExtractionConfig::new(amplitude_lattice, self.phase_divisions, self.tolerance)
    }
}

/// Lattice coordinates of a grid.
///
/// `moduli[i]` is entry `i`'s modulus in lattice units. `ticks[i]` is its
/// phase in units of `2π/n`, measured from the first entry with nonzero
/// snapped modulus (`anchor`), and is `None` for null entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapped {
    pub moduli: Vec<u64>,
    pub ticks: Vec<Option<u64>>,
    pub anchor: Option<usize>,
}

fn snap_moduli(g: &WaveFunctionGrid, cfg: &ExtractionConfig) -> Result<Vec<u64>, BridgeError> {
    let delta = rational::to_f64(cfg.amplitude_lattice());
    g.entries()
        .iter()
        .map(|e| {
            let modulus = e.value().norm();
            let q = (modulus / delta).round();
            let distance = (modulus - q * delta).abs();
            if distance > cfg.tolerance() {
                Err(BridgeError::SnapFailure { config: e.config.clone(), distance })
            } else {
                Ok(q as u64)
            }
        })
        .collect()
}

/// Snaps every entry; phases are taken relative to the anchor so the
/// result is unchanged by a global phase.
pub fn snap(g: &WaveFunctionGrid, cfg: &ExtractionConfig) -> Result<Snapped, BridgeError> {
    let moduli = snap_moduli(g, cfg)?;
    let anchor = moduli.iter().position(|&q| q > 0);
    let n = cfg.phase_divisions();
    let step = TAU / n as f64;
    let mut ticks = vec![None; moduli.len()];
    if let Some(anchor) = anchor {
        let origin = g.entries()[anchor].value().arg();
        for (i, e) in g.entries().iter().enumerate().filter(|(i, _)| moduli[*i] > 0) {
            let relative = (e.value().arg() - origin).rem_euclid(TAU);
            let units = (relative / step).round();
            let distance = (relative - units * step).abs();
            if distance > cfg.tolerance() {
                return Err(BridgeError::SnapFailure { config: e.config.clone(), distance });
            }
            ticks[i] = Some(units as u64 % n);
        }
    }
    Ok(Snapped { moduli, ticks, anchor })
}

/// `geq` by snapped modulus; `sum` holds every ordered triple whose
/// snapped moduli add exactly.
pub fn extract_amplitude(g: &WaveFunctionGrid, cfg: &ExtractionConfig) -> Result<AmplitudeStructure, BridgeError> {
    let q = snap_moduli(g, cfg)?;
    let ids: Vec<RegionId> = (0..q.len()).map(WaveFunctionGrid::region).collect();
    let mut geq = Vec::new();
    let mut sum = Vec::new();
    for a in 0..q.len() {
        for b in 0..q.len() {
            if q[a] >= q[b] {
                geq.push([ids[a].clone(), ids[b].clone()]);
            }
            for c in 0..q.len() {
                if q[c] == q[a] + q[b] {
                    sum.push([ids[a].clone(), ids[b].clone(), ids[c].clone()]);
                }
            }
        }
    }
    Ok(AmplitudeStructure::new(ids, geq, sum))
}

/// `cb` and `cong` read off the snapped ticks of the nonzero entries.
pub fn extract_phase(g: &WaveFunctionGrid, cfg: &ExtractionConfig) -> Result<PhaseStructure, BridgeError> {
    let snapped = snap(g, cfg)?;
    let n = cfg.phase_divisions();
    let present: Vec<(RegionId, u64)> = snapped
        .ticks
        .iter()
        .enumerate()
        .filter_map(|(i, t)| t.map(|t| (WaveFunctionGrid::region(i), t)))
        .collect();
    let mut cb = Vec::new();
    let mut cong = Vec::new();
    for (x, tx) in &present {
        for (y, ty) in &present {
            for (z, tz) in &present {
                if clockwise(*tx, *ty, *tz) {
                    cb.push([x.clone(), y.clone(), z.clone()]);
                }
            }
        }
    }
    let diff = |a: u64, b: u64| (a + n - b) % n;
    for (a, ta) in &present {
        for (b, tb) in &present {
            for (c, tc) in &present {
                for (d, td) in &present {
                    if diff(*ta, *tb) == diff(*tc, *td) {
                        cong.push([a.clone(), b.clone(), c.clone(), d.clone()]);
                    }
                }
            }
        }
    }
    Ok(PhaseStructure::new(present.into_iter().map(|(id, _)| id).collect(), cb, cong))
}

/// Some cyclic rotation of `(x, y, z)` is non-decreasing.
pub(crate) fn clockwise<T: PartialOrd>(x: T, y: T, z: T) -> bool {
    (x <= y && y <= z) || (y <= z && z <= x) || (z <= x && x <= y)
}
