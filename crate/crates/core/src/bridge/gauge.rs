use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::extract::{extract_amplitude, extract_phase, snap};
use super::{BridgeError, ExtractionConfig, WaveFunctionGrid};
use crate::rational::{self, int, modulo, Rational};
use crate::represent::{build_amplitude_rep, build_phase_rep, AmplitudeRepresentation, PhaseRepresentation};
use crate::structures::RegionId;

/// Multiplies every entry by `alpha · e^{i beta}`.
pub fn apply_gauge(g: &WaveFunctionGrid, alpha: f64, beta: f64) -> Result<WaveFunctionGrid, BridgeError> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(BridgeError::NonPositiveScale(alpha));
    }
    if !beta.is_finite() {
        return Err(BridgeError::InvalidConfig(format!("phase shift {beta} is not finite")));
    }
    let factor = Complex64::from_polar(alpha, beta);
    Ok(g.map(|z| z * factor))
}

/// Complex conjugation, the time-reversal map.
pub fn conjugate(g: &WaveFunctionGrid) -> WaveFunctionGrid {
    g.map(|z| z.conj())
}

/// Extracts both structures and builds their representations.
pub fn reconstruct(
    g: &WaveFunctionGrid,
    cfg: &ExtractionConfig,
    k: &Rational,
    zero: &RegionId,
) -> Result<(AmplitudeRepresentation, PhaseRepresentation), BridgeError> {
    let amplitude = build_amplitude_rep(&extract_amplitude(g, cfg)?)?;
    let phase = build_phase_rep(&extract_phase(g, cfg)?, k, zero)?;
    Ok((amplitude, phase))
}

/// Gauge recovered by [`compare_up_to_gauge`].
///
/// `alpha` and `beta` take the reconstruction `R·e^{2πi f/k}` (moduli in
/// lattice units) to the grid. `residual` is the largest deviation between
/// the snapped grid and the gauged reconstruction; it is exactly zero when
/// every snapped entry matches.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaugeFit {
    pub alpha: f64,
    pub beta: f64,
    pub residual: f64,
    #[serde(skip)]
    pub alpha_exact: Rational,
}

/// Fits `alpha > 0` and a global phase so that `alpha · e^{i beta} ·
/// R · e^{2πi f/k}` reproduces the grid's snapped values.
pub fn compare_up_to_gauge(
    g: &WaveFunctionGrid,
    r: &AmplitudeRepresentation,
    f: &PhaseRepresentation,
    cfg: &ExtractionConfig,
) -> Result<GaugeFit, BridgeError> {
    let snapped = snap(g, cfg)?;
    let delta = cfg.amplitude_lattice();
    let n = cfg.phase_divisions();
    let ticks = int(n as i64);
    let k = f.modulus();
    let ids: Vec<RegionId> = (0..g.len()).map(WaveFunctionGrid::region).collect();
    let amplitude = |i: usize| r.get(&ids[i]).ok_or_else(|| BridgeError::MissingValue(ids[i].clone()));

    let mut reference = None;
    for i in 0..g.len() {
        if amplitude(i)?.is_positive() {
            reference = Some(i);
            break;
        }
    }
    let not_equivalent = |i: usize, residual: f64| BridgeError::NotGaugeEquivalent { config: g.entries()[i].config.clone(), residual };
    let Some(reference) = reference else {
        return Err(not_equivalent(0, f64::INFINITY));
    };
    let alpha = int(snapped.moduli[reference] as i64) * delta / amplitude(reference)?;
    if alpha.is_zero() {
        return Err(not_equivalent(reference, rational::to_f64(delta)));
    }

    // The snapped anchor sits at tick 0, so the shift is −f(anchor) in ticks.
    let anchor = snapped.anchor.expect("grid has a nonzero entry when some amplitude is positive");
    let phase_of = |i: usize| f.get(&ids[i]).ok_or_else(|| BridgeError::MissingValue(ids[i].clone()));
    let shift = modulo(&-(phase_of(anchor)? * &ticks / k), &ticks);

    let mut residual = 0.0f64;
    let mut worst = 0;
    for i in 0..g.len() {
        let observed = int(snapped.moduli[i] as i64) * delta;
        let predicted = &alpha * amplitude(i)?;
        let (observed_tick, predicted_tick) = match snapped.ticks[i] {
            Some(t) => (Some(int(t as i64)), Some(modulo(&(&shift + phase_of(i)? * &ticks / k), &ticks))),
            None if predicted.is_zero() => (None, None),
            None => (None, f.get(&ids[i]).map(|v| modulo(&(&shift + v * &ticks / k), &ticks))),
        };
        if observed == predicted && observed_tick == predicted_tick {
            continue;
        }
        let point = |modulus: &Rational, tick: &Option<Rational>| {
            let angle = tick.as_ref().map_or(0.0, |t| TAU * rational::to_f64(t) / n as f64);
            Complex64::from_polar(rational::to_f64(modulus), angle)
        };
        let deviation = (point(&observed, &observed_tick) - point(&predicted, &predicted_tick)).norm();
        if deviation > residual {
            residual = deviation;
            worst = i;
        }
    }
    if residual > cfg.tolerance() {
        return Err(not_equivalent(worst, residual));
    }
    let beta = (g.entries()[anchor].value().arg() + TAU * rational::to_f64(&shift) / n as f64).rem_euclid(TAU);
    Ok(GaugeFit { alpha: rational::to_f64(&alpha), beta, residual, alpha_exact: alpha })
}

/// `Σ_subset |ψ|² / Σ_all |ψ|²`.
pub fn born_probability(g: &WaveFunctionGrid, subset: &[Vec<usize>]) -> Result<f64, BridgeError> {
    let total: f64 = g.entries().iter().map(|e| e.value().norm_sqr()).sum();
    if total == 0.0 {
        return Err(BridgeError::ZeroNorm);
    }
    let mut chosen = std::collections::BTreeSet::new();
    for config in subset {
        let i = g.position(config).ok_or_else(|| BridgeError::UnknownConfig(config.clone()))?;
        chosen.insert(i);
    }
    let part: f64 = chosen.iter().map(|&i| g.entries()[i].value().norm_sqr()).sum();
    Ok(part / total)
}
