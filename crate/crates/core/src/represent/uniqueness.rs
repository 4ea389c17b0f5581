use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{AmplitudeRepresentation, PhaseRepresentation};
use crate::rational::{self, modulo, Rational};
use crate::structures::RegionId;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UniquenessError {
    #[error("representations have no keys")]
    EmptyDomain,
    #[error("representations disagree on region {0}")]
    KeyMismatch(RegionId),
    #[error("representations use different moduli")]
    ModulusMismatch,
}

/// Gauge relating two exact representations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GaugeLink {
    /// `r2 = alpha · r1`, `alpha > 0`.
    Scale {
        #[serde(with = "rational::as_string")]
        alpha: Rational,
    },
    /// `f2 = f1 + beta (mod k)`, `0 ≤ beta < k`.
    Shift {
        #[serde(with = "rational::as_string")]
        beta: Rational,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Uniqueness {
    Related(GaugeLink),
    /// `witness` is the first mismatching id (amplitude) or the pair
    /// (anchor, mismatching id) (phase).
    NotRelated { witness: Vec<RegionId> },
}

fn same_keys<'a, V>(
    left: &'a std::collections::BTreeMap<RegionId, V>,
    right: &'a std::collections::BTreeMap<RegionId, V>,
) -> Result<(), UniquenessError> {
    if left.is_empty() && right.is_empty() {
        return Err(UniquenessError::EmptyDomain);
    }
    if let Some(id) = left.keys().find(|k| !right.contains_key(*k)).or_else(|| right.keys().find(|k| !left.contains_key(*k))) {
        return Err(UniquenessError::KeyMismatch(id.clone()));
    }
    Ok(())
}

/// Finds `alpha > 0` with `r2 = alpha · r1` on every key.
pub fn check_amplitude_uniqueness(
    r1: &AmplitudeRepresentation,
    r2: &AmplitudeRepresentation,
) -> Result<Uniqueness, UniquenessError> {
    same_keys(r1.values(), r2.values())?;
    let alpha = r1
        .values()
        .iter()
        .find(|(_, v)| !v.is_zero())
        .map(|(id, v)| r2.values()[id].clone() / v)
        .unwrap_or_else(Rational::one);
    for (id, v) in r1.values() {
        let w = &r2.values()[id];
        if !alpha.is_positive() || *w != &alpha * v {
            return Ok(Uniqueness::NotRelated { witness: vec![id.clone()] });
        }
    }
    Ok(Uniqueness::Related(GaugeLink::Scale { alpha }))
}

/// Finds `beta` with `f2 = f1 + beta (mod k)` on every key.
pub fn check_phase_uniqueness(
    f1: &PhaseRepresentation,
    f2: &PhaseRepresentation,
) -> Result<Uniqueness, UniquenessError> {
    if f1.modulus() != f2.modulus() {
        return Err(UniquenessError::ModulusMismatch);
    }
    same_keys(f1.values(), f2.values())?;
    let k = f1.modulus();
    let shift = |id: &RegionId| modulo(&(&f2.values()[id] - &f1.values()[id]), k);
    let anchor = f1.values().keys().next().expect("nonempty");
    let beta = shift(anchor);
    match f1.values().keys().find(|id| shift(id) != beta) {
        Some(id) => Ok(Uniqueness::NotRelated { witness: vec![anchor.clone(), id.clone()] }),
        None => Ok(Uniqueness::Related(GaugeLink::Shift { beta })),
    }
}

/// `D(a,b) = [(f1(a) − f1(b)) − (f2(a) − f2(b))] mod k`; zero for every
/// pair exactly when the two maps differ by a constant shift.
pub fn telescoping_defect(
    f1: &PhaseRepresentation,
    f2: &PhaseRepresentation,
    a: &RegionId,
    b: &RegionId,
) -> Result<Rational, UniquenessError> {
    if f1.modulus() != f2.modulus() {
        return Err(UniquenessError::ModulusMismatch);
    }
    let get = |f: &PhaseRepresentation, id: &RegionId| f.get(id).cloned().ok_or_else(|| UniquenessError::KeyMismatch(id.clone()));
    let first = get(f1, a)? - get(f1, b)?;
    let second = get(f2, a)? - get(f2, b)?;
    Ok(modulo(&(first - second), f1.modulus()))
}
