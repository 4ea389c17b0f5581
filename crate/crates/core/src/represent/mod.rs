//! Numerical representations of amplitude and phase structures.
//!
//! Amplitude values are found by exact linear programming over the `=_A`
//! classes; phase values come from the circle group on the `=_P` classes.
//! The uniqueness checkers recover the gauge link between two
//! representations of the same structure.

mod amplitude;
mod phase;
mod simplex;
mod uniqueness;

use std::collections::BTreeMap;

use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::axiom::AxiomReport;
use crate::rational::{self, Rational};
use crate::structures::{RegionId, Violation};

pub use amplitude::{build_amplitude_rep, build_amplitude_rep_with_unit, quotient_amplitude, verify_amplitude_rep};
pub use phase::{build_phase_rep, quotient_phase, verify_phase_rep, PhaseQuotient, QuotientError};
pub use uniqueness::{
    check_amplitude_uniqueness, check_phase_uniqueness, telescoping_defect, GaugeLink, Uniqueness, UniquenessError,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("structure is malformed: {0:?}")]
    Malformed(Vec<Violation>),
    #[error("unknown region {0}")]
    UnknownRegion(RegionId),
    #[error("axiom {} fails{}", .0.axiom, witness_suffix(.0))]
    AxiomViolation(AxiomReport),
    #[error("no amplitude representation: the sum constraints {} cannot hold with strictly ordered classes", show_triples(.constraints))]
    Infeasible { constraints: Vec<[RegionId; 3]> },
    #[error("phase sum of classes {left} and {right} is not unique: {} all qualify", show_ids(.candidates))]
    NonUniqueSum { left: RegionId, right: RegionId, candidates: Vec<RegionId> },
    #[error("phase sum of classes {left} and {right} does not exist")]
    MissingSum { left: RegionId, right: RegionId },
    #[error("phase classes do not form an oriented cyclic group: {0}")]
    PhaseNotCyclic(String),
    #[error("modulus must be positive, got {0}")]
    NonPositiveModulus(String),
    #[error("normalizing region {0} has zero amplitude")]
    ZeroUnit(RegionId),
}

fn witness_suffix(r: &AxiomReport) -> String {
    match &r.witness {
        Some(w) => format!(" at ({})", show_ids(w)),
        None => String::new(),
    }
}

fn show_ids(ids: &[RegionId]) -> String {
    ids.iter().map(|i| i.as_str()).collect::<Vec<_>>().join(", ")
}

fn show_triples(t: &[[RegionId; 3]]) -> String {
    t.iter().map(|[a, b, c]| format!("S({a},{b},{c})")).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepresentationError {
    #[error("value for {0} is negative")]
    Negative(RegionId),
    #[error("value for {0} lies outside [0, modulus)")]
    OutOfRange(RegionId),
    #[error("modulus must be positive")]
    NonPositiveModulus,
}

/// `R`: region → nonnegative rational amplitude.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AmplitudeRepresentation {
    values: BTreeMap<RegionId, Rational>,
}

impl AmplitudeRepresentation {
    pub fn new(values: BTreeMap<RegionId, Rational>) -> Result<Self, RepresentationError> {
        if let Some((id, _)) = values.iter().find(|(_, v)| v.is_negative()) {
            return Err(RepresentationError::Negative(id.clone()));
        }
        Ok(AmplitudeRepresentation { values })
    }

    pub fn values(&self) -> &BTreeMap<RegionId, Rational> {
        &self.values
    }

    pub fn get(&self, id: &RegionId) -> Option<&Rational> {
        self.values.get(id)
    }
}

/// `f`: region → phase in `[0, modulus)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseRepresentation {
    values: BTreeMap<RegionId, Rational>,
    modulus: Rational,
}

impl PhaseRepresentation {
    pub fn new(values: BTreeMap<RegionId, Rational>, modulus: Rational) -> Result<Self, RepresentationError> {
        if !modulus.is_positive() {
            return Err(RepresentationError::NonPositiveModulus);
        }
        if let Some((id, _)) = values.iter().find(|(_, v)| v.is_negative() || **v >= modulus) {
            return Err(RepresentationError::OutOfRange(id.clone()));
        }
        Ok(PhaseRepresentation { values, modulus })
    }

    pub fn values(&self) -> &BTreeMap<RegionId, Rational> {
        &self.values
    }

    pub fn get(&self, id: &RegionId) -> Option<&Rational> {
        self.values.get(id)
    }

    pub fn modulus(&self) -> &Rational {
        &self.modulus
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepFile {
    values: BTreeMap<RegionId, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    modulus: Option<String>,
}

fn encode(values: &BTreeMap<RegionId, Rational>) -> BTreeMap<RegionId, String> {
    values.iter().map(|(k, v)| (k.clone(), rational::format(v))).collect()
}

fn decode<E: serde::de::Error>(values: BTreeMap<RegionId, String>) -> Result<BTreeMap<RegionId, Rational>, E> {
    values
        .into_iter()
        .map(|(k, v)| rational::parse(&v).map(|v| (k, v)).map_err(E::custom))
        .collect()
}

impl Serialize for AmplitudeRepresentation {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        RepFile { values: encode(&self.values), modulus: None }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for AmplitudeRepresentation {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let file = RepFile::deserialize(de)?;
        if file.modulus.is_some() {
            return Err(D::Error::custom("amplitude representations carry no modulus"));
        }
        AmplitudeRepresentation::new(decode(file.values)?).map_err(D::Error::custom)
    }
}

impl Serialize for PhaseRepresentation {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        RepFile { values: encode(&self.values), modulus: Some(rational::format(&self.modulus)) }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for PhaseRepresentation {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let file = RepFile::deserialize(de)?;
        let modulus = file.modulus.ok_or_else(|| D::Error::missing_field("modulus"))?;
        let modulus = rational::parse(&modulus).map_err(D::Error::custom)?;
        PhaseRepresentation::new(decode(file.values)?, modulus).map_err(D::Error::custom)
    }
}
