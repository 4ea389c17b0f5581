//! Axiom labels, check configuration and per-axiom reports.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::structures::RegionId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    G1,
    G2,
    S1,
    S2,
    S3,
    S4,
    S5,
    C1,
    C2,
    K1,
    K2,
    K3,
    K4,
    K5,
    K6,
    K7,
    K8,
    A0,
    A1,
    A2,
    A3,
    A4,
    A5,
}

/// Which structure an axiom speaks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Amplitude,
    Phase,
    PeriodicExtensive,
}

use Axiom::*;

impl Axiom {
    pub const AMPLITUDE: [Axiom; 7] = [G1, G2, S1, S2, S3, S4, S5];
    pub const PHASE: [Axiom; 10] = [C1, C2, K1, K2, K3, K4, K5, K6, K7, K8];
    pub const PERIODIC: [Axiom; 6] = [A0, A1, A2, A3, A4, A5];

    pub fn family(self) -> Family {
        match self {
            G1 | G2 | S1 | S2 | S3 | S4 | S5 => Family::Amplitude,
            C1 | C2 | K1 | K2 | K3 | K4 | K5 | K6 | K7 | K8 => Family::Phase,
            A0 | A1 | A2 | A3 | A4 | A5 => Family::PeriodicExtensive,
        }
    }

    pub fn all() -> impl Iterator<Item = Axiom> {
        Self::AMPLITUDE.into_iter().chain(Self::PHASE).chain(Self::PERIODIC)
    }

    pub fn label(self) -> &'static str {
        match self {
            G1 => "G1",
            G2 => "G2",
            S1 => "S1",
            S2 => "S2",
            S3 => "S3",
            S4 => "S4",
            S5 => "S5",
            C1 => "C1",
            C2 => "C2",
            K1 => "K1",
            K2 => "K2",
            K3 => "K3",
            K4 => "K4",
            K5 => "K5",
            K6 => "K6",
            K7 => "K7",
            K8 => "K8",
            A0 => "A0",
            A1 => "A1",
            A2 => "A2",
            A3 => "A3",
            A4 => "A4",
            A5 => "A5",
        }
    }
}

impl Family {
    pub fn axioms(self) -> &'static [Axiom] {
        match self {
            Family::Amplitude => &Axiom::AMPLITUDE,
            Family::Phase => &Axiom::PHASE,
            Family::PeriodicExtensive => &Axiom::PERIODIC,
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AxiomParseError {
    #[error("unknown axiom label {0:?}")]
    Unknown(String),
    #[error("malformed axiom range {0:?}")]
    BadRange(String),
}

impl FromStr for Axiom {
    type Err = AxiomParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim().to_ascii_uppercase();
        Axiom::all()
            .find(|a| a.label() == wanted)
            .ok_or_else(|| AxiomParseError::Unknown(s.trim().to_string()))
    }
}

/// Parses a comma-separated list such as `"K1,K2"` or `"C1,C2,K1..K8"`.
/// Ranges run inclusively through the canonical axiom order.
pub fn parse_list(text: &str) -> Result<Vec<Axiom>, AxiomParseError> {
    let mut out: Vec<Axiom> = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let axioms: Vec<Axiom> = match item.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi): (Axiom, Axiom) = (lo.parse()?, hi.parse()?);
                if lo > hi || lo.family() != hi.family() {
                    return Err(AxiomParseError::BadRange(item.to_string()));
                }
                Axiom::all().filter(|a| *a >= lo && *a <= hi).collect()
            }
            None => vec![item.parse()?],
        };
        for a in axioms {
            if !out.contains(&a) {
                out.push(a);
            }
        }
    }
    Ok(out)
}

impl Serialize for Axiom {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for Axiom {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let text = String::deserialize(de)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Pass on an empty domain: no quantifier instantiation exists.
    Vacuous,
}

/// Outcome of one axiom. `witness` is present exactly when the axiom fails
/// and lists the universally quantified variables of the failing
/// instantiation in the order the axiom binds them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<RegionId>>,
}

impl AxiomReport {
    pub fn pass(axiom: Axiom) -> Self {
        AxiomReport { axiom, status: Status::Pass, witness: None }
    }

    pub fn vacuous(axiom: Axiom) -> Self {
        AxiomReport { axiom, status: Status::Vacuous, witness: None }
    }

    pub fn fail(axiom: Axiom, witness: Vec<RegionId>) -> Self {
        AxiomReport { axiom, status: Status::Fail, witness: Some(witness) }
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("a check configuration needs at least one axiom")]
pub struct EmptyAxiomSet;

/// Which axioms to decide and how.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckConfig {
    axioms: Vec<Axiom>,
    pub parallel: bool,
    /// Include the midpoint clause of K4. No finite structure with two or
    /// more phase classes satisfies it, so it is off by default.
    pub k4_midpoints: bool,
}

impl CheckConfig {
    pub fn new(axioms: impl IntoIterator<Item = Axiom>) -> Result<Self, EmptyAxiomSet> {
        let mut list: Vec<Axiom> = Vec::new();
        for a in axioms {
            if !list.contains(&a) {
                list.push(a);
            }
        }
        if list.is_empty() {
            return Err(EmptyAxiomSet);
        }
        Ok(CheckConfig { axioms: list, parallel: false, k4_midpoints: false })
    }

    pub fn family(family: Family) -> Self {
        CheckConfig::new(family.axioms().iter().copied()).expect("families are nonempty")
    }

    pub fn amplitude() -> Self {
        Self::family(Family::Amplitude)
    }

    pub fn phase() -> Self {
        Self::family(Family::Phase)
    }

    pub fn with_parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    pub fn with_k4_midpoints(mut self, on: bool) -> Self {
        self.k4_midpoints = on;
        self
    }

    pub fn axioms(&self) -> &[Axiom] {
        &self.axioms
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_parsing_handles_ranges() {
        assert_eq!(parse_list("K1,K2").unwrap(), vec![K1, K2]);
        assert_eq!(parse_list("C1,C2,K1..K8").unwrap(), Axiom::PHASE.to_vec());
        assert_eq!(parse_list("g1, s4").unwrap(), vec![G1, S4]);
        assert!(parse_list("K9").is_err());
        assert!(parse_list("S5..G1").is_err());
        assert!(parse_list("S1..K2").is_err());
    }

    #[test]
    fn config_rejects_empty_axiom_set() {
        assert_eq!(CheckConfig::new([]), Err(EmptyAxiomSet));
        assert_eq!(CheckConfig::new([K1, K1]).unwrap().axioms(), &[K1]);
    }

    #[test]
    fn report_json_omits_witness_on_pass() {
        let pass = serde_json::to_string(&AxiomReport::pass(G1)).unwrap();
        assert_eq!(pass, r#"{"axiom":"G1","status":"pass"}"#);
        let fail = serde_json::to_string(&AxiomReport::fail(G1, vec!["a".into(), "a".into()])).unwrap();
        assert_eq!(fail, r#"{"axiom":"G1","status":"fail","witness":["a","a"]}"#);
    }
}
