//! Region identifiers and the two finite relational structures.
//!
//! An [`AmplitudeStructure`] carries `geq` (amplitude-greater-or-equal) and
//! `sum` (amplitude-sum); a [`PhaseStructure`] carries `cb` (clockwise
//! betweenness) and `cong` (signed phase-difference congruence). Relations
//! are stored extensionally, exactly as given; nothing is closed or
//! normalized on construction, so a structure may violate any axiom.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Opaque region token. Ordering is plain string ordering and only serves
/// to make scans and witnesses deterministic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RegionId(String);

impl RegionId {
    pub fn new(id: impl Into<String>) -> Self {
        RegionId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for RegionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for RegionId {
    fn from(id: &str) -> Self {
        RegionId(id.to_string())
    }
}

impl From<String> for RegionId {
    fn from(id: String) -> Self {
        RegionId(id)
    }
}

impl Serialize for RegionId {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for RegionId {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Token {
            Text(String),
            Int(i64),
        }
        Ok(match Token::deserialize(de)? {
            Token::Text(s) => RegionId(s),
            Token::Int(n) => RegionId(n.to_string()),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("unknown region {0}")]
    UnknownRegion(RegionId),
}

/// A well-formedness problem found by `validate`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    DanglingReference(RegionId),
    DuplicateId(RegionId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DanglingReference(id) => write!(f, "relation mentions {id}, which is not in the carrier"),
            Violation::DuplicateId(id) => write!(f, "carrier lists {id} more than once"),
        }
    }
}

fn validate_parts<'a>(
    carrier: &[RegionId],
    mentioned: impl Iterator<Item = &'a RegionId>,
) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for id in carrier {
        if !seen.insert(id) {
            out.push(Violation::DuplicateId(id.clone()));
        }
    }
    let dangling: BTreeSet<&RegionId> = mentioned.filter(|id| !seen.contains(id)).collect();
    out.extend(dangling.into_iter().cloned().map(Violation::DanglingReference));
    out
}

fn require<'a>(carrier: &[RegionId], id: &'a RegionId) -> Result<&'a RegionId, StructureError> {
    if carrier.contains(id) {
        Ok(id)
    } else {
        Err(StructureError::UnknownRegion(id.clone()))
    }
}

/// Amplitude half of the state: `geq` pairs and `sum` triples over a carrier.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AmplitudeStructure {
    carrier: Vec<RegionId>,
    geq: BTreeSet<[RegionId; 2]>,
    sum: BTreeSet<[RegionId; 3]>,
}

impl AmplitudeStructure {
    pub fn new(
        carrier: Vec<RegionId>,
        geq: impl IntoIterator<Item = [RegionId; 2]>,
        sum: impl IntoIterator<Item = [RegionId; 3]>,
    ) -> Self {
        AmplitudeStructure { carrier, geq: geq.into_iter().collect(), sum: sum.into_iter().collect() }
    }

    pub fn carrier(&self) -> &[RegionId] {
        &self.carrier
    }

    pub fn geq(&self) -> &BTreeSet<[RegionId; 2]> {
        &self.geq
    }

    pub fn sum(&self) -> &BTreeSet<[RegionId; 3]> {
        &self.sum
    }

    pub fn has_geq(&self, a: &RegionId, b: &RegionId) -> bool {
        self.geq.contains(&[a.clone(), b.clone()])
    }

    /// `a =_A b`: both directions of `geq` hold.
    pub fn amp_eq(&self, a: &RegionId, b: &RegionId) -> Result<bool, StructureError> {
        require(&self.carrier, a)?;
        require(&self.carrier, b)?;
        Ok(self.has_geq(a, b) && self.has_geq(b, a))
    }

    /// `a ≻_A b`: `a geq b` and not `b geq a`.
    pub fn amp_gt(&self, a: &RegionId, b: &RegionId) -> Result<bool, StructureError> {
        require(&self.carrier, a)?;
        require(&self.carrier, b)?;
        Ok(self.has_geq(a, b) && !self.has_geq(b, a))
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mentioned = self.geq.iter().flatten().chain(self.sum.iter().flatten());
        validate_parts(&self.carrier, mentioned)
    }
}

/// Phase half of the state: `cb` triples and `cong` quadruples over a carrier.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PhaseStructure {
    carrier: Vec<RegionId>,
    cb: BTreeSet<[RegionId; 3]>,
    cong: BTreeSet<[RegionId; 4]>,
}

impl PhaseStructure {
    pub fn new(
        carrier: Vec<RegionId>,
        cb: impl IntoIterator<Item = [RegionId; 3]>,
        cong: impl IntoIterator<Item = [RegionId; 4]>,
    ) -> Self {
        PhaseStructure { carrier, cb: cb.into_iter().collect(), cong: cong.into_iter().collect() }
    }

    pub fn carrier(&self) -> &[RegionId] {
        &self.carrier
    }

    pub fn cb(&self) -> &BTreeSet<[RegionId; 3]> {
        &self.cb
    }

    pub fn cong(&self) -> &BTreeSet<[RegionId; 4]> {
        &self.cong
    }

    pub fn has_cong(&self, a: &RegionId, b: &RegionId, c: &RegionId, d: &RegionId) -> bool {
        self.cong.contains(&[a.clone(), b.clone(), c.clone(), d.clone()])
    }

    /// `a =_P b`: `ac ∼ bc` for every `c` in the carrier.
    pub fn phase_eq(&self, a: &RegionId, b: &RegionId) -> Result<bool, StructureError> {
        require(&self.carrier, a)?;
        require(&self.carrier, b)?;
        Ok(self.carrier.iter().all(|c| self.has_cong(a, c, b, c)))
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mentioned = self.cb.iter().flatten().chain(self.cong.iter().flatten());
        validate_parts(&self.carrier, mentioned)
    }
}

/// Either kind of structure, as read from a structure file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Amplitude(AmplitudeStructure),
    Phase(PhaseStructure),
}

impl Structure {
    pub fn carrier(&self) -> &[RegionId] {
        match self {
            Structure::Amplitude(s) => s.carrier(),
            Structure::Phase(s) => s.carrier(),
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        match self {
            Structure::Amplitude(s) => s.validate(),
            Structure::Phase(s) => s.validate(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Amplitude(_) => "amplitude",
            Structure::Phase(_) => "phase",
        }
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("structures always serialize")
    }
}

impl From<AmplitudeStructure> for Structure {
    fn from(s: AmplitudeStructure) -> Self {
        Structure::Amplitude(s)
    }
}

impl From<PhaseStructure> for Structure {
    fn from(s: PhaseStructure) -> Self {
        Structure::Phase(s)
    }
}

// File format. `kind` is checked before the remaining fields so that an
// amplitude file handed to a phase reader fails with a clear message.

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Amplitude,
    Phase,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AmplitudeFile {
    kind: Kind,
    carrier: Vec<RegionId>,
    geq: Vec<[RegionId; 2]>,
    sum: Vec<[RegionId; 3]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PhaseFile {
    kind: Kind,
    carrier: Vec<RegionId>,
    cb: Vec<[RegionId; 3]>,
    cong: Vec<[RegionId; 4]>,
}

impl Serialize for AmplitudeStructure {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        AmplitudeFile {
            kind: Kind::Amplitude,
            carrier: self.carrier.clone(),
            geq: self.geq.iter().cloned().collect(),
            sum: self.sum.iter().cloned().collect(),
        }
        .serialize(ser)
    }
}

impl Serialize for PhaseStructure {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        PhaseFile {
            kind: Kind::Phase,
            carrier: self.carrier.clone(),
            cb: self.cb.iter().cloned().collect(),
            cong: self.cong.iter().cloned().collect(),
        }
        .serialize(ser)
    }
}

impl Serialize for Structure {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            Structure::Amplitude(s) => s.serialize(ser),
            Structure::Phase(s) => s.serialize(ser),
        }
    }
}

fn kind_of<E: serde::de::Error>(value: &serde_json::Value) -> Result<Kind, E> {
    let kind = value
        .get("kind")
        .ok_or_else(|| E::custom("missing field `kind`"))?;
    Kind::deserialize(kind).map_err(|_| E::custom(format!("unknown structure kind {kind}")))
}

impl<'de> Deserialize<'de> for AmplitudeStructure {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let value = serde_json::Value::deserialize(de)?;
        if !matches!(kind_of::<D::Error>(&value)?, Kind::Amplitude) {
            return Err(D::Error::custom("expected an amplitude structure"));
        }
        let file = AmplitudeFile::deserialize(value).map_err(D::Error::custom)?;
        Ok(AmplitudeStructure::new(file.carrier, file.geq, file.sum))
    }
}

impl<'de> Deserialize<'de> for PhaseStructure {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let value = serde_json::Value::deserialize(de)?;
        if !matches!(kind_of::<D::Error>(&value)?, Kind::Phase) {
            return Err(D::Error::custom("expected a phase structure"));
        }
        let file = PhaseFile::deserialize(value).map_err(D::Error::custom)?;
        Ok(PhaseStructure::new(file.carrier, file.cb, file.cong))
    }
}

impl<'de> Deserialize<'de> for Structure {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let value = serde_json::Value::deserialize(de)?;
        match kind_of::<D::Error>(&value)? {
            Kind::Amplitude => {
                let file = AmplitudeFile::deserialize(value).map_err(D::Error::custom)?;
                Ok(Structure::Amplitude(AmplitudeStructure::new(file.carrier, file.geq, file.sum)))
            }
            Kind::Phase => {
                let file = PhaseFile::deserialize(value).map_err(D::Error::custom)?;
                Ok(Structure::Phase(PhaseStructure::new(file.carrier, file.cb, file.cong)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(names: &[&str]) -> Vec<RegionId> {
        names.iter().map(|n| RegionId::from(*n)).collect()
    }

    fn r(n: &str) -> RegionId {
        RegionId::from(n)
    }

    #[test]
    fn amp_eq_and_gt_unfold_definitions() {
        let both = AmplitudeStructure::new(ids(&["a", "b"]), [[r("a"), r("b")], [r("b"), r("a")]], []);
        assert!(both.amp_eq(&r("a"), &r("b")).unwrap());
        assert!(!both.amp_gt(&r("a"), &r("b")).unwrap());

        let one = AmplitudeStructure::new(ids(&["a", "b"]), [[r("a"), r("b")]], []);
        assert!(!one.amp_eq(&r("a"), &r("b")).unwrap());
        assert!(one.amp_gt(&r("a"), &r("b")).unwrap());

        let refl = AmplitudeStructure::new(ids(&["a"]), [[r("a"), r("a")]], []);
        assert!(refl.amp_eq(&r("a"), &r("a")).unwrap());
        assert!(!refl.amp_gt(&r("a"), &r("a")).unwrap());
    }

    #[test]
    fn unknown_region_is_an_error() {
        let s = AmplitudeStructure::new(ids(&["a"]), [], []);
        assert_eq!(s.amp_eq(&r("a"), &r("z")), Err(StructureError::UnknownRegion(r("z"))));
        let p = PhaseStructure::new(ids(&["a"]), [], []);
        assert!(p.phase_eq(&r("q"), &r("a")).is_err());
    }

    #[test]
    fn phase_eq_quantifies_over_carrier() {
        let p = PhaseStructure::new(
            ids(&["a", "b"]),
            [],
            [[r("a"), r("a"), r("b"), r("a")], [r("a"), r("b"), r("b"), r("b")]],
        );
        assert!(p.phase_eq(&r("a"), &r("b")).unwrap());
        let missing = PhaseStructure::new(ids(&["a", "b"]), [], [[r("a"), r("a"), r("b"), r("a")]]);
        assert!(!missing.phase_eq(&r("a"), &r("b")).unwrap());
        let k1 = PhaseStructure::new(
            ids(&["a", "b"]),
            [],
            [[r("a"), r("a"), r("a"), r("a")], [r("a"), r("b"), r("a"), r("b")]],
        );
        assert!(k1.phase_eq(&r("a"), &r("a")).unwrap());
    }

    #[test]
    fn validation_reports_dangling_and_duplicates() {
        let ok = AmplitudeStructure::new(ids(&["a", "b"]), [[r("a"), r("b")]], [[r("a"), r("a"), r("b")]]);
        assert!(ok.validate().is_empty());
        let dangling = AmplitudeStructure::new(ids(&["a"]), [], [[r("a"), r("x"), r("a")]]);
        assert_eq!(dangling.validate(), vec![Violation::DanglingReference(r("x"))]);
        let dup = PhaseStructure::new(ids(&["a", "a"]), [], []);
        assert_eq!(dup.validate(), vec![Violation::DuplicateId(r("a"))]);
    }

    #[test]
    fn parses_the_documented_file_format() {
        let text = r#"{"kind":"amplitude","carrier":["r0","r1"],"geq":[["r1","r0"],["r0","r0"],["r1","r1"]],"sum":[["r0","r0","r0"],["r0","r1","r1"]]}"#;
        let s = Structure::from_json(text).unwrap();
        let Structure::Amplitude(a) = &s else { panic!("wrong kind") };
        assert_eq!(a.geq().len(), 3);
        assert_eq!(a.sum().len(), 2);
        assert_eq!(Structure::from_json(&s.to_json()).unwrap(), s);

        let reordered = r#"{"cong":[["a","a","a","a"]],"cb":[],"carrier":["a"],"kind":"phase"}"#;
        assert!(matches!(Structure::from_json(reordered).unwrap(), Structure::Phase(_)));
    }

    #[test]
    fn rejects_unknown_fields_and_kinds() {
        let extra = r#"{"kind":"phase","carrier":[],"cb":[],"cong":[],"colour":1}"#;
        assert!(Structure::from_json(extra).is_err());
        let bad_kind = r#"{"kind":"mass","carrier":[]}"#;
        assert!(Structure::from_json(bad_kind).is_err());
        let wrong = r#"{"kind":"phase","carrier":[],"cb":[],"cong":[]}"#;
        assert!(serde_json::from_str::<AmplitudeStructure>(wrong).is_err());
        let short_tuple = r#"{"kind":"amplitude","carrier":["a"],"geq":[["a"]],"sum":[]}"#;
        assert!(Structure::from_json(short_tuple).is_err());
    }

    #[test]
    fn integer_tokens_become_ids() {
        let text = r#"{"kind":"amplitude","carrier":[0,1],"geq":[[1,0]],"sum":[]}"#;
        let Structure::Amplitude(a) = Structure::from_json(text).unwrap() else { panic!() };
        assert!(a.has_geq(&r("1"), &r("0")));
    }
}
