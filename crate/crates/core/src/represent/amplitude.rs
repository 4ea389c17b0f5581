use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use super::simplex::{maximize, Outcome};
use super::{AmplitudeRepresentation, BuildError};
use crate::axiom::{Axiom, CheckConfig};
use crate::checker::{check_amplitude, first_failure, CheckError};
use crate::rational::{int, Rational};
use crate::structures::{AmplitudeStructure, RegionId};
use crate::table::AmpTable;

fn require_axioms(s: &AmplitudeStructure, axioms: &[Axiom]) -> Result<(), BuildError> {
    let cfg = CheckConfig::new(axioms.iter().copied()).expect("nonempty");
    let reports = check_amplitude(s, &cfg).map_err(|e| match e {
        CheckError::Malformed(v) => BuildError::Malformed(v),
        CheckError::UnknownAxiom(..) => unreachable!("amplitude axioms only"),
    })?;
    match first_failure(&reports) {
        Some(r) => Err(BuildError::AxiomViolation(r.clone())),
        None => Ok(()),
    }
}

/// Class index per region (table order) and classes ascending by amplitude.
fn classes(t: &AmpTable) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = t.n;
    let mut reps: Vec<usize> = Vec::new();
    let mut class_of = vec![usize::MAX; n];
    for a in 0..n {
        match reps.iter().position(|&r| t.geq(a, r) && t.geq(r, a)) {
            Some(c) => class_of[a] = c,
            None => {
                class_of[a] = reps.len();
                reps.push(a);
            }
        }
    }
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by(|&x, &y| {
        let (x, y) = (reps[x], reps[y]);
        if t.gt(x, y) {
            std::cmp::Ordering::Greater
        } else if t.gt(y, x) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Equal
        }
    });
    let mut rank = vec![0; reps.len()];
    for (r, &c) in order.iter().enumerate() {
        rank[c] = r;
    }
    let mut grouped = vec![Vec::new(); reps.len()];
    for a in 0..n {
        class_of[a] = rank[class_of[a]];
        grouped[class_of[a]].push(a);
    }
    (class_of, grouped)
}

/// `=_A` classes in ascending amplitude order. Requires G1 and G2.
pub fn quotient_amplitude(s: &AmplitudeStructure) -> Result<Vec<Vec<RegionId>>, BuildError> {
    require_axioms(s, &[Axiom::G1, Axiom::G2])?;
    let t = AmpTable::new(s);
    let (_, grouped) = classes(&t);
    Ok(grouped.iter().map(|members| t.index.ids(members)).collect())
}

/// One lifted sum equation `x[c] = x[a] + x[b]` over class indices.
type Equation = (usize, usize, usize);

/// Finds class values with strictly increasing order satisfying every
/// equation, or `None`. Scale is arbitrary; if some solution has every class
/// positive, the returned one does too.
fn solve(classes: usize, equations: &[Equation]) -> Option<Vec<Rational>> {
    let strict = |floor: bool| -> Option<Vec<Rational>> {
        // Variables: one per class, then the common gap `s`.
        let vars = classes + 1;
        let gap = classes;
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        let mut rhs: Vec<Rational> = Vec::new();
        let mut push = |row: Vec<Rational>, b: Rational| {
            rows.push(row);
            rhs.push(b);
        };
        for &(a, b, c) in equations {
            let mut row = vec![Rational::zero(); vars];
            row[c] += int(1);
            row[a] -= int(1);
            row[b] -= int(1);
            push(row.iter().map(|v| -v.clone()).collect(), Rational::zero());
            push(row, Rational::zero());
        }
        for i in 0..classes.saturating_sub(1) {
            let mut row = vec![Rational::zero(); vars];
            row[i] = int(1);
            row[i + 1] = int(-1);
            row[gap] = int(1);
            push(row, Rational::zero());
        }
        if floor && classes > 0 {
            let mut row = vec![Rational::zero(); vars];
            row[0] = int(-1);
            row[gap] = int(1);
            push(row, Rational::zero());
        }
        if classes > 0 {
            let mut top = vec![Rational::zero(); vars];
            top[classes - 1] = int(1);
            push(top, int(1));
        }
        let mut cap = vec![Rational::zero(); vars];
        cap[gap] = int(1);
        push(cap, int(1));

        let mut objective = vec![Rational::zero(); vars];
        objective[gap] = int(1);
        match maximize(&objective, &rows, &rhs) {
            Outcome::Optimal { mut x, value } if value.is_positive() => {
                x.truncate(classes);
                Some(x)
            }
            _ => None,
        }
    };
    strict(true).or_else(|| strict(false))
}

/// Deletion filter: drop equations while the remainder stays infeasible.
fn irreducible_core(classes: usize, equations: &[Equation]) -> Vec<Equation> {
    let mut core: Vec<Equation> = equations.to_vec();
    let mut i = 0;
    while i < core.len() {
        let mut trial = core.clone();
        trial.remove(i);
        if solve(classes, &trial).is_none() {
            core = trial;
        } else {
            i += 1;
        }
    }
    core
}

fn build(s: &AmplitudeStructure, unit: Option<&RegionId>) -> Result<AmplitudeRepresentation, BuildError> {
    require_axioms(s, &Axiom::AMPLITUDE)?;
    let t = AmpTable::new(s);
    let unit_idx = match unit {
        Some(id) => Some(t.index.of(id).ok_or_else(|| BuildError::UnknownRegion(id.clone()))?),
        None => None,
    };
    let (class_of, grouped) = classes(&t);
    let equations: Vec<Equation> = s
        .sum()
        .iter()
        .map(|[a, b, c]| {
            let cls = |id: &RegionId| class_of[t.index.of(id).unwrap()];
            (cls(a), cls(b), cls(c))
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let Some(raw) = solve(grouped.len(), &equations) else {
        let core = irreducible_core(grouped.len(), &equations);
        let rep = |c: usize| t.index.ids[grouped[c][0]].clone();
        return Err(BuildError::Infeasible {
            constraints: core.into_iter().map(|(a, b, c)| [rep(a), rep(b), rep(c)]).collect(),
        });
    };

    let scale = match unit_idx {
        Some(u) => {
            let v = raw[class_of[u]].clone();
            if v.is_zero() {
                return Err(BuildError::ZeroUnit(t.index.ids[u].clone()));
            }
            v
        }
        None => raw.iter().find(|v| v.is_positive()).cloned().unwrap_or_else(|| int(1)),
    };
    let values: BTreeMap<RegionId, Rational> =
        (0..t.n).map(|a| (t.index.ids[a].clone(), &raw[class_of[a]] / &scale)).collect();
    Ok(AmplitudeRepresentation::new(values).expect("solutions are nonnegative"))
}

/// Builds `R` with the smallest positive amplitude class mapped to 1.
pub fn build_amplitude_rep(s: &AmplitudeStructure) -> Result<AmplitudeRepresentation, BuildError> {
    build(s, None)
}

/// Builds `R` with `unit`'s class mapped to 1.
pub fn build_amplitude_rep_with_unit(
    s: &AmplitudeStructure,
    unit: &RegionId,
) -> Result<AmplitudeRepresentation, BuildError> {
    build(s, Some(unit))
}

/// Checks `a geq b ⇔ R(a) ≥ R(b)` and `S(a,b,c) ⇒ R(c) = R(a) + R(b)`.
pub fn verify_amplitude_rep(s: &AmplitudeStructure, r: &AmplitudeRepresentation) -> bool {
    if !s.validate().is_empty() {
        return false;
    }
    let t = AmpTable::new(s);
    let Some(values) = t.index.ids.iter().map(|id| r.get(id)).collect::<Option<Vec<_>>>() else {
        return false;
    };
    if values.iter().any(|v| v.is_negative()) {
        return false;
    }
    let n = t.n;
    for a in 0..n {
        for b in 0..n {
            if t.geq(a, b) != (values[a] >= values[b]) {
                return false;
            }
            for &c in t.outs(a, b) {
                if *values[c] != values[a] + values[b] {
                    return false;
                }
            }
        }
    }
    true
}
