use std::collections::{BTreeMap, HashMap};

use num_traits::Signed;

use super::{BuildError, PhaseRepresentation};
use crate::axiom::CheckConfig;
use crate::checker::{check_phase, first_failure, CheckError};
use crate::rational::{int, modulo, Rational};
use crate::structures::{PhaseStructure, RegionId};
use crate::table::PhaseTable;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuotientError {
    #[error("class {0} is empty")]
    EmptyClass(usize),
    #[error("region {0} lies in more than one class")]
    Overlap(RegionId),
    #[error("zero class {0} is out of range")]
    ZeroOutOfRange(usize),
    #[error("addition table must be {0}x{0}")]
    TableShape(usize),
    #[error("addition table entry {0} is out of range")]
    SumOutOfRange(usize),
    #[error("betweenness triple mentions class {0}, which is out of range")]
    BetweenOutOfRange(usize),
}

/// `Ω`: the `=_P` classes with zero class, `∘` table and lifted betweenness.
///
/// Classes are sorted internally and ordered by smallest member; the `∘`
/// table is total over class indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseQuotient {
    classes: Vec<Vec<RegionId>>,
    zero: usize,
    add: Vec<usize>,
    between: Vec<bool>,
}

impl PhaseQuotient {
    /// Assembles a quotient from explicit parts. `add[i][j]` is `i ∘ j`.
    /// Classes are taken in the given order; their members are sorted.
    pub fn from_parts(
        classes: Vec<Vec<RegionId>>,
        zero: usize,
        add: Vec<Vec<usize>>,
        betweenness: impl IntoIterator<Item = [usize; 3]>,
    ) -> Result<Self, QuotientError> {
        let m = classes.len();
        let mut seen = std::collections::HashSet::new();
        let mut sorted = Vec::with_capacity(m);
        for (i, mut class) in classes.into_iter().enumerate() {
            if class.is_empty() {
                return Err(QuotientError::EmptyClass(i));
            }
            class.sort();
            class.dedup();
            for id in &class {
                if !seen.insert(id.clone()) {
                    return Err(QuotientError::Overlap(id.clone()));
                }
            }
            sorted.push(class);
        }
        if m > 0 && zero >= m {
            return Err(QuotientError::ZeroOutOfRange(zero));
        }
        if add.len() != m || add.iter().any(|row| row.len() != m) {
            return Err(QuotientError::TableShape(m));
        }
        let add: Vec<usize> = add.into_iter().flatten().collect();
        if let Some(&bad) = add.iter().find(|&&c| c >= m) {
            return Err(QuotientError::SumOutOfRange(bad));
        }
        let mut between = vec![false; m * m * m];
        for [a, b, c] in betweenness {
            if let Some(&bad) = [a, b, c].iter().find(|&&x| x >= m) {
                return Err(QuotientError::BetweenOutOfRange(bad));
            }
            between[(a * m + b) * m + c] = true;
        }
        Ok(PhaseQuotient { classes: sorted, zero, add, between })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<RegionId>] {
        &self.classes
    }

    /// Index of `A₀`.
    pub fn zero(&self) -> usize {
        self.zero
    }

    /// `a ∘ b` on class indices.
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.len() + b]
    }

    /// `C(a, b, c)` on class indices.
    pub fn between(&self, a: usize, b: usize, c: usize) -> bool {
        let m = self.len();
        self.between[(a * m + b) * m + c]
    }

    /// Smallest member of class `i`.
    pub fn representative(&self, i: usize) -> &RegionId {
        &self.classes[i][0]
    }

    pub fn class_of(&self, id: &RegionId) -> Option<usize> {
        self.classes.iter().position(|c| c.binary_search(id).is_ok())
    }
}

fn require_phase_axioms(s: &PhaseStructure) -> Result<(), BuildError> {
    let reports = check_phase(s, &CheckConfig::phase()).map_err(|e| match e {
        CheckError::Malformed(v) => BuildError::Malformed(v),
        CheckError::UnknownAxiom(..) => unreachable!("phase axioms only"),
    })?;
    match first_failure(&reports) {
        Some(r) => Err(BuildError::AxiomViolation(r.clone())),
        None => Ok(()),
    }
}

/// Class index per table position, classes in smallest-member order.
fn partition(t: &PhaseTable) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = t.n;
    let peq = t.phase_eq_matrix();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        // Index order is id order, so first-seen order is smallest-member order.
        match classes.iter().position(|c| peq[c[0] * n + a] && peq[a * n + c[0]]) {
            Some(i) => {
                class_of[a] = i;
                classes[i].push(a);
            }
            None => {
                class_of[a] = classes.len();
                classes.push(vec![a]);
            }
        }
    }
    (class_of, classes)
}

fn lift(t: &PhaseTable, zero: &RegionId) -> Result<PhaseQuotient, BuildError> {
    let zero_idx = t.index.of(zero).ok_or_else(|| BuildError::UnknownRegion(zero.clone()))?;
    let (class_of, classes) = partition(t);
    let m = classes.len();
    let zero_class = class_of[zero_idx];
    let zero_members = &classes[zero_class];

    let mut add = vec![vec![0; m]; m];
    for (i, left) in classes.iter().enumerate() {
        for (j, right) in classes.iter().enumerate() {
            let qualifies = |cand: &Vec<usize>| {
                cand.iter().all(|&c| {
                    right.iter().all(|&b| left.iter().all(|&a| zero_members.iter().all(|&z| t.cong(c, b, a, z))))
                })
            };
            let found: Vec<usize> = (0..m).filter(|&c| qualifies(&classes[c])).collect();
            let rep = |c: usize| t.index.ids[classes[c][0]].clone();
            match found.as_slice() {
                [c] => add[i][j] = *c,
                [] => return Err(BuildError::MissingSum { left: rep(i), right: rep(j) }),
                many => {
                    return Err(BuildError::NonUniqueSum {
                        left: rep(i),
                        right: rep(j),
                        candidates: many.iter().map(|&c| rep(c)).collect(),
                    })
                }
            }
        }
    }

    let mut between = Vec::new();
    for a in 0..m {
        for b in (0..m).filter(|&b| b != a) {
            for c in (0..m).filter(|&c| c != a && c != b) {
                let all = classes[a]
                    .iter()
                    .all(|&x| classes[b].iter().all(|&y| classes[c].iter().all(|&z| t.cb(x, y, z))));
                if all {
                    between.push([a, b, c]);
                }
            }
        }
    }

    let ids = classes.iter().map(|c| t.index.ids(c)).collect();
    Ok(PhaseQuotient::from_parts(ids, zero_class, add, between).expect("partition is well formed"))
}

/// Builds `Ω` with `zero`'s class as `A₀`. Requires C1–C2 and K1–K8.
pub fn quotient_phase(s: &PhaseStructure, zero: &RegionId) -> Result<PhaseQuotient, BuildError> {
    require_phase_axioms(s)?;
    lift(&PhaseTable::new(s), zero)
}

/// Builds `f` with `f(zero) = 0`, one step `k/|Ω|` per generator power.
pub fn build_phase_rep(s: &PhaseStructure, k: &Rational, zero: &RegionId) -> Result<PhaseRepresentation, BuildError> {
    if !k.is_positive() {
        return Err(BuildError::NonPositiveModulus(crate::rational::format(k)));
    }
    let q = quotient_phase(s, zero)?;
    let m = q.len();
    let a0 = q.zero();

    // The generator sits clockwise-first after A₀: C(A₀, G, X) for every other X.
    let generators: Vec<usize> = (0..m)
        .filter(|&g| g != a0 && (0..m).filter(|&x| x != a0 && x != g).all(|x| q.between(a0, g, x)))
        .collect();
    let power_of = if m == 1 {
        vec![0]
    } else {
        let g = match generators.as_slice() {
            [g] => *g,
            [] => return Err(BuildError::PhaseNotCyclic("no class is clockwise-adjacent to the zero class".into())),
            _ => return Err(BuildError::PhaseNotCyclic("several classes are clockwise-adjacent to the zero class".into())),
        };
        let mut power_of = vec![usize::MAX; m];
        let mut current = a0;
        for j in 0..m {
            if power_of[current] != usize::MAX {
                return Err(BuildError::PhaseNotCyclic(format!(
                    "powers of {} repeat before covering every class",
                    q.representative(g)
                )));
            }
            power_of[current] = j;
            current = q.add(current, g);
        }
        if current != a0 {
            return Err(BuildError::PhaseNotCyclic(format!("{} does not have order {m}", q.representative(g))));
        }
        for x in 0..m {
            for y in 0..m {
                if power_of[q.add(x, y)] != (power_of[x] + power_of[y]) % m {
                    return Err(BuildError::PhaseNotCyclic(format!(
                        "{} and {} do not add like generator powers",
                        q.representative(x),
                        q.representative(y)
                    )));
                }
            }
        }
        power_of
    };

    let step = k / int(m as i64);
    let values: BTreeMap<RegionId, Rational> = q
        .classes()
        .iter()
        .enumerate()
        .flat_map(|(i, members)| {
            let v = &step * int(power_of[i] as i64);
            members.iter().map(move |id| (id.clone(), v.clone()))
        })
        .collect();
    Ok(PhaseRepresentation::new(values, k.clone()).expect("powers lie in [0, k)"))
}

/// Checks both representing conditions: `cb(x,y,z)` iff some cyclic rotation of
/// `(x,y,z)` is non-decreasing in `f`, and `cong(a,b,c,d)` iff
/// `f(a)−f(b) ≡ f(c)−f(d) (mod k)`.
pub fn verify_phase_rep(s: &PhaseStructure, f: &PhaseRepresentation) -> bool {
    if !s.validate().is_empty() {
        return false;
    }
    let t = PhaseTable::new(s);
    let Some(values) = t.index.ids.iter().map(|id| f.get(id)).collect::<Option<Vec<_>>>() else {
        return false;
    };
    let n = t.n;
    let k = f.modulus();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (fx, fy, fz) = (values[x], values[y], values[z]);
                let clockwise = (fx <= fy && fy <= fz) || (fy <= fz && fz <= fx) || (fz <= fx && fx <= fy);
                if t.cb(x, y, z) != clockwise {
                    return false;
                }
            }
        }
    }
    let mut interned: HashMap<Rational, usize> = HashMap::new();
    let mut diff = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            let d = modulo(&(values[a] - values[b]), k);
            let next = interned.len();
            diff[a * n + b] = *interned.entry(d).or_insert(next);
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if t.cong(a, b, c, d) != (diff[a * n + b] == diff[c * n + d]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::check_periodic_extensive;
    use crate::rational::ratio;
    use crate::search::generate_clock;

    fn r(n: &str) -> RegionId {
        RegionId::from(n)
    }

    fn phase_map(pairs: &[(&str, Rational)], k: Rational) -> PhaseRepresentation {
        PhaseRepresentation::new(pairs.iter().map(|(id, v)| (r(id), v.clone())).collect(), k).unwrap()
    }

    /// Every map carrier → {0, k/t, …, (t−1)k/t} that verifies.
    fn exhaustive(s: &PhaseStructure, k: &Rational, ticks: usize) -> Vec<PhaseRepresentation> {
        let ids = s.carrier().to_vec();
        let mut out = Vec::new();
        let mut choice = vec![0usize; ids.len()];
        loop {
            let f = PhaseRepresentation::new(
                ids.iter().cloned().zip(choice.iter().map(|&c| k * ratio(c as i64, ticks as i64))).collect(),
                k.clone(),
            )
            .unwrap();
            let cond1 = ids.iter().all(|x| {
                ids.iter().all(|y| {
                    ids.iter().all(|z| {
                        let (a, b, c) = (f.get(z).unwrap(), f.get(y).unwrap(), f.get(x).unwrap());
                        let rhs = (a >= b && b >= c) || (c >= a && a >= b) || (b >= c && c >= a);
                        s.cb().contains(&[x.clone(), y.clone(), z.clone()]) == rhs
                    })
                })
            });
            let cond2 = ids.iter().all(|a| {
                ids.iter().all(|b| {
                    ids.iter().all(|c| {
                        ids.iter().all(|d| {
                            let lhs = modulo(&(f.get(a).unwrap() - f.get(b).unwrap()), k);
                            let rhs = modulo(&(f.get(c).unwrap() - f.get(d).unwrap()), k);
                            s.has_cong(a, b, c, d) == (lhs == rhs)
                        })
                    })
                })
            });
            if cond1 && cond2 {
                out.push(f);
            }
            let mut i = 0;
            loop {
                if i == choice.len() {
                    return out;
                }
                choice[i] += 1;
                if choice[i] < ticks {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn clock_four_quotient_adds_mod_four() {
        let s = generate_clock(4, 1);
        let q = quotient_phase(&s, &r("a0")).unwrap();
        assert_eq!(q.len(), 4);
        assert_eq!(q.zero(), 0);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(q.add(i, j), (i + j) % 4);
            }
        }
        assert!(check_periodic_extensive(&q).iter().all(|rep| !rep.failed()));

        let doubled = generate_clock(4, 2);
        let q2 = quotient_phase(&doubled, &r("a0_0")).unwrap();
        assert_eq!(q2.len(), 4);
        assert!(q2.classes().iter().all(|c| c.len() == 2));
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(q2.add(i, j), (i + j) % 4);
            }
        }
    }

    #[test]
    fn singleton_quotient_is_trivial() {
        let s = PhaseStructure::new(vec![r("a")], [[r("a"), r("a"), r("a")]], [[r("a"), r("a"), r("a"), r("a")]]);
        let q = quotient_phase(&s, &r("a")).unwrap();
        assert_eq!(q.classes(), &[vec![r("a")]]);
        assert_eq!(q.add(0, 0), 0);
        assert_eq!(build_phase_rep(&s, &int(5), &r("a")).unwrap(), phase_map(&[("a", int(0))], int(5)));
    }

    #[test]
    fn clock_four_rep_matches_exhaustive_oracle() {
        let s = generate_clock(4, 1);
        let k = int(8);
        let oracle = exhaustive(&s, &k, 4);
        let expected = phase_map(&[("a0", int(0)), ("a1", int(2)), ("a2", int(4)), ("a3", int(6))], k.clone());
        assert!(oracle.contains(&expected));
        // The oracle admits the four rotations and nothing else.
        assert_eq!(oracle.len(), 4);
        let built = build_phase_rep(&s, &k, &r("a0")).unwrap();
        assert_eq!(built, expected);
        assert!(verify_phase_rep(&s, &built));
    }

    #[test]
    fn clock_two_rep() {
        let s = generate_clock(2, 1);
        let built = build_phase_rep(&s, &int(1), &r("a0")).unwrap();
        assert_eq!(built, phase_map(&[("a0", int(0)), ("a1", ratio(1, 2))], int(1)));
        assert!(exhaustive(&s, &int(1), 2).contains(&built));
    }

    #[test]
    fn verify_rejects_reversed_orientation() {
        let s = generate_clock(4, 1);
        let k = int(8);
        let swapped = phase_map(&[("a0", int(0)), ("a1", int(6)), ("a2", int(4)), ("a3", int(2))], k);
        assert!(!verify_phase_rep(&s, &swapped));
        let lone = PhaseStructure::new(vec![r("a")], [], []);
        // cb(a,a,a) is forced by condition 1, so an empty cb cannot verify.
        assert!(!verify_phase_rep(&lone, &phase_map(&[("a", int(0))], int(1))));
    }

    #[test]
    fn zero_choice_shifts_values() {
        let s = generate_clock(4, 1);
        let k = int(8);
        let from_two = build_phase_rep(&s, &k, &r("a2")).unwrap();
        assert_eq!(from_two.get(&r("a2")), Some(&int(0)));
        assert_eq!(from_two.get(&r("a3")), Some(&int(2)));
        assert_eq!(from_two.get(&r("a0")), Some(&int(4)));
        assert!(verify_phase_rep(&s, &from_two));
    }

    #[test]
    fn rejects_bad_modulus_and_unknown_zero() {
        let s = generate_clock(3, 1);
        assert!(matches!(build_phase_rep(&s, &int(0), &r("a0")), Err(BuildError::NonPositiveModulus(_))));
        assert!(matches!(quotient_phase(&s, &r("zz")), Err(BuildError::UnknownRegion(_))));
    }

    #[test]
    fn from_parts_validates() {
        assert_eq!(
            PhaseQuotient::from_parts(vec![vec![r("a")], vec![r("a")]], 0, vec![vec![0, 1], vec![1, 0]], []),
            Err(QuotientError::Overlap(r("a")))
        );
        assert_eq!(
            PhaseQuotient::from_parts(vec![vec![r("a")]], 0, vec![vec![1]], []),
            Err(QuotientError::SumOutOfRange(1))
        );
    }
}
