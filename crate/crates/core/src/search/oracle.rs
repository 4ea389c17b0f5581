//! Naive quantifier enumeration. Shares nothing with the checker beyond
//! the structure types: relations are looked up by region name and every
//! quantifier is a plain loop over the carrier.

use std::collections::HashSet;

use super::SearchError;
use crate::axiom::{Axiom, AxiomReport, Family};
use crate::structures::{AmplitudeStructure, PhaseStructure, RegionId, Structure};

/// Largest carrier the oracle will enumerate.
pub const ORACLE_MAX_CARRIER: usize = 6;

struct Names<'a> {
    ids: Vec<&'a str>,
}

impl<'a> Names<'a> {
    fn new(carrier: &'a [RegionId]) -> Self {
        let mut ids: Vec<&str> = carrier.iter().map(|r| r.as_str()).collect();
        ids.sort();
        ids.dedup();
        Names { ids }
    }
}

struct Amp<'a> {
    names: Names<'a>,
    geq: HashSet<[&'a str; 2]>,
    sum: HashSet<[&'a str; 3]>,
}

impl<'a> Amp<'a> {
    fn new(s: &'a AmplitudeStructure) -> Self {
        Amp {
            names: Names::new(s.carrier()),
            geq: s.geq().iter().map(|[a, b]| [a.as_str(), b.as_str()]).collect(),
            sum: s.sum().iter().map(|[a, b, c]| [a.as_str(), b.as_str(), c.as_str()]).collect(),
        }
    }

    fn n(&self) -> usize {
        self.names.ids.len()
    }

    fn geq(&self, a: usize, b: usize) -> bool {
        let ids = &self.names.ids;
        self.geq.contains(&[ids[a], ids[b]])
    }

    fn gt(&self, a: usize, b: usize) -> bool {
        self.geq(a, b) && !self.geq(b, a)
    }

    fn s(&self, a: usize, b: usize, c: usize) -> bool {
        let ids = &self.names.ids;
        self.sum.contains(&[ids[a], ids[b], ids[c]])
    }

    fn some_sum(&self, a: usize, b: usize) -> bool {
        (0..self.n()).any(|c| self.s(a, b, c))
    }

    fn body(&self, axiom: Axiom, v: &[usize]) -> bool {
        let n = self.n();
        let all = |p: &dyn Fn(usize) -> bool| (0..n).all(p);
        let any = |p: &dyn Fn(usize) -> bool| (0..n).any(p);
        match axiom {
            Axiom::G1 => self.geq(v[0], v[1]) || self.geq(v[1], v[0]),
            Axiom::G2 => !(self.geq(v[0], v[1]) && self.geq(v[1], v[2])) || self.geq(v[0], v[2]),
            Axiom::S1 => {
                let (a, b, c) = (v[0], v[1], v[2]);
                let antecedent = self.some_sum(a, b) && all(&|x| !self.s(a, b, x) || self.some_sum(x, c));
                if !antecedent {
                    return true;
                }
                let defined = self.some_sum(b, c) && all(&|z| !self.s(b, c, z) || self.some_sum(a, z));
                let ordered = all(&|f| {
                    all(&|f2| {
                        all(&|g| {
                            all(&|g2| {
                                !(self.s(a, b, f) && self.s(f, c, f2) && self.s(b, c, g) && self.s(a, g, g2))
                                    || self.geq(f2, g2)
                            })
                        })
                    })
                });
                defined && ordered
            }
            Axiom::S2 => {
                let (a, b, c) = (v[0], v[1], v[2]);
                if !(self.some_sum(a, c) && self.geq(a, b)) {
                    return true;
                }
                self.some_sum(c, b) && all(&|f| all(&|f2| !(self.s(a, c, f) && self.s(c, b, f2)) || self.geq(f, f2)))
            }
            Axiom::S3 => {
                let (a, b) = (v[0], v[1]);
                !self.gt(a, b) || any(&|d| any(&|x| self.s(b, d, x) && all(&|f| !self.s(b, x, f) || self.geq(a, f))))
            }
            Axiom::S4 => !self.s(v[0], v[1], v[2]) || self.geq(v[2], v[0]),
            Axiom::S5 => {
                let (a, b) = (v[0], v[1]);
                if self.s(a, a, a) || self.s(b, b, b) || !self.gt(b, a) {
                    return true;
                }
                !self.walk(a, b, a, n)
            }
            other => unreachable!("{other} is not an amplitude axiom"),
        }
    }

    /// A standard sequence from `at` with `steps` more terms, each strictly
    /// below `bound`.
    fn walk(&self, step: usize, bound: usize, at: usize, steps: usize) -> bool {
        steps == 0
            || (0..self.n()).any(|next| {
                self.s(step, at, next) && self.gt(bound, next) && self.walk(step, bound, next, steps - 1)
            })
    }
}

struct Phase<'a> {
    names: Names<'a>,
    cb: HashSet<[&'a str; 3]>,
    cong: HashSet<[&'a str; 4]>,
    midpoints: bool,
}

impl<'a> Phase<'a> {
    fn new(s: &'a PhaseStructure, midpoints: bool) -> Self {
        Phase {
            names: Names::new(s.carrier()),
            cb: s.cb().iter().map(|[a, b, c]| [a.as_str(), b.as_str(), c.as_str()]).collect(),
            cong: s.cong().iter().map(|[a, b, c, d]| [a.as_str(), b.as_str(), c.as_str(), d.as_str()]).collect(),
            midpoints,
        }
    }

    fn n(&self) -> usize {
        self.names.ids.len()
    }

    fn c(&self, a: usize, b: usize, c: usize) -> bool {
        let ids = &self.names.ids;
        self.cb.contains(&[ids[a], ids[b], ids[c]])
    }

    fn k(&self, a: usize, b: usize, c: usize, d: usize) -> bool {
        let ids = &self.names.ids;
        self.cong.contains(&[ids[a], ids[b], ids[c], ids[d]])
    }

    fn same_phase(&self, a: usize, b: usize) -> bool {
        (0..self.n()).all(|c| self.k(a, c, b, c))
    }

    fn apart(&self, a: usize, b: usize, c: usize) -> bool {
        let two = |x, y| !self.same_phase(x, y) && !self.same_phase(y, x);
        two(a, b) && two(a, c) && two(b, c)
    }

    fn body(&self, axiom: Axiom, v: &[usize]) -> bool {
        let n = self.n();
        let all = |p: &dyn Fn(usize) -> bool| (0..n).all(p);
        let any = |p: &dyn Fn(usize) -> bool| (0..n).any(p);
        match axiom {
            Axiom::C1 => {
                let (a, b, c) = (v[0], v[1], v[2]);
                let (left, right) = (self.c(a, b, c), self.c(a, c, b));
                (left || right) && !(left && right && self.apart(a, b, c))
            }
            Axiom::C2 => {
                let (a, b, c, d) = (v[0], v[1], v[2], v[3]);
                let rotation = !self.c(a, b, c) || self.c(b, c, a);
                let premise = self.c(a, b, c) && self.apart(a, b, c) && self.c(a, c, d) && self.apart(a, c, d);
                rotation && (!premise || self.c(a, b, d))
            }
            Axiom::K1 => self.k(v[0], v[1], v[0], v[1]),
            Axiom::K2 => {
                let (a, b, c, d) = (v[0], v[1], v[2], v[3]);
                let base = self.k(a, b, c, d);
                self.k(c, d, a, b) == base && self.k(b, a, d, c) == base && self.k(a, c, b, d) == base
            }
            Axiom::K3 => {
                let (a, b, c, d, e, f) = (v[0], v[1], v[2], v[3], v[4], v[5]);
                !(self.k(a, b, c, d) && self.k(c, d, e, f)) || self.k(a, b, e, f)
            }
            Axiom::K4 => {
                let (a, b, c) = (v[0], v[1], v[2]);
                let closed = any(&|h| self.k(c, b, a, h));
                let differences = !self.c(a, b, c) || (any(&|d| self.k(b, a, d, c)) && any(&|d| self.k(c, a, d, b)));
                let halves = !self.midpoints
                    || (any(&|p| self.c(a, b, p) && self.k(a, p, p, b)) && any(&|q| self.c(a, q, b) && self.k(b, q, q, a)));
                closed && differences && halves
            }
            Axiom::K5 => {
                let (a, b, c, d) = (v[0], v[1], v[2], v[3]);
                self.k(a, b, c, d) == all(&|e| all(&|f| self.k(f, d, a, e) == self.k(f, c, b, e)))
            }
            Axiom::K6 => {
                let (a, b, c, e, f, g, h) = (v[0], v[1], v[2], v[3], v[4], v[5], v[6]);
                !(self.k(f, c, b, e) && self.k(g, b, a, e)) || self.k(h, f, a, e) == self.k(h, c, g, e)
            }
            Axiom::K7 => {
                let (a, b, c, d, e, a2, b2, c2) = (v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]);
                let premise = self.c(a, b, c) && self.k(a2, d, a, e) && self.k(b2, d, b, e) && self.k(c2, d, c, e);
                !premise || self.c(a2, b2, c2)
            }
            Axiom::K8 => {
                let (a, a1, b1) = (v[0], v[1], v[2]);
                !self.c(a, a1, b1) || self.chain(a1, a1, b1, n + 1)
            }
            other => unreachable!("{other} is not a phase axiom"),
        }
    }

    /// Extends the congruence chain ending in `(x, y)` by up to `left`
    /// regions, succeeding when a step lands on `home`.
    fn chain(&self, home: usize, x: usize, y: usize, left: usize) -> bool {
        left > 0 && (0..self.n()).any(|z| self.k(x, y, y, z) && (z == home || self.chain(home, y, z, left - 1)))
    }
}

fn arity(axiom: Axiom) -> usize {
    match axiom {
        Axiom::G1 | Axiom::S3 | Axiom::S5 | Axiom::K1 => 2,
        Axiom::G2 | Axiom::S1 | Axiom::S2 | Axiom::S4 | Axiom::C1 | Axiom::K4 | Axiom::K8 => 3,
        Axiom::C2 | Axiom::K2 | Axiom::K5 => 4,
        Axiom::K3 => 6,
        Axiom::K6 => 7,
        Axiom::K7 => 8,
        other => unreachable!("{other} has no oracle"),
    }
}

/// First tuple in lexicographic order on which `body` is false.
fn first_failure(n: usize, arity: usize, body: impl Fn(&[usize]) -> bool) -> Option<Vec<usize>> {
    let mut v = vec![0usize; arity];
    loop {
        if !body(&v) {
            return Some(v);
        }
        let mut i = arity;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < n {
                break;
            }
            v[i] = 0;
        }
    }
}

fn family_matches(s: &Structure, axiom: Axiom) -> Result<(), SearchError> {
    let expected = match s {
        Structure::Amplitude(_) => Family::Amplitude,
        Structure::Phase(_) => Family::Phase,
    };
    if axiom.family() != expected {
        return Err(SearchError::WrongFamily { axiom, kind: s.kind() });
    }
    let violations = s.validate();
    if !violations.is_empty() {
        return Err(SearchError::Malformed(violations));
    }
    Ok(())
}

/// Decides `axiom` by enumerating every instantiation, K4 midpoints off.
pub fn oracle_check(s: &Structure, axiom: Axiom) -> Result<AxiomReport, SearchError> {
    oracle_check_with(s, axiom, false)
}

pub fn oracle_check_with(s: &Structure, axiom: Axiom, k4_midpoints: bool) -> Result<AxiomReport, SearchError> {
    family_matches(s, axiom)?;
    let names = Names::new(s.carrier());
    let n = names.ids.len();
    if n > ORACLE_MAX_CARRIER {
        return Err(SearchError::BudgetExceeded(format!(
            "oracle enumerates carriers of at most {ORACLE_MAX_CARRIER} regions, got {n}"
        )));
    }
    if n == 0 {
        return Ok(AxiomReport::vacuous(axiom));
    }
    let failure = match s {
        Structure::Amplitude(a) => {
            let amp = Amp::new(a);
            first_failure(n, arity(axiom), |v| amp.body(axiom, v))
        }
        Structure::Phase(p) => {
            let phase = Phase::new(p, k4_midpoints);
            first_failure(n, arity(axiom), |v| phase.body(axiom, v))
        }
    };
    Ok(match failure {
        Some(v) => AxiomReport::fail(axiom, v.iter().map(|&i| RegionId::new(names.ids[i])).collect()),
        None => AxiomReport::pass(axiom),
    })
}

/// Evaluates the axiom body at one instantiation.
pub fn oracle_holds_at(
    s: &Structure,
    axiom: Axiom,
    witness: &[RegionId],
    k4_midpoints: bool,
) -> Result<bool, SearchError> {
    family_matches(s, axiom)?;
    let names = Names::new(s.carrier());
    if witness.len() != arity(axiom) {
        return Err(SearchError::InvalidRequest(format!("{axiom} takes {} variables", arity(axiom))));
    }
    let v = witness
        .iter()
        .map(|id| {
            names
                .ids
                .binary_search(&id.as_str())
                .map_err(|_| SearchError::InvalidRequest(format!("{id} is not in the carrier")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(match s {
        Structure::Amplitude(a) => Amp::new(a).body(axiom, &v),
        Structure::Phase(p) => Phase::new(p, k4_midpoints).body(axiom, &v),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axiom::Status;
    use crate::search::{generate_clock, generate_integer_amplitude};

    fn r(n: &str) -> RegionId {
        RegionId::from(n)
    }

    #[test]
    fn clock_three_satisfies_k2() {
        let s = Structure::from(generate_clock(3, 1));
        assert_eq!(oracle_check(&s, Axiom::K2).unwrap().status, Status::Pass);
    }

    #[test]
    fn asymmetric_cong_breaks_k2() {
        let s = Structure::from(PhaseStructure::new(
            vec![r("a"), r("b"), r("c"), r("d")],
            [],
            [[r("a"), r("b"), r("c"), r("d")]],
        ));
        let report = oracle_check(&s, Axiom::K2).unwrap();
        assert_eq!(report.status, Status::Fail);
        let witness = report.witness.unwrap();
        assert!(!oracle_holds_at(&s, Axiom::K2, &witness, false).unwrap());
    }

    #[test]
    fn empty_structure_is_vacuous() {
        let s = Structure::from(AmplitudeStructure::default());
        assert_eq!(oracle_check(&s, Axiom::G2).unwrap().status, Status::Vacuous);
    }

    #[test]
    fn guards() {
        let s = Structure::from(generate_integer_amplitude(2, 1));
        assert!(matches!(oracle_check(&s, Axiom::K1), Err(SearchError::WrongFamily { .. })));
        let big = Structure::from(generate_integer_amplitude(7, 1));
        assert!(matches!(oracle_check(&big, Axiom::G1), Err(SearchError::BudgetExceeded(_))));
    }

    #[test]
    fn generated_models_pass_every_axiom() {
        for s in [Structure::from(generate_clock(4, 1)), Structure::from(generate_clock(2, 2))] {
            for &axiom in &Axiom::PHASE {
                assert_eq!(oracle_check(&s, axiom).unwrap().status, Status::Pass, "{axiom}");
            }
        }
        let s = Structure::from(generate_integer_amplitude(5, 1));
        for &axiom in &Axiom::AMPLITUDE {
            assert_eq!(oracle_check(&s, axiom).unwrap().status, Status::Pass, "{axiom}");
        }
    }
}
