use crate::axiom::{Axiom, AxiomReport};
use crate::represent::PhaseQuotient;

pub(super) fn check(q: &PhaseQuotient, axiom: Axiom) -> AxiomReport {
    if q.is_empty() {
        return AxiomReport::vacuous(axiom);
    }
    let witness = match axiom {
        Axiom::A0 => semigroup(q),
        Axiom::A1 => exactly_one(q),
        Axiom::A2 => rotation(q),
        Axiom::A3 => transitivity(q),
        Axiom::A4 => translation(q),
        Axiom::A5 => archimedean(q),
        other => unreachable!("{other} is not a periodic-extensive axiom"),
    };
    match witness {
        Some(w) => AxiomReport::fail(axiom, w.iter().map(|&i| q.representative(i).clone()).collect()),
        None => AxiomReport::pass(axiom),
    }
}

/// Closure, then commutativity over pairs, then associativity over triples.
fn semigroup(q: &PhaseQuotient) -> Option<Vec<usize>> {
    let m = q.len();
    for a in 0..m {
        for b in 0..m {
            if q.add(a, b) >= m {
                return Some(vec![a, b]);
            }
        }
    }
    for a in 0..m {
        for b in 0..m {
            if q.add(a, b) != q.add(b, a) {
                return Some(vec![a, b]);
            }
        }
    }
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                if q.add(a, q.add(b, c)) != q.add(q.add(a, b), c) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

fn exactly_one(q: &PhaseQuotient) -> Option<Vec<usize>> {
    let m = q.len();
    for a in 0..m {
        for b in (0..m).filter(|&b| b != a) {
            for c in (0..m).filter(|&c| c != a && c != b) {
                if q.between(a, b, c) == q.between(a, c, b) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

fn rotation(q: &PhaseQuotient) -> Option<Vec<usize>> {
    let m = q.len();
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                if q.between(a, b, c) && !q.between(b, c, a) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

fn transitivity(q: &PhaseQuotient) -> Option<Vec<usize>> {
    let m = q.len();
    for a in 0..m {
        for b in 0..m {
            for c in (0..m).filter(|&c| q.between(a, b, c)) {
                for d in 0..m {
                    if q.between(a, c, d) && !q.between(a, b, d) {
                        return Some(vec![a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

fn translation(q: &PhaseQuotient) -> Option<Vec<usize>> {
    let m = q.len();
    for a in 0..m {
        for b in 0..m {
            for c in (0..m).filter(|&c| q.between(a, b, c)) {
                for d in 0..m {
                    let right = q.between(q.add(a, d), q.add(b, d), q.add(c, d));
                    let left = q.between(q.add(d, a), q.add(d, b), q.add(d, c));
                    if !(right && left) {
                        return Some(vec![a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

/// Finite Archimedean form: if `C(A0, A, B)`, the multiples `A, 2A, 3A, …`
/// leave the arc from `A0` to `B` within `|Ω|` steps.
fn archimedean(q: &PhaseQuotient) -> Option<Vec<usize>> {
    let m = q.len();
    let zero = q.zero();
    for a in 0..m {
        for b in (0..m).filter(|&b| q.between(zero, a, b)) {
            let mut multiple = a;
            let mut escapes = false;
            for _ in 0..m {
                if !q.between(zero, multiple, b) {
                    escapes = true;
                    break;
                }
                multiple = q.add(multiple, a);
            }
            if !escapes {
                return Some(vec![a, b]);
            }
        }
    }
    None
}
