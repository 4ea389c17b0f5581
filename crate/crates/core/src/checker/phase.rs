use std::collections::HashMap;

use crate::axiom::{Axiom, AxiomReport};
use crate::table::PhaseTable;

pub(super) struct Context<'a> {
    t: &'a PhaseTable,
    peq: Vec<bool>,
}

impl<'a> Context<'a> {
    pub fn new(t: &'a PhaseTable) -> Self {
        Context { t, peq: t.phase_eq_matrix() }
    }

    /// Neither region is phase-equal to the other.
    #[inline]
    fn distinct(&self, x: usize, y: usize) -> bool {
        let n = self.t.n;
        !self.peq[x * n + y] && !self.peq[y * n + x]
    }

    #[inline]
    fn pairwise_distinct(&self, x: usize, y: usize, z: usize) -> bool {
        self.distinct(x, y) && self.distinct(x, z) && self.distinct(y, z)
    }
}

pub(super) fn check(ctx: &Context<'_>, axiom: Axiom, midpoints: bool) -> AxiomReport {
    let t = ctx.t;
    if t.n == 0 {
        return AxiomReport::vacuous(axiom);
    }
    let witness = match axiom {
        Axiom::C1 => c1(ctx),
        Axiom::C2 => c2(ctx),
        Axiom::K1 => k1(t),
        Axiom::K2 => k2(t),
        Axiom::K3 => k3(t),
        Axiom::K4 => k4(t, midpoints),
        Axiom::K5 => k5(t),
        Axiom::K6 => k6(t),
        Axiom::K7 => k7(t),
        Axiom::K8 => k8(t),
        other => unreachable!("{other} is not a phase axiom"),
    };
    match witness {
        Some(w) => AxiomReport::fail(axiom, t.index.ids(&w)),
        None => AxiomReport::pass(axiom),
    }
}

/// At least one orientation always; exactly one for phase-distinct triples.
fn c1(ctx: &Context<'_>) -> Option<Vec<usize>> {
    let t = ctx.t;
    let n = t.n;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (fwd, back) = (t.cb(a, b, c), t.cb(a, c, b));
                if !(fwd || back) || (fwd && back && ctx.pairwise_distinct(a, b, c)) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

/// Transitivity is demanded of phase-distinct antecedent triples only;
/// rotation is unconditional.
fn c2(ctx: &Context<'_>) -> Option<Vec<usize>> {
    let t = ctx.t;
    let n = t.n;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let abc = t.cb(a, b, c);
                let rotated = !abc || t.cb(b, c, a);
                let guard = abc && ctx.pairwise_distinct(a, b, c);
                for d in 0..n {
                    let transitive =
                        !(guard && t.cb(a, c, d) && ctx.pairwise_distinct(a, c, d)) || t.cb(a, b, d);
                    if !(rotated && transitive) {
                        return Some(vec![a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

fn k1(t: &PhaseTable) -> Option<Vec<usize>> {
    let n = t.n;
    for a in 0..n {
        for b in 0..n {
            if !t.cong(a, b, a, b) {
                return Some(vec![a, b]);
            }
        }
    }
    None
}

fn k2(t: &PhaseTable) -> Option<Vec<usize>> {
    let n = t.n;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let base = t.cong(a, b, c, d);
                    if t.cong(c, d, a, b) != base || t.cong(b, a, d, c) != base || t.cong(a, c, b, d) != base {
                        return Some(vec![a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

fn k3(t: &PhaseTable) -> Option<Vec<usize>> {
    let n = t.n;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in (0..n).filter(|&d| t.cong(a, b, c, d)) {
                    for e in 0..n {
                        for f in 0..n {
                            if t.cong(c, d, e, f) && !t.cong(a, b, e, f) {
                                return Some(vec![a, b, c, d, e, f]);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

fn k4(t: &PhaseTable, midpoints: bool) -> Option<Vec<usize>> {
    let n = t.n;
    let any = |pred: &dyn Fn(usize) -> bool| (0..n).any(pred);
    for a in 0..n {
        for b in 0..n {
            let halves = !midpoints
                || (any(&|p| t.cb(a, b, p) && t.cong(a, p, p, b)) && any(&|q| t.cb(a, q, b) && t.cong(b, q, q, a)));
            for c in 0..n {
                let closed = any(&|h| t.cong(c, b, a, h));
                let differences = !t.cb(a, b, c)
                    || (any(&|d1| t.cong(b, a, d1, c)) && any(&|d2| t.cong(c, a, d2, b)));
                if !(closed && differences && halves) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

/// Interns equal boolean rows so that set equality becomes id equality.
fn intern(rows: impl Iterator<Item = Vec<bool>>) -> Vec<usize> {
    let mut ids: HashMap<Vec<bool>, usize> = HashMap::new();
    rows.map(|row| {
        let next = ids.len();
        *ids.entry(row).or_insert(next)
    })
    .collect()
}

/// `ab ∼ cd` iff the `(f,e)`-sets `{fd ∼ ae}` and `{fc ∼ be}` coincide.
fn k5(t: &PhaseTable) -> Option<Vec<usize>> {
    let n = t.n;
    // sig[x*n+y] identifies {(f,e) : fx ∼ ye}.
    let sig = intern((0..n * n).map(|xy| {
        let (x, y) = (xy / n, xy % n);
        let mut row = Vec::with_capacity(n * n);
        for f in 0..n {
            for e in 0..n {
                row.push(t.cong(f, x, y, e));
            }
        }
        row
    }));
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if t.cong(a, b, c, d) != (sig[d * n + a] == sig[c * n + b]) {
                        return Some(vec![a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

/// Witness order `(a, b, c, e, f, g, h)`.
fn k6(t: &PhaseTable) -> Option<Vec<usize>> {
    let n = t.n;
    // row[(x*n+y)*n+z] identifies {h : hx ∼ yz}.
    let row = intern((0..n * n * n).map(|xyz| {
        let (x, y, z) = (xyz / (n * n), (xyz / n) % n, xyz % n);
        (0..n).map(|h| t.cong(h, x, y, z)).collect()
    }));
    let at = |x: usize, y: usize, z: usize| row[(x * n + y) * n + z];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for e in 0..n {
                    for f in (0..n).filter(|&f| t.cong(f, c, b, e)) {
                        for g in (0..n).filter(|&g| t.cong(g, b, a, e)) {
                            if at(f, a, e) != at(c, g, e) {
                                let h = (0..n).find(|&h| t.cong(h, f, a, e) != t.cong(h, c, g, e)).unwrap();
                                return Some(vec![a, b, c, e, f, g, h]);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// Witness order `(a, b, c, d, e, a', b', c')`.
fn k7(t: &PhaseTable) -> Option<Vec<usize>> {
    let n = t.n;
    // translates[(d*n+x)*n+e] lists every x' with x'd ∼ xe.
    let mut translates = vec![Vec::new(); n * n * n];
    for d in 0..n {
        for x in 0..n {
            for e in 0..n {
                translates[(d * n + x) * n + e] = (0..n).filter(|&w| t.cong(w, d, x, e)).collect();
            }
        }
    }
    let moved = |d: usize, x: usize, e: usize| &translates[(d * n + x) * n + e];
    for a in 0..n {
        for b in 0..n {
            for c in (0..n).filter(|&c| t.cb(a, b, c)) {
                for d in 0..n {
                    for e in 0..n {
                        for &a2 in moved(d, a, e) {
                            for &b2 in moved(d, b, e) {
                                for &c2 in moved(d, c, e) {
                                    if !t.cb(a2, b2, c2) {
                                        return Some(vec![a, b, c, d, e, a2, b2, c2]);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// Finite Archimedean form. Given `C(a, a1, b1)`, the two standard-sequence
/// clauses are already met by the two-term sequences `(a1, b1)` and
/// `(b1, a1)`, so only the closing clause constrains a finite model: a chain
/// `a1 b1 ∼ b1 c1 ∼ c1 c2 ∼ … ∼ cm a1` with at most `n` intermediate regions.
fn k8(t: &PhaseTable) -> Option<Vec<usize>> {
    let n = t.n;
    let mut cache: Vec<Option<bool>> = vec![None; n * n];
    for a in 0..n {
        for a1 in 0..n {
            for b1 in (0..n).filter(|&b1| t.cb(a, a1, b1)) {
                let closes = *cache[a1 * n + b1].get_or_insert_with(|| closes_cycle(t, a1, b1));
                if !closes {
                    return Some(vec![a, a1, b1]);
                }
            }
        }
    }
    None
}

fn closes_cycle(t: &PhaseTable, start: usize, next: usize) -> bool {
    let n = t.n;
    let mut seen = vec![false; n * n];
    seen[start * n + next] = true;
    let mut frontier = vec![(start, next)];
    // Each step appends one region; the last one must be `start` again.
    for _ in 0..=n {
        let mut following = Vec::new();
        for &(x, y) in &frontier {
            for z in (0..n).filter(|&z| t.cong(x, y, y, z)) {
                if z == start {
                    return true;
                }
                if !seen[y * n + z] {
                    seen[y * n + z] = true;
                    following.push((y, z));
                }
            }
        }
        if following.is_empty() {
            return false;
        }
        frontier = following;
    }
    false
}
