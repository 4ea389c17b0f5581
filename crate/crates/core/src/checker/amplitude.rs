use crate::axiom::{Axiom, AxiomReport};
use crate::table::AmpTable;

pub(super) fn check(t: &AmpTable, axiom: Axiom) -> AxiomReport {
    if t.n == 0 {
        return AxiomReport::vacuous(axiom);
    }
    let witness = match axiom {
        Axiom::G1 => g1(t),
        Axiom::G2 => g2(t),
        Axiom::S1 => s1(t),
        Axiom::S2 => s2(t),
        Axiom::S3 => s3(t),
        Axiom::S4 => s4(t),
        Axiom::S5 => s5(t),
        other => unreachable!("{other} is not an amplitude axiom"),
    };
    match witness {
        Some(w) => AxiomReport::fail(axiom, t.index.ids(&w)),
        None => AxiomReport::pass(axiom),
    }
}

fn g1(t: &AmpTable) -> Option<Vec<usize>> {
    let n = t.n;
    for a in 0..n {
        for b in 0..n {
            if !t.geq(a, b) && !t.geq(b, a) {
                return Some(vec![a, b]);
            }
        }
    }
    None
}

fn g2(t: &AmpTable) -> Option<Vec<usize>> {
    let n = t.n;
    for a in 0..n {
        for b in (0..n).filter(|&b| t.geq(a, b)) {
            for c in 0..n {
                if t.geq(b, c) && !t.geq(a, c) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

fn s1(t: &AmpTable) -> Option<Vec<usize>> {
    let n = t.n;
    for a in 0..n {
        for b in 0..n {
            let first = t.outs(a, b);
            if first.is_empty() {
                continue;
            }
            for c in 0..n {
                if !first.iter().all(|&x| !t.outs(x, c).is_empty()) {
                    continue;
                }
                let second = t.outs(b, c);
                let defined = !second.is_empty() && second.iter().all(|&z| !t.outs(a, z).is_empty());
                let ordered = first.iter().all(|&f| {
                    t.outs(f, c).iter().all(|&f2| {
                        second.iter().all(|&g| t.outs(a, g).iter().all(|&g2| t.geq(f2, g2)))
                    })
                });
                if !(defined && ordered) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

fn s2(t: &AmpTable) -> Option<Vec<usize>> {
    let n = t.n;
    for a in 0..n {
        for b in (0..n).filter(|&b| t.geq(a, b)) {
            for c in 0..n {
                let left = t.outs(a, c);
                if left.is_empty() {
                    continue;
                }
                let right = t.outs(c, b);
                let ok = !right.is_empty() && left.iter().all(|&f| right.iter().all(|&f2| t.geq(f, f2)));
                if !ok {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

fn s3(t: &AmpTable) -> Option<Vec<usize>> {
    let n = t.n;
    for a in 0..n {
        for b in (0..n).filter(|&b| t.gt(a, b)) {
            let dense = (0..n).any(|d| {
                t.outs(b, d).iter().any(|&x| t.outs(b, x).iter().all(|&f| t.geq(a, f)))
            });
            if !dense {
                return Some(vec![a, b]);
            }
        }
    }
    None
}

fn s4(t: &AmpTable) -> Option<Vec<usize>> {
    let n = t.n;
    for a in 0..n {
        for b in 0..n {
            if let Some(&c) = t.outs(a, b).iter().find(|&&c| !t.geq(c, a)) {
                return Some(vec![a, b, c]);
            }
        }
    }
    None
}

/// Finite Archimedean form: a standard sequence `a, a2, a3, …` with
/// `S(a, a_{i-1}, a_i)` that stays strictly below `b` forever must revisit a
/// region, so S5 fails exactly when such a sequence can reach a cycle.
fn s5(t: &AmpTable) -> Option<Vec<usize>> {
    let n = t.n;
    for a in (0..n).filter(|&a| !t.sum(a, a, a)) {
        for b in (0..n).filter(|&b| !t.sum(b, b, b)) {
            if t.gt(b, a) && bounded_cycle(t, a, b) {
                return Some(vec![a, b]);
            }
        }
    }
    None
}

fn bounded_cycle(t: &AmpTable, step: usize, bound: usize) -> bool {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    let mut mark = vec![Mark::New; t.n];
    // Iterative DFS; stack entries are (node, next-successor cursor).
    let mut stack = vec![(step, 0usize)];
    mark[step] = Mark::Open;
    while let Some(&mut (node, ref mut cursor)) = stack.last_mut() {
        let succ = t.outs(step, node);
        if *cursor < succ.len() {
            let next = succ[*cursor];
            *cursor += 1;
            if !t.gt(bound, next) {
                continue;
            }
            match mark[next] {
                Mark::Open => return true,
                Mark::New => {
                    mark[next] = Mark::Open;
                    stack.push((next, 0));
                }
                Mark::Done => {}
            }
        } else {
            mark[node] = Mark::Done;
            stack.pop();
        }
    }
    false
}
