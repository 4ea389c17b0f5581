use crate::structures::{AmplitudeStructure, PhaseStructure, RegionId};

fn labelled(prefix: char, value: usize, copy: usize, copies: usize) -> RegionId {
    if copies == 1 {
        RegionId::new(format!("{prefix}{value}"))
    } else {
        RegionId::new(format!("{prefix}{value}_{copy}"))
    }
}

/// The `Z_n` clock: `per_tick` regions at each tick `j`, read as phase
/// `j/n` of a turn. `cb(x,y,z)` holds iff some cyclic rotation of the three
/// ticks is non-decreasing, and `cong(a,b,c,d)` iff the tick differences
/// agree mod `n`. A zero argument gives the empty structure.
pub fn generate_clock(n: usize, per_tick: usize) -> PhaseStructure {
    let regions: Vec<(RegionId, usize)> =
        (0..n).flat_map(|j| (0..per_tick).map(move |i| (labelled('a', j, i, per_tick), j))).collect();
    let mut cb = Vec::new();
    for (x, tx) in &regions {
        for (y, ty) in &regions {
            for (z, tz) in &regions {
                if (tx <= ty && ty <= tz) || (ty <= tz && tz <= tx) || (tz <= tx && tx <= ty) {
                    cb.push([x.clone(), y.clone(), z.clone()]);
                }
            }
        }
    }
    let diff = |p: usize, q: usize| (p + n - q) % n;
    let mut cong = Vec::new();
    for (a, ta) in &regions {
        for (b, tb) in &regions {
            for (c, tc) in &regions {
                for (d, td) in &regions {
                    if diff(*ta, *tb) == diff(*tc, *td) {
                        cong.push([a.clone(), b.clone(), c.clone(), d.clone()]);
                    }
                }
            }
        }
    }
    PhaseStructure::new(regions.into_iter().map(|(id, _)| id).collect(), cb, cong)
}

/// Regions with amplitudes `0..=m`, each value carried by `multiplicity`
/// regions; `geq` and `sum` are induced by integer order and addition.
pub fn generate_integer_amplitude(m: usize, multiplicity: usize) -> AmplitudeStructure {
    let regions: Vec<(RegionId, usize)> =
        (0..=m).flat_map(|v| (0..multiplicity).map(move |i| (labelled('r', v, i, multiplicity), v))).collect();
    let mut geq = Vec::new();
    let mut sum = Vec::new();
    for (a, va) in &regions {
        for (b, vb) in &regions {
            if va >= vb {
                geq.push([a.clone(), b.clone()]);
            }
            for (c, vc) in &regions {
                if *vc == va + vb {
                    sum.push([a.clone(), b.clone(), c.clone()]);
                }
            }
        }
    }
    AmplitudeStructure::new(regions.into_iter().map(|(id, _)| id).collect(), geq, sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: &str) -> RegionId {
        RegionId::from(n)
    }

    #[test]
    fn clock_four_tuples() {
        let s = generate_clock(4, 1);
        assert_eq!(s.carrier(), &[r("a0"), r("a1"), r("a2"), r("a3")]);
        // 12 of the 24 distinct-tick triples, plus all 40 with a repeat.
        assert_eq!(s.cb().len(), 52);
        assert!(s.cb().contains(&[r("a0"), r("a1"), r("a2")]));
        assert!(!s.cb().contains(&[r("a0"), r("a2"), r("a1")]));
        assert_eq!(s.cong().len(), 64);
    }

    #[test]
    fn degenerate_clocks() {
        let flat = generate_clock(1, 3);
        assert_eq!(flat.cong().len(), 81);
        assert_eq!(flat.cb().len(), 27);
        let two = generate_clock(2, 1);
        assert_eq!(two.cb().len(), 8);
        assert_eq!(two.cong().len(), 8);
        assert!(generate_clock(0, 1).carrier().is_empty());
    }

    #[test]
    fn integer_models() {
        let s = generate_integer_amplitude(3, 1);
        assert_eq!(s.carrier(), &[r("r0"), r("r1"), r("r2"), r("r3")]);
        assert!(s.sum().contains(&[r("r1"), r("r1"), r("r2")]));
        let nulls = generate_integer_amplitude(0, 2);
        assert_eq!(nulls.sum().len(), 8);
        let partial = generate_integer_amplitude(1, 1);
        assert!(!partial.sum().iter().any(|[a, b, _]| *a == r("r1") && *b == r("r1")));
    }
}
