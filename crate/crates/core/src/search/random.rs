use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::structures::{AmplitudeStructure, PhaseStructure, RegionId};

fn carrier(n: usize) -> Vec<RegionId> {
    (0..n).map(|i| RegionId::new(format!("x{i}"))).collect()
}

fn tuples<const K: usize>(n: usize) -> Vec<[usize; K]> {
    let total = n.pow(K as u32);
    (0..total)
        .map(|mut code| {
            let mut t = [0; K];
            for slot in t.iter_mut().rev() {
                *slot = code % n;
                code /= n;
            }
            t
        })
        .collect()
}

fn named<const K: usize>(ids: &[RegionId], t: [usize; K]) -> [RegionId; K] {
    t.map(|i| ids[i].clone())
}

/// Each tuple independently, at a density drawn uniformly per relation.
fn raw<const K: usize, R: Rng + ?Sized>(rng: &mut R, ids: &[RegionId]) -> Vec<[RegionId; K]> {
    let p: f64 = rng.gen();
    tuples::<K>(ids.len()).into_iter().filter(|_| rng.gen_bool(p)).map(|t| named(ids, t)).collect()
}

/// Whole orbits under a random group of argument permutations, each orbit
/// at a density drawn uniformly per relation.
fn orbits<const K: usize, R: Rng + ?Sized>(rng: &mut R, ids: &[RegionId]) -> Vec<[RegionId; K]> {
    let generators: Vec<[usize; K]> = (0..rng.gen_range(0..=3))
        .map(|_| {
            let mut p: [usize; K] = std::array::from_fn(|i| i);
            p.shuffle(rng);
            p
        })
        .collect();
    let p: f64 = rng.gen();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for start in tuples::<K>(ids.len()) {
        if seen.contains(&start) {
            continue;
        }
        let mut orbit = vec![start];
        seen.insert(start);
        let mut i = 0;
        while i < orbit.len() {
            let t = orbit[i];
            for g in &generators {
                let image: [usize; K] = std::array::from_fn(|j| t[g[j]]);
                if seen.insert(image) {
                    orbit.push(image);
                }
            }
            i += 1;
        }
        if rng.gen_bool(p) {
            out.extend(orbit.into_iter().map(|t| named(ids, t)));
        }
    }
    out
}

/// Uniform-density raw relations on `x0..x{n-1}`.
pub fn random_amplitude<R: Rng + ?Sized>(rng: &mut R, n: usize) -> AmplitudeStructure {
    let ids = carrier(n);
    let geq = raw::<2, _>(rng, &ids);
    let sum = raw::<3, _>(rng, &ids);
    AmplitudeStructure::new(ids, geq, sum)
}

pub fn random_phase<R: Rng + ?Sized>(rng: &mut R, n: usize) -> PhaseStructure {
    let ids = carrier(n);
    let cb = raw::<3, _>(rng, &ids);
    let cong = raw::<4, _>(rng, &ids);
    PhaseStructure::new(ids, cb, cong)
}

/// Relations that are unions of orbits of a random symmetry group.
pub fn symmetric_amplitude<R: Rng + ?Sized>(rng: &mut R, n: usize) -> AmplitudeStructure {
    let ids = carrier(n);
    let geq = orbits::<2, _>(rng, &ids);
    let sum = orbits::<3, _>(rng, &ids);
    AmplitudeStructure::new(ids, geq, sum)
}

pub fn symmetric_phase<R: Rng + ?Sized>(rng: &mut R, n: usize) -> PhaseStructure {
    let ids = carrier(n);
    let cb = orbits::<3, _>(rng, &ids);
    let cong = orbits::<4, _>(rng, &ids);
    PhaseStructure::new(ids, cb, cong)
}
