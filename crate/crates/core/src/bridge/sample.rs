use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{Entry, WaveFunctionGrid};

/// Shape limits for [`random_lattice_grid`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeShape {
    pub max_particles: usize,
    pub max_points: usize,
    pub max_entries: usize,
}

impl Default for LatticeShape {
    fn default() -> Self {
        LatticeShape { max_particles: 2, max_points: 8, max_entries: 16 }
    }
}

fn combinations(points: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, points: usize, size: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == size {
            out.push(prefix.clone());
            return;
        }
        for p in start..points {
            prefix.push(p);
            go(p + 1, points, size, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(0, points, size, &mut Vec::new(), &mut out);
    out
}

/// A grid whose moduli are exact lattice multiples `q·delta` and whose
/// phases are exact multiples of `2π/ticks`.
///
/// Moduli cover a contiguous range `1..=m` (sometimes with null entries
/// too) and the phase ticks of nonzero entries cover a coset of a subgroup
/// of `Z_ticks`, so both extracted structures satisfy their axioms.
pub fn random_lattice_grid<R: Rng + ?Sized>(rng: &mut R, shape: LatticeShape, delta: f64, ticks: u64) -> WaveFunctionGrid {
    let particles = rng.gen_range(1..=shape.max_particles.min(shape.max_points));
    let points = rng.gen_range(particles..=shape.max_points);
    let mut configs = combinations(points, particles);
    configs.shuffle(rng);
    configs.truncate(rng.gen_range(1..=shape.max_entries.min(configs.len())));
    configs.sort();

    let count = configs.len();
    let nulls = if count > 1 && rng.gen_bool(0.3) { rng.gen_range(1..count) } else { 0 };
    let live = count - nulls;
    let top = rng.gen_range(1..=live) as u64;
    let mut moduli: Vec<u64> = (1..=top).collect();
    moduli.extend((top as usize..live).map(|_| rng.gen_range(1..=top)));

    let orders: Vec<u64> = (1..=ticks).filter(|d| ticks.is_multiple_of(*d) && *d as usize <= live).collect();
    let order = *orders.choose(rng).expect("order 1 always fits");
    let spacing = ticks / order;
    let mut phases: Vec<u64> = (0..order).map(|j| j * spacing).collect();
    phases.extend((order as usize..live).map(|_| rng.gen_range(0..order) * spacing));
    let offset = rng.gen_range(0..ticks);

    let mut live_values: Vec<(u64, u64)> = moduli.into_iter().zip(phases).collect();
    live_values.shuffle(rng);
    let mut values: Vec<Option<(u64, u64)>> = live_values.into_iter().map(Some).collect();
    values.extend((0..nulls).map(|_| None));
    values.shuffle(rng);

    let entries = configs
        .into_iter()
        .zip(values)
        .map(|(config, v)| {
            let z = match v {
                Some((q, t)) => Complex64::from_polar(q as f64 * delta, TAU * ((t + offset) % ticks) as f64 / ticks as f64),
                None => Complex64::new(0.0, 0.0),
            };
            Entry::new(config, z)
        })
        .collect();
    WaveFunctionGrid::new(particles, points, entries).expect("some entry is nonzero")
}
