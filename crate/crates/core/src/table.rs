//! Dense index-addressed copies of the relations used by the checkers and
//! builders. Indices follow sorted region-id order, so index-lexicographic
//! scans are id-lexicographic scans.

use std::collections::HashMap;

use crate::structures::{AmplitudeStructure, PhaseStructure, RegionId};

pub(crate) struct Index {
    pub ids: Vec<RegionId>,
    pos: HashMap<RegionId, usize>,
}

impl Index {
    pub fn new(carrier: &[RegionId]) -> Self {
        let mut ids = carrier.to_vec();
        ids.sort();
        ids.dedup();
        let pos = ids.iter().cloned().enumerate().map(|(i, id)| (id, i)).collect();
        Index { ids, pos }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn of(&self, id: &RegionId) -> Option<usize> {
        self.pos.get(id).copied()
    }

    pub fn ids(&self, idx: &[usize]) -> Vec<RegionId> {
        idx.iter().map(|&i| self.ids[i].clone()).collect()
    }
}

pub(crate) struct AmpTable {
    pub index: Index,
    pub n: usize,
    geq: Vec<bool>,
    sum: Vec<bool>,
    /// `outs[a*n+b]` lists every `c` with `S(a,b,c)`, ascending.
    outs: Vec<Vec<usize>>,
}

impl AmpTable {
    /// Precondition: `s.validate()` is empty.
    pub fn new(s: &AmplitudeStructure) -> Self {
        let index = Index::new(s.carrier());
        let n = index.len();
        let mut geq = vec![false; n * n];
        for [a, b] in s.geq() {
            geq[index.of(a).unwrap() * n + index.of(b).unwrap()] = true;
        }
        let mut sum = vec![false; n * n * n];
        let mut outs = vec![Vec::new(); n * n];
        for [a, b, c] in s.sum() {
            let (a, b, c) = (index.of(a).unwrap(), index.of(b).unwrap(), index.of(c).unwrap());
            sum[(a * n + b) * n + c] = true;
            outs[a * n + b].push(c);
        }
        for o in &mut outs {
            o.sort_unstable();
        }
        AmpTable { index, n, geq, sum, outs }
    }

    #[inline]
    pub fn geq(&self, a: usize, b: usize) -> bool {
        self.geq[a * self.n + b]
    }

    #[inline]
    pub fn gt(&self, a: usize, b: usize) -> bool {
        self.geq(a, b) && !self.geq(b, a)
    }

    #[inline]
    pub fn sum(&self, a: usize, b: usize, c: usize) -> bool {
        self.sum[(a * self.n + b) * self.n + c]
    }

    #[inline]
    pub fn outs(&self, a: usize, b: usize) -> &[usize] {
        &self.outs[a * self.n + b]
    }
}

pub(crate) struct PhaseTable {
    pub index: Index,
    pub n: usize,
    cb: Vec<bool>,
    cong: Vec<bool>,
}

impl PhaseTable {
    /// Precondition: `s.validate()` is empty.
    pub fn new(s: &PhaseStructure) -> Self {
        let index = Index::new(s.carrier());
        let n = index.len();
        let mut cb = vec![false; n * n * n];
        for [a, b, c] in s.cb() {
            cb[(index.of(a).unwrap() * n + index.of(b).unwrap()) * n + index.of(c).unwrap()] = true;
        }
        let mut cong = vec![false; n * n * n * n];
        for [a, b, c, d] in s.cong() {
            let i = ((index.of(a).unwrap() * n + index.of(b).unwrap()) * n + index.of(c).unwrap()) * n
                + index.of(d).unwrap();
            cong[i] = true;
        }
        PhaseTable { index, n, cb, cong }
    }

    #[inline]
    pub fn cb(&self, a: usize, b: usize, c: usize) -> bool {
        self.cb[(a * self.n + b) * self.n + c]
    }

    #[inline]
    pub fn cong(&self, a: usize, b: usize, c: usize, d: usize) -> bool {
        self.cong[((a * self.n + b) * self.n + c) * self.n + d]
    }

    /// `peq[a*n+b]` is `a =_P b`.
    pub fn phase_eq_matrix(&self) -> Vec<bool> {
        let n = self.n;
        let mut out = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                out[a * n + b] = (0..n).all(|c| self.cong(a, c, b, c));
            }
        }
        out
    }
}
