//! The cube of resolutions and its Khovanov differentials, split into
//! blocks of fixed homological and quantum degree.
//!
//! A generator is a resolution `r` (bit `i` set = 1-smoothing at crossing
//! `i`) together with a labelling of its circles; a set bit in the label mask
//! means `v+`. Inside a block generators are ordered by resolution and then
//! by the colex rank of the label mask.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::gf2::SparseGf2;
use crate::diagrams::Diagram;
use crate::states::Smoothings;

/// Where the reduced complex pins its circle labelled `v-`.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Mark {
    /// An arc id of the diagram.
    Arc(u32),
    /// Index among the crossingless circles.
    Loose(usize),
}

pub(crate) struct Cube {
    pub n: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    arc_count: usize,
    loose: usize,
    /// Circles through crossings, per resolution.
    circles: Vec<u8>,
    /// Circle of each arc, per resolution.
    labels: Vec<u8>,
    /// Some arc on each circle, per resolution (`arc_count` slots reserved).
    reps: Vec<u8>,
    ccw: Vec<[usize; 4]>,
    /// Marked circle: an arc index, or a crossingless circle after the others.
    mark: Option<Mark>,
    binom: Vec<Vec<u64>>,
}

/// Key of a block: (number of 1-smoothings, unshifted quantum degree).
pub(crate) type BlockKey = (usize, i64);

impl Cube {
    pub fn new(d: &Diagram, mark: Option<Mark>) -> Cube {
        let sm = Smoothings::new(d);
        let n = sm.crossing_count();
        let arcs = sm.arc_count;
        assert!(arcs < 256, "too many arcs for the packed resolution table");
        let states = 1usize << n;
        let per_state: Vec<(u8, Vec<u8>, Vec<u8>)> = (0..states)
            .into_par_iter()
            .map(|r| {
                let mut lab = Vec::new();
                let k = sm.circles(r as u64, &mut lab);
                let mut reps = vec![u8::MAX; arcs];
                for (a, &c) in lab.iter().enumerate() {
                    if reps[c] == u8::MAX {
                        reps[c] = a as u8;
                    }
                }
                (k as u8, lab.into_iter().map(|c| c as u8).collect(), reps)
            })
            .collect();
        let mut circles = Vec::with_capacity(states);
        let mut labels = Vec::with_capacity(states * arcs);
        let mut reps = Vec::with_capacity(states * arcs);
        for (k, lab, rep) in per_state {
            circles.push(k);
            labels.extend(lab);
            reps.extend(rep);
        }
        let mark = mark.map(|m| match m {
            Mark::Arc(a) => Mark::Arc(sm.index[&a] as u32),
            loose => loose,
        });
        let (n_plus, n_minus) = d.sign_counts();
        let max_k = arcs + sm.crossingless + 1;
        let mut binom = vec![vec![0u64; max_k + 1]; max_k + 1];
        for i in 0..=max_k {
            binom[i][0] = 1;
            for j in 1..=i {
                binom[i][j] = binom[i - 1][j - 1] + binom[i - 1][j];
            }
        }
        Cube {
            n,
            n_plus,
            n_minus,
            arc_count: arcs,
            loose: sm.crossingless,
            circles,
            labels,
            reps,
            ccw: sm.ccw,
            mark,
            binom,
        }
    }

    fn total_circles(&self, r: usize) -> usize {
        self.circles[r] as usize + self.loose
    }

    fn label(&self, r: usize, arc: usize) -> usize {
        self.labels[r * self.arc_count + arc] as usize
    }

    fn marked_circle(&self, r: usize) -> Option<usize> {
        self.mark.map(|m| match m {
            Mark::Arc(a) => self.label(r, a as usize),
            Mark::Loose(i) => self.circles[r] as usize + i,
        })
    }

    /// Circles free to carry either label.
    fn free_circles(&self, r: usize) -> usize {
        self.total_circles(r) - self.mark.is_some() as usize
    }

    /// Number of `v+` labels for resolution `r` in quantum degree `deg`.
    fn plus_count(&self, r: usize, deg: i64) -> Option<usize> {
        let k = self.total_circles(r) as i64;
        let weight = r.count_ones() as i64;
        let twice = deg - weight + k;
        if twice < 0 || twice % 2 != 0 {
            return None;
        }
        let p = twice / 2;
        (p <= self.free_circles(r) as i64).then_some(p as usize)
    }

    /// Dimension of every nonempty block.
    pub fn block_dims(&self) -> BTreeMap<BlockKey, usize> {
        let mut dims = BTreeMap::new();
        for r in 0..1usize << self.n {
            let k = self.total_circles(r) as i64;
            let free = self.free_circles(r);
            let weight = r.count_ones() as i64;
            for p in 0..=free {
                let deg = 2 * p as i64 - k + weight;
                *dims.entry((weight as usize, deg)).or_default() += self.binom[free][p] as usize;
            }
        }
        dims
    }

    /// First generator index of each resolution inside block `key`.
    #[allow(clippy::needless_range_loop)]
    fn offsets(&self, key: BlockKey) -> Vec<u32> {
        let mut out = vec![u32::MAX; 1 << self.n];
        let mut next = 0u64;
        for r in 0..1usize << self.n {
            if r.count_ones() as usize != key.0 {
                continue;
            }
            if let Some(p) = self.plus_count(r, key.1) {
                out[r] = next as u32;
                next += self.binom[self.free_circles(r)][p];
            }
        }
        out
    }

    /// Colex rank of a label mask after dropping the marked bit.
    fn rank_mask(&self, r: usize, mask: u64) -> u64 {
        let m = match self.marked_circle(r) {
            Some(c) => (mask & ((1 << c) - 1)) | ((mask >> (c + 1)) << c),
            None => mask,
        };
        let mut rank = 0;
        let mut bits = m;
        let mut i = 1;
        while bits != 0 {
            let pos = bits.trailing_zeros() as usize;
            rank += self.binom[pos][i];
            i += 1;
            bits &= bits - 1;
        }
        rank
    }

    /// Label masks of resolution `r` with `p` free `v+` labels, in colex order.
    fn masks(&self, r: usize, p: usize) -> Vec<u64> {
        let free = self.free_circles(r);
        let expand = |m: u64| match self.marked_circle(r) {
            Some(c) => (m & ((1 << c) - 1)) | ((m >> c) << (c + 1)),
            None => m,
        };
        let mut out = Vec::with_capacity(self.binom[free][p] as usize);
        if p == 0 {
            out.push(0);
            return out;
        }
        let mut m: u64 = (1 << p) - 1;
        while m < 1 << free {
            out.push(expand(m));
            // next mask with the same popcount (Gosper)
            let c = m & m.wrapping_neg();
            let s = m + c;
            m = (((s ^ m) >> 2) / c) | s;
        }
        out
    }

    /// Images of one generator under the edge map that switches crossing `i`.
    fn edge_image(&self, r: usize, i: usize, mask: u64, out: &mut Vec<(usize, u64)>) {
        let s = r | 1 << i;
        let e = self.ccw[i];
        let (a, b) = (self.label(r, e[0]), self.label(r, e[2]));
        let k = self.circles[r] as usize;
        let k2 = self.circles[s] as usize;
        // carry the untouched circles across
        let mut base = 0u64;
        for c in 0..k {
            if c != a && c != b && mask >> c & 1 == 1 {
                let rep = self.reps[r * self.arc_count + c] as usize;
                base |= 1 << self.label(s, rep);
            }
        }
        for l in 0..self.loose {
            if mask >> (k + l) & 1 == 1 {
                base |= 1 << (k2 + l);
            }
        }
        if a != b {
            // merge: + + -> +, + - -> -, - - -> 0
            let (x, y) = (mask >> a & 1, mask >> b & 1);
            if x == 0 && y == 0 {
                return;
            }
            let c = self.label(s, e[0]);
            out.push((s, base | (x & y) << c));
        } else {
            // split: + -> (+ -) + (- +), - -> (- -)
            let (c1, c2) = (self.label(s, e[0]), self.label(s, e[1]));
            if mask >> a & 1 == 1 {
                out.push((s, base | 1 << c1));
                out.push((s, base | 1 << c2));
            } else {
                out.push((s, base));
            }
        }
    }

    /// Rows of the differential out of block `key`, one per generator, as
    /// `(column, sign)` pairs into block `(key.0 + 1, key.1)`.
    fn rows(&self, key: BlockKey, signed: bool) -> (usize, Vec<Vec<(u32, i64)>>) {
        let target = (key.0 + 1, key.1);
        let offs = self.offsets(target);
        let cols = (0..1usize << self.n)
            .filter(|&r| offs[r] != u32::MAX)
            .map(|r| self.binom[self.free_circles(r)][self.plus_count(r, key.1).unwrap()] as usize)
            .sum();
        let sources: Vec<usize> = (0..1usize << self.n)
            .filter(|&r| r.count_ones() as usize == key.0 && self.plus_count(r, key.1).is_some())
            .collect();
        let rows: Vec<Vec<Vec<(u32, i64)>>> = sources
            .par_iter()
            .map(|&r| {
                let p = self.plus_count(r, key.1).unwrap();
                let mut images = Vec::new();
                self.masks(r, p)
                    .into_iter()
                    .map(|mask| {
                        let mut row = Vec::new();
                        for i in (0..self.n).filter(|&i| r >> i & 1 == 0) {
                            let sign = if signed && (r & ((1 << i) - 1)).count_ones() % 2 == 1 { -1 } else { 1 };
                            images.clear();
                            self.edge_image(r, i, mask, &mut images);
                            for &(s, m) in &images {
                                let col = offs[s] as u64 + self.rank_mask(s, m);
                                row.push((col as u32, sign));
                            }
                        }
                        row.sort_unstable();
                        row
                    })
                    .collect()
            })
            .collect();
        (cols, rows.into_iter().flatten().collect())
    }

    pub fn gf2_matrix(&self, key: BlockKey) -> SparseGf2 {
        let (cols, rows) = self.rows(key, false);
        let mut m = SparseGf2::new(cols);
        for row in rows {
            m.push_row(row.into_iter().map(|e| e.0).collect());
        }
        m
    }

    pub fn z_matrix(&self, key: BlockKey) -> (usize, Vec<Vec<(u32, i64)>>) {
        let (cols, rows) = self.rows(key, true);
        let merged = rows
            .into_iter()
            .map(|row| {
                let mut out: Vec<(u32, i64)> = Vec::with_capacity(row.len());
                for (c, v) in row {
                    match out.last_mut() {
                        Some(last) if last.0 == c => last.1 += v,
                        _ => out.push((c, v)),
                    }
                }
                out.retain(|e| e.1 != 0);
                out
            })
            .collect();
        (cols, merged)
    }

    /// Output bigrading of a block.
    pub fn grading(&self, key: BlockKey) -> (i64, i64) {
        let shift = self.mark.is_some() as i64;
        (key.0 as i64 - self.n_minus as i64, key.1 + self.n_plus as i64 - 2 * self.n_minus as i64 + shift)
    }

    /// Dense differential over Z between two blocks, for testing `d∘d = 0`.
    #[cfg(test)]
    pub fn dense_z(&self, key: BlockKey) -> Vec<Vec<i64>> {
        let (cols, rows) = self.z_matrix(key);
        rows.iter()
            .map(|row| {
                let mut v = vec![0; cols];
                for &(c, x) in row {
                    v[c as usize] = x;
                }
                v
            })
            .collect()
    }
}
