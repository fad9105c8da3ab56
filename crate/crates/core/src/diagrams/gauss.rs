use std::collections::{BTreeMap, HashMap};

use super::{Crossing, Diagram};

/// One pass of a component through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Passage {
    pub crossing: usize,
    pub over: bool,
}

/// Signed oriented Gauss code: crossing signs plus, per component, the cyclic
/// sequence of passages. An empty sequence is a crossingless loop.
///
/// Arc `j` of a component is the segment arriving at passage `j`; basepoints
/// are stored as `(component, arc position)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct GaussCode {
    pub signs: Vec<i8>,
    pub comps: Vec<Vec<Passage>>,
    pub basepoints: BTreeMap<usize, usize>,
}

impl GaussCode {
    pub fn from_diagram(d: &Diagram) -> GaussCode {
        let mut heads: HashMap<u32, Passage> = HashMap::new();
        for (i, c) in d.crossings.iter().enumerate() {
            heads.insert(c.over_in, Passage { crossing: i, over: true });
            heads.insert(c.under_in, Passage { crossing: i, over: false });
        }
        let mut comps: Vec<Vec<Passage>> =
            d.components.iter().map(|arcs| arcs.iter().filter_map(|a| heads.get(a).copied()).collect()).collect();
        comps.extend(std::iter::repeat_with(Vec::new).take(d.free_loops));
        let basepoints = d
            .basepoints
            .iter()
            .map(|(&c, &a)| {
                let pos = d.components.get(c).and_then(|arcs| arcs.iter().position(|&x| x == a));
                (c, pos.unwrap_or(0))
            })
            .collect();
        GaussCode { signs: d.crossings.iter().map(|c| c.sign).collect(), comps, basepoints }
    }

    /// Rebuilds arcs numbered 1.. in component order.
    pub fn to_diagram(&self) -> Diagram {
        let blank = Crossing { over_in: 0, over_out: 0, under_in: 0, under_out: 0, sign: 0 };
        let mut crossings = vec![blank; self.signs.len()];
        for (c, s) in crossings.iter_mut().zip(&self.signs) {
            c.sign = *s;
        }
        let mut components = Vec::with_capacity(self.comps.len());
        let mut next_id = 1u32;
        for comp in &self.comps {
            if comp.is_empty() {
                components.push(vec![next_id]);
                next_id += 1;
                continue;
            }
            let k = comp.len() as u32;
            let ids: Vec<u32> = (next_id..next_id + k).collect();
            for (j, p) in comp.iter().enumerate() {
                let arc_in = ids[j];
                let arc_out = ids[(j + 1) % comp.len()];
                let c = &mut crossings[p.crossing];
                if p.over {
                    c.over_in = arc_in;
                    c.over_out = arc_out;
                } else {
                    c.under_in = arc_in;
                    c.under_out = arc_out;
                }
            }
            components.push(ids);
            next_id += k;
        }
        let basepoints =
            self.basepoints.iter().map(|(&c, &pos)| (c, components[c][pos.min(components[c].len() - 1)])).collect();
        let d = Diagram { crossings, components, free_loops: 0, basepoints };
        debug_assert_eq!(d.validate(), Ok(()), "gauss code rebuilt into an invalid diagram");
        d
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    /// For each crossing, its two passages as `(component, position)`.
    pub fn passage_locations(&self) -> Vec<Vec<(usize, usize)>> {
        let mut loc = vec![Vec::with_capacity(2); self.signs.len()];
        for (ci, comp) in self.comps.iter().enumerate() {
            for (j, p) in comp.iter().enumerate() {
                loc[p.crossing].push((ci, j));
            }
        }
        loc
    }

    /// Deletes the flagged crossings and renumbers the rest.
    pub fn remove_crossings(&self, remove: &[bool]) -> GaussCode {
        let mut new_index = vec![usize::MAX; self.signs.len()];
        let mut signs = Vec::new();
        for (i, &s) in self.signs.iter().enumerate() {
            if !remove[i] {
                new_index[i] = signs.len();
                signs.push(s);
            }
        }
        let mut basepoints = BTreeMap::new();
        let comps: Vec<Vec<Passage>> = self
            .comps
            .iter()
            .enumerate()
            .map(|(ci, comp)| {
                let kept: Vec<usize> = (0..comp.len()).filter(|&j| !remove[comp[j].crossing]).collect();
                if let Some(&pos) = self.basepoints.get(&ci) {
                    // the arc ending at `pos` now ends at the next surviving passage
                    let np = (0..comp.len())
                        .map(|s| (pos + s) % comp.len().max(1))
                        .find_map(|j| kept.iter().position(|&k| k == j))
                        .unwrap_or(0);
                    basepoints.insert(ci, np);
                }
                kept.iter().map(|&j| Passage { crossing: new_index[comp[j].crossing], over: comp[j].over }).collect()
            })
            .collect();
        GaussCode { signs, comps, basepoints }
    }

    /// `perm[k]` is the old index of new component `k`.
    pub fn permuted(&self, perm: &[usize]) -> GaussCode {
        let comps = perm.iter().map(|&o| self.comps[o].clone()).collect();
        let basepoints = perm.iter().enumerate().filter_map(|(k, o)| self.basepoints.get(o).map(|&p| (k, p))).collect();
        GaussCode { signs: self.signs.clone(), comps, basepoints }
    }

    /// Keeps only the listed components (in the given order), erasing crossings with the rest.
    pub fn restricted(&self, keep: &[usize]) -> GaussCode {
        let mut is_kept = vec![false; self.comps.len()];
        for &k in keep {
            is_kept[k] = true;
        }
        let loc = self.passage_locations();
        let remove: Vec<bool> = loc.iter().map(|ps| ps.iter().any(|&(c, _)| !is_kept[c])).collect();
        let trimmed = self.remove_crossings(&remove);
        trimmed.permuted(keep)
    }

    pub fn mirrored(&self) -> GaussCode {
        GaussCode {
            signs: self.signs.iter().map(|s| -s).collect(),
            comps: self
                .comps
                .iter()
                .map(|c| c.iter().map(|p| Passage { crossing: p.crossing, over: !p.over }).collect())
                .collect(),
            basepoints: self.basepoints.clone(),
        }
    }

    /// Reverses one component; crossings with exactly one passage on it change sign.
    pub fn reversed(&self, c: usize) -> GaussCode {
        let mut out = self.clone();
        let k = out.comps[c].len();
        out.comps[c].reverse();
        if let Some(pos) = out.basepoints.get_mut(&c) {
            if k > 0 {
                *pos = (k - *pos) % k;
            }
        }
        let mut on_c = vec![0u8; out.signs.len()];
        for p in &out.comps[c] {
            on_c[p.crossing] += 1;
        }
        for (s, n) in out.signs.iter_mut().zip(on_c) {
            if n == 1 {
                *s = -*s;
            }
        }
        out
    }

    /// Exchanges over and under at crossing `x`, negating its sign.
    pub fn switched(&self, x: usize) -> GaussCode {
        let mut out = self.clone();
        out.signs[x] = -out.signs[x];
        for comp in &mut out.comps {
            for p in comp.iter_mut().filter(|p| p.crossing == x) {
                p.over = !p.over;
            }
        }
        out
    }

    /// Oriented resolution of crossing `x`: the incoming end of each strand is
    /// joined to the outgoing end of the other. Splits a component when both
    /// passages lie on it, merges two components otherwise (the merged one
    /// keeps the smaller index). Basepoints are dropped.
    pub fn smoothed(&self, x: usize) -> GaussCode {
        let loc = self.passage_locations();
        let [(a, i), (b, j)] = [loc[x][0], loc[x][1]];
        let run = |c: usize, from: usize, to: usize| -> Vec<Passage> {
            // passages strictly after `from` up to strictly before `to`, cyclically
            let comp = &self.comps[c];
            let k = comp.len();
            let mut out = Vec::new();
            let mut p = (from + 1) % k;
            while p != to {
                out.push(comp[p]);
                p = (p + 1) % k;
            }
            out
        };
        let mut comps = self.comps.clone();
        if a == b {
            comps[a] = run(a, i, j);
            comps.push(run(a, j, i));
        } else {
            let mut merged = run(b, j, j);
            merged.extend(run(a, i, i));
            comps[a.min(b)] = merged;
            comps.remove(a.max(b));
        }
        let mut remove = vec![false; self.signs.len()];
        remove[x] = true;
        GaussCode { signs: self.signs.clone(), comps, basepoints: BTreeMap::new() }.remove_crossings(&remove)
    }

    pub fn disjoint_union(&self, other: &GaussCode) -> GaussCode {
        let offset = self.signs.len();
        let mut signs = self.signs.clone();
        signs.extend_from_slice(&other.signs);
        let mut comps = self.comps.clone();
        let base = comps.len();
        comps.extend(
            other
                .comps
                .iter()
                .map(|c| c.iter().map(|p| Passage { crossing: p.crossing + offset, over: p.over }).collect()),
        );
        let mut basepoints = self.basepoints.clone();
        basepoints.extend(other.basepoints.iter().map(|(&c, &p)| (c + base, p)));
        GaussCode { signs, comps, basepoints }
    }

    /// Splices component `c2` of `other` into component `c1`, cutting both
    /// just before their first passage. The merged component keeps index `c1`;
    /// the remaining components of `other` follow those of `self`.
    pub fn connected_sum(&self, c1: usize, other: &GaussCode, c2: usize) -> GaussCode {
        let base = self.comps.len();
        let u = self.disjoint_union(other);
        let mut comps = u.comps;
        let second = comps.remove(base + c2);
        let first_len = comps[c1].len();
        comps[c1].extend(second);
        let mut basepoints = BTreeMap::new();
        for (&c, &p) in &u.basepoints {
            if c == base + c2 {
                basepoints.entry(c1).or_insert_with(|| if p == 0 { 0 } else { first_len + p });
            } else if c > base + c2 {
                basepoints.insert(c - 1, p);
            } else {
                basepoints.insert(c, p);
            }
        }
        GaussCode { signs: u.signs, comps, basepoints }
    }
}
