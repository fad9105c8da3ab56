//! Resolutions of a diagram: which arcs fuse into circles for a given
//! choice of smoothing at every crossing.

use std::collections::HashMap;

use crate::diagrams::Diagram;

/// Crossing neighbourhoods with arcs renumbered `0..arc_count`.
#[derive(Clone, Debug)]
pub(crate) struct Smoothings {
    /// Arc indices counterclockwise from the incoming under-arc.
    pub ccw: Vec<[usize; 4]>,
    pub arc_count: usize,
    /// Position of each arc id in the renumbering.
    pub index: HashMap<u32, usize>,
    /// Components without crossings; each is a circle in every resolution.
    pub crossingless: usize,
}

impl Smoothings {
    pub fn new(d: &Diagram) -> Smoothings {
        let mut index: HashMap<u32, usize> = HashMap::new();
        let ccw: Vec<[usize; 4]> = d
            .crossings()
            .iter()
            .map(|c| {
                c.ccw_arcs().map(|a| {
                    let next = index.len();
                    *index.entry(a).or_insert(next)
                })
            })
            .collect();
        Smoothings { ccw, arc_count: index.len(), index, crossingless: d.component_count() - crossing_components(d) }
    }

    pub fn crossing_count(&self) -> usize {
        self.ccw.len()
    }

    /// Labels every arc with its circle (numbered by least arc) and returns
    /// the number of circles through crossings. Bit `i` of `state` set means
    /// crossing `i` takes the 1-smoothing (joining e1-e4 and e2-e3).
    pub fn circles(&self, state: u64, labels: &mut Vec<usize>) -> usize {
        labels.clear();
        labels.extend(0..self.arc_count);
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let union = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(p, a), find(p, b));
            if ra != rb {
                let (lo, hi) = (ra.min(rb), ra.max(rb));
                p[hi] = lo;
            }
        };
        for (i, e) in self.ccw.iter().enumerate() {
            if state >> i & 1 == 0 {
                union(labels, e[0], e[1]);
                union(labels, e[2], e[3]);
            } else {
                union(labels, e[0], e[3]);
                union(labels, e[1], e[2]);
            }
        }
        // dense renumbering in order of least arc
        let mut dense = vec![usize::MAX; self.arc_count];
        let mut count = 0;
        let roots: Vec<usize> = (0..self.arc_count).map(|a| find(labels, a)).collect();
        for (a, r) in roots.into_iter().enumerate() {
            if dense[r] == usize::MAX {
                dense[r] = count;
                count += 1;
            }
            labels[a] = dense[r];
        }
        count
    }
}

fn crossing_components(d: &Diagram) -> usize {
    let heads: std::collections::HashSet<u32> = d.crossings().iter().flat_map(|c| [c.over_in, c.under_in]).collect();
    d.component_arcs().iter().filter(|arcs| heads.contains(&arcs[0])).count()
}
