//! Oriented planar diagrams.
//!
//! A [`Diagram`] stores each crossing as explicit over/under in/out arcs plus
//! a sign. The sign doubles as the local rotation: reading counterclockwise
//! from the incoming under-arc, a positive crossing shows
//! `(under_in, over_out, under_out, over_in)` and a negative one
//! `(under_in, over_in, under_out, over_out)`. Validation checks that these
//! rotations glue into a planar map.
//!
//! Most operations go through [`GaussCode`], the per-component sequence of
//! crossing passages, and rebuild arcs afterwards.

mod families;
mod forest;
mod gauss;
mod morse;
mod ops;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use families::{from_braid_closure, hopf, l4a1, luv_diagram, trefoil, unknot, unlink, BraidWord, Handedness};
pub use forest::{forest_link, ForestGraph};
pub(crate) use gauss::{GaussCode, Passage};
pub use ops::{connected_sum, disjoint_union, mirror, reverse_component, simplify, smooth_crossing, switch_crossing};

/// One crossing: arc ids of the four strand ends and the crossing sign (±1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    #[serde(rename = "oi")]
    pub over_in: u32,
    #[serde(rename = "oo")]
    pub over_out: u32,
    #[serde(rename = "ui")]
    pub under_in: u32,
    #[serde(rename = "uo")]
    pub under_out: u32,
    pub sign: i8,
}

impl Crossing {
    /// Arc ids counterclockwise starting from the incoming under-arc.
    pub fn ccw_arcs(&self) -> [u32; 4] {
        if self.sign > 0 {
            [self.under_in, self.over_out, self.under_out, self.over_in]
        } else {
            [self.under_in, self.over_in, self.under_out, self.over_out]
        }
    }

    /// Whether the slot at counterclockwise position `p` is an incoming end.
    pub(crate) fn ccw_is_incoming(&self, p: usize) -> bool {
        match p % 4 {
            0 => true,
            2 => false,
            _ => (p % 4 == 3) == (self.sign > 0),
        }
    }
}

/// Oriented link diagram on the sphere.
///
/// Components are indexed first by the explicit arc cycles in `components`,
/// then by the `free_loops` crossingless unknots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DiagramWire")]
pub struct Diagram {
    crossings: Vec<Crossing>,
    components: Vec<Vec<u32>>,
    #[serde(default)]
    free_loops: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    basepoints: BTreeMap<usize, u32>,
}

pub type OrientedPdDiagram = Diagram;

#[derive(Deserialize)]
struct DiagramWire {
    #[serde(default)]
    crossings: Vec<Crossing>,
    #[serde(default)]
    components: Vec<Vec<u32>>,
    #[serde(default)]
    free_loops: usize,
    #[serde(default)]
    basepoints: BTreeMap<usize, u32>,
}

impl TryFrom<DiagramWire> for Diagram {
    type Error = Error;
    fn try_from(w: DiagramWire) -> Result<Self> {
        Diagram::new(w.crossings, w.components, w.free_loops, w.basepoints)
    }
}

/// Symmetric integer matrix of pairwise linking numbers, zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinkingMatrix(pub Vec<Vec<i64>>);

impl LinkingMatrix {
    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }

    pub fn negated(&self) -> LinkingMatrix {
        LinkingMatrix(self.0.iter().map(|r| r.iter().map(|v| -v).collect()).collect())
    }
}

impl Diagram {
    /// Builds and validates a diagram.
    pub fn new(
        crossings: Vec<Crossing>,
        components: Vec<Vec<u32>>,
        free_loops: usize,
        basepoints: BTreeMap<usize, u32>,
    ) -> Result<Self> {
        let d = Diagram { crossings, components, free_loops, basepoints };
        d.validate()?;
        Ok(d)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let wire: DiagramWire = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Diagram::try_from(wire)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serializes")
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// Arc cycles of the explicitly listed components.
    pub fn component_arcs(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn basepoints(&self) -> &BTreeMap<usize, u32> {
        &self.basepoints
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len() + self.free_loops
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// `(n_plus, n_minus)`.
    pub fn sign_counts(&self) -> (usize, usize) {
        let pos = self.crossings.iter().filter(|c| c.sign > 0).count();
        (pos, self.crossings.len() - pos)
    }

    /// Replaces the basepoint map; arcs must lie on their components.
    pub fn with_basepoints(mut self, basepoints: BTreeMap<usize, u32>) -> Result<Self> {
        self.basepoints = basepoints;
        self.check_basepoints()?;
        Ok(self)
    }

    /// Checks every structural invariant, reporting the first violation.
    pub fn validate(&self) -> Result<()> {
        for (i, c) in self.crossings.iter().enumerate() {
            if c.sign != 1 && c.sign != -1 {
                return Err(Error::BadSign(i));
            }
        }
        let mut ins: HashMap<u32, u32> = HashMap::new();
        let mut outs: HashMap<u32, u32> = HashMap::new();
        for c in &self.crossings {
            *ins.entry(c.over_in).or_default() += 1;
            *ins.entry(c.under_in).or_default() += 1;
            *outs.entry(c.over_out).or_default() += 1;
            *outs.entry(c.under_out).or_default() += 1;
        }
        let mut arcs: Vec<u32> = ins.keys().chain(outs.keys()).copied().collect();
        arcs.sort_unstable();
        arcs.dedup();
        // over-used arcs first, then arcs missing an end
        for &a in &arcs {
            if a == 0 || ins.get(&a).copied().unwrap_or(0) > 1 || outs.get(&a).copied().unwrap_or(0) > 1 {
                return Err(Error::DanglingArc(a));
            }
        }
        for &a in &arcs {
            if ins.get(&a) != Some(&1) || outs.get(&a) != Some(&1) {
                return Err(Error::DanglingArc(a));
            }
        }

        let heads = self.head_map();
        let mut seen: HashMap<u32, usize> = HashMap::new();
        for (ci, comp) in self.components.iter().enumerate() {
            if comp.is_empty() {
                return Err(Error::InconsistentCycle { component: ci, arc: 0 });
            }
            for &a in comp {
                if seen.insert(a, ci).is_some() {
                    return Err(Error::InconsistentCycle { component: ci, arc: a });
                }
            }
            if comp.len() == 1 && !heads.contains_key(&comp[0]) {
                if comp[0] == 0 {
                    return Err(Error::DanglingArc(0));
                }
                continue; // crossingless loop
            }
            for (j, &a) in comp.iter().enumerate() {
                let Some(&(x, over)) = heads.get(&a) else {
                    return Err(Error::DanglingArc(a));
                };
                let c = &self.crossings[x];
                let next = if over { c.over_out } else { c.under_out };
                if comp[(j + 1) % comp.len()] != next {
                    return Err(Error::InconsistentCycle { component: ci, arc: a });
                }
            }
        }
        if let Some(&a) = arcs.iter().find(|a| !seen.contains_key(a)) {
            return Err(Error::DanglingArc(a));
        }
        self.check_basepoints()?;
        self.check_planar()
    }

    fn check_basepoints(&self) -> Result<()> {
        for (&c, &a) in &self.basepoints {
            if c >= self.component_count() {
                return Err(Error::BadBasepoint(format!("component {c} out of range")));
            }
            if c < self.components.len() && !self.components[c].contains(&a) {
                return Err(Error::BadBasepoint(format!("arc {a} is not on component {c}")));
            }
        }
        Ok(())
    }

    /// arc -> (crossing index, arrives as over strand)
    fn head_map(&self) -> HashMap<u32, (usize, bool)> {
        let mut m = HashMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            m.insert(c.over_in, (i, true));
            m.insert(c.under_in, (i, false));
        }
        m
    }

    fn check_planar(&self) -> Result<()> {
        if self.is_planar(&self.crossings) {
            return Ok(());
        }
        let mut trial = self.crossings.clone();
        for i in 0..trial.len() {
            trial[i].sign = -trial[i].sign;
            let ok = self.is_planar(&trial);
            trial[i].sign = -trial[i].sign;
            if ok {
                return Err(Error::BadSign(i));
            }
        }
        Err(Error::BadSign(0))
    }

    fn is_planar(&self, crossings: &[Crossing]) -> bool {
        let n = crossings.len();
        if n == 0 {
            return true;
        }
        let faces = face_orbits(crossings).len();
        // connected pieces of the 4-valent graph
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        let mut tail: HashMap<u32, usize> = HashMap::new();
        for (i, c) in crossings.iter().enumerate() {
            tail.insert(c.over_out, i);
            tail.insert(c.under_out, i);
        }
        for (i, c) in crossings.iter().enumerate() {
            for a in [c.over_in, c.under_in] {
                if let Some(&j) = tail.get(&a) {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
            }
        }
        let pieces = (0..n).filter(|&i| find(&mut parent, i) == i).count();
        // V - E + F = 2 per piece, with E = 2V
        faces == n + 2 * pieces
    }

    /// Pairwise linking numbers: half the signed count of crossings between two components.
    pub fn linking_matrix(&self) -> LinkingMatrix {
        let n = self.component_count();
        let comp_of = self.arc_component_map();
        let mut m = vec![vec![0i64; n]; n];
        for c in &self.crossings {
            let (i, j) = (comp_of[&c.over_in], comp_of[&c.under_in]);
            if i != j {
                m[i][j] += c.sign as i64;
                m[j][i] += c.sign as i64;
            }
        }
        for row in &mut m {
            for v in row.iter_mut() {
                *v /= 2;
            }
        }
        LinkingMatrix(m)
    }

    pub(crate) fn arc_component_map(&self) -> HashMap<u32, usize> {
        let mut m = HashMap::new();
        for (ci, comp) in self.components.iter().enumerate() {
            for &a in comp {
                m.insert(a, ci);
            }
        }
        m
    }

    pub(crate) fn gauss(&self) -> GaussCode {
        GaussCode::from_diagram(self)
    }

    pub(crate) fn from_gauss(g: &GaussCode) -> Diagram {
        g.to_diagram()
    }

    /// Keeps the listed components in order; `perm[k]` is the old index of new component `k`.
    pub fn permute_components(&self, perm: &[usize]) -> Result<Diagram> {
        let n = self.component_count();
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(Error::BadParameters(format!("{perm:?} is not a permutation of 0..{n}")));
        }
        Ok(Diagram::from_gauss(&self.gauss().permuted(perm)))
    }

    /// Renumbers arcs through `f`, which must be injective into positive ids.
    pub fn relabel_arcs(&self, f: impl Fn(u32) -> u32) -> Result<Diagram> {
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing {
                over_in: f(c.over_in),
                over_out: f(c.over_out),
                under_in: f(c.under_in),
                under_out: f(c.under_out),
                sign: c.sign,
            })
            .collect();
        let components = self.components.iter().map(|cs| cs.iter().map(|&a| f(a)).collect()).collect();
        let basepoints = self.basepoints.iter().map(|(&c, &a)| (c, f(a))).collect();
        Diagram::new(crossings, components, self.free_loops, basepoints)
    }

    /// Some arc on component `c`, or `None` for a free loop.
    pub fn arc_on_component(&self, c: usize) -> Result<Option<u32>> {
        if c >= self.component_count() {
            return Err(Error::ComponentOutOfRange { index: c, count: self.component_count() });
        }
        Ok(self.components.get(c).map(|arcs| arcs[0]))
    }
}

/// Faces of the planar map as orbits of darts `(crossing, ccw position)`.
pub(crate) fn face_orbits(crossings: &[Crossing]) -> Vec<Vec<(usize, usize)>> {
    // slot position of each arc end
    let mut head: HashMap<u32, (usize, usize)> = HashMap::new();
    let mut tail: HashMap<u32, (usize, usize)> = HashMap::new();
    for (i, c) in crossings.iter().enumerate() {
        for (p, a) in c.ccw_arcs().into_iter().enumerate() {
            if c.ccw_is_incoming(p) {
                head.insert(a, (i, p));
            } else {
                tail.insert(a, (i, p));
            }
        }
    }
    let other_end = |x: usize, p: usize| -> (usize, usize) {
        let c = &crossings[x];
        let a = c.ccw_arcs()[p];
        if c.ccw_is_incoming(p) {
            tail[&a]
        } else {
            head[&a]
        }
    };
    let n = crossings.len();
    let mut visited = vec![[false; 4]; n];
    let mut faces = Vec::new();
    for x in 0..n {
        for p in 0..4 {
            if visited[x][p] {
                continue;
            }
            let mut orbit = Vec::new();
            let (mut cx, mut cp) = (x, p);
            while !visited[cx][cp] {
                visited[cx][cp] = true;
                orbit.push((cx, cp));
                let (ox, op) = other_end(cx, cp);
                cx = ox;
                cp = (op + 1) % 4;
            }
            faces.push(orbit);
        }
    }
    faces
}
