//! Khovanov homology from the cube of resolutions.
//!
//! Gradings: a generator in resolution `r` with `p` circles labelled `v+`
//! out of `k` sits in homological degree `|r| - n_-` and quantum degree
//! `(2p - k) + |r| + n_+ - 2 n_-`. With these conventions the left-handed
//! trefoil lives in non-positive degrees.

mod complex;
pub mod gf2;
mod snf;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagrams::{simplify, Diagram, ForestGraph};
use crate::error::{Error, Result};
use crate::polynomials::BiLaurent;
use complex::{BlockKey, Cube, Mark};
pub use snf::snf;

pub const DEFAULT_CROSSING_BUDGET: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coeff {
    F2,
    Z,
}

/// Bigraded homology: free ranks and torsion summands (prime-power orders)
/// at each `(h, q)`. Only nonzero entries are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedRanks {
    pub coeff: Coeff,
    pub free: BTreeMap<(i64, i64), usize>,
    pub torsion: BTreeMap<(i64, i64), Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct RanksWire {
    coeff: Coeff,
    free: Vec<(i64, i64, usize)>,
    torsion: Vec<(i64, i64, u64)>,
}

impl Serialize for BigradedRanks {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RanksWire {
            coeff: self.coeff,
            free: self.free.iter().map(|(&(h, q), &r)| (h, q, r)).collect(),
            torsion: self.torsion.iter().flat_map(|(&(h, q), orders)| orders.iter().map(move |&o| (h, q, o))).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BigradedRanks {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = RanksWire::deserialize(d)?;
        let mut out = BigradedRanks::empty(w.coeff);
        for (h, q, r) in w.free {
            if r > 0 {
                *out.free.entry((h, q)).or_default() += r;
            }
        }
        for (h, q, o) in w.torsion {
            out.torsion.entry((h, q)).or_default().push(o);
        }
        for v in out.torsion.values_mut() {
            v.sort_unstable();
        }
        Ok(out)
    }
}

impl BigradedRanks {
    pub fn empty(coeff: Coeff) -> BigradedRanks {
        BigradedRanks { coeff, free: BTreeMap::new(), torsion: BTreeMap::new() }
    }

    /// Sum of the free ranks.
    pub fn total_rank(&self) -> usize {
        self.free.values().sum()
    }

    /// `sum rank * t^h q^q` as a polynomial in `x = t`, `y = q`.
    pub fn poincare(&self) -> BiLaurent {
        BiLaurent::from_terms(self.free.iter().map(|(&e, &r)| (e, r as u64)))
    }

    /// Graded Euler characteristic `sum (-1)^h rank q^q` (torsion ignored),
    /// as a polynomial in `y = q`.
    pub fn euler_characteristic(&self) -> BiLaurent {
        BiLaurent::from_terms(
            self.free.iter().map(|(&(h, q), &r)| ((0, q), if h % 2 == 0 { r as i64 } else { -(r as i64) })),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("ranks serialize")
    }

    pub fn from_json(s: &str) -> Result<BigradedRanks> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Ranks collapsed along the internal grading `h - q`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InternalGradingRanks(pub BTreeMap<i64, usize>);

impl InternalGradingRanks {
    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn get(&self, l: i64) -> usize {
        self.0.get(&l).copied().unwrap_or(0)
    }

    /// Sorted multiset of grades, one entry per rank.
    pub fn multiset(&self) -> Vec<i64> {
        self.0.iter().flat_map(|(&l, &r)| std::iter::repeat_n(l, r)).collect()
    }

    /// Whether the grades equal `expected` after one global shift, possibly
    /// combined with negation of every grade.
    pub fn matches_up_to_shift_and_negation(&self, expected: &[i64]) -> bool {
        let ours = self.multiset();
        if ours.len() != expected.len() {
            return false;
        }
        if ours.is_empty() {
            return true;
        }
        let mut want = expected.to_vec();
        want.sort_unstable();
        [1i64, -1].iter().any(|&sign| {
            let mut g: Vec<i64> = ours.iter().map(|&l| sign * l).collect();
            g.sort_unstable();
            let shift = want[0] - g[0];
            g.iter().zip(&want).all(|(a, b)| a + shift == *b)
        })
    }
}

pub fn internal_ranks(b: &BigradedRanks) -> InternalGradingRanks {
    let mut out = BTreeMap::new();
    for (&(h, q), &r) in &b.free {
        *out.entry(h - q).or_default() += r;
    }
    InternalGradingRanks(out)
}

pub fn kh(d: &Diagram, coeff: Coeff) -> Result<BigradedRanks> {
    kh_with_budget(d, coeff, DEFAULT_CROSSING_BUDGET)
}

/// Khovanov homology; the diagram is first reduced by Reidemeister I/II
/// moves and the budget applies to what remains.
pub fn kh_with_budget(d: &Diagram, coeff: Coeff, budget: usize) -> Result<BigradedRanks> {
    let s = simplify(d);
    check_budget(&s, budget)?;
    Ok(homology(&Cube::new(&s, None), coeff))
}

/// Reduced Khovanov homology with the basepoint on `component`, at `arc` if
/// given (otherwise at the diagram's stored basepoint for that component,
/// or any arc of it).
pub fn khr(d: &Diagram, component: usize, arc: Option<u32>, coeff: Coeff) -> Result<BigradedRanks> {
    khr_with_budget(d, component, arc, coeff, DEFAULT_CROSSING_BUDGET)
}

pub fn khr_with_budget(
    d: &Diagram,
    component: usize,
    arc: Option<u32>,
    coeff: Coeff,
    budget: usize,
) -> Result<BigradedRanks> {
    if component >= d.component_count() {
        return Err(Error::BadBasepoint(format!(
            "component {component} out of range ({} components)",
            d.component_count()
        )));
    }
    let default = d.basepoints().get(&component).copied().or(d.arc_on_component(component)?);
    let arc = arc.or(default);
    let mut bp = BTreeMap::new();
    if let Some(a) = arc {
        let on = d.component_arcs().get(component).is_some_and(|arcs| arcs.contains(&a));
        if !on {
            return Err(Error::BadBasepoint(format!("arc {a} is not on component {component}")));
        }
        bp.insert(component, a);
    }
    // only the chosen basepoint survives simplification
    let marked = d.clone().with_basepoints(bp)?;
    let s = simplify(&marked);
    check_budget(&s, budget)?;
    let mark = reduced_mark(&s, component);
    Ok(homology(&Cube::new(&s, Some(mark)), coeff))
}

fn check_budget(d: &Diagram, budget: usize) -> Result<()> {
    if d.crossing_count() > budget {
        return Err(Error::CrossingBudgetExceeded { crossings: d.crossing_count(), budget });
    }
    Ok(())
}

/// Locates the marked circle of `component` in the cube's numbering.
fn reduced_mark(d: &Diagram, component: usize) -> Mark {
    let heads: std::collections::HashSet<u32> = d.crossings().iter().flat_map(|c| [c.over_in, c.under_in]).collect();
    let arcs = d.component_arcs();
    if let Some(list) = arcs.get(component) {
        if heads.contains(&list[0]) {
            let a = d.basepoints().get(&component).copied().unwrap_or(list[0]);
            return Mark::Arc(a);
        }
    }
    // crossingless: explicit single-arc components first, then free loops
    let before = arcs.iter().take(component).filter(|l| !heads.contains(&l[0])).count();
    let extra = component.saturating_sub(arcs.len());
    Mark::Loose(before + extra)
}

fn homology(cube: &Cube, coeff: Coeff) -> BigradedRanks {
    let dims = cube.block_dims();
    let keys: Vec<BlockKey> = dims.keys().copied().collect();
    // rank of each differential out of a block, plus torsion of its image over Z
    let outgoing: BTreeMap<BlockKey, (usize, Vec<BigInt>)> = keys
        .par_iter()
        .filter(|k| dims.contains_key(&(k.0 + 1, k.1)))
        .map(|&k| {
            let res = match coeff {
                Coeff::F2 => (gf2::rank(&cube.gf2_matrix(k)), Vec::new()),
                Coeff::Z => {
                    let (cols, rows) = cube.z_matrix(k);
                    let e = snf::eliminate(cols, rows);
                    (e.rank, e.non_units)
                }
            };
            (k, res)
        })
        .collect();
    let mut out = BigradedRanks::empty(coeff);
    for (&k, &dim) in &dims {
        let out_rank = outgoing.get(&k).map_or(0, |r| r.0);
        let incoming = k.0.checked_sub(1).and_then(|s| outgoing.get(&(s, k.1)));
        let in_rank = incoming.map_or(0, |r| r.0);
        let free = dim - out_rank - in_rank;
        let g = cube.grading(k);
        if free > 0 {
            out.free.insert(g, free);
        }
        if let Some((_, non_units)) = incoming {
            let t = snf::elementary_divisors(non_units);
            if !t.is_empty() {
                out.torsion.insert(g, t);
            }
        }
    }
    out
}

/// Expected Poincaré polynomial (in `x = t`, `y = q`) of the forest link:
/// a product over trees with `k` vertices of
/// `t^(k-1) q^(3(k-1)) (q + q^-1) (t q^2 + t^-1 q^-2)^(k-1)`.
pub fn forest_poincare(g: &ForestGraph) -> Result<BiLaurent> {
    if let Some(cycle) = g.shortest_cycle() {
        return Err(Error::NotAForest(cycle));
    }
    let unknot = BiLaurent::from_terms([((0, 1), 1), ((0, -1), 1)]);
    let edge = BiLaurent::from_terms([((1, 2), 1), ((-1, -2), 1)]);
    let mut p = BiLaurent::one();
    for tree in g.trees() {
        let e = tree.len() as i64 - 1;
        p = p * BiLaurent::monomial(1, e, 3 * e) * unknot.clone() * edge.pow(e as u32);
    }
    Ok(p)
}

/// Checks `rank^l Kh(L) >= rank^(l + 2 lk) (Kh(K1) (x) Kh(K2))` over Z/2
/// at every internal grade `l`.
pub fn batson_seed_check(dl: &Diagram, dk1: &Diagram, dk2: &Diagram) -> Result<bool> {
    for (d, expected) in [(dl, 2), (dk1, 1), (dk2, 1)] {
        if d.component_count() != expected {
            return Err(Error::ComponentCountMismatch { expected, found: d.component_count() });
        }
    }
    let lk = dl.linking_matrix().get(0, 1);
    let link = internal_ranks(&kh(dl, Coeff::F2)?);
    let a = internal_ranks(&kh(dk1, Coeff::F2)?);
    let b = internal_ranks(&kh(dk2, Coeff::F2)?);
    let mut tensor: BTreeMap<i64, usize> = BTreeMap::new();
    for (&la, &ra) in &a.0 {
        for (&lb, &rb) in &b.0 {
            *tensor.entry(la + lb).or_default() += ra * rb;
        }
    }
    Ok(tensor.iter().all(|(&m, &r)| link.get(m - 2 * lk) >= r))
}
