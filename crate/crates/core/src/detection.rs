//! Forest-of-unknots detection from Khovanov rank and linking numbers.
//!
//! A link with `n` components has `rank Kh(L; Z/2) >= 2^n`. When equality
//! holds, every pairwise linking number is in `{-1, 0, 1}` and the graph
//! joining components with `|lk| = 1` is a forest; the link is then the
//! forest link of that graph. `classify` reports which of these steps fails.
//! A cycle or a larger linking number at minimal rank cannot come from an
//! actual link, so those outcomes are inconsistency reports rather than
//! detections.

use serde::{Deserialize, Serialize};

use crate::diagrams::{Diagram, ForestGraph, LinkingMatrix};
use crate::error::{Error, Result};
use crate::khovanov::{kh_with_budget, Coeff, DEFAULT_CROSSING_BUDGET};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Classification {
    /// Consistent with the forest link of `graph`; edge signs are the signs
    /// of the linking numbers under the diagram's orientations.
    ForestOfUnknots {
        graph: ForestGraph,
    },
    NotMinimalRank {
        rank: usize,
        bound: usize,
    },
    /// Components along a shortest cycle of the `|lk| = 1` graph.
    CycleWitness {
        cycle: Vec<usize>,
    },
    NonUnitLinking {
        pair: (usize, usize),
        value: i64,
    },
}

pub fn classify(d: &Diagram) -> Result<Classification> {
    classify_with_budget(d, DEFAULT_CROSSING_BUDGET)
}

pub fn classify_with_budget(d: &Diagram, budget: usize) -> Result<Classification> {
    let rank = kh_with_budget(d, Coeff::F2, budget)?.total_rank();
    classify_data(rank, &d.linking_matrix())
}

/// The decision procedure on already computed data: the Z/2 Khovanov rank
/// and the linking matrix of an `n`-component link.
pub fn classify_data(rank: usize, lk: &LinkingMatrix) -> Result<Classification> {
    let n = lk.size();
    let bound = 1usize << n;
    if rank != bound {
        return Ok(Classification::NotMinimalRank { rank, bound });
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            match lk.get(i, j) {
                0 => {}
                v @ (1 | -1) => edges.push((i, j, v as i8)),
                value => return Ok(Classification::NonUnitLinking { pair: (i, j), value }),
            }
        }
    }
    let graph = ForestGraph::new(n, edges)?;
    Ok(match graph.shortest_cycle() {
        Some(cycle) => Classification::CycleWitness { cycle },
        None => Classification::ForestOfUnknots { graph },
    })
}

/// The sublink on the listed components, in the given order; crossings
/// involving any other component are erased.
pub fn sublink(d: &Diagram, comps: &[usize]) -> Result<Diagram> {
    if comps.is_empty() {
        return Err(Error::EmptySelection);
    }
    let n = d.component_count();
    let mut seen = vec![false; n];
    for &c in comps {
        if c >= n {
            return Err(Error::ComponentOutOfRange { index: c, count: n });
        }
        if std::mem::replace(&mut seen[c], true) {
            return Err(Error::BadParameters(format!("component {c} selected twice")));
        }
    }
    Ok(Diagram::from_gauss(&d.gauss().restricted(comps)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::*;
    use crate::khovanov::kh;
    use proptest::prelude::*;

    fn unsigned(c: &Classification) -> Option<std::collections::BTreeSet<(usize, usize)>> {
        match c {
            Classification::ForestOfUnknots { graph } => Some(graph.edge_set()),
            _ => None,
        }
    }

    #[test]
    fn unlink_is_an_edgeless_forest() {
        let c = classify(&unlink(2)).unwrap();
        assert_eq!(c, Classification::ForestOfUnknots { graph: ForestGraph::unsigned(2, &[]).unwrap() });
    }

    #[test]
    fn cycle_family_is_not_minimal() {
        let c = classify(&luv_diagram(3, -2).unwrap()).unwrap();
        assert_eq!(c, Classification::NotMinimalRank { rank: 12, bound: 8 });
    }

    #[test]
    fn l4a1_is_not_minimal() {
        assert_eq!(classify(&l4a1()).unwrap(), Classification::NotMinimalRank { rank: 8, bound: 4 });
    }

    #[test]
    fn forest_links_are_recovered() {
        let graphs = [
            ForestGraph::unsigned(3, &[(0, 1), (1, 2)]).unwrap(),
            ForestGraph::new(4, vec![(0, 1, -1), (0, 2, 1), (0, 3, -1)]).unwrap(),
            ForestGraph::unsigned(4, &[(0, 3), (1, 2)]).unwrap(),
            ForestGraph::unsigned(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap(),
        ];
        for g in graphs {
            let d = forest_link(&g).unwrap();
            let c = classify(&d).unwrap();
            assert_eq!(c, Classification::ForestOfUnknots { graph: g.clone() });
            assert_eq!(unsigned(&classify(&mirror(&d)).unwrap()), Some(g.edge_set()));
            assert_eq!(unsigned(&classify(&simplify(&d)).unwrap()), Some(g.edge_set()));
        }
    }

    #[test]
    fn sublinks() {
        let h = sublink(&hopf(1), &[1]).unwrap();
        assert_eq!((h.component_count(), h.crossing_count()), (1, 0));
        let path = forest_link(&ForestGraph::unsigned(3, &[(0, 1), (1, 2)]).unwrap()).unwrap();
        let ends = sublink(&path, &[0, 2]).unwrap();
        assert_eq!(kh(&ends, Coeff::F2).unwrap().total_rank(), 4);
        assert_eq!(ends.linking_matrix().get(0, 1), 0);
        let cyc = sublink(&luv_diagram(4, 0).unwrap(), &[0, 1]).unwrap();
        assert_eq!(cyc.linking_matrix().get(0, 1).abs(), 1);
        assert_eq!(kh(&cyc, Coeff::F2).unwrap().total_rank(), 4);
        assert_eq!(sublink(&path, &[]), Err(Error::EmptySelection));
        assert!(matches!(sublink(&path, &[3]), Err(Error::ComponentOutOfRange { .. })));
    }

    #[test]
    fn inconsistent_data_is_reported() {
        let triangle = LinkingMatrix(vec![vec![0, 1, -1], vec![1, 0, 1], vec![-1, 1, 0]]);
        assert_eq!(classify_data(8, &triangle).unwrap(), Classification::CycleWitness { cycle: vec![0, 1, 2] });
        let double = LinkingMatrix(vec![vec![0, 2], vec![2, 0]]);
        assert_eq!(classify_data(4, &double).unwrap(), Classification::NonUnitLinking { pair: (0, 1), value: 2 });
    }

    #[test]
    fn classification_json_is_tagged() {
        let s = serde_json::to_string(&Classification::CycleWitness { cycle: vec![0, 1, 2] }).unwrap();
        assert_eq!(s, r#"{"kind":"CycleWitness","cycle":[0,1,2]}"#);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn forest_sublinks_have_minimal_rank(
            n in 1usize..5,
            parents in prop::collection::vec((any::<prop::sample::Index>(), any::<bool>(), any::<bool>()), 4),
            subset in 1u32..16,
        ) {
            let mut edges = Vec::new();
            for v in 1..n {
                let (p, present, positive) = &parents[v - 1];
                if *present {
                    edges.push((p.index(v), v, if *positive { 1 } else { -1 }));
                }
            }
            let g = ForestGraph::new(n, edges).unwrap();
            let d = forest_link(&g).unwrap();
            let forest = matches!(classify(&d).unwrap(), Classification::ForestOfUnknots { .. });
            prop_assert!(forest);
            let comps: Vec<usize> = (0..n).filter(|&i| subset >> i & 1 == 1).collect();
            prop_assume!(!comps.is_empty());
            let s = sublink(&d, &comps).unwrap();
            prop_assert_eq!(kh(&s, Coeff::F2).unwrap().total_rank(), 1 << comps.len());
        }
    }
}
