use super::{face_orbits, Diagram};
use crate::error::{Error, Result};

/// Places `d2` beside `d1`; the components of `d2` follow those of `d1`.
pub fn disjoint_union(d1: &Diagram, d2: &Diagram) -> Diagram {
    Diagram::from_gauss(&d1.gauss().disjoint_union(&d2.gauss()))
}

/// Band-sums component `c1` of `d1` with component `c2` of `d2`.
///
/// The merged component keeps index `c1`; the other components of `d2`
/// are appended after those of `d1`.
pub fn connected_sum(d1: &Diagram, c1: usize, d2: &Diagram, c2: usize) -> Result<Diagram> {
    for (c, d) in [(c1, d1), (c2, d2)] {
        if c >= d.component_count() {
            return Err(Error::ComponentOutOfRange { index: c, count: d.component_count() });
        }
    }
    Ok(Diagram::from_gauss(&d1.gauss().connected_sum(c1, &d2.gauss(), c2)))
}

/// Switches every crossing.
pub fn mirror(d: &Diagram) -> Diagram {
    Diagram::from_gauss(&d.gauss().mirrored())
}

pub fn reverse_component(d: &Diagram, c: usize) -> Result<Diagram> {
    if c >= d.component_count() {
        return Err(Error::ComponentOutOfRange { index: c, count: d.component_count() });
    }
    Ok(Diagram::from_gauss(&d.gauss().reversed(c)))
}

/// Changes crossing `x` from over to under.
pub fn switch_crossing(d: &Diagram, x: usize) -> Result<Diagram> {
    if x >= d.crossing_count() {
        return Err(Error::BadParameters(format!("no crossing {x}")));
    }
    Ok(Diagram::from_gauss(&d.gauss().switched(x)))
}

/// Replaces crossing `x` by its orientation-respecting smoothing.
pub fn smooth_crossing(d: &Diagram, x: usize) -> Result<Diagram> {
    if x >= d.crossing_count() {
        return Err(Error::BadParameters(format!("no crossing {x}")));
    }
    Ok(Diagram::from_gauss(&d.gauss().smoothed(x)))
}

/// Removes Reidemeister I kinks and II bigons until none remain.
pub fn simplify(d: &Diagram) -> Diagram {
    let mut g = d.gauss();
    loop {
        let n = g.crossing_count();
        let mut remove = vec![false; n];
        if let Some(x) = find_kink(&g) {
            remove[x] = true;
        } else if let Some((x, y)) = find_bigon(&Diagram::from_gauss(&g)) {
            remove[x] = true;
            remove[y] = true;
        } else {
            return Diagram::from_gauss(&g);
        }
        g = g.remove_crossings(&remove);
    }
}

fn find_kink(g: &super::GaussCode) -> Option<usize> {
    g.comps.iter().find_map(|comp| {
        let k = comp.len();
        (0..k).find(|&j| k >= 2 && comp[j].crossing == comp[(j + 1) % k].crossing).map(|j| comp[j].crossing)
    })
}

/// A bigon face whose one edge runs over both crossings and the other under both.
fn find_bigon(d: &Diagram) -> Option<(usize, usize)> {
    let cs = d.crossings();
    let is_over = |x: usize, arc: u32| cs[x].over_in == arc || cs[x].over_out == arc;
    for face in face_orbits(cs) {
        if face.len() != 2 {
            continue;
        }
        let ((x, p), (y, q)) = (face[0], face[1]);
        if x == y {
            continue;
        }
        let (a, b) = (cs[x].ccw_arcs()[p], cs[y].ccw_arcs()[q]);
        let a_over = is_over(x, a) && is_over(y, a);
        let a_under = !is_over(x, a) && !is_over(y, a);
        let b_over = is_over(x, b) && is_over(y, b);
        let b_under = !is_over(x, b) && !is_over(y, b);
        if (a_over && b_under) || (a_under && b_over) {
            return Some((x, y));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::super::*;

    #[test]
    fn kink_simplifies_to_unknot() {
        let d = from_braid_closure(&BraidWord::new(2, vec![1]).unwrap());
        assert_eq!(d.crossing_count(), 1);
        let s = simplify(&d);
        assert_eq!(s.crossing_count(), 0);
        assert_eq!(s.component_count(), 1);
    }

    #[test]
    fn cancelling_pair_is_removed() {
        let d = from_braid_closure(&BraidWord::new(2, vec![1, -1]).unwrap());
        let s = simplify(&d);
        assert_eq!(s.crossing_count(), 0);
        assert_eq!(s.component_count(), 2);
    }

    #[test]
    fn hopf_and_trefoil_are_already_reduced() {
        assert_eq!(simplify(&hopf(1)).crossing_count(), 2);
        assert_eq!(simplify(&trefoil(Handedness::Left)).crossing_count(), 3);
    }

    #[test]
    fn mirror_negates_linking() {
        let d = hopf(1);
        assert_eq!(mirror(&d).linking_matrix(), d.linking_matrix().negated());
    }

    #[test]
    fn connected_sum_of_hopf_links_is_a_chain() {
        let h = hopf(1);
        let d = connected_sum(&h, 0, &h, 0).unwrap();
        assert_eq!(d.component_count(), 3);
        let lk = d.linking_matrix();
        assert_eq!((lk.get(0, 1), lk.get(0, 2), lk.get(1, 2)), (1, 1, 0));
        assert!(matches!(connected_sum(&h, 2, &h, 0), Err(crate::Error::ComponentOutOfRange { index: 2, .. })));
    }
}
