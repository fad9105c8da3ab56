//! Kauffman bracket and the Jones polynomial.
//!
//! The bracket is a state sum: every resolution contributes
//! `A^(#A - #B) · d^(circles - 1)` with `d = -A^2 - A^-2`. States are grouped
//! by `(#A - #B, circles)` first so the polynomial arithmetic is done once
//! per group rather than once per state.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::diagrams::Diagram;
use crate::error::{Error, Result};
use crate::polynomials::{GaussianInt, LaurentPoly, Var};
use crate::states::Smoothings;

/// Count of states for each `(#A - #B, circle count)`.
fn state_histogram(d: &Diagram) -> BTreeMap<(i64, usize), u64> {
    let sm = Smoothings::new(d);
    let n = sm.crossing_count();
    assert!(n < 40, "state sum over {n} crossings is out of reach");
    let total: u64 = 1 << n;
    let chunk = 1u64 << n.saturating_sub(6).min(14);
    let merge = |mut a: BTreeMap<(i64, usize), u64>, b: BTreeMap<(i64, usize), u64>| {
        for (k, v) in b {
            *a.entry(k).or_default() += v;
        }
        a
    };
    (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|block| {
            let mut hist = BTreeMap::new();
            let mut labels = Vec::new();
            for state in block * chunk..((block + 1) * chunk).min(total) {
                let circles = sm.circles(state, &mut labels) + sm.crossingless;
                let b = state.count_ones() as i64;
                *hist.entry((n as i64 - 2 * b, circles)).or_default() += 1;
            }
            hist
        })
        .reduce(BTreeMap::new, merge)
}

/// `<D>` in the variable `A`, normalized so that the crossingless circle is 1.
pub fn kauffman_bracket(d: &Diagram) -> LaurentPoly {
    let loop_value = LaurentPoly::from_terms(Var::A, [(2, -1), (-2, -1)]);
    let hist = state_histogram(d);
    let max_circles = hist.keys().map(|&(_, c)| c).max().unwrap_or(1);
    let powers: Vec<LaurentPoly> = (0..max_circles)
        .scan(LaurentPoly::one(Var::A), |acc, _| {
            let cur = acc.clone();
            *acc = &*acc * &loop_value;
            Some(cur)
        })
        .collect();
    let mut out = LaurentPoly::zero(Var::A);
    for ((a_exp, circles), count) in hist {
        let term = powers[circles - 1].shift_half(2 * a_exp).scale(BigInt::from(count));
        out = &out + &term;
    }
    out
}

/// Jones polynomial in `q = t^(1/2)`: `(-A^3)^(-w) <D>` with `A = q^(-1/2)`.
pub fn jones(d: &Diagram) -> LaurentPoly {
    let w = d.writhe();
    let bracket = kauffman_bracket(d);
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let normalized = bracket.shift_half(-6 * w).scale(sign);
    // A^k = q^(-k/2): the doubled q-exponent is -k
    normalized.invert_variable().substitute_power(Var::Q, 1, 2).expect("writhe-normalized bracket has even A-exponents")
}

/// The Jones polynomial in `t`, with half-integer exponents for links with an
/// even number of components.
pub fn jones_t(d: &Diagram) -> LaurentPoly {
    jones(d).substitute_power(Var::T, 1, 2).expect("q-exponents are integral")
}

/// Oriented skein relation `t^-1 V(L+) - t V(L-) = (t^(1/2) - t^(-1/2)) V(L0)`.
pub fn skein_check(plus: &Diagram, minus: &Diagram, zero: &Diagram) -> bool {
    let (vp, vm, v0) = (jones(plus), jones(minus), jones(zero));
    let lhs = &vp.shift_half(-4) - &vm.shift_half(4);
    let factor = LaurentPoly::from_terms(Var::Q, [(1, 1), (-1, -1)]);
    lhs == &factor * &v0
}

/// `(-1)^v (2i)^(u-1) (u + 2v)`: the value of `V(L_{u,v})` at `t^(1/2) = -i`.
pub fn vuv_closed_form(u: i64, v: i64) -> Result<GaussianInt> {
    if u < 3 {
        return Err(Error::BadParameters(format!("u must be at least 3, got {u}")));
    }
    let sign = if v.rem_euclid(2) == 0 { 1 } else { -1 };
    let base = GaussianInt::new(0, 2).pow((u - 1) as u32);
    Ok(base.scale(&BigInt::from(sign * (u + 2 * v))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::*;

    fn q(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(Var::Q, terms.iter().copied())
    }

    #[test]
    fn bracket_small_cases() {
        assert_eq!(kauffman_bracket(&unknot()), LaurentPoly::one(Var::A));
        let kink = from_braid_closure(&BraidWord::new(2, vec![1]).unwrap());
        assert_eq!(kink.writhe(), 1);
        assert_eq!(kauffman_bracket(&kink), LaurentPoly::from_terms(Var::A, [(3, -1)]));
        // four states of the Hopf diagram: A^2 d + 2 + A^-2 d
        assert_eq!(kauffman_bracket(&hopf(1)), LaurentPoly::from_terms(Var::A, [(4, -1), (-4, -1)]));
    }

    #[test]
    fn hopf_links() {
        assert_eq!(jones(&unknot()), LaurentPoly::one(Var::Q));
        assert_eq!(jones(&hopf(1)), q(&[(1, -1), (5, -1)]));
        assert_eq!(jones(&hopf(-1)), q(&[(-1, -1), (-5, -1)]));
        assert_eq!(jones_t(&hopf(1)).to_string(), "-t^(1/2) - t^(5/2)");
    }

    #[test]
    fn trefoils() {
        // right-handed trefoil: t + t^3 - t^4
        assert_eq!(jones_t(&trefoil(Handedness::Right)).to_string(), "t + t^3 - t^4");
        assert_eq!(jones(&trefoil(Handedness::Left)), jones(&trefoil(Handedness::Right)).invert_variable());
    }

    #[test]
    fn skein_at_a_hopf_crossing() {
        let plus = hopf(1);
        let minus = from_braid_closure(&BraidWord::new(2, vec![1, -1]).unwrap());
        let zero = from_braid_closure(&BraidWord::new(2, vec![1]).unwrap());
        assert!(skein_check(&plus, &minus, &zero));
        assert!(!skein_check(&plus, &plus, &plus));
    }

    #[test]
    fn cycle_family_reference_values() {
        assert_eq!(jones_t(&luv_diagram(3, -1).unwrap()).to_string(), "2 + t^2 + t^4");
        assert_eq!(jones_t(&luv_diagram(3, 0).unwrap()).to_string(), "t - 2*t^2 + 3*t^3 - t^4 + 3*t^5 - t^6 + t^7");
    }

    #[test]
    fn cycle_family_matches_closed_form() {
        for u in 3..=5usize {
            for v in -3..=2i64 {
                let value = jones(&luv_diagram(u, v).unwrap()).eval_gaussian().unwrap();
                assert_eq!(value, vuv_closed_form(u as i64, v).unwrap(), "u={u} v={v}");
            }
        }
    }

    fn hopf_chain(positive: usize, negative: usize) -> LaurentPoly {
        let (hp, hm) = (jones(&hopf(1)), jones(&hopf(-1)));
        &hp.pow(positive as u32) * &hm.pow(negative as u32)
    }

    #[test]
    fn cycle_family_skein_triples() {
        for u in 4..=5usize {
            for v in -3..=2i64 {
                let d = luv_diagram(u, v).unwrap();
                let odd = v.rem_euclid(2) as usize;
                // a positive clasp crossing: switching it leaves a chain of
                // Hopf links, smoothing it merges two neighbouring rings
                let site = (0..d.crossing_count()).find(|&x| {
                    d.crossings()[x].sign == 1
                        && jones(&switch_crossing(&d, x).unwrap()) == hopf_chain(u - 1 - odd, odd)
                        && jones(&smooth_crossing(&d, x).unwrap()) == jones(&luv_diagram(u - 1, v).unwrap())
                });
                assert!(site.is_some(), "no clasp site for u={u} v={v}");
                let x = site.unwrap();
                assert!(skein_check(&d, &switch_crossing(&d, x).unwrap(), &smooth_crossing(&d, x).unwrap()));
            }
        }
        // a twist crossing: switching it moves v by two, smoothing it cuts
        // the outer band into two rings
        for u in 3..=5usize {
            for v in 1..=2i64 {
                let d = luv_diagram(u, v).unwrap();
                let odd = v.rem_euclid(2) as usize;
                let site = (0..d.crossing_count()).find(|&x| {
                    d.crossings()[x].sign == -1
                        && jones(&switch_crossing(&d, x).unwrap()) == jones(&luv_diagram(u, v - 2).unwrap())
                        && jones(&smooth_crossing(&d, x).unwrap()) == hopf_chain(u - odd, odd)
                });
                assert!(site.is_some(), "no twist site for u={u} v={v}");
            }
        }
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(vuv_closed_form(3, -1).unwrap(), GaussianInt::new(4, 0));
        assert_eq!(vuv_closed_form(3, 0).unwrap(), GaussianInt::new(-12, 0));
        assert_eq!(vuv_closed_form(4, 0).unwrap(), GaussianInt::new(0, -32));
        assert!(vuv_closed_form(2, 0).is_err());
    }
}
