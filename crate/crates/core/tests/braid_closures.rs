//! Cross-module properties on random braid closures: homology against the
//! Jones polynomial, mirror symmetry, Markov moves and coefficient changes.

use khof::diagrams::{from_braid_closure, mirror, BraidWord, Diagram};
use khof::jones::jones;
use khof::khovanov::{kh, BigradedRanks, Coeff};
use khof::polynomials::BiLaurent;
use proptest::prelude::*;

fn braid_strategy() -> impl Strategy<Value = BraidWord> {
    (2usize..=4).prop_flat_map(|l| {
        let letter = (1..l as i32, any::<bool>()).prop_map(|(g, pos)| if pos { g } else { -g });
        prop::collection::vec(letter, 0..9).prop_map(move |w| BraidWord::new(l, w).unwrap())
    })
}

fn closure(b: &BraidWord) -> Diagram {
    from_braid_closure(b)
}

/// `(q + q^-1) V` with `t^(1/2)` replaced by `-q`.
fn unnormalized_jones(d: &Diagram) -> BiLaurent {
    let v = BiLaurent::from_terms(jones(d).half_terms().map(|(e, c)| {
        let q = e / 2;
        ((0, q), if q % 2 == 0 { c.clone() } else { -c.clone() })
    }));
    BiLaurent::from_terms([((0, 1), 1), ((0, -1), 1)]) * v
}

fn negated_gradings(b: &BigradedRanks) -> BigradedRanks {
    let mut out = BigradedRanks::empty(b.coeff);
    out.free = b.free.iter().map(|(&(h, q), &r)| ((-h, -q), r)).collect();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_characteristic_recovers_jones(b in braid_strategy()) {
        let d = closure(&b);
        prop_assert_eq!(kh(&d, Coeff::Z).unwrap().euler_characteristic(), unnormalized_jones(&d));
    }

    #[test]
    fn mirror_negates_gradings_over_f2(b in braid_strategy()) {
        let d = closure(&b);
        let k = kh(&d, Coeff::F2).unwrap();
        prop_assert_eq!(kh(&mirror(&d), Coeff::F2).unwrap(), negated_gradings(&k));
    }

    #[test]
    fn markov_stabilization_preserves_invariants(b in braid_strategy(), positive in any::<bool>()) {
        let l = b.strands();
        let mut letters = b.letters().to_vec();
        letters.push(if positive { l as i32 } else { -(l as i32) });
        let stabilized = closure(&BraidWord::new(l + 1, letters).unwrap());
        let d = closure(&b);
        prop_assert_eq!(jones(&stabilized), jones(&d));
        prop_assert_eq!(kh(&stabilized, Coeff::Z).unwrap(), kh(&d, Coeff::Z).unwrap());
    }

    #[test]
    fn universal_coefficients(b in braid_strategy()) {
        // each Z/2^k summand at (h, q) contributes to Z/2 homology at (h, q) and (h - 1, q)
        let d = closure(&b);
        let z = kh(&d, Coeff::Z).unwrap();
        let f2 = kh(&d, Coeff::F2).unwrap();
        let mut expected = z.free.clone();
        for (&(h, q), orders) in &z.torsion {
            let even = orders.iter().filter(|&&o| o % 2 == 0).count();
            if even > 0 {
                *expected.entry((h, q)).or_default() += even;
                *expected.entry((h - 1, q)).or_default() += even;
            }
        }
        prop_assert_eq!(f2.free, expected);
    }
}
