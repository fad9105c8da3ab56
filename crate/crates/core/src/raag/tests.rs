use std::collections::{BTreeSet, VecDeque};

use proptest::prelude::*;

use super::*;

fn w(s: &str) -> RaagWord {
    s.parse().unwrap()
}

/// All shortest words reachable from `w` by swapping adjacent commuting
/// letters and deleting adjacent inverse pairs.
fn oracle_class(w: &RaagWord) -> BTreeSet<Vec<Letter>> {
    let mut seen: BTreeSet<Vec<Letter>> = BTreeSet::new();
    let mut queue = VecDeque::from([w.letters.clone()]);
    seen.insert(w.letters.clone());
    while let Some(cur) = queue.pop_front() {
        for i in 0..cur.len().saturating_sub(1) {
            let (a, b) = (cur[i], cur[i + 1]);
            let mut next = cur.clone();
            if a.gen.abs_diff(b.gen) == 1 {
                next.swap(i, i + 1);
            } else if b == a.inverse() {
                next.drain(i..i + 2);
            } else {
                continue;
            }
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let min = seen.iter().map(Vec::len).min().unwrap();
    seen.into_iter().filter(|x| x.len() == min).collect()
}

fn all_words(m: usize, len: usize) -> Vec<RaagWord> {
    let letters: Vec<Letter> = (1..=m).flat_map(|g| [Letter::new(g, -1), Letter::new(g, 1)]).collect();
    let mut out = vec![RaagWord::empty()];
    let mut layer = out.clone();
    for _ in 0..len {
        let next: Vec<RaagWord> =
            layer.iter().flat_map(|x| letters.iter().map(move |&l| x.concat(&RaagWord { letters: vec![l] }))).collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[test]
fn c_sets() {
    let g = PathRaag::new(5).unwrap();
    assert_eq!(g.c_set(1), BTreeSet::from([1, 2]));
    assert_eq!(g.c_set(3), BTreeSet::from([2, 3, 4]));
    assert_eq!(g.c_set(5), BTreeSet::from([4, 5]));
}

#[test]
fn reduced_words() {
    let g = PathRaag::new(4).unwrap();
    assert!(!g.is_reduced(&w("g1,g1^-1")));
    assert!(!g.is_reduced(&w("g1,g2,g1^-1")));
    assert!(g.is_reduced(&w("g1,g3,g1^-1")));
}

#[test]
fn canonical_examples() {
    let g = PathRaag::new(4).unwrap();
    assert_eq!(g.canonical(&w("g2,g1")).word(), &w("g1,g2"));
    assert_eq!(g.canonical(&w("g1,g2,g2^-1,g3")).word(), &w("g1,g3"));
    assert_eq!(g.canonical(&w("g3,g1")).word(), &w("g3,g1"));
    assert_ne!(g.canonical(&w("g3,g1")), g.canonical(&w("g1,g3")));
    assert!(g.equal(&w("g1,g2"), &w("g2,g1")));
    assert!(!g.equal(&w("g1,g3"), &w("g3,g1")));
    assert_eq!(g.length(&w("g1,g2,g2^-1,g1")), 2);
    assert_eq!(g.inverse(&w("g1,g3")).word(), &w("g3^-1,g1^-1"));
}

#[test]
fn word_text_round_trip() {
    let x = w("g3,g3^-1,g1^2");
    assert_eq!(x.len(), 4);
    assert_eq!(x.to_string(), "g3,g3^-1,g1,g1");
    assert_eq!(w(&x.to_string()), x);
    assert_eq!(w(""), RaagWord::empty());
    assert!("h1".parse::<RaagWord>().is_err());
    assert!("g0".parse::<RaagWord>().is_err());
}

#[test]
fn centralizers() {
    let g = PathRaag::new(4).unwrap();
    assert!(g.centralizes_generator(&w("g1,g3"), 2));
    assert!(!g.centralizes_generator(&w("g3"), 1));
    assert!(g.centralizes_generator(&RaagWord::empty(), 3));
}

#[test]
fn centralizer_test_agrees_with_commutators() {
    let g = PathRaag::new(4).unwrap();
    for x in all_words(4, 3) {
        for i in 1..=4 {
            let gi = g.generator(i);
            assert_eq!(g.centralizes_generator(&x, i), g.equal(&x.concat(&gi), &gi.concat(&x)), "{x} g{i}");
        }
    }
}

#[test]
fn conjugation_equation() {
    let g = PathRaag::new(4).unwrap();
    let e = RaagWord::empty();
    assert!(g.is_conj_solution(&e, &e, Variant::Plus).unwrap());
    assert!(g.is_conj_solution(&w("g1,g4"), &w("g1,g4"), Variant::Plus).unwrap());
    assert!(g.is_conj_solution(&w("g1"), &w("g4^-1"), Variant::Plus).unwrap());
    assert_eq!(
        g.conj_solution_decompose(&w("g1,g4"), &w("g1,g4"), Variant::Plus).unwrap(),
        (1, NormalForm::default(), NormalForm::default())
    );
    let (k, u, v) = g.conj_solution_decompose(&w("g1,g4,g2"), &w("g1,g4,g3^-1"), Variant::Plus).unwrap();
    assert_eq!((k, u.word(), v.word()), (1, &w("g2"), &w("g3^-1")));
    // g2 commutes with g1, so (g2, 1) is the k = 0 solution with u' = g2
    assert_eq!(
        g.conj_solution_decompose(&w("g2"), &e, Variant::Plus).unwrap(),
        (0, g.canonical(&w("g2")), NormalForm::default())
    );
    assert_eq!(g.conj_solution_decompose(&w("g3"), &e, Variant::Plus), Err(Error::NotASolution));
    let small = PathRaag::new(3).unwrap();
    assert_eq!(small.is_conj_solution(&e, &e, Variant::Plus), Err(Error::RequiresMAtLeast4(3)));
}

#[test]
fn enumeration_counts() {
    let g4 = PathRaag::new(4).unwrap();
    assert_eq!(g4.enumerate_elements(0).unwrap(), vec![NormalForm::default()]);
    assert_eq!(g4.enumerate_elements(1).unwrap().len(), 9);
    assert_eq!(PathRaag::new(2).unwrap().enumerate_elements(2).unwrap().len(), 13);
    assert!(matches!(g4.enumerate_elements(8), Err(Error::BudgetExceeded(_))));
}

#[test]
fn equal_matches_the_rewriting_oracle() {
    let g = PathRaag::new(4).unwrap();
    // classes of every word up to length 4, then all pairs through the class map
    let words = all_words(4, 4);
    let mut oracle_ids = std::collections::HashMap::new();
    let mut canon_ids = std::collections::HashMap::new();
    for x in &words {
        let class = oracle_class(x);
        let n = oracle_ids.len();
        let oid = *oracle_ids.entry(class).or_insert(n);
        let n = canon_ids.len();
        let cid = *canon_ids.entry(g.canonical(x)).or_insert(n);
        // canonical ids and oracle ids must induce the same partition
        assert_eq!(oid, cid, "{x}");
    }
}

#[test]
fn elements_commuting_with_both_ends_are_trivial() {
    let g = PathRaag::new(4).unwrap();
    for e in g.enumerate_elements(6).unwrap() {
        if g.centralizes_generator(e.word(), 1) && g.centralizes_generator(e.word(), 4) {
            assert!(e.is_empty());
        }
    }
}

#[test]
fn centralizer_of_g1_g4_is_cyclic() {
    let g = PathRaag::new(4).unwrap();
    let h = w("g1,g4");
    let powers: Vec<NormalForm> = (-3..=3).map(|k| g.canonical(&h.pow(k))).collect();
    for e in g.enumerate_elements(6).unwrap() {
        if g.equal(&e.word().concat(&h), &h.concat(e.word())) {
            assert!(powers.contains(&e), "{e}");
        }
    }
}

#[test]
fn different_heads_give_different_elements() {
    let g = PathRaag::new(4).unwrap();
    let reduced: Vec<RaagWord> = all_words(4, 4).into_iter().filter(|x| !x.is_empty() && g.is_reduced(x)).collect();
    for a in &reduced {
        for b in reduced.iter().filter(|b| b.len() == a.len()) {
            let (x, y) = (a.letters[0], b.letters[0]);
            if x != y && !x.commutes(y) {
                assert!(!g.equal(a, b), "{a} vs {b}");
            }
        }
    }
}

#[test]
fn solution_family_is_complete() {
    let g = PathRaag::new(4).unwrap();
    let elems = g.enumerate_elements(3).unwrap();
    for variant in [Variant::Plus, Variant::Minus] {
        for u in &elems {
            for v in &elems {
                if !g.is_conj_solution(u.word(), v.word(), variant).unwrap() {
                    continue;
                }
                let (k, u1, v1) = g.conj_solution_decompose(u.word(), v.word(), variant).unwrap();
                let h = RaagWord { letters: vec![Letter::new(1, 1), g.conj_target(variant)] };
                assert_eq!(g.multiply(&h.pow(k), u1.word()), *u);
                assert_eq!(g.multiply(&h.pow(k), v1.word()), *v);
                assert!(g.is_conj_solution(&h.pow(k).concat(u1.word()), &h.pow(k).concat(v1.word()), variant).unwrap());
            }
        }
    }
}

/// Applies one commutation relation at `pos` when the letters there commute.
fn relation_move(x: &RaagWord, pos: usize) -> RaagWord {
    let mut letters = x.letters.clone();
    if pos + 1 < letters.len() && letters[pos].commutes(letters[pos + 1]) {
        letters.swap(pos, pos + 1);
    }
    RaagWord { letters }
}

fn word_strategy(m: usize, len: usize) -> impl Strategy<Value = RaagWord> {
    prop::collection::vec((1..=m, any::<bool>()), 0..len).prop_map(|v| RaagWord {
        letters: v.into_iter().map(|(g, p)| Letter::new(g, if p { 1 } else { -1 })).collect(),
    })
}

proptest! {
    #[test]
    fn canonical_is_idempotent_and_class_invariant(
        x in word_strategy(5, 14),
        moves in prop::collection::vec(0usize..14, 0..20),
    ) {
        let g = PathRaag::new(5).unwrap();
        let c = g.canonical(&x);
        prop_assert!(g.is_reduced(c.word()));
        prop_assert_eq!(&g.canonical(c.word()), &c);
        let mut y = x.clone();
        for p in moves {
            y = relation_move(&y, p);
        }
        prop_assert_eq!(g.canonical(&y), c);
    }

    #[test]
    fn group_axioms(a in word_strategy(4, 8), b in word_strategy(4, 8), c in word_strategy(4, 8)) {
        let g = PathRaag::new(4).unwrap();
        let ab_c = g.multiply(g.multiply(&a, &b).word(), &c);
        let a_bc = g.multiply(&a, g.multiply(&b, &c).word());
        prop_assert_eq!(ab_c, a_bc);
        prop_assert!(g.multiply(&a, g.inverse(&a).word()).is_empty());
        prop_assert_eq!(g.length(&a), g.canonical(&a).len());
    }
}
