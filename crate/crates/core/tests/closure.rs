use kclosure::actions::{orbit_coloring, orbits, OrbitColoring};
use kclosure::closure::{are_k_equivalent, is_k_closed, k_closure, k_closure_with, stabilization_index, Engine};
use kclosure::io::{parse_json, parse_text, write_json, write_text};
use kclosure::{Budget, Group, Permutation};
use proptest::prelude::*;

fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

/// Groups of degree 4..=7 on one to three random generators.
fn arb_group() -> impl Strategy<Value = Group> {
    (4usize..=7).prop_flat_map(|n| {
        prop::collection::vec(arb_perm(n), 1..=3).prop_map(move |gens| Group::new(n, gens).unwrap())
    })
}

/// Tuples in one orbit of `g` by a direct scan of images under all elements.
fn same_orbit(g: &Group, s: &[usize], t: &[usize]) -> bool {
    g.elements(50_000).unwrap().iter().any(|x| x.apply_tuple(s) == t)
}

fn brute_coloring(g: &Group, k: usize) -> OrbitColoring {
    let n = g.degree();
    let total = n.pow(k as u32);
    let elems = g.elements(10_000).unwrap();
    let mut labels = vec![u32::MAX; total];
    let mut next = 0;
    for i in 0..total {
        if labels[i] != u32::MAX {
            continue;
        }
        let t = kclosure::actions::decode_tuple(n, k, i);
        for x in &elems {
            labels[kclosure::actions::encode_tuple(n, &x.apply_tuple(&t))] = next;
        }
        next += 1;
    }
    OrbitColoring::canonical(n, k, &labels)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_chain(g in arb_group(), k in 1usize..=3) {
        let b = Budget::default();
        let gk = k_closure(&g, k, &b).unwrap().group;
        let gk1 = k_closure(&g, k + 1, &b).unwrap().group;
        prop_assert!(g.is_subgroup_of(&gk1).unwrap());
        prop_assert!(gk1.is_subgroup_of(&gk).unwrap());
        prop_assert!(is_k_closed(&gk, k, &b).unwrap());
        prop_assert!(are_k_equivalent(&g, &gk, k, &b).unwrap().is_none());
    }

    #[test]
    fn closure_commutes_with_conjugation(g in arb_group(), seed in 0u64..1000) {
        let b = Budget::default();
        let n = g.degree();
        let x = Permutation::from_images((0..n).map(|i| (i + seed as usize) % n).collect()).unwrap();
        let lhs = k_closure(&g.conjugate_by(&x), 2, &b).unwrap().group;
        let rhs = k_closure(&g, 2, &b).unwrap().group.conjugate_by(&x);
        prop_assert!(lhs.equals(&rhs).unwrap());
    }

    #[test]
    fn engines_agree(g in arb_group(), k in 1usize..=3) {
        prop_assume!(g.degree() <= 6);
        let b = Budget::default();
        let x = k_closure_with(&g, k, Engine::Backtracking, &b).unwrap().group;
        let y = k_closure_with(&g, k, Engine::Exhaustive, &b).unwrap().group;
        prop_assert!(x.equals(&y).unwrap());
    }

    #[test]
    fn colorings_match_a_scan(g in arb_group(), k in 1usize..=3) {
        let c = orbit_coloring(&g, k, &Budget::default()).unwrap();
        prop_assert_eq!(c, brute_coloring(&g, k));
    }

    #[test]
    fn formats_round_trip(g in arb_group()) {
        let text = write_text(&g);
        prop_assert_eq!(write_text(&parse_text(&text).unwrap()), text);
        let json = write_json(&g);
        prop_assert_eq!(write_json(&parse_json(&json).unwrap()), json);
    }
}

#[test]
fn witnesses_are_genuine() {
    let b = Budget::default();
    let agl = kclosure::corpus::load_corpus("agl(3,2)").unwrap();
    let sym = Group::symmetric(8);
    let w = are_k_equivalent(&agl, &sym, 4, &b).unwrap().unwrap();
    let (together, apart) = if w.together_in == 0 { (&agl, &sym) } else { (&sym, &agl) };
    assert!(same_orbit(together, &w.first, &w.second));
    assert!(!same_orbit(apart, &w.first, &w.second));
}

#[test]
fn stabilization_is_bounded_by_base_length() {
    let b = Budget::default();
    for g in kclosure::subgroups::subgroups_of_symmetric(5).unwrap().representatives() {
        let s = stabilization_index(&g, &b).unwrap();
        assert!(s <= g.base_size() + 1, "{g:?}");
        assert!(k_closure(&g, s, &b).unwrap().group.equals(&g).unwrap());
        assert_eq!(orbits(&k_closure(&g, 1, &b).unwrap().group).len(), orbits(&g).len());
    }
}
