use proptest::prelude::*;
use std::collections::BTreeMap;
use trigeom::canon::graph_code;
use trigeom::gen::{random_graph, random_subset, rng, Class};
use trigeom::graph::{parse_graph, IdSet, TriGraph};
use trigeom::kclass::{check_hereditary, check_k};
use trigeom::predim::{closure, delta, delta_rel, find_violation, is_l_strong};
use trigeom::Config;

fn member(seed: u64, size: usize) -> TriGraph {
    random_graph(&mut rng(seed), 6, size, &Class::K, &Config::default()).unwrap()
}

fn subset(seed: u64, g: &TriGraph) -> IdSet {
    random_subset(&mut rng(seed ^ 0x5eed), &g.ids())
}

/// A permutation of the ids of `g` drawn from `seed`, shifted away from 0.
fn shuffle(seed: u64, g: &TriGraph) -> BTreeMap<u32, u32> {
    use rand::seq::SliceRandom;
    let ids: Vec<u32> = g.ids().into_iter().collect();
    let mut img: Vec<u32> = ids.iter().map(|x| x + 40).collect();
    img.shuffle(&mut rng(seed));
    ids.into_iter().zip(img).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn c1_c2_c4_c5_are_hereditary(seed in any::<u64>(), size in 1usize..9) {
        let g = member(seed, size);
        let h = g.induced(&subset(seed, &g)).unwrap();
        prop_assert!(check_hereditary(&h, &Config::default()).unwrap().is_none());
    }

    #[test]
    fn k_closed_under_intersections(seed in any::<u64>(), size in 2usize..9) {
        let cfg = Config::default();
        let g = member(seed, size);
        let a = subset(seed, &g);
        let b = subset(seed.wrapping_add(1), &g);
        let (ga, gb) = (g.induced(&a).unwrap(), g.induced(&b).unwrap());
        if check_k(&ga, &cfg).unwrap().holds && check_k(&gb, &cfg).unwrap().holds {
            let i: IdSet = a.intersection(&b).copied().collect();
            prop_assert!(check_k(&g.induced(&i).unwrap(), &cfg).unwrap().holds);
        }
    }

    #[test]
    fn delta_and_membership_are_iso_invariant(seed in any::<u64>(), size in 0usize..9) {
        let cfg = Config::default();
        let g = member(seed, size);
        let h = g.relabel(&shuffle(seed, &g)).unwrap();
        prop_assert_eq!(delta(&g, &g.ids()).unwrap(), delta(&h, &h.ids()).unwrap());
        prop_assert_eq!(check_k(&g, &cfg).unwrap().holds, check_k(&h, &cfg).unwrap().holds);
        prop_assert_eq!(graph_code(&g).unwrap(), graph_code(&h).unwrap());
    }

    #[test]
    fn duality_preserves_delta(seed in any::<u64>(), size in 0usize..9) {
        let g = member(seed, size);
        let d = g.dual();
        prop_assert_eq!(delta(&g, &g.ids()).unwrap(), delta(&d, &d.ids()).unwrap());
        prop_assert_eq!(d.dual(), g);
    }

    #[test]
    fn relative_delta_is_a_difference(seed in any::<u64>(), size in 1usize..9) {
        let g = member(seed, size);
        let a = subset(seed, &g);
        let b = subset(seed.wrapping_mul(3), &g);
        let ab: IdSet = a.union(&b).copied().collect();
        prop_assert_eq!(delta_rel(&g, &b, &a).unwrap(), delta(&g, &ab).unwrap() - delta(&g, &a).unwrap());
    }

    #[test]
    fn closure_is_a_closure_operator(seed in any::<u64>(), size in 1usize..9) {
        let cfg = Config::default();
        let g = member(seed, size);
        let a = subset(seed, &g);
        let cl = closure(&g, &a, &cfg).unwrap();
        prop_assert!(a.is_subset(&cl));
        prop_assert!(find_violation(&g, &cl, &g.ids(), None, &cfg).unwrap().is_none());
        prop_assert_eq!(closure(&g, &cl, &cfg).unwrap(), cl.clone());
        let b: IdSet = a.union(&subset(seed.wrapping_add(7), &g)).copied().collect();
        prop_assert!(cl.is_subset(&closure(&g, &b, &cfg).unwrap()));
        prop_assert!(is_l_strong(&g, &cl, &g.ids()).unwrap().holds);
    }

    #[test]
    fn certificates_are_negative_sets(seed in any::<u64>(), size in 1usize..9) {
        let cfg = Config::default();
        let g = member(seed, size);
        let a = subset(seed, &g);
        if let Some(v) = find_violation(&g, &a, &g.ids(), None, &cfg).unwrap() {
            prop_assert!(v.delta < 0);
            prop_assert!(v.set.is_disjoint(&a));
            prop_assert_eq!(delta_rel(&g, &v.set, &a).unwrap(), v.delta);
        }
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), size in 0usize..9) {
        let g = member(seed, size);
        prop_assert_eq!(parse_graph(&g.to_json(), false).unwrap(), g);
    }
}
