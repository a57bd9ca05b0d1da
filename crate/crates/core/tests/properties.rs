use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use thompson_links::census::{count_table, enumerate, random_tree_with_carets, unrank};
use thompson_links::tangles::{
    component_count, matching_to_tree, tangled_matching, thompson_permutation, validate_matching,
};
use thompson_links::{BinaryPair, TernaryPair, Tree, TreePair};

fn tree<const K: usize>(n: usize, seed: u64) -> Tree<K> {
    random_tree_with_carets::<K, _>(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn pair<const K: usize>(n: usize, seed: u64) -> TreePair<K> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let plus = random_tree_with_carets::<K, _>(n, &mut rng);
    let minus = random_tree_with_carets::<K, _>(n, &mut rng);
    TreePair::new(plus, minus).unwrap()
}

fn ternary() -> impl Strategy<Value = TernaryPair> {
    (0usize..=7, any::<u64>()).prop_map(|(n, s)| pair::<3>(n, s))
}

fn binary() -> impl Strategy<Value = BinaryPair> {
    (0usize..=8, any::<u64>()).prop_map(|(n, s)| pair::<2>(n, s))
}

proptest! {
    #[test]
    fn tree_text_roundtrip(n in 0usize..12, seed: u64) {
        let t: Tree<3> = tree(n, seed);
        prop_assert_eq!(t.leaf_count(), 2 * n + 1);
        prop_assert_eq!(t.to_string().parse::<Tree<3>>().unwrap(), t.clone());
        let b: Tree<2> = tree(n, seed);
        prop_assert_eq!(b.leaf_count(), n + 1);
        prop_assert_eq!(b.to_string().parse::<Tree<2>>().unwrap(), b);
    }

    #[test]
    fn pair_json_roundtrip(p in ternary()) {
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<TernaryPair>(&json).unwrap(), p);
    }

    #[test]
    fn reduce_is_idempotent_and_keeps_the_map(p in ternary()) {
        let r = p.reduce();
        prop_assert!(r.is_reduced());
        prop_assert_eq!(r.reduce(), r.clone());
        prop_assert_eq!(r.pl_map(), p.pl_map());
    }

    #[test]
    fn reduction_is_confluent(p in ternary(), grafts in prop::collection::vec((any::<u64>(), 1usize..4), 1..4), order: u64) {
        let base = p.reduce();
        let mut inflated = base.clone();
        for (s, k) in grafts {
            let leaf = (s as usize) % inflated.leaf_count() + 1;
            inflated = inflated.inflate(leaf, &tree::<3>(k, s)).unwrap();
        }
        prop_assert_eq!(inflated.reduce(), base.clone());
        prop_assert_eq!(inflated.reduce_randomly(&mut ChaCha8Rng::seed_from_u64(order)), base);
    }

    #[test]
    fn inverse_laws(p in ternary()) {
        prop_assert_eq!(p.inverse().inverse(), p.clone());
        prop_assert!(p.multiply(&p.inverse()).is_identity());
        prop_assert_eq!(p.inverse().pl_map(), p.pl_map().inverse());
    }

    #[test]
    fn pl_map_is_a_homomorphism(g in ternary(), h in ternary()) {
        prop_assert_eq!(g.multiply(&h).pl_map(), g.pl_map().compose(&h.pl_map()));
    }

    #[test]
    fn binary_group_laws(g in binary(), h in binary(), k in binary()) {
        prop_assert_eq!(g.multiply(&h).multiply(&k), g.multiply(&h.multiply(&k)));
        prop_assert_eq!(g.multiply(&h).pl_map(), g.pl_map().compose(&h.pl_map()));
        prop_assert_eq!(g.iota().multiply(&h.iota()), g.multiply(&h).iota().reduce());
        prop_assert_eq!(g.iota().leaf_count(), 2 * g.leaf_count() - 1);
    }

    #[test]
    fn matching_roundtrip(n in 1usize..10, seed: u64) {
        let t: Tree<3> = tree(n, seed);
        let m = tangled_matching(&t);
        prop_assert_eq!(m.crossing_count(), n);
        prop_assert!(validate_matching(&m).is_empty());
        prop_assert_eq!(matching_to_tree(&m).unwrap(), t);
    }

    #[test]
    fn thompson_permutation_shape(p in ternary()) {
        let d = thompson_permutation(&p);
        let n = p.leaf_count() / 2;
        let mut points: Vec<usize> = d.traversal_cycles.concat();
        points.sort_unstable();
        prop_assert_eq!(points, (0..2 * n + 2).collect::<Vec<_>>());
        prop_assert!(d.traversal_cycles.iter().all(|c| c.len() % 2 == 0));
        prop_assert_eq!(d.composition.cycle_count(), 2 * d.component_count);
        prop_assert!((1..=n + 1).contains(&d.component_count));
        prop_assert_eq!(component_count(&p.inverse()), d.component_count);
    }

    #[test]
    fn unrank_follows_enumeration(n in 0usize..6, r: u64) {
        let all = enumerate::<3>(n);
        let counts = count_table::<3>(n);
        let rank = (r as usize) % all.len();
        prop_assert_eq!(unrank::<3>(n, &BigUint::from(rank), &counts).unwrap(), all[rank].clone());
    }
}
