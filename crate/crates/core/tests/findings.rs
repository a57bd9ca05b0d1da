//! Observed behaviour where the naive expectation does not hold.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thompson_links::census::{census, enumerate, random_tree_with_carets, verify_characterization};
use thompson_links::tangles::{component_count, matching_to_tree, tangled_matching, TangledMatching};
use thompson_links::{TernaryPair, Tree, TreePair};

/// Chords `{a1,a6},{a2,a5},{a3,a8},{a4,a7}`: two nested pairs crossing
/// each other.
fn has_crossed_nests(m: &TangledMatching) -> bool {
    let chords = m.pairs();
    let k = chords.len();
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                for d in c + 1..k {
                    let quad = [chords[a], chords[b], chords[c], chords[d]];
                    let mut pts: Vec<usize> = quad.iter().flat_map(|&(x, y)| [x, y]).collect();
                    pts.sort_unstable();
                    let rank = |x: usize| pts.iter().position(|&p| p == x).unwrap();
                    let mut shape: Vec<(usize, usize)> = quad.iter().map(|&(x, y)| (rank(x), rank(y))).collect();
                    shape.sort_unstable();
                    if shape == [(0, 5), (1, 4), (2, 7), (3, 6)] {
                        return true;
                    }
                }
            }
        }
    }
    false
}

#[test]
fn five_properties_characterize_up_to_four_carets() {
    for (n, trees) in [(1, 1), (2, 3), (3, 12), (4, 55)] {
        let r = verify_characterization(n);
        assert_eq!(r.survivors, trees);
        assert!(r.equals_tree_image);
        assert!(r.minimal_exact_subsets.iter().any(|s| s.len() <= 5));
    }
}

#[test]
fn five_properties_admit_twelve_extra_involutions_at_five_carets() {
    let r = verify_characterization(5);
    assert_eq!(r.involutions, 10395);
    assert_eq!(r.trees, 273);
    assert_eq!(r.survivors, 285);
    assert!(r.rejected_tree_images.is_empty());
    assert_eq!(r.spurious_survivors.len(), 12);
    assert!(r.minimal_exact_subsets.is_empty());
    for m in &r.spurious_survivors {
        assert!(matching_to_tree(m).is_err(), "{m}");
        assert!(has_crossed_nests(m), "{m}");
    }
    // no tree image contains the pattern
    for t in enumerate::<3>(5) {
        assert!(!has_crossed_nests(&tangled_matching(&t)), "{t}");
    }
}

#[test]
fn each_common_caret_adds_one_component() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..500 {
        let n = rng.gen_range(0..=6);
        let p = TreePair::new(
            random_tree_with_carets::<3, _>(n, &mut rng),
            random_tree_with_carets::<3, _>(n, &mut rng),
        )
        .unwrap();
        let k = rng.gen_range(1..=3);
        let s: Tree<3> = random_tree_with_carets(k, &mut rng);
        let leaf = rng.gen_range(1..=p.leaf_count());
        let q = p.inflate(leaf, &s).unwrap();
        assert_eq!(component_count(&q), component_count(&p) + k, "{p} at {leaf} by {s}");
        assert_eq!(q.reduce(), p.reduce());
    }
}

#[test]
fn component_count_depends_on_the_representative() {
    let e = TernaryPair::identity();
    let caret = TreePair::parse("(...)", "(...)").unwrap();
    assert_eq!(e, caret.reduce());
    assert_eq!(component_count(&e), 1);
    assert_eq!(component_count(&caret), 2);
}

#[test]
fn maximum_is_reached_only_on_the_diagonal() {
    for n in 1..=4 {
        let trees = enumerate::<3>(n);
        for a in &trees {
            for b in &trees {
                let p = TreePair::new(a.clone(), b.clone()).unwrap();
                let c = component_count(&p);
                assert!((1..=n + 1).contains(&c));
                assert_eq!(c == n + 1, a == b, "{p}");
                assert_eq!(component_count(&p.inverse()), c);
            }
        }
        let r = census(n, 1).unwrap();
        assert_eq!(r.components.get(&(n + 1)), Some(&trees.len()));
    }
}

#[test]
fn census_component_histograms() {
    let expected: BTreeMap<usize, BTreeMap<usize, usize>> =
        (1..=4).map(|n| (n, census(n, 2).unwrap().components)).collect();
    for (n, hist) in &expected {
        let total: usize = hist.values().sum();
        let trees = enumerate::<3>(*n).len();
        assert_eq!(total, trees * trees);
        let keys: BTreeSet<usize> = hist.keys().copied().collect();
        assert!(keys.iter().all(|&k| k >= 1 && k <= n + 1));
    }
}
