use std::collections::BTreeSet;

use serde::Serialize;

use super::enumerate::enumerate;
use crate::tangles::{satisfied_properties, validate_matching, Property, TangledMatching, Violation};

/// All fixed-point-free involutions on `{0, …, points-1}`, in lexicographic
/// order of their sorted pair lists.
pub fn perfect_matchings(points: usize) -> Vec<TangledMatching> {
    fn extend(partner: &mut Vec<usize>, out: &mut Vec<TangledMatching>) {
        let Some(a) = partner.iter().position(|&p| p == usize::MAX) else {
            out.push(TangledMatching::from_partners(partner.clone()).expect("complete matching"));
            return;
        };
        for b in a + 1..partner.len() {
            if partner[b] == usize::MAX {
                partner[a] = b;
                partner[b] = a;
                extend(partner, out);
                partner[a] = usize::MAX;
                partner[b] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    if points > 0 && points.is_multiple_of(2) {
        extend(&mut vec![usize::MAX; points], &mut out);
    }
    out
}

/// How many involutions satisfy every property in a subset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetCount {
    pub properties: Vec<u8>,
    pub survivors: usize,
    /// Survivor set equals the tree image.
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub matching: TangledMatching,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterizationReport {
    pub n: usize,
    pub involutions: usize,
    pub trees: usize,
    pub survivors: usize,
    pub equals_tree_image: bool,
    /// Tree images rejected by the validator.
    pub rejected_tree_images: Vec<Counterexample>,
    /// Survivors that are not the image of any tree.
    pub spurious_survivors: Vec<TangledMatching>,
    /// Every subset of the five properties, ordered by bitmask.
    pub subsets: Vec<SubsetCount>,
    /// Inclusion-minimal subsets whose survivors are exactly the tree image.
    pub minimal_exact_subsets: Vec<Vec<u8>>,
}

fn mask_properties(mask: u8) -> Vec<u8> {
    Property::ALL
        .iter()
        .filter(|p| mask & p.bit() != 0)
        .map(|p| p.number())
        .collect()
}

/// Brute-force check that the validator's survivors among all
/// `(2n+1)!!` involutions on `{0, …, 2n+1}` are exactly the tangled
/// matchings of trees with `2n+1` leaves.
pub fn verify_characterization(n: usize) -> CharacterizationReport {
    let image: BTreeSet<TangledMatching> = enumerate::<3>(n).iter().map(TangledMatching::of_tree).collect();
    let all = perfect_matchings(2 * n + 2);
    let masks: Vec<u8> = all.iter().map(satisfied_properties).collect();

    let mut subsets = Vec::with_capacity(32);
    for subset in 0u8..32 {
        let mut survivors = 0;
        let mut exact = true;
        for (m, &mask) in all.iter().zip(&masks) {
            let passes = mask & subset == subset;
            survivors += passes as usize;
            if passes != image.contains(m) {
                exact = false;
            }
        }
        subsets.push((
            subset,
            SubsetCount {
                properties: mask_properties(subset),
                survivors,
                exact,
            },
        ));
    }
    let minimal_exact_subsets = subsets
        .iter()
        .filter(|(s, c)| c.exact && !subsets.iter().any(|(t, d)| d.exact && t != s && t & s == *t))
        .map(|(s, _)| mask_properties(*s))
        .collect();

    let survivors: BTreeSet<&TangledMatching> = all
        .iter()
        .zip(&masks)
        .filter(|(_, &mask)| mask == 0b11111)
        .map(|(m, _)| m)
        .collect();
    let rejected_tree_images = image
        .iter()
        .filter(|m| !survivors.contains(m))
        .map(|m| Counterexample {
            matching: m.clone(),
            violations: validate_matching(m),
        })
        .collect::<Vec<_>>();
    let spurious_survivors = survivors
        .iter()
        .filter(|m| !image.contains(**m))
        .map(|m| (*m).clone())
        .collect::<Vec<_>>();

    CharacterizationReport {
        n,
        involutions: all.len(),
        trees: image.len(),
        survivors: survivors.len(),
        equals_tree_image: rejected_tree_images.is_empty() && spurious_survivors.is_empty(),
        rejected_tree_images,
        spurious_survivors,
        subsets: subsets.into_iter().map(|(_, c)| c).collect(),
        minimal_exact_subsets,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn involution_counts() {
        let counts: Vec<usize> = (1..=5).map(|k| perfect_matchings(2 * k).len()).collect();
        assert_eq!(counts, vec![1, 3, 15, 105, 945]);
        assert!(perfect_matchings(3).is_empty());
    }

    #[test]
    fn n1_and_n2() {
        let r = verify_characterization(1);
        assert_eq!((r.involutions, r.trees, r.survivors), (3, 1, 1));
        assert!(r.equals_tree_image);
        let r = verify_characterization(2);
        assert_eq!((r.involutions, r.trees, r.survivors), (15, 3, 3));
        assert!(r.equals_tree_image);
        // the empty subset keeps everything
        assert_eq!(r.subsets[0].survivors, 15);
        assert_eq!(r.subsets[31].survivors, 3);
        assert!(!r.minimal_exact_subsets.is_empty());
    }
}
