use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::enumerate::{enumerate, tree_count};
use crate::tangles::{orbit_count, traversal_cycles, TangledMatching};

/// Statistics over every ternary tree pair with `2n+1` leaves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRecord {
    pub n: usize,
    pub tree_count: usize,
    pub pair_count: usize,
    /// Number of pairs per link component count.
    pub components: BTreeMap<usize, usize>,
    /// Distinct literal compositions `π(T₊) ∘ π(T₋)`.
    pub distinct_compositions: usize,
    /// Distinct sets of alternating traversal cycles, each cycle taken up
    /// to rotation.
    pub distinct_traversals: usize,
    /// Number of pairs per multiset of traversal cycle lengths.
    pub traversal_length_profiles: BTreeMap<String, usize>,
}

#[derive(Default)]
struct Partial {
    components: BTreeMap<usize, usize>,
    compositions: BTreeSet<Vec<u8>>,
    traversals: BTreeSet<Vec<Vec<u8>>>,
    profiles: BTreeMap<Vec<usize>, usize>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        for (k, v) in other.components {
            *self.components.entry(k).or_default() += v;
        }
        for (k, v) in other.profiles {
            *self.profiles.entry(k).or_default() += v;
        }
        self.compositions.extend(other.compositions);
        self.traversals.extend(other.traversals);
        self
    }

    fn add(&mut self, plus: &TangledMatching, minus: &TangledMatching) {
        let components = orbit_count(plus, minus);
        *self.components.entry(components).or_default() += 1;
        let composition: Vec<u8> = (0..plus.point_count())
            .map(|x| plus.partner(minus.partner(x)) as u8)
            .collect();
        self.compositions.insert(composition);
        let mut cycles: Vec<Vec<u8>> = traversal_cycles(plus, minus)
            .into_iter()
            .map(|mut c| {
                let min_at = c
                    .iter()
                    .enumerate()
                    .min_by_key(|(_, &v)| v)
                    .map(|(i, _)| i)
                    .unwrap_or(0);
                c.rotate_left(min_at);
                c.into_iter().map(|v| v as u8).collect()
            })
            .collect();
        cycles.sort();
        let mut lengths: Vec<usize> = cycles.iter().map(Vec::len).collect();
        lengths.sort_unstable();
        *self.profiles.entry(lengths).or_default() += 1;
        self.traversals.insert(cycles);
    }
}

fn profile_key(lengths: &[usize]) -> String {
    lengths.iter().map(usize::to_string).collect::<Vec<_>>().join("+")
}

/// Exhaustive census for trees with `2n+1` leaves, using `workers` threads
/// (`0` or `1` runs on the calling thread). The result does not depend on
/// the worker count.
pub fn census(n: usize, workers: usize) -> Result<CensusRecord, rayon::ThreadPoolBuildError> {
    assert!(2 * n + 2 <= u8::MAX as usize, "census limited to small n");
    let matchings: Vec<TangledMatching> = enumerate::<3>(n).iter().map(TangledMatching::of_tree).collect();
    let row = |plus: &TangledMatching| {
        let mut p = Partial::default();
        for minus in &matchings {
            p.add(plus, minus);
        }
        p
    };
    let total = if workers <= 1 {
        matchings.iter().map(row).fold(Partial::default(), Partial::merge)
    } else {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build()?;
        pool.install(|| matchings.par_iter().map(row).reduce(Partial::default, Partial::merge))
    };
    let trees = matchings.len();
    debug_assert_eq!(num_bigint::BigUint::from(trees), tree_count(n));
    Ok(CensusRecord {
        n,
        tree_count: trees,
        pair_count: trees * trees,
        components: total.components,
        distinct_compositions: total.compositions.len(),
        distinct_traversals: total.traversals.len(),
        traversal_length_profiles: total.profiles.into_iter().map(|(k, v)| (profile_key(&k), v)).collect(),
    })
}

/// CSV with columns `n, tree_count, pair_count, components_1 …
/// components_K, distinct_compositions, distinct_traversals`, where `K` is
/// the largest component count over all rows.
pub fn census_csv(records: &[CensusRecord]) -> String {
    let max_k = records
        .iter()
        .flat_map(|r| r.components.keys().copied())
        .max()
        .unwrap_or(1)
        .max(records.iter().map(|r| r.n + 1).max().unwrap_or(1));
    let mut out = String::from("n,tree_count,pair_count");
    for k in 1..=max_k {
        out.push_str(&format!(",components_{k}"));
    }
    out.push_str(",distinct_compositions,distinct_traversals\n");
    for r in records {
        out.push_str(&format!("{},{},{}", r.n, r.tree_count, r.pair_count));
        for k in 1..=max_k {
            out.push_str(&format!(",{}", r.components.get(&k).copied().unwrap_or(0)));
        }
        out.push_str(&format!(",{},{}\n", r.distinct_compositions, r.distinct_traversals));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_single_unlink() {
        let r = census(1, 1).unwrap();
        assert_eq!(r.pair_count, 1);
        assert_eq!(r.components, BTreeMap::from([(2, 1)]));
        assert_eq!(r.distinct_compositions, 1);
        assert_eq!(r.distinct_traversals, 1);
    }

    #[test]
    fn n2_totals_and_diagonal() {
        let r = census(2, 1).unwrap();
        assert_eq!(r.pair_count, 9);
        assert_eq!(r.components.values().sum::<usize>(), 9);
        // the three diagonal pairs are 3-component unlinks, and nothing else is
        assert_eq!(r.components.get(&3), Some(&3));
        assert!(r.components.keys().all(|&k| (1..=3).contains(&k)));
        assert_eq!(r.traversal_length_profiles.values().sum::<usize>(), 9);
    }

    #[test]
    fn worker_count_does_not_matter() {
        assert_eq!(census(3, 1).unwrap(), census(3, 4).unwrap());
    }

    #[test]
    fn csv_layout() {
        let rows = vec![census(1, 1).unwrap(), census(2, 1).unwrap()];
        let csv = census_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "n,tree_count,pair_count,components_1,components_2,components_3,distinct_compositions,distinct_traversals"
        );
        assert!(lines.next().unwrap().starts_with("1,1,1,0,1,0,"));
    }
}
