use serde::Serialize;

use super::matching::TangledMatching;
use super::permutation::Permutation;
use crate::trees::TernaryPair;

/// The Thompson permutation of a ternary tree pair, in both readings.
///
/// `composition` is the literal product `π(T₊) ∘ π(T₋)` (minus applied
/// first). Its cycles come in pairs, one pair per link component, so the
/// component count is read from `traversal_cycles`: the orbits of the group
/// generated by the two involutions, listed as the alternating walk
/// `x, π(T₋)x, π(T₊)π(T₋)x, …`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThompsonData {
    pub plus: TangledMatching,
    pub minus: TangledMatching,
    #[serde(serialize_with = "serialize_cycles")]
    pub composition: Permutation,
    pub traversal_cycles: Vec<Vec<usize>>,
    pub component_count: usize,
}

fn serialize_cycles<S: serde::Serializer>(p: &Permutation, s: S) -> Result<S::Ok, S::Error> {
    p.cycles().serialize(s)
}

/// Alternating walks, each started downward (`minus` first) from the
/// smallest unvisited point among `1, …, 2n+1`. Point `0` never starts a
/// walk because its partner under `minus` is positive and is met first.
pub fn traversal_cycles(plus: &TangledMatching, minus: &TangledMatching) -> Vec<Vec<usize>> {
    assert_eq!(plus.point_count(), minus.point_count(), "matchings on different sets");
    let m = plus.point_count();
    let mut seen = vec![false; m];
    let mut out = Vec::new();
    for start in 1..m {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        loop {
            seen[x] = true;
            cycle.push(x);
            let y = minus.partner(x);
            seen[y] = true;
            cycle.push(y);
            x = plus.partner(y);
            if x == start {
                break;
            }
        }
        out.push(cycle);
    }
    out
}

/// Number of orbits of `⟨plus, minus⟩` without materializing the cycles.
pub fn orbit_count(plus: &TangledMatching, minus: &TangledMatching) -> usize {
    let m = plus.point_count();
    let mut seen = vec![false; m];
    let mut count = 0;
    for start in 1..m {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut x = start;
        loop {
            seen[x] = true;
            let y = minus.partner(x);
            seen[y] = true;
            x = plus.partner(y);
            if x == start {
                break;
            }
        }
    }
    count
}

impl ThompsonData {
    pub fn of_pair(pair: &TernaryPair) -> Self {
        let plus = TangledMatching::of_tree(pair.plus());
        let minus = TangledMatching::of_tree(pair.minus());
        let composition = plus.as_permutation().after(&minus.as_permutation());
        let traversal_cycles = traversal_cycles(&plus, &minus);
        let component_count = traversal_cycles.len();
        ThompsonData {
            plus,
            minus,
            composition,
            traversal_cycles,
            component_count,
        }
    }
}

pub fn thompson_permutation(pair: &TernaryPair) -> ThompsonData {
    ThompsonData::of_pair(pair)
}

/// Number of components of the link of `pair`.
pub fn component_count(pair: &TernaryPair) -> usize {
    let plus = TangledMatching::of_tree(pair.plus());
    let minus = TangledMatching::of_tree(pair.minus());
    orbit_count(&plus, &minus)
}
