use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::permutation::Permutation;
use crate::trees::{TernaryTree, Tree};

/// A fixed-point-free involution on `{0, …, 2n+1}`, viewed as a chord
/// diagram on points along a line. Point `0` stands for the root strand.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TangledMatching {
    partner: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("ground set has {0} points, expected a positive even number")]
    OddSize(usize),
    #[error("point {0} is out of range")]
    OutOfRange(usize),
    #[error("point {0} appears in more than one pair")]
    Repeated(usize),
    #[error("point {0} is not covered")]
    Uncovered(usize),
    #[error("point {0} is a fixed point")]
    FixedPoint(usize),
    #[error("not an involution at point {0}")]
    NotInvolution(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a tangled matching: no chord {{i, i+2}} with i >= 1 in the reduced matching {remaining}")]
pub struct NotTangled {
    pub remaining: TangledMatching,
}

/// Leaf offset (0-based) of the foot of the middle spine below `t`.
fn middle_foot<const K: usize>(t: &Tree<K>) -> usize {
    match t {
        Tree::Leaf => 0,
        Tree::Node(c) => c[0].leaf_count() + middle_foot(&c[1]),
    }
}

fn assign_partners(t: &TernaryTree, first_leaf: usize, exit: usize, partner: &mut [usize]) {
    match t {
        Tree::Leaf => {
            partner[first_leaf] = exit;
            partner[exit] = first_leaf;
        }
        Tree::Node(c) => {
            let starts = [
                first_leaf,
                first_leaf + c[0].leaf_count(),
                first_leaf + c[0].leaf_count() + c[1].leaf_count(),
            ];
            // left child bounces into the right child's spine and vice versa;
            // the middle child keeps climbing
            let left_exit = starts[2] + middle_foot(&c[2]);
            let right_exit = starts[0] + middle_foot(&c[0]);
            assign_partners(&c[0], starts[0], left_exit, partner);
            assign_partners(&c[1], starts[1], exit, partner);
            assign_partners(&c[2], starts[2], right_exit, partner);
        }
    }
}

impl TangledMatching {
    /// Matching produced by the path rules on a ternary tree: a leaf climbs
    /// while it is a middle child; reaching the root pairs it with `0`,
    /// otherwise it bounces across its node and descends the middle spine of
    /// the opposite outer child.
    ///
    /// The one-leaf tree gives `{(0,1)}`.
    pub fn of_tree(tree: &TernaryTree) -> Self {
        let mut partner = vec![usize::MAX; tree.leaf_count() + 1];
        assign_partners(tree, 1, 0, &mut partner);
        TangledMatching { partner }
    }

    pub fn from_partners(partner: Vec<usize>) -> Result<Self, MatchingError> {
        let m = partner.len();
        if m == 0 || m % 2 == 1 {
            return Err(MatchingError::OddSize(m));
        }
        for (i, &j) in partner.iter().enumerate() {
            if j >= m {
                return Err(MatchingError::OutOfRange(j));
            }
            if j == i {
                return Err(MatchingError::FixedPoint(i));
            }
            if partner[j] != i {
                return Err(MatchingError::NotInvolution(i));
            }
        }
        Ok(TangledMatching { partner })
    }

    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self, MatchingError> {
        let m = 2 * pairs.len();
        if m == 0 {
            return Err(MatchingError::OddSize(0));
        }
        let mut partner = vec![usize::MAX; m];
        for &(a, b) in pairs {
            for x in [a, b] {
                if x >= m {
                    return Err(MatchingError::OutOfRange(x));
                }
                if partner[x] != usize::MAX {
                    return Err(MatchingError::Repeated(x));
                }
            }
            if a == b {
                return Err(MatchingError::FixedPoint(a));
            }
            partner[a] = b;
            partner[b] = a;
        }
        if let Some(i) = partner.iter().position(|&p| p == usize::MAX) {
            return Err(MatchingError::Uncovered(i));
        }
        Ok(TangledMatching { partner })
    }

    /// `n` where the ground set is `{0, …, 2n+1}`.
    pub fn caret_count(&self) -> usize {
        self.partner.len() / 2 - 1
    }

    pub fn point_count(&self) -> usize {
        self.partner.len()
    }

    pub fn partner(&self, x: usize) -> usize {
        self.partner[x]
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    pub fn as_permutation(&self) -> Permutation {
        Permutation::from_images(self.partner.clone()).expect("involution is a bijection")
    }

    /// Chords `(a, b)` with `a < b`, sorted by `a`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(a, &b)| a < b)
            .map(|(a, &b)| (a, b))
            .collect()
    }

    /// Crossing chord pairs `((a, c), (b, d))` with `a < b < c < d`.
    pub fn crossings(&self) -> Vec<((usize, usize), (usize, usize))> {
        let chords = self.pairs();
        let mut out = Vec::new();
        for (i, &(a, c)) in chords.iter().enumerate() {
            for &(b, d) in &chords[i + 1..] {
                if b < c && c < d {
                    out.push(((a, c), (b, d)));
                }
            }
        }
        out
    }

    pub fn crossing_count(&self) -> usize {
        let chords = self.pairs();
        let mut count = 0;
        for (i, &(_, c)) in chords.iter().enumerate() {
            count += chords[i + 1..].iter().filter(|&&(b, d)| b < c && c < d).count();
        }
        count
    }

    /// Inverse of [`TangledMatching::of_tree`]. Repeatedly removes the
    /// leftmost chord `{i, i+2}` with `i >= 1` (a caret on leaves
    /// `i, i+1, i+2`), relabelling the middle point to `i`, then regrows the
    /// tree caret by caret.
    pub fn to_tree(&self) -> Result<TernaryTree, NotTangled> {
        let mut current = self.partner.clone();
        let mut carets = Vec::with_capacity(self.caret_count());
        while current.len() > 2 {
            let m = current.len();
            let Some(i) = (1..m - 2).find(|&i| current[i] == i + 2) else {
                return Err(NotTangled {
                    remaining: TangledMatching { partner: current },
                });
            };
            let relabel = |k: usize| match k {
                k if k < i => k,
                k if k == i + 1 => i,
                k => k - 2,
            };
            let mut next = vec![0; m - 2];
            for k in (0..m).filter(|&k| k != i && k != i + 2) {
                next[relabel(k)] = relabel(current[k]);
            }
            carets.push(i);
            current = next;
        }
        let caret = Tree::caret();
        let tree = carets.iter().rev().fold(Tree::Leaf, |t, &i| {
            t.graft(i, &caret).expect("caret position within the smaller tree")
        });
        Ok(tree)
    }
}

impl fmt::Display for TangledMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in self.pairs() {
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TangledMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TangledMatching{self}")
    }
}

impl Serialize for TangledMatching {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[usize; 2]> = self.pairs().into_iter().map(|(a, b)| [a, b]).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TangledMatching {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs: Vec<[usize; 2]> = Vec::deserialize(deserializer)?;
        let pairs: Vec<(usize, usize)> = pairs.into_iter().map(|[a, b]| (a, b)).collect();
        TangledMatching::from_pairs(&pairs).map_err(serde::de::Error::custom)
    }
}

/// The tangled matching `π(T)` of a ternary tree.
pub fn tangled_matching(tree: &TernaryTree) -> TangledMatching {
    TangledMatching::of_tree(tree)
}

pub fn matching_to_tree(m: &TangledMatching) -> Result<TernaryTree, NotTangled> {
    m.to_tree()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tm(s: &str) -> TangledMatching {
        TangledMatching::of_tree(&s.parse().unwrap())
    }

    fn pairs(p: &[(usize, usize)]) -> TangledMatching {
        TangledMatching::from_pairs(p).unwrap()
    }

    #[test]
    fn path_rule_examples() {
        assert_eq!(tm("(...)"), pairs(&[(0, 2), (1, 3)]));
        assert_eq!(tm("(.(...).)"), pairs(&[(1, 5), (2, 4), (0, 3)]));
        assert_eq!(tm("(..(...))"), pairs(&[(0, 2), (1, 4), (3, 5)]));
        assert_eq!(tm("((...)..)"), pairs(&[(1, 3), (2, 5), (0, 4)]));
        assert_eq!(tm("."), pairs(&[(0, 1)]));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(pairs(&[(0, 2), (1, 3)]).to_tree().unwrap().to_string(), "(...)");
        assert_eq!(
            pairs(&[(1, 5), (2, 4), (0, 3)]).to_tree().unwrap().to_string(),
            "(.(...).)"
        );
        assert_eq!(pairs(&[(0, 1)]).to_tree().unwrap(), Tree::Leaf);
    }

    #[test]
    fn not_tangled_is_an_error() {
        let err = pairs(&[(0, 1), (2, 3)]).to_tree().unwrap_err();
        assert_eq!(err.remaining, pairs(&[(0, 1), (2, 3)]));
        // collapses once, then gets stuck
        let err = pairs(&[(0, 3), (1, 2), (4, 6), (5, 7)]).to_tree().unwrap_err();
        assert_eq!(err.remaining.point_count(), 6);
    }

    #[test]
    fn crossing_counts() {
        assert_eq!(pairs(&[(0, 2), (1, 3)]).crossing_count(), 1);
        assert_eq!(pairs(&[(1, 5), (2, 4), (0, 3)]).crossing_count(), 2);
        assert_eq!(
            pairs(&[(1, 5), (2, 4), (0, 3)]).crossings(),
            vec![((0, 3), (1, 5)), ((0, 3), (2, 4))]
        );
        assert_eq!(pairs(&[(0, 1), (2, 3)]).crossing_count(), 0);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            TangledMatching::from_pairs(&[(0, 1), (1, 2)]),
            Err(MatchingError::Repeated(1))
        );
        assert_eq!(
            TangledMatching::from_pairs(&[(0, 4), (1, 2)]),
            Err(MatchingError::OutOfRange(4))
        );
        assert_eq!(
            TangledMatching::from_partners(vec![1, 2, 0, 3]),
            Err(MatchingError::NotInvolution(0))
        );
        assert_eq!(
            TangledMatching::from_partners(vec![0, 1]),
            Err(MatchingError::FixedPoint(0))
        );
        assert_eq!(
            TangledMatching::from_partners(vec![1, 0, 2]),
            Err(MatchingError::OddSize(3))
        );
    }

    #[test]
    fn json_is_sorted_pair_list() {
        let m = tm("(.(...).)");
        assert_eq!(serde_json::to_string(&m).unwrap(), "[[0,3],[1,5],[2,4]]");
        let back: TangledMatching = serde_json::from_str("[[2,4],[5,1],[0,3]]").unwrap();
        assert_eq!(back, m);
    }
}
