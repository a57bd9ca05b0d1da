use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::tree::{ParseError, Tree};

/// An element of `F_K` given by a tree diagram. `plus` is drawn on top,
/// `minus` upside down beneath it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreePair<const K: usize> {
    plus: Tree<K>,
    minus: Tree<K>,
}

pub type BinaryPair = TreePair<2>;
pub type TernaryPair = TreePair<3>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("leaf counts differ: plus has {plus}, minus has {minus}")]
    LeafCountMismatch { plus: usize, minus: usize },
    #[error("{which} tree: {error}")]
    Parse { which: &'static str, error: ParseError },
    #[error("unsupported arity {0}, expected 2 or 3")]
    Arity(u32),
    #[error("expected arity {expected}, found {found}")]
    ArityMismatch { expected: u32, found: u32 },
}

impl<const K: usize> TreePair<K> {
    pub fn new(plus: Tree<K>, minus: Tree<K>) -> Result<Self, PairError> {
        let (p, m) = (plus.leaf_count(), minus.leaf_count());
        if p != m {
            return Err(PairError::LeafCountMismatch { plus: p, minus: m });
        }
        Ok(TreePair { plus, minus })
    }

    pub fn parse(plus: &str, minus: &str) -> Result<Self, PairError> {
        let plus = Tree::parse(plus).map_err(|error| PairError::Parse { which: "plus", error })?;
        let minus = Tree::parse(minus).map_err(|error| PairError::Parse { which: "minus", error })?;
        TreePair::new(plus, minus)
    }

    pub fn identity() -> Self {
        TreePair {
            plus: Tree::Leaf,
            minus: Tree::Leaf,
        }
    }

    pub fn plus(&self) -> &Tree<K> {
        &self.plus
    }

    pub fn minus(&self) -> &Tree<K> {
        &self.minus
    }

    pub fn into_trees(self) -> (Tree<K>, Tree<K>) {
        (self.plus, self.minus)
    }

    pub fn leaf_count(&self) -> usize {
        self.plus.leaf_count()
    }

    /// Leaf positions carrying a caret in both trees.
    pub fn common_carets(&self) -> Vec<usize> {
        let upper = self.plus.exposed_carets();
        let lower = self.minus.exposed_carets();
        upper.into_iter().filter(|i| lower.contains(i)).collect()
    }

    fn cancel_caret(&self, index: usize) -> Option<Self> {
        Some(TreePair {
            plus: self.plus.collapse_caret(index)?,
            minus: self.minus.collapse_caret(index)?,
        })
    }

    /// Cancels opposing carets, always taking the leftmost, until none remain.
    pub fn reduce(&self) -> Self {
        let mut current = self.clone();
        while let Some(&i) = current.common_carets().first() {
            current = current.cancel_caret(i).expect("common caret present in both trees");
        }
        current
    }

    /// Reduction that cancels a uniformly random common caret at each step.
    pub fn reduce_randomly<R: Rng + ?Sized>(&self, rng: &mut R) -> Self {
        let mut current = self.clone();
        loop {
            let carets = current.common_carets();
            if carets.is_empty() {
                return current;
            }
            let i = carets[rng.gen_range(0..carets.len())];
            current = current.cancel_caret(i).expect("common caret present in both trees");
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.common_carets().is_empty()
    }

    /// Grafts `subtree` at leaf `index` of both trees. The result represents
    /// the same group element.
    pub fn inflate(&self, index: usize, subtree: &Tree<K>) -> Option<Self> {
        Some(TreePair {
            plus: self.plus.graft(index, subtree).ok()?,
            minus: self.minus.graft(index, subtree).ok()?,
        })
    }

    pub fn inverse(&self) -> Self {
        TreePair {
            plus: self.minus.clone(),
            minus: self.plus.clone(),
        }
    }

    /// Product `self · other`, in reduced form.
    pub fn multiply(&self, other: &Self) -> Self {
        let middle = self.minus.common_refinement(&other.plus);
        let left = self
            .minus
            .expansion_into(&middle)
            .expect("refinement extends its factors");
        let right = other
            .plus
            .expansion_into(&middle)
            .expect("refinement extends its factors");
        TreePair {
            plus: self.plus.graft_leaves(&left),
            minus: other.minus.graft_leaves(&right),
        }
        .reduce()
    }

    pub fn is_identity(&self) -> bool {
        self.reduce() == Self::identity()
    }
}

impl BinaryPair {
    /// The embedding `F_2 -> F_3`.
    pub fn iota(&self) -> TernaryPair {
        TreePair {
            plus: self.plus.to_ternary(),
            minus: self.minus.to_ternary(),
        }
    }
}

impl<const K: usize> fmt::Display for TreePair<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.plus, self.minus)
    }
}

impl<const K: usize> fmt::Debug for TreePair<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TreePair<{K}>({} / {})", self.plus, self.minus)
    }
}

/// JSON exchange form `{"arity": 2|3, "plus": "...", "minus": "..."}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub arity: u32,
    pub plus: String,
    pub minus: String,
}

/// A tree pair of either supported arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyPair {
    Binary(BinaryPair),
    Ternary(TernaryPair),
}

impl AnyPair {
    pub fn arity(&self) -> u32 {
        match self {
            AnyPair::Binary(_) => 2,
            AnyPair::Ternary(_) => 3,
        }
    }
}

impl TryFrom<&PairRecord> for AnyPair {
    type Error = PairError;

    fn try_from(rec: &PairRecord) -> Result<Self, PairError> {
        match rec.arity {
            2 => Ok(AnyPair::Binary(TreePair::parse(&rec.plus, &rec.minus)?)),
            3 => Ok(AnyPair::Ternary(TreePair::parse(&rec.plus, &rec.minus)?)),
            a => Err(PairError::Arity(a)),
        }
    }
}

impl TryFrom<&PairRecord> for TernaryPair {
    type Error = PairError;

    fn try_from(rec: &PairRecord) -> Result<Self, PairError> {
        match AnyPair::try_from(rec)? {
            AnyPair::Ternary(p) => Ok(p),
            other => Err(PairError::ArityMismatch {
                expected: 3,
                found: other.arity(),
            }),
        }
    }
}

impl TryFrom<&PairRecord> for BinaryPair {
    type Error = PairError;

    fn try_from(rec: &PairRecord) -> Result<Self, PairError> {
        match AnyPair::try_from(rec)? {
            AnyPair::Binary(p) => Ok(p),
            other => Err(PairError::ArityMismatch {
                expected: 2,
                found: other.arity(),
            }),
        }
    }
}

impl<const K: usize> From<&TreePair<K>> for PairRecord {
    fn from(p: &TreePair<K>) -> Self {
        PairRecord {
            arity: K as u32,
            plus: p.plus.to_string(),
            minus: p.minus.to_string(),
        }
    }
}

impl From<&AnyPair> for PairRecord {
    fn from(p: &AnyPair) -> Self {
        match p {
            AnyPair::Binary(p) => p.into(),
            AnyPair::Ternary(p) => p.into(),
        }
    }
}

impl<const K: usize> Serialize for TreePair<K> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PairRecord::from(self).serialize(serializer)
    }
}

impl<'de, const K: usize> Deserialize<'de> for TreePair<K> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rec = PairRecord::deserialize(deserializer)?;
        if rec.arity as usize != K {
            return Err(serde::de::Error::custom(PairError::ArityMismatch {
                expected: K as u32,
                found: rec.arity,
            }));
        }
        TreePair::parse(&rec.plus, &rec.minus).map_err(serde::de::Error::custom)
    }
}
