//! Tree-pair model of Thompson's groups `F = F_2` and `F_3`.
//!
//! Elements are pairs of rooted planar trees with equal leaf counts, modulo
//! cancelling opposing carets. Multiplication goes through the common
//! refinement of the inner trees; [`PlMap`] realizes an element as a
//! piecewise-linear homeomorphism of `[0,1]` in exact arithmetic.

mod pair;
mod plmap;
mod tree;

pub use pair::{AnyPair, BinaryPair, PairError, PairRecord, TernaryPair, TreePair};
pub use plmap::{leaf_partition, PlMap, PlMapError};
pub use tree::{BinaryTree, LeafOutOfRange, ParseError, TernaryTree, Tree};
