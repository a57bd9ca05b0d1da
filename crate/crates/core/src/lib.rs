//! Thompson-group tree pairs, their tangled permutations, and the link
//! diagrams built from them.
//!
//! * [`trees`]: tree pairs for `F_2` and `F_3`, reduction, products, the
//!   embedding `F_2 -> F_3`, and piecewise-linear realizations.
//! * [`tangles`]: the tangled matching of a ternary tree, its inverse, the
//!   chord-diagram characterization, and the Thompson permutation whose
//!   orbits count link components.
//! * [`linkdiag`]: the link diagram of a ternary tree pair, strand tracing,
//!   PD and Gauss codes, SVG and TikZ drawings.
//! * [`census`]: enumeration, counting, random sampling, and exhaustive
//!   statistics.

pub mod census;
pub mod linkdiag;
pub mod tangles;
pub mod trees;

pub use tangles::{component_count, ThompsonData};
pub use trees::{BinaryPair, BinaryTree, TernaryPair, TernaryTree, Tree, TreePair};
