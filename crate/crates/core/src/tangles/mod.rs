//! Tangled matchings of ternary trees and Thompson permutations.
//!
//! Leaves of a tree with `2n+1` leaves are numbered `1..=2n+1` and the root
//! strand is `0`. Following the path rules from every leaf pairs the points
//! into a chord diagram, the tangled matching; two of them, one per tree of
//! a pair, generate the Thompson permutation whose orbits are the link
//! components.

mod matching;
mod permutation;
mod thompson;
mod validate;

pub use matching::{matching_to_tree, tangled_matching, MatchingError, NotTangled, TangledMatching};
pub use permutation::Permutation;
pub use thompson::{component_count, orbit_count, thompson_permutation, traversal_cycles, ThompsonData};
pub use validate::{satisfied_properties, validate_matching, validate_tangled, Property, Violation};
