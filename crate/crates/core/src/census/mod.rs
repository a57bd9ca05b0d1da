//! Enumeration, counting, and exhaustive statistics.

mod characterization;
mod enumerate;
mod stats;
mod walk;

pub use characterization::{
    perfect_matchings, verify_characterization, CharacterizationReport, Counterexample, SubsetCount,
};
pub use enumerate::{
    carets_for_leaves, count_table, enumerate, enumerate_trees, fuss_catalan, random_tree, random_tree_with_carets,
    tree_count, unrank, EnumerationError,
};
pub use stats::{census, census_csv, CensusRecord};
pub use walk::{default_generators, generators_from_records, random_walk, walk_endpoint, WalkError, WalkReport};
