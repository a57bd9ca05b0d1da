use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::tangles::component_count;
use crate::trees::{AnyPair, BinaryPair, PairError, PairRecord, TernaryPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("no generators given")]
    NoGenerators,
    #[error("at least one sample is required")]
    NoSamples,
    #[error("generators mix arities 2 and 3")]
    MixedArity,
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

/// The generators `x0`, `x1` of `F` and their inverses, pushed into `F_3`.
pub fn default_generators() -> Vec<TernaryPair> {
    let x0 = BinaryPair::parse("((..).)", "(.(..))").expect("valid generator");
    let x1 = BinaryPair::parse("(.((..).))", "(.(.(..)))").expect("valid generator");
    vec![x0.iota(), x1.iota(), x0.inverse().iota(), x1.inverse().iota()]
}

/// Turns JSON generator records into ternary elements. Binary generators
/// are mapped through the embedding `F_2 -> F_3`; all records must share
/// one arity.
pub fn generators_from_records(records: &[PairRecord]) -> Result<Vec<TernaryPair>, WalkError> {
    let pairs = records.iter().map(AnyPair::try_from).collect::<Result<Vec<_>, _>>()?;
    if pairs.windows(2).any(|w| w[0].arity() != w[1].arity()) {
        return Err(WalkError::MixedArity);
    }
    Ok(pairs
        .into_iter()
        .map(|p| match p {
            AnyPair::Binary(b) => b.iota(),
            AnyPair::Ternary(t) => t,
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkReport {
    pub seed: u64,
    pub steps: usize,
    pub samples: usize,
    /// Number of samples per link component count.
    pub components: BTreeMap<usize, usize>,
    /// Number of samples per reduced leaf count of the endpoint.
    pub leaves: BTreeMap<usize, usize>,
}

/// Endpoint of one walk. Sample `index` draws from its own ChaCha stream,
/// so results do not depend on evaluation order.
pub fn walk_endpoint(generators: &[TernaryPair], steps: usize, seed: u64, index: u64) -> TernaryPair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    (0..steps).fold(TernaryPair::identity(), |g, _| {
        g.multiply(&generators[rng.gen_range(0..generators.len())])
    })
}

/// Runs `samples` independent walks of `steps` uniformly chosen generators
/// and tallies the component counts of the reduced endpoints.
pub fn random_walk(
    generators: &[TernaryPair],
    steps: usize,
    samples: usize,
    seed: u64,
    workers: usize,
) -> Result<WalkReport, WalkError> {
    if generators.is_empty() {
        return Err(WalkError::NoGenerators);
    }
    if samples == 0 {
        return Err(WalkError::NoSamples);
    }
    let sample = |i: usize| {
        let g = walk_endpoint(generators, steps, seed, i as u64);
        (component_count(&g), g.leaf_count())
    };
    let results: Vec<(usize, usize)> = if workers <= 1 {
        (0..samples).map(sample).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| WalkError::Pool(e.to_string()))?;
        pool.install(|| (0..samples).into_par_iter().map(sample).collect())
    };
    let mut components = BTreeMap::new();
    let mut leaves = BTreeMap::new();
    for (c, l) in results {
        *components.entry(c).or_default() += 1;
        *leaves.entry(l).or_default() += 1;
    }
    Ok(WalkReport {
        seed,
        steps,
        samples,
        components,
        leaves,
    })
}
