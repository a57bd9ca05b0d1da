use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

use crate::trees::{TernaryTree, Tree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("a tree of arity {arity} cannot have {leaves} leaves")]
    LeafCount { arity: usize, leaves: usize },
    #[error("rank {rank} out of range for {count} trees")]
    RankOutOfRange { rank: BigUint, count: BigUint },
}

/// Internal node count of a `K`-ary tree with `leaves` leaves.
pub fn carets_for_leaves<const K: usize>(leaves: usize) -> Result<usize, EnumerationError> {
    if leaves == 0 || !(leaves - 1).is_multiple_of(K - 1) {
        return Err(EnumerationError::LeafCount { arity: K, leaves });
    }
    Ok((leaves - 1) / (K - 1))
}

fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Number of `K`-ary trees with `n` internal nodes, by the Fuss–Catalan
/// closed form `binom(Kn, n) / ((K-1)n + 1)`.
pub fn fuss_catalan(arity: usize, n: usize) -> BigUint {
    let (k, n) = (arity as u64, n as u64);
    binomial(k * n, n) / ((k - 1) * n + 1)
}

/// Number of ternary trees with `n` internal nodes (and `2n+1` leaves).
pub fn tree_count(n: usize) -> BigUint {
    fuss_catalan(3, n)
}

/// Counts `c[0..=max_n]` from the recursive decomposition at the root. Used
/// for unranking; independent of the closed form.
pub fn count_table<const K: usize>(max_n: usize) -> Vec<BigUint> {
    let mut counts: Vec<BigUint> = vec![BigUint::one()];
    for n in 1..=max_n {
        // sequences of K subtree sizes summing to n-1
        let mut ways = vec![BigUint::zero(); n];
        ways[0] = BigUint::one();
        for _ in 0..K {
            let mut next = vec![BigUint::zero(); n];
            for (s, w) in ways.iter().enumerate().filter(|(_, w)| !w.is_zero()) {
                for (a, c) in counts.iter().enumerate().take(n - s) {
                    next[s + a] += w * c;
                }
            }
            ways = next;
        }
        counts.push(ways[n - 1].clone());
    }
    counts
}

/// All ways to write `total` as an ordered sum of `parts` non-negative
/// integers, in lexicographic order.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every `K`-ary tree with `n` internal nodes, in canonical order: by the
/// sizes of the root's subtrees (lexicographically), then by the leftmost
/// subtree, then the next, and so on.
pub fn enumerate<const K: usize>(n: usize) -> Vec<Tree<K>> {
    let mut by_size: Vec<Vec<Tree<K>>> = vec![vec![Tree::Leaf]];
    for size in 1..=n {
        let mut level = Vec::new();
        for sizes in compositions(size - 1, K) {
            let mut partial: Vec<Vec<Tree<K>>> = vec![Vec::new()];
            for &s in &sizes {
                let mut next = Vec::with_capacity(partial.len() * by_size[s].len());
                for prefix in &partial {
                    for t in &by_size[s] {
                        let mut v = prefix.clone();
                        v.push(t.clone());
                        next.push(v);
                    }
                }
                partial = next;
            }
            level.extend(partial.into_iter().map(|children| {
                let arr: [Tree<K>; K] = children.try_into().unwrap_or_else(|_| unreachable!());
                Tree::node(arr)
            }));
        }
        by_size.push(level);
    }
    by_size.swap_remove(n)
}

/// Every ternary tree with `leaves` leaves.
pub fn enumerate_trees(leaves: usize) -> Result<Vec<TernaryTree>, EnumerationError> {
    Ok(enumerate::<3>(carets_for_leaves::<3>(leaves)?))
}

/// Tree of the given rank in the order of [`enumerate`].
pub fn unrank<const K: usize>(n: usize, rank: &BigUint, counts: &[BigUint]) -> Result<Tree<K>, EnumerationError> {
    if rank >= &counts[n] {
        return Err(EnumerationError::RankOutOfRange {
            rank: rank.clone(),
            count: counts[n].clone(),
        });
    }
    Ok(unrank_inner(n, rank.clone(), counts))
}

fn unrank_inner<const K: usize>(n: usize, mut rank: BigUint, counts: &[BigUint]) -> Tree<K> {
    if n == 0 {
        return Tree::Leaf;
    }
    for sizes in compositions(n - 1, K) {
        let block: BigUint = sizes.iter().map(|&s| &counts[s]).product();
        if rank >= block {
            rank -= block;
            continue;
        }
        // mixed radix, leftmost child most significant
        let mut digits = vec![BigUint::zero(); K];
        for (i, &s) in sizes.iter().enumerate().rev() {
            digits[i] = &rank % &counts[s];
            rank /= &counts[s];
        }
        let children: Vec<Tree<K>> = sizes
            .iter()
            .zip(digits)
            .map(|(&s, d)| unrank_inner(s, d, counts))
            .collect();
        let arr: [Tree<K>; K] = children.try_into().unwrap_or_else(|_| unreachable!());
        return Tree::node(arr);
    }
    unreachable!("rank checked against count")
}

/// Uniformly random `K`-ary tree with `n` internal nodes.
pub fn random_tree_with_carets<const K: usize, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Tree<K> {
    let counts = count_table::<K>(n);
    let rank = rng.gen_biguint_below(&counts[n]);
    unrank_inner(n, rank, &counts)
}

/// Uniformly random ternary tree with `leaves` leaves.
pub fn random_tree<R: Rng + ?Sized>(leaves: usize, rng: &mut R) -> Result<TernaryTree, EnumerationError> {
    Ok(random_tree_with_carets::<3, R>(carets_for_leaves::<3>(leaves)?, rng))
}
