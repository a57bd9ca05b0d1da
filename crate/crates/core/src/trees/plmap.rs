use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;
use thiserror::Error;

use super::pair::TreePair;
use super::tree::Tree;

/// A piecewise-linear homeomorphism of `[0,1]` with breakpoints in
/// `Z[1/K]` and slopes in `K^Z`, stored as its list of breakpoints.
///
/// Equality is equality of functions: breakpoints joining two segments of
/// the same slope are ignored.
#[derive(Clone, Debug)]
pub struct PlMap<const K: usize> {
    points: Vec<(BigRational, BigRational)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlMapError {
    #[error("map must start at (0,0) and end at (1,1)")]
    Endpoints,
    #[error("breakpoints not strictly increasing at index {0}")]
    NotIncreasing(usize),
    #[error("segment {0} has a slope that is not a power of the base")]
    Slope(usize),
    #[error("coordinate {0} has a denominator that is not a power of the base")]
    Denominator(String),
}

/// Exponent `e` with `value == base^e`, if one exists.
fn log_exact(value: &BigUint, base: u32) -> Option<u32> {
    if value.is_zero() {
        return None;
    }
    let base = BigUint::from(base);
    let mut v = value.clone();
    let mut e = 0;
    while v > BigUint::one() {
        if !(&v % &base).is_zero() {
            return None;
        }
        v /= &base;
        e += 1;
    }
    Some(e)
}

fn is_power_of(r: &BigRational, base: u32) -> bool {
    if !r.is_positive() {
        return false;
    }
    let (n, d) = (r.numer().magnitude(), r.denom().magnitude());
    (n.is_one() || d.is_one()) && log_exact(n, base).is_some() && log_exact(d, base).is_some()
}

impl<const K: usize> PlMap<K> {
    pub fn identity() -> Self {
        PlMap {
            points: vec![
                (BigRational::zero(), BigRational::zero()),
                (BigRational::one(), BigRational::one()),
            ],
        }
    }

    pub fn from_breakpoints(points: Vec<(BigRational, BigRational)>) -> Result<Self, PlMapError> {
        let zero = BigRational::zero();
        let one = BigRational::one();
        match (points.first(), points.last()) {
            (Some(first), Some(last))
                if points.len() >= 2 && first == &(zero.clone(), zero) && last == &(one.clone(), one) => {}
            _ => return Err(PlMapError::Endpoints),
        }
        for (i, w) in points.windows(2).enumerate() {
            let (dx, dy) = (&w[1].0 - &w[0].0, &w[1].1 - &w[0].1);
            if !dx.is_positive() || !dy.is_positive() {
                return Err(PlMapError::NotIncreasing(i + 1));
            }
            if !is_power_of(&(dy / dx), K as u32) {
                return Err(PlMapError::Slope(i));
            }
        }
        for (x, y) in &points {
            for c in [x, y] {
                if log_exact(c.denom().magnitude(), K as u32).is_none() {
                    return Err(PlMapError::Denominator(c.to_string()));
                }
            }
        }
        Ok(PlMap { points })
    }

    /// Raw breakpoint list, including any collinear points it was built with.
    pub fn breakpoints(&self) -> &[(BigRational, BigRational)] {
        &self.points
    }

    /// Slopes of the consecutive segments of the raw breakpoint list.
    pub fn slopes(&self) -> Vec<BigRational> {
        self.points
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
            .collect()
    }

    /// Drops breakpoints where the slope does not change.
    pub fn normalized(&self) -> Self {
        let mut out: Vec<(BigRational, BigRational)> = Vec::with_capacity(self.points.len());
        for p in &self.points {
            if out.len() >= 2 {
                let a = &out[out.len() - 2];
                let b = &out[out.len() - 1];
                let s1 = (&b.1 - &a.1) / (&b.0 - &a.0);
                let s2 = (&p.1 - &b.1) / (&p.0 - &b.0);
                if s1 == s2 {
                    out.pop();
                }
            }
            out.push(p.clone());
        }
        PlMap { points: out }
    }

    pub fn is_identity(&self) -> bool {
        self.normalized().points.len() == 2
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        Self::interpolate(&self.points, x, false)
    }

    /// Evaluates the map (or its inverse when `swap` is set) at `x`.
    fn interpolate(points: &[(BigRational, BigRational)], x: &BigRational, swap: bool) -> BigRational {
        let key = |p: &(BigRational, BigRational)| -> (BigRational, BigRational) {
            if swap {
                (p.1.clone(), p.0.clone())
            } else {
                p.clone()
            }
        };
        let idx = points.partition_point(|p| &key(p).0 <= x);
        if idx == 0 {
            return key(&points[0]).1;
        }
        if idx == points.len() {
            return key(&points[points.len() - 1]).1;
        }
        let (x0, y0) = key(&points[idx - 1]);
        let (x1, y1) = key(&points[idx]);
        &y0 + (x - &x0) * (y1 - &y0) / (x1 - x0)
    }

    /// The functional inverse.
    pub fn inverse(&self) -> Self {
        PlMap {
            points: self.points.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
        }
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &PlMap<K>) -> PlMap<K> {
        let mut xs: Vec<BigRational> = inner.points.iter().map(|p| p.0.clone()).collect();
        xs.extend(self.points.iter().map(|p| Self::interpolate(&inner.points, &p.0, true)));
        xs.sort();
        xs.dedup();
        let points = xs
            .into_iter()
            .map(|x| {
                let y = self.eval(&inner.eval(&x));
                (x, y)
            })
            .collect();
        PlMap { points }.normalized()
    }

    /// JSON: a list of breakpoints, each `[[xnum, xlog], [ynum, ylog]]` where
    /// a coordinate is `num / K^log`. Numerators beyond `u64` are strings.
    pub fn to_json(&self) -> Value {
        let coord = |r: &BigRational| -> Value {
            let exp = log_exact(r.denom().magnitude(), K as u32).expect("adic denominator");
            let num = r.numer().magnitude();
            let num = match u64::try_from(num) {
                Ok(v) => Value::from(v),
                Err(_) => Value::from(num.to_string()),
            };
            Value::Array(vec![num, Value::from(exp)])
        };
        Value::Array(
            self.points
                .iter()
                .map(|(x, y)| Value::Array(vec![coord(x), coord(y)]))
                .collect(),
        )
    }
}

impl<const K: usize> PartialEq for PlMap<K> {
    fn eq(&self, other: &Self) -> bool {
        self.normalized().points == other.normalized().points
    }
}

impl<const K: usize> Eq for PlMap<K> {}

/// Endpoints `0 = e_0 < e_1 < ... < e_m = 1` of the standard `K`-adic
/// subdivision cut out by the leaves of `tree`.
pub fn leaf_partition<const K: usize>(tree: &Tree<K>) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero()];
    let mut acc = BigRational::zero();
    for depth in tree.leaf_depths() {
        let width = BigRational::new(BigInt::one(), BigInt::from(K).pow(depth));
        acc += width;
        out.push(acc.clone());
    }
    out
}

impl<const K: usize> TreePair<K> {
    /// The homeomorphism sending the `k`-th interval of the minus partition
    /// affinely onto the `k`-th interval of the plus partition.
    pub fn pl_map(&self) -> PlMap<K> {
        let xs = leaf_partition(self.minus());
        let ys = leaf_partition(self.plus());
        PlMap {
            points: xs.into_iter().zip(ys).collect(),
        }
    }
}
