use std::fmt;

/// A permutation of `{0, …, m-1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(size: usize) -> Self {
        Permutation((0..size).collect())
    }

    /// Returns `None` unless `images` is a bijection of `{0, …, len-1}`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return None;
            }
        }
        Some(Permutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Permutation) -> Permutation {
        assert_eq!(self.len(), first.len(), "permutations on different sets");
        Permutation(first.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x] = i;
        }
        Permutation(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Disjoint cycles including fixed points, each starting at its minimum,
    /// ordered by minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.len()];
        let mut count = 0;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x];
            }
        }
        count
    }

    /// Sorted cycle lengths.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation without fixed points; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            let body: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", body.join(","))?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_order() {
        // first: 0->1, then self: 1->2
        let first = Permutation::from_images(vec![1, 0, 2]).unwrap();
        let then = Permutation::from_images(vec![0, 2, 1]).unwrap();
        assert_eq!(then.after(&first).images(), &[2, 0, 1]);
        assert_eq!(then.after(&first).to_string(), "(0,2,1)");
    }

    #[test]
    fn cycles_and_inverse() {
        let p = Permutation::from_images(vec![4, 2, 3, 1, 5, 0]).unwrap();
        assert_eq!(p.cycles(), vec![vec![0, 4, 5], vec![1, 2, 3]]);
        assert_eq!(p.cycle_count(), 2);
        assert!(p.after(&p.inverse()).is_identity());
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(Permutation::identity(3).cycle_type(), vec![1, 1, 1]);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0]).is_none());
        assert!(Permutation::from_images(vec![2, 0]).is_none());
    }
}
