use std::fmt;

use thiserror::Error;

/// A rooted planar tree in which every internal node has exactly `K` ordered
/// children.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree<const K: usize> {
    #[default]
    Leaf,
    Node(Box<[Tree<K>; K]>),
}

pub type BinaryTree = Tree<2>;
pub type TernaryTree = Tree<3>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected end of input at byte {offset}")]
    UnexpectedEnd { offset: usize },
    #[error("unexpected character {found:?} at byte {offset}")]
    UnexpectedChar { offset: usize, found: char },
    #[error("node closed after {found} children at byte {offset}, expected {expected}")]
    WrongChildCount {
        offset: usize,
        found: usize,
        expected: usize,
    },
    #[error("trailing input at byte {offset}")]
    TrailingInput { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match *self {
            ParseError::UnexpectedEnd { offset }
            | ParseError::UnexpectedChar { offset, .. }
            | ParseError::WrongChildCount { offset, .. }
            | ParseError::TrailingInput { offset } => offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("leaf index {index} out of range 1..={leaves}")]
pub struct LeafOutOfRange {
    pub index: usize,
    pub leaves: usize,
}

impl<const K: usize> Tree<K> {
    /// The tree with a single internal node.
    pub fn caret() -> Self {
        Tree::Node(Box::new(std::array::from_fn(|_| Tree::Leaf)))
    }

    pub fn node(children: [Tree<K>; K]) -> Self {
        Tree::Node(Box::new(children))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf)
    }

    pub fn children(&self) -> Option<&[Tree<K>; K]> {
        match self {
            Tree::Leaf => None,
            Tree::Node(c) => Some(c),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Node(c) => c.iter().map(Tree::leaf_count).sum(),
        }
    }

    /// Number of internal nodes (carets).
    pub fn caret_count(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(c) => 1 + c.iter().map(Tree::caret_count).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(c) => 1 + c.iter().map(Tree::depth).max().unwrap_or(0),
        }
    }

    /// Parses the grammar `tree ::= "." | "(" tree{K} ")"`, ignoring whitespace.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut parser = Parser {
            bytes: text.as_bytes(),
            text,
            pos: 0,
        };
        let tree = parser.tree()?;
        parser.skip_ws();
        if parser.pos < parser.bytes.len() {
            return Err(ParseError::TrailingInput { offset: parser.pos });
        }
        Ok(tree)
    }

    /// Replaces the `index`-th leaf (1-based, left to right) by `subtree`.
    pub fn graft(&self, index: usize, subtree: &Tree<K>) -> Result<Tree<K>, LeafOutOfRange> {
        let leaves = self.leaf_count();
        if index == 0 || index > leaves {
            return Err(LeafOutOfRange { index, leaves });
        }
        let mut remaining = index - 1;
        Ok(self.graft_inner(&mut remaining, subtree))
    }

    fn graft_inner(&self, remaining: &mut usize, subtree: &Tree<K>) -> Tree<K> {
        match self {
            Tree::Leaf => {
                if *remaining == 0 {
                    *remaining = usize::MAX;
                    subtree.clone()
                } else {
                    if *remaining != usize::MAX {
                        *remaining -= 1;
                    }
                    Tree::Leaf
                }
            }
            Tree::Node(c) => Tree::Node(Box::new(std::array::from_fn(|i| c[i].graft_inner(remaining, subtree)))),
        }
    }

    /// Replaces leaf `k` by `subtrees[k]` for every leaf simultaneously.
    ///
    /// Panics if `subtrees.len()` differs from the leaf count.
    pub fn graft_leaves(&self, subtrees: &[Tree<K>]) -> Tree<K> {
        assert_eq!(subtrees.len(), self.leaf_count(), "one subtree per leaf");
        let mut iter = subtrees.iter();
        self.graft_leaves_inner(&mut iter)
    }

    fn graft_leaves_inner<'a>(&self, iter: &mut impl Iterator<Item = &'a Tree<K>>) -> Tree<K> {
        match self {
            Tree::Leaf => iter.next().cloned().unwrap_or(Tree::Leaf),
            Tree::Node(c) => Tree::Node(Box::new(std::array::from_fn(|i| c[i].graft_leaves_inner(iter)))),
        }
    }

    /// The smallest tree having both `self` and `other` as rooted prefixes.
    pub fn common_refinement(&self, other: &Tree<K>) -> Tree<K> {
        match (self, other) {
            (Tree::Leaf, t) | (t, Tree::Leaf) => t.clone(),
            (Tree::Node(a), Tree::Node(b)) => {
                Tree::Node(Box::new(std::array::from_fn(|i| a[i].common_refinement(&b[i]))))
            }
        }
    }

    /// If `self` is a rooted prefix of `larger`, returns for every leaf of
    /// `self` the subtree of `larger` hanging at that leaf.
    pub fn expansion_into(&self, larger: &Tree<K>) -> Option<Vec<Tree<K>>> {
        let mut out = Vec::with_capacity(self.leaf_count());
        self.expansion_inner(larger, &mut out).then_some(out)
    }

    fn expansion_inner(&self, larger: &Tree<K>, out: &mut Vec<Tree<K>>) -> bool {
        match (self, larger) {
            (Tree::Leaf, t) => {
                out.push(t.clone());
                true
            }
            (Tree::Node(_), Tree::Leaf) => false,
            (Tree::Node(a), Tree::Node(b)) => a.iter().zip(b.iter()).all(|(x, y)| x.expansion_inner(y, out)),
        }
    }

    /// 1-based leaf positions `i` such that leaves `i..i+K` are the children
    /// of a single node.
    pub fn exposed_carets(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut next_leaf = 1;
        self.exposed_inner(&mut next_leaf, &mut out);
        out
    }

    fn exposed_inner(&self, next_leaf: &mut usize, out: &mut Vec<usize>) {
        match self {
            Tree::Leaf => *next_leaf += 1,
            Tree::Node(c) => {
                if c.iter().all(Tree::is_leaf) {
                    out.push(*next_leaf);
                    *next_leaf += K;
                } else {
                    for child in c.iter() {
                        child.exposed_inner(next_leaf, out);
                    }
                }
            }
        }
    }

    /// Removes the exposed caret whose first leaf is `index`, or `None` if
    /// no such caret exists.
    pub fn collapse_caret(&self, index: usize) -> Option<Tree<K>> {
        let mut next_leaf = 1;
        let mut done = false;
        let out = self.collapse_inner(index, &mut next_leaf, &mut done);
        done.then_some(out)
    }

    fn collapse_inner(&self, index: usize, next_leaf: &mut usize, done: &mut bool) -> Tree<K> {
        match self {
            Tree::Leaf => {
                *next_leaf += 1;
                Tree::Leaf
            }
            Tree::Node(c) => {
                if !*done && *next_leaf == index && c.iter().all(Tree::is_leaf) {
                    *done = true;
                    *next_leaf += K;
                    return Tree::Leaf;
                }
                Tree::Node(Box::new(std::array::from_fn(|i| {
                    c[i].collapse_inner(index, next_leaf, done)
                })))
            }
        }
    }

    /// Depth of every leaf, left to right. Leaf `k` covers an interval of
    /// width `K^-depth` in the standard subdivision of `[0,1]`.
    pub fn leaf_depths(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.leaf_count());
        self.depths_inner(0, &mut out);
        out
    }

    fn depths_inner(&self, depth: u32, out: &mut Vec<u32>) {
        match self {
            Tree::Leaf => out.push(depth),
            Tree::Node(c) => c.iter().for_each(|t| t.depths_inner(depth + 1, out)),
        }
    }
}

impl BinaryTree {
    /// Inserts a middle leaf under every node: `Node(a, b)` becomes
    /// `Node(a', Leaf, b')`.
    pub fn to_ternary(&self) -> TernaryTree {
        match self {
            Tree::Leaf => Tree::Leaf,
            Tree::Node(c) => Tree::node([c[0].to_ternary(), Tree::Leaf, c[1].to_ternary()]),
        }
    }
}

impl<const K: usize> fmt::Display for Tree<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => f.write_str("."),
            Tree::Node(c) => {
                f.write_str("(")?;
                for child in c.iter() {
                    write!(f, "{child}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl<const K: usize> fmt::Debug for Tree<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree<{K}>({self})")
    }
}

impl<const K: usize> std::str::FromStr for Tree<K> {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Tree::parse(s)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.text[self.pos..].chars().next() {
            Some(found) => ParseError::UnexpectedChar {
                offset: self.pos,
                found,
            },
            None => ParseError::UnexpectedEnd { offset: self.pos },
        }
    }

    fn tree<const K: usize>(&mut self) -> Result<Tree<K>, ParseError> {
        self.skip_ws();
        match self.bytes.get(self.pos) {
            Some(b'.') => {
                self.pos += 1;
                Ok(Tree::Leaf)
            }
            Some(b'(') => {
                self.pos += 1;
                let mut children = Vec::with_capacity(K);
                loop {
                    self.skip_ws();
                    match self.bytes.get(self.pos) {
                        Some(b')') => {
                            if children.len() != K {
                                return Err(ParseError::WrongChildCount {
                                    offset: self.pos,
                                    found: children.len(),
                                    expected: K,
                                });
                            }
                            self.pos += 1;
                            let arr: [Tree<K>; K] =
                                children.try_into().unwrap_or_else(|_| unreachable!("length checked"));
                            return Ok(Tree::Node(Box::new(arr)));
                        }
                        Some(b'.') | Some(b'(') if children.len() == K => {
                            return Err(ParseError::WrongChildCount {
                                offset: self.pos,
                                found: K + 1,
                                expected: K,
                            });
                        }
                        Some(b'.') | Some(b'(') => children.push(self.tree()?),
                        _ => return Err(self.unexpected()),
                    }
                }
            }
            _ => Err(self.unexpected()),
        }
    }
}
