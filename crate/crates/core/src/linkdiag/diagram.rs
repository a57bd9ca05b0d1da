use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::trees::{TernaryPair, TernaryTree, Tree};

/// Which tree a crossing comes from. The upper tree is `T₊`, drawn above
/// the axis with its root at the top; the lower tree `T₋` is mirrored below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Upper,
    Lower,
}

/// The four edges at a 4-valent tree vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Port {
    Parent = 0,
    Left = 1,
    Middle = 2,
    Right = 3,
}

impl Port {
    pub const ALL: [Port; 4] = [Port::Parent, Port::Left, Port::Middle, Port::Right];
    const CHILDREN: [Port; 3] = [Port::Left, Port::Middle, Port::Right];

    /// The port the strand leaves by after entering at `self`: the two outer
    /// children are joined by an arc, the middle child continues to the
    /// parent.
    pub fn through(self) -> Port {
        match self {
            Port::Left => Port::Right,
            Port::Right => Port::Left,
            Port::Middle => Port::Parent,
            Port::Parent => Port::Middle,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Over/under choice at the vertices of the lower tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// The outer arc passes over the middle strand at every vertex.
    #[default]
    Standard,
    /// As `Standard` above the axis; below it the middle strand passes over.
    Positive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PortRef {
    pub crossing: usize,
    pub port: Port,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub side: Side,
    /// Preorder index of the vertex within its tree.
    pub node: usize,
    /// First and last leaf below the vertex.
    pub span: (usize, usize),
    /// Leaf at the foot of the vertex's middle spine; the vertical strand
    /// through the crossing sits at this x coordinate.
    pub foot: usize,
    /// Segment attached at each port, indexed by [`Port::index`].
    pub segments: [usize; 4],
    /// The two ports of the strand passing over.
    pub over: [Port; 2],
}

impl Crossing {
    pub fn segment_at(&self, port: Port) -> usize {
        self.segments[port.index()]
    }

    pub fn is_over(&self, port: Port) -> bool {
        self.over.contains(&port)
    }

    pub fn under(&self) -> [Port; 2] {
        if self.is_over(Port::Left) {
            [Port::Middle, Port::Parent]
        } else {
            [Port::Left, Port::Right]
        }
    }

    /// Ports in counterclockwise order starting from the parent edge.
    pub fn ccw_ports(&self) -> [Port; 4] {
        match self.side {
            Side::Upper => [Port::Parent, Port::Left, Port::Middle, Port::Right],
            Side::Lower => [Port::Parent, Port::Right, Port::Middle, Port::Left],
        }
    }
}

/// A strand piece between two crossing ports. The forward direction runs
/// from the upper end to the lower end, i.e. downward through any axis
/// point on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Segment {
    /// `[upper end, lower end]`; both `None` only for the crossingless loop.
    pub ends: [Option<PortRef>; 2],
    /// Axis points crossed, in forward order.
    pub marks: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkDiagram {
    pub convention: Convention,
    pub crossings: Vec<Crossing>,
    pub segments: Vec<Segment>,
    /// Axis points `0..=2n+1`; point `0` is on the outer strand joining the roots.
    pub axis_points: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("port {port:?} of crossing {crossing} is not attached to a segment end")]
    DanglingPort { crossing: usize, port: Port },
    #[error("segment {0} has an end at a port that does not point back to it")]
    Inconsistent(usize),
    #[error("segment {0} has exactly one open end")]
    OpenEnd(usize),
    #[error("axis point {0} missing or repeated")]
    AxisMark(usize),
}

#[derive(Clone, Copy)]
enum Attach {
    Leaf(usize),
    Vertex(usize),
}

struct Builder {
    convention: Convention,
    crossings: Vec<Crossing>,
    segments: Vec<Segment>,
}

impl Builder {
    fn add_segment(&mut self, upper: Option<PortRef>, lower: Option<PortRef>, marks: Vec<usize>) -> usize {
        let id = self.segments.len();
        for end in [upper, lower].into_iter().flatten() {
            self.crossings[end.crossing].segments[end.port.index()] = id;
        }
        self.segments.push(Segment {
            ends: [upper, lower],
            marks,
        });
        id
    }

    /// Adds one crossing per internal vertex of `tree` and the segments
    /// between them; returns what hangs from the root edge and, per leaf,
    /// the port its leaf edge attaches to.
    fn tree(&mut self, tree: &TernaryTree, side: Side) -> (Attach, Vec<Option<PortRef>>) {
        let mut leaf_ports = vec![None; tree.leaf_count() + 1];
        let mut preorder = 0;
        let root = self.vertex(tree, side, 1, &mut preorder, &mut leaf_ports);
        (root, leaf_ports)
    }

    fn vertex(
        &mut self,
        tree: &TernaryTree,
        side: Side,
        first_leaf: usize,
        preorder: &mut usize,
        leaf_ports: &mut [Option<PortRef>],
    ) -> Attach {
        let Tree::Node(children) = tree else {
            return Attach::Leaf(first_leaf);
        };
        let id = self.crossings.len();
        let foot = first_leaf + children[0].leaf_count() + middle_foot_offset(&children[1]);
        let over = match (side, self.convention) {
            (Side::Lower, Convention::Positive) => [Port::Middle, Port::Parent],
            _ => [Port::Left, Port::Right],
        };
        self.crossings.push(Crossing {
            side,
            node: *preorder,
            span: (first_leaf, first_leaf + tree.leaf_count() - 1),
            foot,
            segments: [usize::MAX; 4],
            over,
        });
        *preorder += 1;
        let mut start = first_leaf;
        for (child, port) in children.iter().zip(Port::CHILDREN) {
            let here = PortRef { crossing: id, port };
            match self.vertex(child, side, start, preorder, leaf_ports) {
                Attach::Leaf(i) => leaf_ports[i] = Some(here),
                Attach::Vertex(c) => {
                    let there = PortRef {
                        crossing: c,
                        port: Port::Parent,
                    };
                    match side {
                        Side::Upper => self.add_segment(Some(here), Some(there), Vec::new()),
                        Side::Lower => self.add_segment(Some(there), Some(here), Vec::new()),
                    };
                }
            }
            start += child.leaf_count();
        }
        Attach::Vertex(id)
    }
}

fn middle_foot_offset(t: &TernaryTree) -> usize {
    match t {
        Tree::Leaf => 0,
        Tree::Node(c) => c[0].leaf_count() + middle_foot_offset(&c[1]),
    }
}

impl LinkDiagram {
    /// Joins the roots of the pair through axis point `0`, identifies leaf
    /// `i` of both trees at axis point `i`, and resolves every 4-valent
    /// vertex into a crossing.
    pub fn build(pair: &TernaryPair, convention: Convention) -> LinkDiagram {
        let mut b = Builder {
            convention,
            crossings: Vec::new(),
            segments: Vec::new(),
        };
        let (upper_root, upper_leaves) = b.tree(pair.plus(), Side::Upper);
        let (lower_root, lower_leaves) = b.tree(pair.minus(), Side::Lower);
        let leaves = pair.leaf_count();
        match (upper_root, lower_root) {
            (Attach::Vertex(u), Attach::Vertex(l)) => {
                let port = |crossing| PortRef {
                    crossing,
                    port: Port::Parent,
                };
                b.add_segment(Some(port(u)), Some(port(l)), vec![0]);
                for i in 1..=leaves {
                    b.add_segment(upper_leaves[i], lower_leaves[i], vec![i]);
                }
            }
            _ => {
                // both trees are a single leaf: one closed loop through 0 and 1
                b.add_segment(None, None, vec![0, 1]);
            }
        }
        LinkDiagram {
            convention,
            crossings: b.crossings,
            segments: b.segments,
            axis_points: leaves + 1,
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Every port carries exactly one segment end and every axis point
    /// appears on exactly one segment.
    pub fn check(&self) -> Result<(), DiagramError> {
        let mut used: BTreeMap<PortRef, usize> = BTreeMap::new();
        for (id, s) in self.segments.iter().enumerate() {
            match s.ends {
                [None, None] => {}
                [Some(_), None] | [None, Some(_)] => return Err(DiagramError::OpenEnd(id)),
                [Some(a), Some(b)] => {
                    for end in [a, b] {
                        let Some(c) = self.crossings.get(end.crossing) else {
                            return Err(DiagramError::Inconsistent(id));
                        };
                        if c.segment_at(end.port) != id || used.insert(end, id).is_some() {
                            return Err(DiagramError::Inconsistent(id));
                        }
                    }
                }
            }
        }
        for i in 0..self.crossings.len() {
            for port in Port::ALL {
                if !used.contains_key(&PortRef { crossing: i, port }) {
                    return Err(DiagramError::DanglingPort { crossing: i, port });
                }
            }
        }
        let mut seen = vec![0usize; self.axis_points];
        for s in &self.segments {
            for &m in &s.marks {
                match seen.get_mut(m) {
                    Some(k) => *k += 1,
                    None => return Err(DiagramError::AxisMark(m)),
                }
            }
        }
        if let Some(m) = seen.iter().position(|&k| k != 1) {
            return Err(DiagramError::AxisMark(m));
        }
        Ok(())
    }

    /// Follows strands through crossings port by port, without reference to
    /// the trees the diagram came from. Components start at their smallest
    /// axis point, heading downward.
    pub fn trace(&self) -> Result<Tracing, DiagramError> {
        self.check()?;
        let mut visited = vec![false; self.segments.len()];
        let mut components = Vec::new();
        let mut starts: Vec<(usize, usize)> = self
            .segments
            .iter()
            .enumerate()
            .flat_map(|(id, s)| s.marks.iter().map(move |&m| (m, id)))
            .collect();
        starts.sort_unstable();
        // segments without marks come last; a well-formed diagram never needs them
        starts.extend((0..self.segments.len()).map(|id| (usize::MAX, id)));
        for (_, start) in starts {
            if visited[start] {
                continue;
            }
            let mut steps = Vec::new();
            let (mut seg, mut forward) = (start, true);
            loop {
                visited[seg] = true;
                steps.push(Step { segment: seg, forward });
                let end = self.segments[seg].ends[if forward { 1 } else { 0 }];
                let Some(end) = end else {
                    break;
                };
                let exit = PortRef {
                    crossing: end.crossing,
                    port: end.port.through(),
                };
                let next = self.crossings[exit.crossing].segment_at(exit.port);
                forward = self.segments[next].ends[0] == Some(exit);
                seg = next;
                if seg == start && forward {
                    break;
                }
            }
            components.push(steps);
        }
        Ok(Tracing { components })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Step {
    pub segment: usize,
    pub forward: bool,
}

/// Closed components of a diagram as oriented segment sequences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tracing {
    pub components: Vec<Vec<Step>>,
}

impl Tracing {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }
}

pub fn build_diagram(pair: &TernaryPair, convention: Convention) -> LinkDiagram {
    LinkDiagram::build(pair, convention)
}

pub fn trace_components(d: &LinkDiagram) -> Result<Tracing, DiagramError> {
    d.trace()
}
