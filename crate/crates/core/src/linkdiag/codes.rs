use std::fmt;

use serde::Serialize;

use super::diagram::{DiagramError, LinkDiagram, Port, PortRef, Side, Tracing};

/// Planar diagram code: one 4-tuple of segment labels per crossing, listed
/// counterclockwise from the incoming under-strand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PdCode {
    pub crossings: Vec<[usize; 4]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GaussEntry {
    /// 1-based crossing label.
    pub crossing: usize,
    pub over: bool,
    /// Crossing sign under the tracing's orientation.
    pub sign: i8,
}

/// Over/under visit sequence of each component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaussCode {
    pub components: Vec<Vec<GaussEntry>>,
}

/// Unit-ish direction of a port as seen from its crossing, y pointing up.
fn port_position(side: Side, port: Port) -> (i32, i32) {
    let (x, y) = match port {
        Port::Parent => (0, 1),
        Port::Left => (-1, -1),
        Port::Middle => (0, -1),
        Port::Right => (1, -1),
    };
    match side {
        Side::Upper => (x, y),
        Side::Lower => (x, -y),
    }
}

/// Per crossing: the entry ports of its over and under passes.
struct Passes {
    over_in: Vec<Option<Port>>,
    under_in: Vec<Option<Port>>,
    /// Segment label (1-based, in traversal order) of every segment.
    labels: Vec<usize>,
    /// Per component, the crossings arrived at in order with their entry port.
    visits: Vec<Vec<PortRef>>,
}

fn passes(d: &LinkDiagram, t: &Tracing) -> Passes {
    let mut over_in = vec![None; d.crossings.len()];
    let mut under_in = vec![None; d.crossings.len()];
    let mut labels = vec![0; d.segments.len()];
    let mut next_label = 1;
    let mut visits = Vec::with_capacity(t.components.len());
    for comp in &t.components {
        let mut seq = Vec::new();
        for step in comp {
            labels[step.segment] = next_label;
            next_label += 1;
            let end = d.segments[step.segment].ends[if step.forward { 1 } else { 0 }];
            if let Some(end) = end {
                let c = &d.crossings[end.crossing];
                if c.is_over(end.port) {
                    over_in[end.crossing] = Some(end.port);
                } else {
                    under_in[end.crossing] = Some(end.port);
                }
                seq.push(end);
            }
        }
        visits.push(seq);
    }
    Passes {
        over_in,
        under_in,
        labels,
        visits,
    }
}

fn crossing_sign(d: &LinkDiagram, i: usize, over_in: Port, under_in: Port) -> i8 {
    let c = &d.crossings[i];
    let dir = |entry: Port| {
        let a = port_position(c.side, entry);
        let b = port_position(c.side, entry.through());
        (b.0 - a.0, b.1 - a.1)
    };
    let (o, u) = (dir(over_in), dir(under_in));
    if o.0 * u.1 - o.1 * u.0 > 0 {
        1
    } else {
        -1
    }
}

impl PdCode {
    pub fn of(d: &LinkDiagram) -> Result<PdCode, DiagramError> {
        let t = d.trace()?;
        let p = passes(d, &t);
        let crossings = d
            .crossings
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let entry = p.under_in[i].expect("every crossing is passed under once");
                let order = c.ccw_ports();
                let start = order.iter().position(|&q| q == entry).expect("port in cyclic order");
                std::array::from_fn(|k| p.labels[c.segment_at(order[(start + k) % 4])])
            })
            .collect();
        Ok(PdCode { crossings })
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for [a, b, c, d] in &self.crossings {
            writeln!(f, "X({a},{b},{c},{d})")?;
        }
        Ok(())
    }
}

impl GaussCode {
    pub fn of(d: &LinkDiagram) -> Result<GaussCode, DiagramError> {
        let t = d.trace()?;
        let p = passes(d, &t);
        let signs: Vec<i8> = (0..d.crossings.len())
            .map(|i| {
                crossing_sign(
                    d,
                    i,
                    p.over_in[i].expect("over pass"),
                    p.under_in[i].expect("under pass"),
                )
            })
            .collect();
        let components = p
            .visits
            .iter()
            .map(|seq| {
                seq.iter()
                    .map(|end| GaussEntry {
                        crossing: end.crossing + 1,
                        over: d.crossings[end.crossing].is_over(end.port),
                        sign: signs[end.crossing],
                    })
                    .collect()
            })
            .collect();
        Ok(GaussCode { components })
    }

    /// Sum of crossing signs.
    pub fn writhe(&self) -> i64 {
        self.components
            .iter()
            .flatten()
            .filter(|e| e.over)
            .map(|e| e.sign as i64)
            .sum()
    }
}

impl fmt::Display for GaussCode {
    /// One line per component, e.g. `O1+ U2- O2- U1+`; a component with no
    /// crossings prints as `-`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for comp in &self.components {
            if comp.is_empty() {
                writeln!(f, "-")?;
                continue;
            }
            let tokens: Vec<String> = comp
                .iter()
                .map(|e| {
                    format!(
                        "{}{}{}",
                        if e.over { 'O' } else { 'U' },
                        e.crossing,
                        if e.sign > 0 { '+' } else { '-' }
                    )
                })
                .collect();
            writeln!(f, "{}", tokens.join(" "))?;
        }
        Ok(())
    }
}

pub fn pd_code(d: &LinkDiagram) -> Result<PdCode, DiagramError> {
    PdCode::of(d)
}

pub fn gauss_code(d: &LinkDiagram) -> Result<GaussCode, DiagramError> {
    GaussCode::of(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkdiag::Convention;
    use crate::trees::{TernaryPair, TreePair};

    fn label_multiset_ok(pd: &PdCode, segments: usize) -> bool {
        let mut count = vec![0; segments + 1];
        for x in &pd.crossings {
            for &l in x {
                count[l] += 1;
            }
        }
        count[1..].iter().all(|&c| c == 2)
    }

    #[test]
    fn identity_has_empty_codes() {
        let d = LinkDiagram::build(&TernaryPair::identity(), Convention::Standard);
        assert!(pd_code(&d).unwrap().crossings.is_empty());
        let g = gauss_code(&d).unwrap();
        assert_eq!(g.components, vec![vec![]]);
        assert_eq!(g.to_string(), "-\n");
    }

    #[test]
    fn caret_pair_codes() {
        let p = TreePair::parse("(...)", "(...)").unwrap();
        let d = LinkDiagram::build(&p, Convention::Standard);
        let pd = pd_code(&d).unwrap();
        assert_eq!(pd.crossings.len(), 2);
        assert!(label_multiset_ok(&pd, 4));
        let g = gauss_code(&d).unwrap();
        assert_eq!(g.components.len(), 2);
        assert!(g.components.iter().all(|c| c.len() % 2 == 0));
    }

    #[test]
    fn example_codes() {
        let p = TreePair::parse("(.(...).)", "(..(...))").unwrap();
        let d = LinkDiagram::build(&p, Convention::Standard);
        let pd = pd_code(&d).unwrap();
        assert_eq!(pd.crossings.len(), 4);
        assert!(label_multiset_ok(&pd, 8));
        assert_eq!(pd.to_text().lines().count(), 4);
        assert!(pd.to_text().lines().all(|l| l.starts_with("X(") && l.ends_with(')')));
        let g = gauss_code(&d).unwrap();
        assert_eq!(g.components.len(), 1);
        assert_eq!(g.components[0].len(), 8);
        // a knot passes each crossing once over and once under
        for i in 1..=4 {
            let passes: Vec<bool> = g.components[0]
                .iter()
                .filter(|e| e.crossing == i)
                .map(|e| e.over)
                .collect();
            assert_eq!(passes.len(), 2);
            assert_ne!(passes[0], passes[1]);
        }
    }

    #[test]
    fn positive_convention_only_reassigns_roles() {
        let p = TreePair::parse("(.(...).)", "(..(...))").unwrap();
        let s = pd_code(&LinkDiagram::build(&p, Convention::Standard)).unwrap();
        let q = pd_code(&LinkDiagram::build(&p, Convention::Positive)).unwrap();
        for (a, b) in s.crossings.iter().zip(&q.crossings) {
            // same cyclic order of labels, possibly rotated by one step
            let rotations: Vec<[usize; 4]> = (0..4).map(|r| std::array::from_fn(|k| a[(k + r) % 4])).collect();
            assert!(rotations.contains(b));
        }
    }
}
