use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;

use super::diagram::{Crossing, LinkDiagram, Port, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RenderFormat {
    Svg,
    Tikz,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RenderOptions {
    /// SVG: pixels per unit. TikZ: centimetres per unit.
    pub scale: f64,
    /// Half-width of the break in an under-strand, in diagram units.
    pub gap: f64,
    /// Print axis point numbers under the axis.
    pub labels: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            scale: 40.0,
            gap: 0.12,
            labels: true,
        }
    }
}

const ARC_RISE: f64 = 0.5;
const OUTER_RISE: f64 = 0.6;

/// Drawing primitives in diagram coordinates, y pointing up.
#[derive(Debug, Clone, PartialEq)]
enum Piece {
    Line {
        from: (f64, f64),
        to: (f64, f64),
    },
    /// Elliptic arc `(cx + rx cos t, cy + ry sin t)` for `t` from `start` to
    /// `end` (radians).
    Arc {
        cx: f64,
        cy: f64,
        rx: f64,
        ry: f64,
        start: f64,
        end: f64,
    },
}

impl Piece {
    fn point(cx: f64, cy: f64, rx: f64, ry: f64, t: f64) -> (f64, f64) {
        (cx + rx * t.cos(), cy + ry * t.sin())
    }
}

struct Layout {
    pieces: Vec<Piece>,
    gaps: Vec<(f64, f64)>,
    x_max: f64,
    y_max: f64,
}

fn height(c: &Crossing) -> f64 {
    (c.span.1 - c.span.0) as f64 / 2.0
}

fn layout(d: &LinkDiagram, opts: &RenderOptions) -> Layout {
    let mut pieces = Vec::new();
    let mut gaps = Vec::new();
    let leaves = d.axis_points - 1;
    let top = (leaves.saturating_sub(1) / 2) as f64 + 1.0;

    for side in [Side::Upper, Side::Lower] {
        let sy = if side == Side::Upper { 1.0 } else { -1.0 };
        let crossings: Vec<usize> = (0..d.crossings.len())
            .filter(|&i| d.crossings[i].side == side)
            .collect();
        // height each parent edge climbs to; the root's reaches the top
        let mut parent_height = vec![top; d.crossings.len()];
        let mut leaf_top = vec![top; leaves + 1];
        let mut children_feet = vec![[0usize; 3]; d.crossings.len()];
        for &i in &crossings {
            let c = &d.crossings[i];
            for (k, port) in [Port::Left, Port::Middle, Port::Right].into_iter().enumerate() {
                let seg = &d.segments[c.segment_at(port)];
                if let Some(&mark) = seg.marks.first() {
                    leaf_top[mark] = height(c);
                    children_feet[i][k] = mark;
                } else {
                    let child = seg
                        .ends
                        .iter()
                        .flatten()
                        .find(|e| e.port == Port::Parent)
                        .expect("inner edge ends at a parent port")
                        .crossing;
                    parent_height[child] = height(c);
                    children_feet[i][k] = d.crossings[child].foot;
                }
            }
        }
        for &i in &crossings {
            let c = &d.crossings[i];
            let h = height(c);
            let (xl, xr) = (children_feet[i][0] as f64, children_feet[i][2] as f64);
            let (cx, rx) = ((xl + xr) / 2.0, (xr - xl) / 2.0);
            let x = c.foot as f64;
            let t_cross = ((x - cx) / rx).clamp(-1.0, 1.0).acos();
            let y_cross = h + ARC_RISE * t_cross.sin();
            let (start, end) = if side == Side::Upper { (PI, 0.0) } else { (PI, 2.0 * PI) };
            let t_cross = if side == Side::Upper {
                t_cross
            } else {
                2.0 * PI - t_cross
            };
            let arc = |a: f64, b: f64| Piece::Arc {
                cx,
                cy: sy * h,
                rx,
                ry: ARC_RISE,
                start: a,
                end: b,
            };
            let vertical = |a: f64, b: f64| Piece::Line {
                from: (x, sy * a),
                to: (x, sy * b),
            };
            gaps.push((x, sy * y_cross));
            if c.is_over(Port::Left) {
                pieces.push(arc(start, end));
                pieces.push(vertical(h, y_cross - opts.gap));
                pieces.push(vertical(y_cross + opts.gap, parent_height[i]));
            } else {
                let dt = (opts.gap / rx).min(0.45);
                let dir = if end > start { 1.0 } else { -1.0 };
                pieces.push(arc(start, t_cross - dir * dt));
                pieces.push(arc(t_cross + dir * dt, end));
                pieces.push(vertical(h, parent_height[i]));
            }
        }
        for (i, &y) in leaf_top.iter().enumerate().skip(1) {
            let x = i as f64;
            pieces.push(Piece::Line {
                from: (x, 0.0),
                to: (x, sy * y),
            });
        }
        // outer strand from the root stem to axis point 0
        let root_foot = crossings
            .iter()
            .map(|&i| &d.crossings[i])
            .find(|c| c.span == (1, leaves))
            .map_or(1.0, |c| c.foot as f64);
        let (start, end) = if side == Side::Upper { (0.0, PI) } else { (PI, 2.0 * PI) };
        pieces.push(Piece::Arc {
            cx: root_foot / 2.0,
            cy: sy * top,
            rx: root_foot / 2.0,
            ry: OUTER_RISE,
            start,
            end,
        });
    }
    pieces.push(Piece::Line {
        from: (0.0, top),
        to: (0.0, -top),
    });
    Layout {
        pieces,
        gaps,
        x_max: leaves.max(1) as f64,
        y_max: top + OUTER_RISE,
    }
}

fn fmt(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

fn svg(d: &LinkDiagram, opts: &RenderOptions) -> String {
    let l = layout(d, opts);
    let margin = 1.0;
    let s = opts.scale;
    let width = (l.x_max + 2.0 * margin) * s;
    let height = (2.0 * l.y_max + 2.0 * margin) * s;
    let px = |x: f64| fmt((x + margin) * s);
    let py = |y: f64| fmt((l.y_max + margin - y) * s);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        fmt(width),
        fmt(height),
        fmt(width),
        fmt(height)
    );
    let _ = writeln!(
        out,
        "<g fill=\"none\" stroke=\"black\" stroke-width=\"{}\" stroke-linecap=\"round\">",
        fmt(s / 20.0)
    );
    for p in &l.pieces {
        match *p {
            Piece::Line { from, to } => {
                let _ = writeln!(
                    out,
                    "<path d=\"M {} {} L {} {}\"/>",
                    px(from.0),
                    py(from.1),
                    px(to.0),
                    py(to.1)
                );
            }
            Piece::Arc {
                cx,
                cy,
                rx,
                ry,
                start,
                end,
            } => {
                let a = Piece::point(cx, cy, rx, ry, start);
                let b = Piece::point(cx, cy, rx, ry, end);
                let large = ((end - start).abs() > PI + 1e-9) as u8;
                // increasing t is counterclockwise in y-up coordinates,
                // which is clockwise on screen
                let sweep = (end < start) as u8;
                let _ = writeln!(
                    out,
                    "<path d=\"M {} {} A {} {} 0 {} {} {} {}\"/>",
                    px(a.0),
                    py(a.1),
                    fmt(rx * s),
                    fmt(ry * s),
                    large,
                    sweep,
                    px(b.0),
                    py(b.1)
                );
            }
        }
    }
    out.push_str("</g>\n<g class=\"gaps\" fill=\"none\" stroke=\"none\">\n");
    for (x, y) in &l.gaps {
        let _ = writeln!(
            out,
            "<circle class=\"gap\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
            px(*x),
            py(*y),
            fmt(opts.gap * s)
        );
    }
    out.push_str("</g>\n");
    if opts.labels {
        let _ = writeln!(
            out,
            "<g font-family=\"sans-serif\" font-size=\"{}\" text-anchor=\"middle\">",
            fmt(s / 3.0)
        );
        for i in 0..d.axis_points {
            let _ = writeln!(
                out,
                "<text x=\"{}\" y=\"{}\">{}</text>",
                px(i as f64 + 0.2),
                py(-0.3),
                i
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

fn tikz(d: &LinkDiagram, opts: &RenderOptions) -> String {
    let l = layout(d, opts);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "\\begin{{tikzpicture}}[x={}cm, y={}cm]",
        fmt(opts.scale / 40.0 * 0.75),
        fmt(opts.scale / 40.0 * 0.75)
    );
    for p in &l.pieces {
        match *p {
            Piece::Line { from, to } => {
                let _ = writeln!(
                    out,
                    "\\draw[thick] ({},{}) -- ({},{});",
                    fmt(from.0),
                    fmt(from.1),
                    fmt(to.0),
                    fmt(to.1)
                );
            }
            Piece::Arc {
                cx,
                cy,
                rx,
                ry,
                start,
                end,
            } => {
                let a = Piece::point(cx, cy, rx, ry, start);
                let _ = writeln!(
                    out,
                    "\\draw[thick] ({},{}) arc[start angle={}, end angle={}, x radius={}, y radius={}];",
                    fmt(a.0),
                    fmt(a.1),
                    fmt(start.to_degrees()),
                    fmt(end.to_degrees()),
                    fmt(rx),
                    fmt(ry)
                );
            }
        }
    }
    for (i, (x, y)) in l.gaps.iter().enumerate() {
        let _ = writeln!(out, "\\coordinate (gap{}) at ({},{});", i + 1, fmt(*x), fmt(*y));
    }
    if opts.labels {
        for i in 0..d.axis_points {
            let _ = writeln!(
                out,
                "\\node[font=\\scriptsize] at ({},-0.3) {{${}$}};",
                fmt(i as f64 + 0.2),
                i
            );
        }
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

/// Draws the diagram: leaves at `x = 1..=2n+1`, axis point 0 at `x = 0`,
/// upper vertices as caps and lower ones as cups at a height proportional to
/// their leaf span, and each under-strand broken around its crossing.
pub fn render(d: &LinkDiagram, format: RenderFormat, opts: &RenderOptions) -> String {
    match format {
        RenderFormat::Svg => svg(d, opts),
        RenderFormat::Tikz => tikz(d, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkdiag::Convention;
    use crate::trees::{TernaryPair, TreePair};

    fn x() -> TernaryPair {
        TreePair::parse("(.(...).)", "(..(...))").unwrap()
    }

    #[test]
    fn identity_is_one_curve_without_gaps() {
        let d = LinkDiagram::build(&TernaryPair::identity(), Convention::Standard);
        let s = render(&d, RenderFormat::Svg, &RenderOptions::default());
        assert_eq!(s.matches("class=\"gap\"").count(), 0);
        // two leaf edges, two outer arcs, the vertical through 0
        assert_eq!(s.matches("<path").count(), 5);
    }

    #[test]
    fn example_has_four_gaps() {
        let d = LinkDiagram::build(&x(), Convention::Standard);
        let s = render(&d, RenderFormat::Svg, &RenderOptions::default());
        assert_eq!(s.matches("class=\"gap\"").count(), 4);
        let t = render(&d, RenderFormat::Tikz, &RenderOptions::default());
        assert_eq!(t.matches("\\coordinate (gap").count(), 4);
        assert!(t.starts_with("\\begin{tikzpicture}"));
    }

    #[test]
    fn deterministic_output() {
        let d = LinkDiagram::build(&x(), Convention::Positive);
        let opts = RenderOptions {
            scale: 25.0,
            gap: 0.2,
            labels: false,
        };
        for f in [RenderFormat::Svg, RenderFormat::Tikz] {
            assert_eq!(render(&d, f, &opts), render(&d, f, &opts));
        }
        assert!(!render(&d, RenderFormat::Svg, &opts).contains("<text"));
    }

    #[test]
    fn under_strand_is_split() {
        let d = LinkDiagram::build(&x(), Convention::Standard);
        let l = layout(&d, &RenderOptions::default());
        let lines = l.pieces.iter().filter(|p| matches!(p, Piece::Line { .. })).count();
        let arcs = l.pieces.len() - lines;
        // 2 pieces per vertical through a crossing, 10 leaf edges, axis-0 line
        assert_eq!(lines, 4 * 2 + 10 + 1);
        assert_eq!(arcs, 4 + 2);
        let p = LinkDiagram::build(&x(), Convention::Positive);
        let l = layout(&p, &RenderOptions::default());
        let arcs = l.pieces.iter().filter(|p| matches!(p, Piece::Arc { .. })).count();
        assert_eq!(arcs, 2 + 2 * 2 + 2);
    }
}
