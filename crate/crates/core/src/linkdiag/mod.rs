//! Link diagrams of ternary tree pairs: construction, strand tracing,
//! planar diagram and Gauss codes, and drawing.

mod codes;
mod diagram;
mod render;

pub use codes::{gauss_code, pd_code, GaussCode, GaussEntry, PdCode};
pub use diagram::{
    build_diagram, trace_components, Convention, Crossing, DiagramError, LinkDiagram, Port, PortRef, Segment, Side,
    Step, Tracing,
};
pub use render::{render, RenderFormat, RenderOptions};
