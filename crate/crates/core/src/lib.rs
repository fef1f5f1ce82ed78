//! Spatial theta-graph diagrams: data model, isotopy moves, classical
//! invariants, tangle surgery and nontriviality certificates.

pub mod canon;
pub mod certify;
pub mod cli;
pub mod data;
pub mod diagram;
pub mod invariants;
pub mod moves;
pub(crate) mod planar;
pub mod poly;
pub mod surgery;

pub use diagram::{connected_sum, parse_diagram, write_diagram, ArcLabel, Diagram, DiagramKind};
