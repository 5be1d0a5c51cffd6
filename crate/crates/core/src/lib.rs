//! Near-bipartite partitions of plane graphs without cycles of length 4, 6
//! or 8, built by reducible-configuration reductions with coloring lifts,
//! plus an exact audit of the accompanying discharging rules.

pub mod coloring;
pub mod corpus;
pub mod discharging;
pub mod dsu;
pub mod oracle;
pub mod plane_graph;
pub mod reducer;

pub use coloring::{Certificate, Color, IfColoring, Mode};
pub use plane_graph::{CycleRef, Face, GraphError, PlaneGraph, Vertex};
