//! Metric lines in small graphs.
//!
//! A vertex `z` lies on the line through `u` and `v` when one of the three
//! is between the other two in the shortest-path metric. This crate computes
//! every line of a connected graph on at most 64 vertices, detects houses,
//! holes and C4-modules, replays the discharging argument showing that
//! {house, hole}-free graphs have a universal line or at least as many lines
//! as vertices, and checks that claim and its supporting lemmas over
//! exhaustively enumerated corpora.
//!
//! ```
//! use graph_lines::{format::parse_graph6, format::Connectivity, lines::all_lines};
//!
//! let c5 = parse_graph6("Dhc", Connectivity::Required).unwrap();
//! assert_eq!(all_lines(&c5).unwrap().len(), 10);
//! ```

pub mod bitset;
pub mod corpus;
pub mod discharge;
pub mod distance;
pub mod format;
pub mod graph;
pub mod lines;
pub mod relations;
pub mod structure;
pub mod verify;

pub use bitset::VertexSet;
pub use graph::{Graph, GraphError};
pub use lines::{LineFamily, MetricGraph};
