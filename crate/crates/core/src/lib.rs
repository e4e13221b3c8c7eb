//! Google-matrix rankings of directed hyperlink networks and the
//! cross-edition analysis of historical figures built on them.
//!
//! * [`graph`]: compact directed graphs and edge-list I/O.
//! * [`rank`]: PageRank, CheiRank and 2DRank.
//! * [`registry`]: persons, cultures and editions.
//! * [`aggregate`]: global rankings and demographic distributions.
//! * [`culture`]: the weighted network of cultures.

pub mod aggregate;
pub mod cache;
pub mod culture;
pub mod graph;
pub mod output;
pub mod rank;
pub mod registry;
pub mod selfcheck;
pub mod synth;

pub use graph::{DirectedGraph, LoadOptions, NodeId};
pub use rank::{Algorithm, GoogleParams, RankVector};
