//! Proper 8-edge-coloring of planar (and near-planar) simple graphs with
//! maximum degree at most 8.
//!
//! The central entry point is [`driver::color_graph`], which colors every edge
//! of a planar graph with colors `1..=8` so that edges sharing an endpoint get
//! distinct colors, in time close to `n log n`. The surrounding modules expose
//! the machinery it is built from, each independently testable:
//!
//! * [`graph`]: immutable degree-bounded simple graphs in CSR form.
//! * [`coloring`]: partial edge colorings, color masks, kempe-chain walks.
//! * [`chains`]: a per-vertex index of two-color chain structure.
//! * [`reducible`]: recognizing the two families of reducible edges (weak
//!   edges and butterfly edges) that drive the recursion.
//! * [`classify`]: sorting an uncolored butterfly edge into one of the seven
//!   recoloring situations, plus an independent checker for the result.
//! * [`reduce`]: turning classified edges into concrete recoloring plans and
//!   applying many of them in one batch.
//! * [`driver`]: the recursive peel-and-reinsert algorithm itself.
//! * [`oracle`]: slow, obviously-correct reference implementations used by the
//!   test suite (full verification, naive chain walks, exhaustive coloring).
//! * [`gen`]: seeded generators for planar test and benchmark graphs.
//! * [`io`]: the edge-list and coloring file formats and the run-trace JSON.

pub mod chains;
pub mod classify;
pub mod coloring;
pub mod driver;
pub mod gen;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod reduce;
pub mod reducible;

pub use coloring::{Color, ColorSet, PartialColoring};
pub use driver::{
    color_graph, color_graph_with, color_graph_with_fallback, DriverError, DriverOptions,
    RunTrace, TraceRound,
};
pub use graph::{EdgeId, Graph, VertexId};
