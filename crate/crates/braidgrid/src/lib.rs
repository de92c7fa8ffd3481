//! Braided embeddings of arbitrary undirected graphs into the extended
//! grid — the king's graph, where every lattice point joins its nearest
//! and next-nearest neighbours.
//!
//! Each source vertex becomes an *island*: a connected run of grid cells
//! linked by chain edges. Each source edge becomes a single *bridge*
//! between two islands. The braid lays the islands out as zigzag
//! trajectories, one row at a time, reflecting off the grid walls after a
//! one-row delay. Every pair of islands ends up horizontally adjacent in
//! some row, so a row scan can place one bridge per source edge; an
//! n-vertex graph always fits an (n-1) x n grid in quadratic time and
//! space. [`validate`] checks any embedding against the definition,
//! clause by clause, independently of how it was produced.

pub mod braid;
pub mod embedding;
pub mod graph;
pub mod grid;
pub mod io;
pub mod render;

pub use braid::{
    assign_bridges, braid_layout, column_formula, embed, prune, BraidError, LayoutTable,
};
pub use embedding::{
    validate, Bridge, Clause, Embedding, EmbeddingStats, Island, ValidationReport, Violation,
};
pub use graph::{GraphError, SourceGraph, VertexId};
pub use grid::{are_adjacent, GridCoord, GridDims, GridError};
pub use io::{
    parse_edge_list, serialize_embedding, DocumentBridge, DocumentDims, DocumentError,
    EmbeddingDocument, ParseError,
};
pub use render::{
    ascii_symbol, exceeds_ascii_budget, render_ascii, render_svg, ASCII_BUDGET,
};
