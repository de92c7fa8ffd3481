//! Text formats: the edge-list input format and the embedding document,
//! a JSON-shaped record that round-trips an embedding losslessly.

use std::collections::HashMap;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{Bridge, Embedding, Island};
use crate::graph::{GraphError, SourceGraph, VertexId};
use crate::grid::{GridCoord, GridDims, GridError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected two labels, got {tokens}")]
    MalformedLine { line: usize, tokens: usize },
    #[error("line {line}: self-loop on {label:?}")]
    SelfLoop { line: usize, label: String },
    #[error("no vertices found in edge list")]
    Empty,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("invalid document JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("label {0:?} is not a vertex of the graph")]
    UnknownLabel(String),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn intern(
    labels: &mut Vec<String>,
    index: &mut HashMap<String, VertexId>,
    label: &str,
) -> VertexId {
    if let Some(&id) = index.get(label) {
        return id;
    }
    labels.push(label.to_string());
    index.insert(label.to_string(), labels.len());
    labels.len()
}

/// Parses "u v" edge lines into a graph. Blank lines and lines starting
/// with '#' are skipped; vertices are numbered in first-occurrence
/// order; repeated edges collapse.
pub fn parse_edge_list(text: &str) -> Result<SourceGraph, ParseError> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, VertexId> = HashMap::new();
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for (line0, raw) in text.lines().enumerate() {
        let line = line0 + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(ParseError::MalformedLine {
                line,
                tokens: tokens.len(),
            });
        }
        if tokens[0] == tokens[1] {
            return Err(ParseError::SelfLoop {
                line,
                label: tokens[0].to_string(),
            });
        }
        let u = intern(&mut labels, &mut index, tokens[0]);
        let v = intern(&mut labels, &mut index, tokens[1]);
        edges.push((u, v));
    }
    if labels.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(SourceGraph::new(labels, &edges).expect("parser enforces graph preconditions"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentDims {
    pub rows: usize,
    pub cols: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentBridge {
    /// Labels of the joined vertices, aligned with `endpoints`.
    pub edge: [String; 2],
    /// 1-based [row, col] cells, the first positionally smaller.
    pub endpoints: [[usize; 2]; 2],
}

/// Serialized embedding. Islands and chain edges are keyed by vertex
/// label in braid-ordinal order; bridges are sorted by the position of
/// their first endpoint; coordinates are 1-based [row, col] pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingDocument {
    pub dims: DocumentDims,
    pub islands: IndexMap<String, Vec<[usize; 2]>>,
    pub chain_edges: IndexMap<String, Vec<[[usize; 2]; 2]>>,
    pub bridges: Vec<DocumentBridge>,
    pub ordering: Vec<String>,
}

/// Captures a validated embedding as a document. Expects `embedding` to
/// belong to `graph` (every vertex has an island); serializing anything
/// else panics rather than emitting a partial document.
pub fn serialize_embedding(embedding: &Embedding, graph: &SourceGraph) -> EmbeddingDocument {
    let label = |v: VertexId| -> String {
        graph
            .label_of(v)
            .expect("embedding vertex missing from graph")
            .to_string()
    };
    let mut islands = IndexMap::new();
    let mut chain_edges = IndexMap::new();
    for &v in graph.ordering() {
        let island = embedding
            .island(v)
            .expect("embedding island missing for graph vertex");
        islands.insert(
            label(v),
            island.cells.iter().map(|c| [c.row, c.col]).collect(),
        );
        chain_edges.insert(
            label(v),
            island
                .chain_edges
                .iter()
                .map(|&(a, b)| [[a.row, a.col], [b.row, b.col]])
                .collect(),
        );
    }
    let mut bridges: Vec<DocumentBridge> = embedding
        .bridges()
        .iter()
        .map(|b| {
            let ((u, cu), (v, cv)) = b.by_position();
            DocumentBridge {
                edge: [label(u), label(v)],
                endpoints: [[cu.row, cu.col], [cv.row, cv.col]],
            }
        })
        .collect();
    bridges.sort_by_key(|b| b.endpoints);
    EmbeddingDocument {
        dims: DocumentDims {
            rows: embedding.dims().rows(),
            cols: embedding.dims().cols(),
        },
        islands,
        chain_edges,
        bridges,
        ordering: graph.ordering().iter().map(|&v| label(v)).collect(),
    }
}

impl EmbeddingDocument {
    /// Rebuilds the embedding, resolving labels against `graph`.
    pub fn to_embedding(&self, graph: &SourceGraph) -> Result<Embedding, DocumentError> {
        let dims = GridDims::new(self.dims.rows, self.dims.cols)?;
        let vertex = |label: &str| -> Result<VertexId, DocumentError> {
            graph
                .index_of_label(label)
                .ok_or_else(|| DocumentError::UnknownLabel(label.to_string()))
        };
        let mut islands = Vec::with_capacity(self.islands.len());
        for (label, cells) in &self.islands {
            let v = vertex(label)?;
            let mut island = Island::with_cells(
                v,
                cells.iter().map(|&[r, c]| GridCoord::new(r, c)).collect(),
            );
            for &[[ar, ac], [br, bc]] in self.chain_edges.get(label).into_iter().flatten() {
                island.add_chain_edge(GridCoord::new(ar, ac), GridCoord::new(br, bc));
            }
            islands.push(island);
        }
        let mut bridges = Vec::with_capacity(self.bridges.len());
        for b in &self.bridges {
            let [[ur, uc], [vr, vc]] = b.endpoints;
            bridges.push(Bridge::new(
                vertex(&b.edge[0])?,
                GridCoord::new(ur, uc),
                vertex(&b.edge[1])?,
                GridCoord::new(vr, vc),
            ));
        }
        Ok(Embedding::new(dims, islands, bridges))
    }

    /// Reconstructs the source graph the document implies: vertices from
    /// the ordering, edges from the bridges.
    pub fn to_graph(&self) -> Result<SourceGraph, DocumentError> {
        let mut index: HashMap<&str, VertexId> = HashMap::new();
        for (i, label) in self.ordering.iter().enumerate() {
            index.insert(label.as_str(), i + 1);
        }
        let mut edges = Vec::with_capacity(self.bridges.len());
        for b in &self.bridges {
            let resolve = |label: &String| -> Result<VertexId, DocumentError> {
                index
                    .get(label.as_str())
                    .copied()
                    .ok_or_else(|| DocumentError::UnknownLabel(label.clone()))
            };
            edges.push((resolve(&b.edge[0])?, resolve(&b.edge[1])?));
        }
        Ok(SourceGraph::new(self.ordering.clone(), &edges)?)
    }

    /// Pretty JSON with a trailing newline; key order is stable.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("document serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }
}
