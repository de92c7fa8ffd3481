//! Source graphs: simple undirected graphs with labelled vertices and a
//! braid ordering that fixes each vertex's trajectory through the grid.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

/// 1-based handle for a source vertex.
pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph needs at least one vertex")]
    NoVertices,
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("vertex {vertex} is outside 1..={max}")]
    VertexOutOfRange { vertex: VertexId, max: usize },
    #[error("ordering must be a permutation of 1..={max}: {detail}")]
    InvalidOrdering { max: usize, detail: String },
    #[error("biclique parts must both be nonempty, got {a} and {b}")]
    EmptyPart { a: usize, b: usize },
}

/// A simple undirected graph. Edges are stored normalized with the
/// smaller endpoint first, so parallel edges and orientation collapse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceGraph {
    labels: Vec<String>,
    label_index: HashMap<String, VertexId>,
    edges: BTreeSet<(VertexId, VertexId)>,
    /// ordinal_of[v - 1] is the braid ordinal of vertex v
    ordinal_of: Vec<usize>,
    /// by_ordinal[k - 1] is the vertex with braid ordinal k
    by_ordinal: Vec<VertexId>,
}

fn normalize(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

impl SourceGraph {
    /// Builds a graph from one label per vertex and an edge list over
    /// vertex ids. The braid ordering defaults to the identity.
    pub fn new(labels: Vec<String>, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        if labels.is_empty() {
            return Err(GraphError::NoVertices);
        }
        let n = labels.len();
        let mut label_index = HashMap::with_capacity(n);
        for (i, label) in labels.iter().enumerate() {
            if label_index.insert(label.clone(), i + 1).is_some() {
                return Err(GraphError::DuplicateLabel(label.clone()));
            }
        }
        let mut edge_set = BTreeSet::new();
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w < 1 || w > n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, max: n });
                }
            }
            edge_set.insert(normalize(u, v));
        }
        Ok(SourceGraph {
            labels,
            label_index,
            edges: edge_set,
            ordinal_of: (1..=n).collect(),
            by_ordinal: (1..=n).collect(),
        })
    }

    /// Replaces the braid ordering: `order[k - 1]` is the vertex that
    /// takes ordinal k. Must be a permutation of the vertices.
    pub fn with_ordering(mut self, order: &[VertexId]) -> Result<Self, GraphError> {
        let n = self.labels.len();
        if order.len() != n {
            return Err(GraphError::InvalidOrdering {
                max: n,
                detail: format!("got {} entries", order.len()),
            });
        }
        let mut ordinal_of = vec![0usize; n];
        for (k, &v) in order.iter().enumerate() {
            if v < 1 || v > n {
                return Err(GraphError::InvalidOrdering {
                    max: n,
                    detail: format!("entry {v} out of range"),
                });
            }
            if ordinal_of[v - 1] != 0 {
                return Err(GraphError::InvalidOrdering {
                    max: n,
                    detail: format!("vertex {v} appears twice"),
                });
            }
            ordinal_of[v - 1] = k + 1;
        }
        self.ordinal_of = ordinal_of;
        self.by_ordinal = order.to_vec();
        Ok(self)
    }

    /// Complete graph on vertices 1..=n, labelled by their numbers.
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let labels = (1..=n).map(|v| v.to_string()).collect();
        let mut edges = Vec::with_capacity(n.saturating_mul(n.saturating_sub(1)) / 2);
        for u in 1..=n {
            for v in (u + 1)..=n {
                edges.push((u, v));
            }
        }
        SourceGraph::new(labels, &edges)
    }

    /// Complete bipartite graph with parts 1..=a and a+1..=a+b.
    pub fn biclique(a: usize, b: usize) -> Result<Self, GraphError> {
        if a == 0 || b == 0 {
            return Err(GraphError::EmptyPart { a, b });
        }
        let labels = (1..=a + b).map(|v| v.to_string()).collect();
        let mut edges = Vec::with_capacity(a * b);
        for u in 1..=a {
            for v in (a + 1)..=(a + b) {
                edges.push((u, v));
            }
        }
        SourceGraph::new(labels, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Vertex ids in increasing order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        1..=self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_of(&self, v: VertexId) -> Option<&str> {
        self.labels.get(v.wrapping_sub(1)).map(String::as_str)
    }

    pub fn index_of_label(&self, label: &str) -> Option<VertexId> {
        self.label_index.get(label).copied()
    }

    /// Normalized edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u != v && self.edges.contains(&normalize(u, v))
    }

    pub fn ordinal_of(&self, v: VertexId) -> Option<usize> {
        self.ordinal_of.get(v.wrapping_sub(1)).copied()
    }

    pub fn vertex_with_ordinal(&self, ordinal: usize) -> Option<VertexId> {
        self.by_ordinal.get(ordinal.wrapping_sub(1)).copied()
    }

    /// Vertices in braid order: element k-1 carries ordinal k.
    pub fn ordering(&self) -> &[VertexId] {
        &self.by_ordinal
    }
}
