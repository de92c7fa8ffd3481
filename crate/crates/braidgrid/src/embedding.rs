//! The embedding model and its validator.
//!
//! An embedding assigns every source vertex an island (cells plus chain
//! edges) and every source edge a bridge. The types here hold whatever
//! they are given, well-formed or not; [`validate`] is the judge,
//! checking each clause of the embedding definition and reporting every
//! violation it finds rather than stopping at the first.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::graph::{SourceGraph, VertexId};
use crate::grid::{are_adjacent, GridCoord, GridDims};

/// Connected patch of grid cells standing for one source vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Island {
    pub vertex: VertexId,
    pub cells: Vec<GridCoord>,
    /// Grid edges linking the island's cells, endpoints normalized in
    /// ascending order.
    pub chain_edges: BTreeSet<(GridCoord, GridCoord)>,
}

impl Island {
    pub fn new(vertex: VertexId) -> Self {
        Island {
            vertex,
            cells: Vec::new(),
            chain_edges: BTreeSet::new(),
        }
    }

    pub fn with_cells(vertex: VertexId, cells: Vec<GridCoord>) -> Self {
        Island {
            vertex,
            cells,
            chain_edges: BTreeSet::new(),
        }
    }

    pub fn add_chain_edge(&mut self, a: GridCoord, b: GridCoord) {
        self.chain_edges.insert(if a <= b { (a, b) } else { (b, a) });
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    pub fn contains(&self, cell: GridCoord) -> bool {
        self.cells.contains(&cell)
    }
}

/// One grid edge standing for one source edge. Stored canonically: the
/// smaller vertex first, each endpoint cell aligned with its vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Bridge {
    edge: (VertexId, VertexId),
    endpoints: (GridCoord, GridCoord),
}

impl Bridge {
    pub fn new(u: VertexId, u_cell: GridCoord, v: VertexId, v_cell: GridCoord) -> Self {
        if u <= v {
            Bridge {
                edge: (u, v),
                endpoints: (u_cell, v_cell),
            }
        } else {
            Bridge {
                edge: (v, u),
                endpoints: (v_cell, u_cell),
            }
        }
    }

    /// The source edge, smaller vertex first.
    pub fn edge(&self) -> (VertexId, VertexId) {
        self.edge
    }

    /// Endpoint cells aligned with [`edge`](Self::edge): first cell in
    /// the first vertex's island.
    pub fn endpoints(&self) -> (GridCoord, GridCoord) {
        self.endpoints
    }

    /// The (vertex, cell) pairs ordered by cell position.
    pub fn by_position(&self) -> ((VertexId, GridCoord), (VertexId, GridCoord)) {
        let a = (self.edge.0, self.endpoints.0);
        let b = (self.edge.1, self.endpoints.1);
        if a.1 <= b.1 {
            (a, b)
        } else {
            (b, a)
        }
    }
}

/// A full embedding: grid dimensions, one island per vertex, one bridge
/// per edge. Construction never checks the definition's clauses; run
/// [`validate`] for that.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    dims: GridDims,
    islands: BTreeMap<VertexId, Island>,
    bridges: Vec<Bridge>,
    labelling: HashMap<GridCoord, VertexId>,
}

impl Embedding {
    /// Assembles an embedding. Islands repeating a vertex merge; bridges
    /// are sorted by edge for determinism. The cell-to-vertex labelling
    /// gives overlapping cells to the smallest-numbered vertex.
    pub fn new(dims: GridDims, islands: Vec<Island>, bridges: Vec<Bridge>) -> Self {
        let mut by_vertex: BTreeMap<VertexId, Island> = BTreeMap::new();
        for island in islands {
            match by_vertex.get_mut(&island.vertex) {
                Some(existing) => {
                    existing.cells.extend(island.cells);
                    existing.chain_edges.extend(island.chain_edges);
                }
                None => {
                    by_vertex.insert(island.vertex, island);
                }
            }
        }
        let mut labelling = HashMap::new();
        for (&v, island) in &by_vertex {
            for &cell in &island.cells {
                labelling.entry(cell).or_insert(v);
            }
        }
        let mut bridges = bridges;
        bridges.sort();
        Embedding {
            dims,
            islands: by_vertex,
            bridges,
            labelling,
        }
    }

    pub fn dims(&self) -> GridDims {
        self.dims
    }

    /// Islands in vertex order.
    pub fn islands(&self) -> impl Iterator<Item = &Island> {
        self.islands.values()
    }

    pub fn island(&self, v: VertexId) -> Option<&Island> {
        self.islands.get(&v)
    }

    pub fn bridges(&self) -> &[Bridge] {
        &self.bridges
    }

    /// The vertex whose island claims `cell`, if any.
    pub fn island_of(&self, cell: GridCoord) -> Option<VertexId> {
        self.labelling.get(&cell).copied()
    }

    pub fn total_cells(&self) -> usize {
        self.islands.values().map(Island::size).sum()
    }

    pub fn stats(&self) -> EmbeddingStats {
        let sizes: Vec<usize> = self.islands.values().map(Island::size).collect();
        EmbeddingStats {
            dims: self.dims,
            island_count: self.islands.len(),
            total_cells: sizes.iter().sum(),
            chain_edge_count: self.islands.values().map(|i| i.chain_edges.len()).sum(),
            bridge_count: self.bridges.len(),
            max_island_size: sizes.iter().copied().max().unwrap_or(0),
            min_island_size: sizes.iter().copied().min().unwrap_or(0),
        }
    }
}

/// Size summary of an embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbeddingStats {
    pub dims: GridDims,
    pub island_count: usize,
    pub total_cells: usize,
    pub chain_edge_count: usize,
    pub bridge_count: usize,
    pub max_island_size: usize,
    pub min_island_size: usize,
}

impl fmt::Display for EmbeddingStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "grid {}, {} islands ({} cells, sizes {}..={}), {} chain edges, {} bridges",
            self.dims,
            self.island_count,
            self.total_cells,
            self.min_island_size,
            self.max_island_size,
            self.chain_edge_count,
            self.bridge_count
        )
    }
}

/// The clauses of the embedding definition, one per check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Clause {
    /// Every vertex owns a nonempty island, and no island is orphaned.
    IslandPresent,
    /// Chain edges are grid edges between island cells, and they connect
    /// the island.
    IslandConnected,
    /// No cell belongs to two islands (or twice to one).
    IslandsDisjoint,
    /// Every island cell lies inside the grid.
    CellsInBounds,
    /// Every source edge has exactly one bridge.
    EdgeBridged,
    /// Bridge endpoints are grid-adjacent cells of the two joined islands.
    BridgeEndpoints,
    /// Every bridge corresponds to a source edge.
    BridgeIsEdge,
}

impl Clause {
    pub const ALL: [Clause; 7] = [
        Clause::IslandPresent,
        Clause::IslandConnected,
        Clause::IslandsDisjoint,
        Clause::CellsInBounds,
        Clause::EdgeBridged,
        Clause::BridgeEndpoints,
        Clause::BridgeIsEdge,
    ];

    pub fn id(&self) -> char {
        match self {
            Clause::IslandPresent => 'a',
            Clause::IslandConnected => 'b',
            Clause::IslandsDisjoint => 'c',
            Clause::CellsInBounds => 'd',
            Clause::EdgeBridged => 'e',
            Clause::BridgeEndpoints => 'f',
            Clause::BridgeIsEdge => 'g',
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            Clause::IslandPresent => "every vertex has a nonempty island",
            Clause::IslandConnected => "islands are connected by their chain edges",
            Clause::IslandsDisjoint => "islands occupy disjoint cells",
            Clause::CellsInBounds => "island cells lie within the grid",
            Clause::EdgeBridged => "every source edge has exactly one bridge",
            Clause::BridgeEndpoints => "bridges join adjacent cells of the right islands",
            Clause::BridgeIsEdge => "every bridge corresponds to a source edge",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.id())
    }
}

/// One failed check, tied to the clause it breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub clause: Clause,
    pub message: String,
}

impl Violation {
    fn new(clause: Clause, message: String) -> Self {
        Violation { clause, message }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.clause, self.message)
    }
}

/// Outcome of validating one embedding against one source graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn failed_clauses(&self) -> BTreeSet<Clause> {
        self.violations.iter().map(|v| v.clause).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            let n = Clause::ALL.len();
            write!(f, "OK: {n}/{n} clauses")
        } else {
            write!(f, "FAILED: {} violation(s)", self.violations.len())?;
            for v in &self.violations {
                write!(f, "\n  {v}")?;
            }
            Ok(())
        }
    }
}

/// Checks `embedding` against the definition clause by clause, returning
/// every violation found. Never fails: malformed embeddings produce
/// violations, not errors.
pub fn validate(graph: &SourceGraph, embedding: &Embedding) -> ValidationReport {
    let mut violations = Vec::new();
    let dims = embedding.dims();

    // (a) presence
    for v in graph.vertices() {
        match embedding.island(v) {
            None => violations.push(Violation::new(
                Clause::IslandPresent,
                format!("vertex {v} has no island"),
            )),
            Some(island) if island.cells.is_empty() => violations.push(Violation::new(
                Clause::IslandPresent,
                format!("island of vertex {v} has no cells"),
            )),
            Some(_) => {}
        }
    }
    for island in embedding.islands() {
        if island.vertex < 1 || island.vertex > graph.vertex_count() {
            violations.push(Violation::new(
                Clause::IslandPresent,
                format!("island for unknown vertex {}", island.vertex),
            ));
        }
    }

    // (b) chain edges are grid edges inside the island and connect it
    for island in embedding.islands() {
        let v = island.vertex;
        let members: HashSet<GridCoord> = island.cells.iter().copied().collect();
        let mut adjacency: HashMap<GridCoord, Vec<GridCoord>> = HashMap::new();
        for &(p, q) in &island.chain_edges {
            if !members.contains(&p) || !members.contains(&q) {
                violations.push(Violation::new(
                    Clause::IslandConnected,
                    format!("chain edge {p}-{q} of island {v} leaves the island"),
                ));
                continue;
            }
            if !are_adjacent(p, q) {
                violations.push(Violation::new(
                    Clause::IslandConnected,
                    format!("chain edge {p}-{q} of island {v} is not a grid edge"),
                ));
                continue;
            }
            adjacency.entry(p).or_default().push(q);
            adjacency.entry(q).or_default().push(p);
        }
        if !members.is_empty() {
            let start = *island.cells.first().expect("nonempty");
            let mut seen = HashSet::from([start]);
            let mut queue = vec![start];
            while let Some(cell) = queue.pop() {
                for &next in adjacency.get(&cell).into_iter().flatten() {
                    if seen.insert(next) {
                        queue.push(next);
                    }
                }
            }
            if seen.len() < members.len() {
                violations.push(Violation::new(
                    Clause::IslandConnected,
                    format!(
                        "island {v} is not connected: chain edges reach {} of {} cells",
                        seen.len(),
                        members.len()
                    ),
                ));
            }
        }
    }

    // (c) disjointness, within and across islands
    let mut owners: BTreeMap<GridCoord, Vec<VertexId>> = BTreeMap::new();
    for island in embedding.islands() {
        let mut seen = HashSet::new();
        for &cell in &island.cells {
            if seen.insert(cell) {
                owners.entry(cell).or_default().push(island.vertex);
            } else {
                violations.push(Violation::new(
                    Clause::IslandsDisjoint,
                    format!("cell {cell} appears twice in island {}", island.vertex),
                ));
            }
        }
    }
    for (cell, vs) in &owners {
        if vs.len() > 1 {
            let list: Vec<String> = vs.iter().map(ToString::to_string).collect();
            violations.push(Violation::new(
                Clause::IslandsDisjoint,
                format!("cell {cell} is shared by islands {}", list.join(", ")),
            ));
        }
    }

    // (d) bounds
    for island in embedding.islands() {
        for &cell in &island.cells {
            if !dims.contains(cell) {
                violations.push(Violation::new(
                    Clause::CellsInBounds,
                    format!("cell {cell} of island {} is outside grid {dims}", island.vertex),
                ));
            }
        }
    }

    // (e) edge coverage: exactly one bridge per source edge
    let mut bridge_count: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
    for bridge in embedding.bridges() {
        *bridge_count.entry(bridge.edge()).or_insert(0) += 1;
    }
    for (u, v) in graph.edges() {
        match bridge_count.get(&(u, v)).copied().unwrap_or(0) {
            0 => violations.push(Violation::new(
                Clause::EdgeBridged,
                format!("edge ({u}, {v}) has no bridge"),
            )),
            1 => {}
            k => violations.push(Violation::new(
                Clause::EdgeBridged,
                format!("edge ({u}, {v}) has {k} bridges"),
            )),
        }
    }

    // (f) bridge endpoints: in bounds, grid-adjacent, inside the right
    // islands (checked by membership, not by the labelling)
    for bridge in embedding.bridges() {
        let (u, v) = bridge.edge();
        let (cu, cv) = bridge.endpoints();
        for cell in [cu, cv] {
            if !dims.contains(cell) {
                violations.push(Violation::new(
                    Clause::BridgeEndpoints,
                    format!("bridge ({u}, {v}) endpoint {cell} is outside grid {dims}"),
                ));
            }
        }
        if !are_adjacent(cu, cv) {
            violations.push(Violation::new(
                Clause::BridgeEndpoints,
                format!("bridge ({u}, {v}) endpoints {cu} and {cv} are not grid-adjacent"),
            ));
        }
        for (w, cell) in [(u, cu), (v, cv)] {
            let inside = embedding.island(w).is_some_and(|i| i.contains(cell));
            if !inside {
                violations.push(Violation::new(
                    Clause::BridgeEndpoints,
                    format!("bridge ({u}, {v}) endpoint {cell} is not in island {w}"),
                ));
            }
        }
    }

    // (g) no stray bridges
    for bridge in embedding.bridges() {
        let (u, v) = bridge.edge();
        if !graph.has_edge(u, v) {
            violations.push(Violation::new(
                Clause::BridgeIsEdge,
                format!("bridge joins ({u}, {v}), which is not a source edge"),
            ));
        }
    }

    ValidationReport { violations }
}
