//! The braid construction: zigzag vertex trajectories, the closed-form
//! column formula, row-scan bridge assignment, and island pruning.
//!
//! Vertices walk the grid one row at a time. Ordinal k starts row 1 in
//! column k; odd ordinals drift right, even ordinals drift left, one
//! column per row. A trajectory that steps past a wall is clamped onto
//! it for one row and then reverses, so every pair of trajectories
//! crosses or touches. That guarantees each pair of vertices is
//! horizontally adjacent somewhere, which the bridge scan exploits.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use thiserror::Error;

use crate::embedding::{validate, Bridge, Embedding, Island};
use crate::graph::{SourceGraph, VertexId};
use crate::grid::{GridCoord, GridDims};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("braid layout needs at least 2 vertices, got {got}")]
    TooFewVertices { got: usize },
    #[error("ordinal {ordinal} is outside 1..={max}")]
    OrdinalOutOfRange { ordinal: usize, max: usize },
    #[error("row {row} is outside 1..={max}")]
    RowOutOfRange { row: usize, max: usize },
    #[error("ordering is not a permutation: {detail}")]
    NotAPermutation { detail: String },
    #[error("refusing to prune an embedding that fails validation: {detail}")]
    InvalidEmbedding { detail: String },
}

/// Where every vertex sits in every row of the braid: an (n-1) x n grid
/// in which each row is a permutation of the n vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayoutTable {
    dims: GridDims,
    order: Vec<VertexId>,
    /// row-major occupant of each cell
    cells: Vec<VertexId>,
    /// columns[v - 1][r - 1] is the column of vertex v in row r
    columns: Vec<Vec<usize>>,
}

impl LayoutTable {
    pub fn dims(&self) -> GridDims {
        self.dims
    }

    /// Vertices by braid ordinal, i.e. row 1 left to right.
    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn vertex_at(&self, row: usize, col: usize) -> Option<VertexId> {
        if row < 1 || row > self.dims.rows() || col < 1 || col > self.dims.cols() {
            return None;
        }
        Some(self.cells[(row - 1) * self.dims.cols() + col - 1])
    }

    /// The occupants of one row, left to right.
    pub fn row(&self, row: usize) -> Option<&[VertexId]> {
        if row < 1 || row > self.dims.rows() {
            return None;
        }
        let n = self.dims.cols();
        Some(&self.cells[(row - 1) * n..row * n])
    }

    /// The column vertex `v` occupies in each row, top to bottom.
    pub fn trajectory(&self, v: VertexId) -> Option<&[usize]> {
        self.columns.get(v.wrapping_sub(1)).map(Vec::as_slice)
    }

    /// The cells of `v`'s trajectory, one per row.
    pub fn cells_of(&self, v: VertexId) -> Option<Vec<GridCoord>> {
        let cols = self.trajectory(v)?;
        Some(
            cols.iter()
                .enumerate()
                .map(|(r, &col)| GridCoord::new(r + 1, col))
                .collect(),
        )
    }

    /// Chain edges linking consecutive trajectory cells of `v`.
    pub fn chain_edges_of(&self, v: VertexId) -> Option<Vec<(GridCoord, GridCoord)>> {
        let cells = self.cells_of(v)?;
        Some(cells.windows(2).map(|w| (w[0], w[1])).collect())
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    (a + b - 1).div_euclid(b)
}

/// Closed-form column of the vertex with braid `ordinal` in `row`, for a
/// braid over n vertices. Agrees with walking the zigzag step by step,
/// but costs O(1). Defined for rows 1..=n-1, where each trajectory has
/// reflected off a wall at most once.
pub fn column_formula(ordinal: usize, row: usize, n: usize) -> Result<usize, BraidError> {
    if n < 2 {
        return Err(BraidError::TooFewVertices { got: n });
    }
    if ordinal < 1 || ordinal > n {
        return Err(BraidError::OrdinalOutOfRange { ordinal, max: n });
    }
    if row < 1 || row > n - 1 {
        return Err(BraidError::RowOutOfRange { row, max: n - 1 });
    }
    let k = ordinal as i64;
    let nn = n as i64;
    let h = (row - 1) as i64;
    // straight-line drift from column k, folded back by 2r+1 once the
    // trajectory has spent r+1 rows past its wall
    let col = if ordinal % 2 == 1 {
        let r = h - (nn - k) - 1;
        k + h - (k + h - 1).div_euclid(nn) * (2 * r + 1)
    } else {
        let r = h - k;
        k - h + ceil_div(h + 1 - k, nn) * (2 * r + 1)
    };
    debug_assert!(col >= 1 && col <= nn);
    Ok(col as usize)
}

/// Lays out the braid for the given vertex ordering: `order[k - 1]` takes
/// ordinal k. Walks each trajectory across the n-1 rows, clamping to a
/// wall for one row before reversing.
pub fn braid_layout(order: &[VertexId]) -> Result<LayoutTable, BraidError> {
    let n = order.len();
    if n < 2 {
        return Err(BraidError::TooFewVertices { got: n });
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v < 1 || v > n {
            return Err(BraidError::NotAPermutation {
                detail: format!("vertex {v} is outside 1..={n}"),
            });
        }
        if seen[v - 1] {
            return Err(BraidError::NotAPermutation {
                detail: format!("vertex {v} appears twice"),
            });
        }
        seen[v - 1] = true;
    }
    let m = n - 1;
    let dims = GridDims::new(m, n).expect("n >= 2");
    let mut cells = vec![0 as VertexId; m * n];
    let mut columns = vec![Vec::with_capacity(m); n];
    for (k0, &v) in order.iter().enumerate() {
        let mut col = (k0 + 1) as i64;
        let mut step: i64 = if (k0 + 1) % 2 == 1 { 1 } else { -1 };
        for row in 1..=m {
            columns[v - 1].push(col as usize);
            cells[(row - 1) * n + col as usize - 1] = v;
            col += step;
            if col < 1 {
                col = 1;
                step = 1;
            } else if col > n as i64 {
                col = n as i64;
                step = -1;
            }
        }
    }
    debug_assert!(cells.iter().all(|&v| v != 0), "trajectories collided");
    Ok(LayoutTable {
        dims,
        order: order.to_vec(),
        cells,
        columns,
    })
}

/// Scans the layout row by row, left to right, and emits one bridge for
/// the first horizontally adjacent occurrence of each source edge.
/// Vertex pairs the graph does not join are skipped, so the result has
/// exactly one bridge per edge.
pub fn assign_bridges(layout: &LayoutTable, graph: &SourceGraph) -> Vec<Bridge> {
    let mut consumed: HashSet<(VertexId, VertexId)> = HashSet::new();
    let mut bridges = Vec::with_capacity(graph.edge_count());
    let n = layout.dims().cols();
    for row in 1..=layout.dims().rows() {
        let occupants = layout.row(row).expect("row in range");
        for col in 1..n {
            let u = occupants[col - 1];
            let v = occupants[col];
            let key = if u <= v { (u, v) } else { (v, u) };
            if graph.has_edge(u, v) && consumed.insert(key) {
                bridges.push(Bridge::new(
                    u,
                    GridCoord::new(row, col),
                    v,
                    GridCoord::new(row, col + 1),
                ));
            }
        }
    }
    bridges
}

/// Embeds `graph` into the extended grid via the braid: every vertex
/// becomes a full trajectory island, every edge gets one bridge. A
/// single-vertex graph embeds as one cell in a 1x1 grid.
pub fn embed(graph: &SourceGraph) -> Embedding {
    if graph.vertex_count() == 1 {
        let dims = GridDims::new(1, 1).expect("1x1");
        let island = Island::with_cells(1, vec![GridCoord::new(1, 1)]);
        return Embedding::new(dims, vec![island], vec![]);
    }
    let layout = braid_layout(graph.ordering()).expect("graph orderings are permutations");
    let islands = graph
        .vertices()
        .map(|v| {
            let mut island =
                Island::with_cells(v, layout.cells_of(v).expect("layout covers every vertex"));
            for (a, b) in layout.chain_edges_of(v).expect("layout covers every vertex") {
                island.add_chain_edge(a, b);
            }
            island
        })
        .collect();
    let bridges = assign_bridges(&layout, graph);
    Embedding::new(layout.dims(), islands, bridges)
}

/// Shrinks islands by repeatedly peeling cells that no bridge pins down
/// and that at most one chain edge touches, never emptying an island.
/// The input must validate against `graph`; the output validates too,
/// and pruning again changes nothing.
pub fn prune(embedding: &Embedding, graph: &SourceGraph) -> Result<Embedding, BraidError> {
    let report = validate(graph, embedding);
    if !report.is_valid() {
        return Err(BraidError::InvalidEmbedding {
            detail: report.to_string(),
        });
    }
    let mut pinned: HashSet<GridCoord> = HashSet::new();
    for bridge in embedding.bridges() {
        let (cu, cv) = bridge.endpoints();
        pinned.insert(cu);
        pinned.insert(cv);
    }
    let islands = embedding
        .islands()
        .map(|island| prune_island(island, &pinned))
        .collect();
    Ok(Embedding::new(
        embedding.dims(),
        islands,
        embedding.bridges().to_vec(),
    ))
}

fn prune_island(island: &Island, pinned: &HashSet<GridCoord>) -> Island {
    let mut cells: BTreeSet<GridCoord> = island.cells.iter().copied().collect();
    let mut adjacency: BTreeMap<GridCoord, BTreeSet<GridCoord>> = BTreeMap::new();
    for &(p, q) in &island.chain_edges {
        adjacency.entry(p).or_default().insert(q);
        adjacency.entry(q).or_default().insert(p);
    }
    let mut queue: VecDeque<GridCoord> = cells
        .iter()
        .copied()
        .filter(|c| !pinned.contains(c) && adjacency.get(c).map_or(0, BTreeSet::len) <= 1)
        .collect();
    while let Some(cell) = queue.pop_front() {
        if cells.len() == 1 || !cells.contains(&cell) {
            continue;
        }
        let neighbors: Vec<GridCoord> = adjacency
            .get(&cell)
            .into_iter()
            .flatten()
            .copied()
            .collect();
        // degree may have grown stale while the cell sat in the queue
        if neighbors.len() > 1 {
            continue;
        }
        cells.remove(&cell);
        adjacency.remove(&cell);
        for nb in neighbors {
            if let Some(set) = adjacency.get_mut(&nb) {
                set.remove(&cell);
                if set.len() <= 1 && !pinned.contains(&nb) {
                    queue.push_back(nb);
                }
            }
        }
    }
    let mut chain_edges = BTreeSet::new();
    for (p, set) in &adjacency {
        for q in set {
            if p < q {
                chain_edges.insert((*p, *q));
            }
        }
    }
    Island {
        vertex: island.vertex,
        cells: cells.into_iter().collect(),
        chain_edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Step-by-step zigzag walk, written independently of the layout
    /// code: returns the column of the given ordinal in rows 1..=n-1.
    /// A step that would leave the grid instead holds the column for one
    /// row and reverses direction.
    fn walk_columns(ordinal: usize, n: usize) -> Vec<usize> {
        let mut cols = Vec::with_capacity(n - 1);
        let mut col = ordinal as i64;
        let mut moving_right = ordinal % 2 == 1;
        for _ in 1..n {
            cols.push(col as usize);
            let next = if moving_right { col + 1 } else { col - 1 };
            if next < 1 || next > n as i64 {
                moving_right = !moving_right;
            } else {
                col = next;
            }
        }
        cols
    }

    const SIX_TRAJECTORIES: [[usize; 5]; 6] = [
        [1, 2, 3, 4, 5],
        [2, 1, 1, 2, 3],
        [3, 4, 5, 6, 6],
        [4, 3, 2, 1, 1],
        [5, 6, 6, 5, 4],
        [6, 5, 4, 3, 2],
    ];

    const SIX_ROWS: [&str; 5] = ["123456", "214365", "241635", "426153", "462513"];

    #[test]
    fn walk_matches_hand_trace_for_six() {
        for (k0, want) in SIX_TRAJECTORIES.iter().enumerate() {
            assert_eq!(walk_columns(k0 + 1, 6), want, "ordinal {}", k0 + 1);
        }
    }

    #[test]
    fn layout_matches_hand_trace_for_six() {
        let layout = braid_layout(&[1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(layout.dims(), GridDims::new(5, 6).unwrap());
        for v in 1..=6 {
            assert_eq!(layout.trajectory(v).unwrap(), SIX_TRAJECTORIES[v - 1]);
        }
        for (r0, want) in SIX_ROWS.iter().enumerate() {
            let got: String = layout
                .row(r0 + 1)
                .unwrap()
                .iter()
                .map(ToString::to_string)
                .collect();
            assert_eq!(&got, want, "row {}", r0 + 1);
        }
    }

    #[test]
    fn formula_matches_walk() {
        for n in 2..=64 {
            for ordinal in 1..=n {
                let walked = walk_columns(ordinal, n);
                for row in 1..n {
                    assert_eq!(
                        column_formula(ordinal, row, n).unwrap(),
                        walked[row - 1],
                        "ordinal {ordinal}, row {row}, n {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn formula_domain_errors() {
        assert_eq!(
            column_formula(1, 1, 1),
            Err(BraidError::TooFewVertices { got: 1 })
        );
        assert_eq!(
            column_formula(0, 1, 6),
            Err(BraidError::OrdinalOutOfRange { ordinal: 0, max: 6 })
        );
        assert_eq!(
            column_formula(7, 1, 6),
            Err(BraidError::OrdinalOutOfRange { ordinal: 7, max: 6 })
        );
        assert_eq!(
            column_formula(3, 0, 6),
            Err(BraidError::RowOutOfRange { row: 0, max: 5 })
        );
        assert_eq!(
            column_formula(3, 6, 6),
            Err(BraidError::RowOutOfRange { row: 6, max: 5 })
        );
    }

    #[test]
    fn rows_are_permutations() {
        for n in 2..=32 {
            let order: Vec<VertexId> = (1..=n).collect();
            let layout = braid_layout(&order).unwrap();
            for row in 1..n {
                let mut seen = vec![false; n];
                for &v in layout.row(row).unwrap() {
                    assert!(!seen[v - 1], "vertex {v} twice in row {row}, n {n}");
                    seen[v - 1] = true;
                }
            }
        }
    }

    #[test]
    fn trajectories_step_to_adjacent_cells_with_one_reflection() {
        for n in 2..=32 {
            let order: Vec<VertexId> = (1..=n).collect();
            let layout = braid_layout(&order).unwrap();
            for v in 1..=n {
                let cols = layout.trajectory(v).unwrap();
                assert!(cols.iter().all(|&c| (1..=n).contains(&c)));
                let mut holds = 0;
                let mut sign_changes = 0;
                let mut last_sign = 0i64;
                for w in cols.windows(2) {
                    let delta = w[1] as i64 - w[0] as i64;
                    assert!(delta.abs() <= 1, "jump in trajectory {v}, n {n}");
                    if delta == 0 {
                        holds += 1;
                    } else {
                        if last_sign != 0 && delta != last_sign {
                            sign_changes += 1;
                        }
                        last_sign = delta;
                    }
                }
                assert!(holds <= 1, "trajectory {v} held {holds} times, n {n}");
                assert!(sign_changes <= 1, "trajectory {v} reversed twice, n {n}");
            }
        }
    }

    #[test]
    fn layout_rejects_bad_orderings() {
        assert_eq!(
            braid_layout(&[1]),
            Err(BraidError::TooFewVertices { got: 1 })
        );
        assert!(matches!(
            braid_layout(&[1, 1, 3]),
            Err(BraidError::NotAPermutation { .. })
        ));
        assert!(matches!(
            braid_layout(&[0, 2]),
            Err(BraidError::NotAPermutation { .. })
        ));
        assert!(matches!(
            braid_layout(&[2, 3]),
            Err(BraidError::NotAPermutation { .. })
        ));
    }

    #[test]
    fn six_clique_bridges_match_hand_scan() {
        let g = SourceGraph::complete(6).unwrap();
        let layout = braid_layout(g.ordering()).unwrap();
        let bridges = assign_bridges(&layout, &g);
        let got: Vec<((VertexId, VertexId), usize)> = bridges
            .iter()
            .map(|b| (b.edge(), b.endpoints().0.row))
            .collect();
        let want = vec![
            ((1, 2), 1),
            ((2, 3), 1),
            ((3, 4), 1),
            ((4, 5), 1),
            ((5, 6), 1),
            ((1, 4), 2),
            ((3, 6), 2),
            ((2, 4), 3),
            ((1, 6), 3),
            ((3, 5), 3),
            ((2, 6), 4),
            ((1, 5), 4),
            ((4, 6), 5),
            ((2, 5), 5),
            ((1, 3), 5),
        ];
        assert_eq!(got, want);
        for b in &bridges {
            let (cu, cv) = b.endpoints();
            let (u, v) = b.edge();
            assert_eq!(cu.row, cv.row);
            assert_eq!(layout.vertex_at(cu.row, cu.col), Some(u));
            assert_eq!(layout.vertex_at(cv.row, cv.col), Some(v));
        }
    }

    #[test]
    fn six_clique_embedding_validates() {
        let g = SourceGraph::complete(6).unwrap();
        let e = embed(&g);
        let report = validate(&g, &e);
        assert!(report.is_valid(), "{report}");
        assert_eq!(e.dims(), GridDims::new(5, 6).unwrap());
        assert_eq!(e.bridges().len(), 15);
        assert_eq!(e.total_cells(), 30);
    }

    #[test]
    fn path_graph_embeds_with_row_one_bridges() {
        let g = SourceGraph::new(
            vec!["a".into(), "b".into(), "c".into()],
            &[(1, 2), (2, 3)],
        )
        .unwrap();
        let e = embed(&g);
        assert_eq!(e.dims(), GridDims::new(2, 3).unwrap());
        assert!(validate(&g, &e).is_valid());
        assert_eq!(e.bridges().len(), 2);
        for b in e.bridges() {
            assert_eq!(b.endpoints().0.row, 1);
        }
    }

    #[test]
    fn single_vertex_embeds_in_unit_grid() {
        let g = SourceGraph::new(vec!["only".into()], &[]).unwrap();
        let e = embed(&g);
        assert_eq!(e.dims(), GridDims::new(1, 1).unwrap());
        assert_eq!(e.total_cells(), 1);
        assert!(e.bridges().is_empty());
        assert!(validate(&g, &e).is_valid());
    }

    #[test]
    fn two_vertices_embed_as_singletons() {
        let g = SourceGraph::complete(2).unwrap();
        let e = embed(&g);
        assert_eq!(e.dims(), GridDims::new(1, 2).unwrap());
        assert_eq!(e.island(1).unwrap().cells, vec![GridCoord::new(1, 1)]);
        assert_eq!(e.island(2).unwrap().cells, vec![GridCoord::new(1, 2)]);
        assert_eq!(e.bridges().len(), 1);
        assert!(validate(&g, &e).is_valid());
    }

    #[test]
    fn custom_ordering_moves_trajectories() {
        let g = SourceGraph::complete(3)
            .unwrap()
            .with_ordering(&[3, 1, 2])
            .unwrap();
        let layout = braid_layout(g.ordering()).unwrap();
        assert_eq!(layout.row(1).unwrap(), &[3, 1, 2]);
        // vertex 3 walks ordinal 1's path
        assert_eq!(layout.trajectory(3).unwrap(), &[1, 2]);
        let e = embed(&g);
        assert!(validate(&g, &e).is_valid());
    }

    #[test]
    fn bicliques_embed_under_both_part_conventions() {
        let consecutive = SourceGraph::biclique(3, 3).unwrap();
        let e1 = embed(&consecutive);
        assert!(validate(&consecutive, &e1).is_valid());
        assert_eq!(e1.bridges().len(), 9);

        let interleaved = SourceGraph::new(
            (1..=6).map(|v| v.to_string()).collect(),
            &[
                (1, 2),
                (1, 4),
                (1, 6),
                (3, 2),
                (3, 4),
                (3, 6),
                (5, 2),
                (5, 4),
                (5, 6),
            ],
        )
        .unwrap();
        let e2 = embed(&interleaved);
        assert!(validate(&interleaved, &e2).is_valid());
        assert_eq!(e2.bridges().len(), 9);
    }

    /// Bridge endpoints pin trajectory rows; peeling a path must stop at
    /// the extreme pinned rows, leaving exactly that segment.
    fn expected_surviving_rows(e: &Embedding, v: VertexId) -> Option<(usize, usize)> {
        let mut rows: Vec<usize> = Vec::new();
        for b in e.bridges() {
            let (u, w) = b.edge();
            let (cu, cw) = b.endpoints();
            if u == v {
                rows.push(cu.row);
            }
            if w == v {
                rows.push(cw.row);
            }
        }
        let min = rows.iter().copied().min()?;
        let max = rows.iter().copied().max()?;
        Some((min, max))
    }

    #[test]
    fn prune_keeps_exactly_the_pinned_segment() {
        for n in [3usize, 5, 6, 9] {
            let g = SourceGraph::complete(n).unwrap();
            let e = embed(&g);
            let pruned = prune(&e, &g).unwrap();
            assert!(validate(&g, &pruned).is_valid());
            for v in g.vertices() {
                let before = e.island(v).unwrap();
                let after = pruned.island(v).unwrap();
                let (lo, hi) = expected_surviving_rows(&e, v).expect("complete graph pins all");
                let want: Vec<GridCoord> = before
                    .cells
                    .iter()
                    .copied()
                    .filter(|c| (lo..=hi).contains(&c.row))
                    .collect();
                assert_eq!(after.cells, want, "vertex {v}, n {n}");
            }
            assert_eq!(prune(&pruned, &g).unwrap(), pruned, "idempotence, n {n}");
        }
    }

    #[test]
    fn prune_shrinks_path_islands_to_bridge_cells() {
        let g = SourceGraph::new(
            vec!["a".into(), "b".into(), "c".into()],
            &[(1, 2), (2, 3)],
        )
        .unwrap();
        let e = embed(&g);
        assert_eq!(e.total_cells(), 6);
        let pruned = prune(&e, &g).unwrap();
        assert!(validate(&g, &pruned).is_valid());
        assert_eq!(pruned.total_cells(), 3);
        for (v, col) in [(1, 1), (2, 2), (3, 3)] {
            assert_eq!(pruned.island(v).unwrap().cells, vec![GridCoord::new(1, col)]);
        }
    }

    #[test]
    fn prune_leaves_one_cell_for_isolated_vertices() {
        let g = SourceGraph::new(
            vec!["a".into(), "b".into(), "c".into()],
            &[(1, 2)],
        )
        .unwrap();
        let e = embed(&g);
        let pruned = prune(&e, &g).unwrap();
        assert!(validate(&g, &pruned).is_valid());
        assert_eq!(pruned.island(3).unwrap().size(), 1);
        assert!(pruned.island(3).unwrap().chain_edges.is_empty());
        assert_eq!(prune(&pruned, &g).unwrap(), pruned);
    }

    #[test]
    fn prune_rejects_invalid_input() {
        let g = SourceGraph::complete(3).unwrap();
        let e = embed(&g);
        let islands: Vec<Island> = e.islands().filter(|i| i.vertex != 2).cloned().collect();
        let broken = Embedding::new(e.dims(), islands, e.bridges().to_vec());
        assert!(matches!(
            prune(&broken, &g),
            Err(BraidError::InvalidEmbedding { .. })
        ));
    }
}
