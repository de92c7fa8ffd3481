//! Extended-grid geometry: 1-based lattice coordinates, king-move
//! adjacency, and row-major linear indexing.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("grid dimensions must be at least 1x1, got {rows}x{cols}")]
    ZeroDims { rows: usize, cols: usize },
    #[error("coordinate {coord} is outside grid {dims}")]
    OutOfBounds { coord: GridCoord, dims: GridDims },
    #[error("index {index} is outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
}

/// Dimensions of an extended grid: at least one row and one column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridDims {
    rows: usize,
    cols: usize,
}

/// A lattice point. Rows and columns are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridCoord {
    pub row: usize,
    pub col: usize,
}

impl GridCoord {
    pub fn new(row: usize, col: usize) -> Self {
        GridCoord { row, col }
    }
}

impl fmt::Display for GridCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

impl fmt::Display for GridDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// True iff `a` and `b` are distinct nearest or next-nearest neighbours,
/// i.e. joined by an extended-grid edge.
pub fn are_adjacent(a: GridCoord, b: GridCoord) -> bool {
    a != b && a.row.abs_diff(b.row) <= 1 && a.col.abs_diff(b.col) <= 1
}

impl GridDims {
    pub fn new(rows: usize, cols: usize) -> Result<Self, GridError> {
        if rows == 0 || cols == 0 {
            return Err(GridError::ZeroDims { rows, cols });
        }
        Ok(GridDims { rows, cols })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Total number of lattice points.
    pub fn cell_count(&self) -> usize {
        self.rows * self.cols
    }

    pub fn contains(&self, c: GridCoord) -> bool {
        (1..=self.rows).contains(&c.row) && (1..=self.cols).contains(&c.col)
    }

    /// All in-bounds nearest and next-nearest neighbours of `c`, in
    /// (row, col) order: between 3 (corner) and 8 (interior) cells.
    pub fn neighbors(&self, c: GridCoord) -> Result<Vec<GridCoord>, GridError> {
        if !self.contains(c) {
            return Err(GridError::OutOfBounds { coord: c, dims: *self });
        }
        let mut out = Vec::with_capacity(8);
        for dr in -1i64..=1 {
            for dc in -1i64..=1 {
                if dr == 0 && dc == 0 {
                    continue;
                }
                let row = c.row as i64 + dr;
                let col = c.col as i64 + dc;
                if row >= 1 && row <= self.rows as i64 && col >= 1 && col <= self.cols as i64 {
                    out.push(GridCoord::new(row as usize, col as usize));
                }
            }
        }
        Ok(out)
    }

    /// Row-major linear index of `c`: `(row - 1) * cols + col`, mapping
    /// the grid bijectively onto `1..=rows*cols`.
    pub fn to_index(&self, c: GridCoord) -> Result<usize, GridError> {
        if !self.contains(c) {
            return Err(GridError::OutOfBounds { coord: c, dims: *self });
        }
        Ok((c.row - 1) * self.cols + c.col)
    }

    /// Inverse of [`to_index`](Self::to_index).
    pub fn from_index(&self, index: usize) -> Result<GridCoord, GridError> {
        if index < 1 || index > self.cell_count() {
            return Err(GridError::IndexOutOfRange {
                index,
                max: self.cell_count(),
            });
        }
        Ok(GridCoord::new(
            (index - 1) / self.cols + 1,
            (index - 1) % self.cols + 1,
        ))
    }

    /// Every coordinate of the grid in index order.
    pub fn coords(&self) -> impl Iterator<Item = GridCoord> + '_ {
        (1..=self.rows).flat_map(move |row| (1..=self.cols).map(move |col| GridCoord::new(row, col)))
    }
}
