//! Uniform-grid index over plane points for fixed-radius queries.
//!
//! Cells are square with side `cell_size`; a point belongs to cell
//! `(⌊re/h⌋, ⌊im/h⌋)`. All answers are exact: the grid only prunes
//! candidates, every reported distance is checked directly.

use rustc_hash::FxHashMap;

use crate::error::{GasketError, Result};
use crate::geometry::PlanePoint;

type CellKey = (i64, i64);

#[derive(Debug, Clone)]
pub struct NeighborGrid {
    cell_size: f64,
    cells: FxHashMap<CellKey, Vec<u32>>,
    points: Vec<PlanePoint>,
    // Inclusive bounds of the occupied cells.
    min_cell: CellKey,
    max_cell: CellKey,
}

impl NeighborGrid {
    pub fn build(points: &[PlanePoint], cell_size: f64) -> Result<Self> {
        if !(cell_size.is_finite() && cell_size > 0.0) {
            return Err(GasketError::InvalidCellSize(cell_size));
        }
        let mut cells: FxHashMap<CellKey, Vec<u32>> = FxHashMap::default();
        let mut min_cell = (i64::MAX, i64::MAX);
        let mut max_cell = (i64::MIN, i64::MIN);
        for (i, p) in points.iter().enumerate() {
            let key = cell_of(*p, cell_size);
            min_cell = (min_cell.0.min(key.0), min_cell.1.min(key.1));
            max_cell = (max_cell.0.max(key.0), max_cell.1.max(key.1));
            cells.entry(key).or_default().push(i as u32);
        }
        Ok(Self {
            cell_size,
            cells,
            points: points.to_vec(),
            min_cell,
            max_cell,
        })
    }

    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    pub fn points(&self) -> &[PlanePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// Indices stored in the cell with the given coordinates.
    pub fn cell(&self, key: (i64, i64)) -> &[u32] {
        self.cells.get(&key).map_or(&[], Vec::as_slice)
    }

    pub fn cell_of(&self, p: PlanePoint) -> (i64, i64) {
        cell_of(p, self.cell_size)
    }

    /// Calls `f(j, d)` for every `j > i` with `d = dist(i, j) < radius`.
    pub fn for_each_pair_from<F: FnMut(usize, f64)>(&self, i: usize, radius: f64, mut f: F) {
        let p = self.points[i];
        let (cx, cy) = self.cell_of(p);
        let rings = (radius / self.cell_size).ceil().max(1.0) as i64;
        for gx in (cx - rings).max(self.min_cell.0)..=(cx + rings).min(self.max_cell.0) {
            for gy in (cy - rings).max(self.min_cell.1)..=(cy + rings).min(self.max_cell.1) {
                for &j in self.cell((gx, gy)) {
                    let j = j as usize;
                    if j <= i {
                        continue;
                    }
                    let d = p.dist(self.points[j]);
                    if d < radius {
                        f(j, d);
                    }
                }
            }
        }
    }

    /// Number of unordered pairs at distance strictly below `radius`.
    pub fn pairs_within(&self, radius: f64) -> u64 {
        let mut count = 0;
        for i in 0..self.points.len() {
            self.for_each_pair_from(i, radius, |_, _| count += 1);
        }
        count
    }

    /// Distance from point `i` to its nearest other point.
    ///
    /// Searches square rings of cells outward from the point's own cell.
    /// After ring `r` every unvisited point is at least `r·h` away, so the
    /// search stops once the best distance found is within that bound.
    pub fn nearest_distance(&self, i: usize) -> Result<f64> {
        if self.points.len() < 2 {
            return Err(GasketError::TooFewPoints(self.points.len()));
        }
        let p = self.points[i];
        let (cx, cy) = self.cell_of(p);
        let max_ring = (cx - self.min_cell.0)
            .max(self.max_cell.0 - cx)
            .max(cy - self.min_cell.1)
            .max(self.max_cell.1 - cy);
        let mut best_sq = f64::INFINITY;
        let visit = |key: CellKey, best_sq: &mut f64| {
            for &j in self.cell(key) {
                if j as usize == i {
                    continue;
                }
                let q = self.points[j as usize];
                let (dx, dy) = (p.re - q.re, p.im - q.im);
                let d_sq = dx * dx + dy * dy;
                if d_sq < *best_sq {
                    *best_sq = d_sq;
                }
            }
        };
        for r in 0..=max_ring {
            if r == 0 {
                visit((cx, cy), &mut best_sq);
            } else {
                for gx in (cx - r)..=(cx + r) {
                    visit((gx, cy - r), &mut best_sq);
                    visit((gx, cy + r), &mut best_sq);
                }
                for gy in (cy - r + 1)..=(cy + r - 1) {
                    visit((cx - r, gy), &mut best_sq);
                    visit((cx + r, gy), &mut best_sq);
                }
            }
            let reach = r as f64 * self.cell_size;
            if best_sq.sqrt() <= reach {
                break;
            }
        }
        Ok(best_sq.sqrt())
    }
}

fn cell_of(p: PlanePoint, h: f64) -> CellKey {
    ((p.re / h).floor() as i64, (p.im / h).floor() as i64)
}
