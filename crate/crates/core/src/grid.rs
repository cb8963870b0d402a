//! Mesh grid over the pallet floor, the height envelope above it and the
//! unused volume left between the envelope and the pallet height limit.
//!
//! Grid lines are the pallet boundaries plus every `x`/`y` face coordinate of
//! a loaded unit. A cell is identified by its upper grid indices `(j, k)`,
//! 1-based with `2 <= j <= n_x`, so cell `(j, k)` spans
//! `[dx[j-1], dx[j]) x [dy[k-1], dy[k])` in 1-based terms.

use crate::model::{Length, PackingState, Volume};

/// Sorted, deduplicated grid coordinates along `x` and `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridAxes {
    pub dx: Vec<Length>,
    pub dy: Vec<Length>,
}

impl GridAxes {
    pub fn n_x(&self) -> usize {
        self.dx.len()
    }

    pub fn n_y(&self) -> usize {
        self.dy.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("grid cell ({j}, {k}) is outside 2..={n_x} x 2..={n_y}")]
pub struct CellIndexError {
    pub j: usize,
    pub k: usize,
    pub n_x: usize,
    pub n_y: usize,
}

/// Per-cell top height of the loaded units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightEnvelope {
    pub axes: GridAxes,
    /// Row-major over cells: entry `a * (n_y - 1) + b` is the cell with
    /// 0-based lower corner `(dx[a], dy[b])`.
    pub cell_height: Vec<Length>,
}

impl HeightEnvelope {
    pub fn build(state: &PackingState) -> Self {
        let axes = build_axes(state);
        let cols = axes.n_y() - 1;
        let mut cell_height = vec![0; (axes.n_x() - 1) * cols];
        for p in &state.placements {
            let (x0, x1) = index_span(&axes.dx, p.position.x, p.x_max());
            let (y0, y1) = index_span(&axes.dy, p.position.y, p.y_max());
            let top = p.z_max();
            for a in x0..x1 {
                let row = &mut cell_height[a * cols..(a + 1) * cols];
                for cell in &mut row[y0..y1] {
                    *cell = (*cell).max(top);
                }
            }
        }
        HeightEnvelope { axes, cell_height }
    }

    /// Height of the 0-based cell `(a, b)`.
    pub fn height(&self, a: usize, b: usize) -> Length {
        self.cell_height[a * (self.axes.n_y() - 1) + b]
    }

    /// Volume below the envelope.
    pub fn covered_volume(&self) -> Volume {
        let mut total = 0;
        for a in 0..self.axes.n_x() - 1 {
            let width = (self.axes.dx[a + 1] - self.axes.dx[a]) as u64;
            for b in 0..self.axes.n_y() - 1 {
                let depth = (self.axes.dy[b + 1] - self.axes.dy[b]) as u64;
                total += self.height(a, b) as u64 * width * depth;
            }
        }
        total
    }
}

/// Indices of the grid cells covering `[lo, hi)`; both ends are grid lines.
fn index_span(axis: &[Length], lo: Length, hi: Length) -> (usize, usize) {
    let start = axis.partition_point(|&c| c < lo);
    let end = axis.partition_point(|&c| c < hi);
    (start, end)
}

pub fn build_axes(state: &PackingState) -> GridAxes {
    let mut dx = vec![0, state.pallet.width];
    let mut dy = vec![0, state.pallet.depth];
    for p in &state.placements {
        dx.extend([p.position.x, p.x_max()]);
        dy.extend([p.position.y, p.y_max()]);
    }
    dx.sort_unstable();
    dx.dedup();
    dy.sort_unstable();
    dy.dedup();
    GridAxes { dx, dy }
}

/// Indices of the placements whose footprint contains the lower corner of
/// cell `(j, k)` (1-based upper grid indices).
pub fn cell_units(
    state: &PackingState,
    axes: &GridAxes,
    j: usize,
    k: usize,
) -> Result<Vec<usize>, CellIndexError> {
    if j < 2 || k < 2 || j > axes.n_x() || k > axes.n_y() {
        return Err(CellIndexError { j, k, n_x: axes.n_x(), n_y: axes.n_y() });
    }
    let cx = axes.dx[j - 2];
    let cy = axes.dy[k - 2];
    Ok(state
        .placements
        .iter()
        .enumerate()
        .filter(|(_, p)| {
            cx >= p.position.x && cx < p.x_max() && cy >= p.position.y && cy < p.y_max()
        })
        .map(|(i, _)| i)
        .collect())
}

/// Unused pallet volume above the height envelope.
pub fn unused_volume(state: &PackingState) -> Volume {
    let envelope = HeightEnvelope::build(state);
    let z_p = state.pallet.max_height as u64;
    let mut total = 0;
    for a in 0..envelope.axes.n_x() - 1 {
        let width = (envelope.axes.dx[a + 1] - envelope.axes.dx[a]) as u64;
        for b in 0..envelope.axes.n_y() - 1 {
            let depth = (envelope.axes.dy[b + 1] - envelope.axes.dy[b]) as u64;
            let height = (envelope.height(a, b) as u64).min(z_p);
            total += (z_p - height) * width * depth;
        }
    }
    total
}
