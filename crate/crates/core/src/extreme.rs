//! Extreme-point candidate positions.
//!
//! Each loaded unit contributes six points: one of its far corners, pushed
//! back along a second axis until it meets another unit or the pallet. The
//! first letter of [`ProjectionKind`] names the axis of the corner that is
//! offset (`x_i + w_i`, `y_i + d_i` or `z_i + h_i`), the second the axis of
//! the projection.

use std::fmt;

use crate::model::{Length, PackingState, Placement, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProjectionKind {
    Xy,
    Xz,
    Yx,
    Yz,
    Zx,
    Zy,
    /// The pallet corner offered when nothing is loaded yet.
    Origin,
}

impl fmt::Display for ProjectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ProjectionKind::Xy => "xy",
            ProjectionKind::Xz => "xz",
            ProjectionKind::Yx => "yx",
            ProjectionKind::Yz => "yz",
            ProjectionKind::Zx => "zx",
            ProjectionKind::Zy => "zy",
            ProjectionKind::Origin => "origin",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidatePosition {
    pub coords: Point,
    /// Index of the generating placement; `None` for the origin seed.
    pub source: Option<usize>,
    pub kind: ProjectionKind,
}

/// Largest `top(j)` over units `j` that reach further than `reach` on the
/// offset axis and end at or before `limit` on the projection axis.
fn project(
    placements: &[Placement],
    reach: Length,
    limit: Length,
    far_offset: impl Fn(&Placement) -> Length,
    far_projected: impl Fn(&Placement) -> Length,
) -> Length {
    placements
        .iter()
        .filter(|j| reach < far_offset(j) && limit >= far_projected(j))
        .map(&far_projected)
        .max()
        .unwrap_or(0)
}

/// Raw six points of `placements[i]`, in kind order, before filtering.
pub fn projections(placements: &[Placement], i: usize) -> [(ProjectionKind, Point); 6] {
    let p = &placements[i];
    let Point { x, y, z } = p.position;
    let (xe, ye, ze) = (p.x_max(), p.y_max(), p.z_max());
    let x_far = |j: &Placement| j.x_max();
    let y_far = |j: &Placement| j.y_max();
    let z_far = |j: &Placement| j.z_max();
    [
        (ProjectionKind::Xy, Point::new(xe, project(placements, xe, y, x_far, y_far), z)),
        (ProjectionKind::Xz, Point::new(xe, y, project(placements, xe, z, x_far, z_far))),
        (ProjectionKind::Yx, Point::new(project(placements, ye, x, y_far, x_far), ye, z)),
        (ProjectionKind::Yz, Point::new(x, ye, project(placements, ye, z, y_far, z_far))),
        (ProjectionKind::Zx, Point::new(project(placements, ze, x, z_far, x_far), y, ze)),
        // Projects along y using the y extent d_j of the blocking unit.
        (ProjectionKind::Zy, Point::new(x, project(placements, ze, y, z_far, y_far), ze)),
    ]
}

/// Candidate positions for the next unit, deduplicated and ordered by
/// `(z, y, x)` then kind. Points on or beyond a pallet limit are dropped.
pub fn generate(state: &PackingState) -> Vec<CandidatePosition> {
    if state.is_empty() {
        return vec![CandidatePosition {
            coords: Point::ORIGIN,
            source: None,
            kind: ProjectionKind::Origin,
        }];
    }
    let pallet = state.pallet;
    let mut points: Vec<CandidatePosition> = (0..state.len())
        .flat_map(|i| {
            projections(&state.placements, i)
                .into_iter()
                .map(move |(kind, coords)| CandidatePosition { coords, source: Some(i), kind })
        })
        .filter(|c| {
            c.coords.x < pallet.width && c.coords.y < pallet.depth && c.coords.z < pallet.max_height
        })
        .collect();
    points.sort_by_key(|c| (c.coords.z, c.coords.y, c.coords.x, c.kind, c.source));
    points.dedup_by_key(|c| c.coords);
    points
}
