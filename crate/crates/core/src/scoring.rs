//! Ranking of feasible placements by how well their faces line up with the
//! faces already on the pallet.
//!
//! A neighbour whose top (or far `x`, far `y`) face lies within the coplanarity
//! tolerance of the candidate's contributes that face's area divided by the
//! distance between the two face centers, so close, large coplanar faces win.

use std::cmp::Ordering;

use crate::feasibility::SupportReport;
use crate::model::{Dims, PackingState, Point, SolverParams};

/// Floor applied to center distances before division, in millimeters.
pub const DISTANCE_EPSILON: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct ScoredCandidate {
    pub position: Point,
    pub rotated: bool,
    pub score: f64,
    pub report: SupportReport,
}

/// Placements whose top, far-`x` and far-`y` faces are coplanar with the
/// candidate's corresponding face.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoplanarSets {
    pub z: Vec<usize>,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

fn within(a: u32, b: u32, tol: u32) -> bool {
    a.abs_diff(b) <= tol
}

pub fn coplanar_sets(state: &PackingState, pos: Point, dims: Dims, params: &SolverParams) -> CoplanarSets {
    let top = pos.z + dims.h;
    let far_x = pos.x + dims.w;
    let far_y = pos.y + dims.d;
    let mut sets = CoplanarSets::default();
    for (j, p) in state.placements.iter().enumerate() {
        if within(top, p.z_max(), params.p_z) {
            sets.z.push(j);
        }
        if within(far_x, p.x_max(), params.p_x) {
            sets.x.push(j);
        }
        if within(far_y, p.y_max(), params.p_y) {
            sets.y.push(j);
        }
    }
    sets
}

fn center(lo: u32, extent: u32) -> f64 {
    lo as f64 + extent as f64 / 2.0
}

/// Distance between the centers of two boxes' footprints.
pub fn top_distance(a: Point, da: Dims, b: Point, db: Dims) -> f64 {
    (center(a.x, da.w) - center(b.x, db.w)).hypot(center(a.y, da.d) - center(b.y, db.d))
}

/// Distance between the centers of two boxes' faces normal to `x`.
pub fn x_face_distance(a: Point, da: Dims, b: Point, db: Dims) -> f64 {
    (center(a.y, da.d) - center(b.y, db.d)).hypot(center(a.z, da.h) - center(b.z, db.h))
}

/// Distance between the centers of two boxes' faces normal to `y`.
pub fn y_face_distance(a: Point, da: Dims, b: Point, db: Dims) -> f64 {
    (center(a.x, da.w) - center(b.x, db.w)).hypot(center(a.z, da.h) - center(b.z, db.h))
}

pub fn evaluate(state: &PackingState, pos: Point, dims: Dims, params: &SolverParams) -> f64 {
    let sets = coplanar_sets(state, pos, dims, params);
    let term = |area: f64, dist: f64| area / dist.max(DISTANCE_EPSILON);
    let mut score = 0.0;
    for p in sets.z.iter().map(|&j| &state.placements[j]) {
        score += term(p.dims.w as f64 * p.dims.d as f64, top_distance(pos, dims, p.position, p.dims));
    }
    for p in sets.x.iter().map(|&j| &state.placements[j]) {
        score += term(p.dims.d as f64 * p.dims.h as f64, x_face_distance(pos, dims, p.position, p.dims));
    }
    for p in sets.y.iter().map(|&j| &state.placements[j]) {
        score += term(p.dims.w as f64 * p.dims.h as f64, y_face_distance(pos, dims, p.position, p.dims));
    }
    score
}

/// Best-first order: higher score, then lower `z`, `y`, `x`, unrotated first.
pub fn rank_order(a: &ScoredCandidate, b: &ScoredCandidate) -> Ordering {
    b.score
        .total_cmp(&a.score)
        .then(a.position.z.cmp(&b.position.z))
        .then(a.position.y.cmp(&b.position.y))
        .then(a.position.x.cmp(&b.position.x))
        .then(a.rotated.cmp(&b.rotated))
}

pub fn rank_and_cut(mut candidates: Vec<ScoredCandidate>, max_branches: usize) -> Vec<ScoredCandidate> {
    candidates.sort_by(rank_order);
    candidates.truncate(max_branches);
    candidates
}
