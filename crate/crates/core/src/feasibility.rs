//! Placement constraints: no overlap, inside the pallet, loaded from above,
//! and enough vertical and horizontal support.

use std::fmt;

use crate::model::{Dims, Length, PackingState, Pallet, Placement, Point, SolverParams, TransportUnit};

/// Half-open axis-aligned rectangle `[x0, x1) x [y0, y1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rect {
    pub x0: Length,
    pub y0: Length,
    pub x1: Length,
    pub y1: Length,
}

impl Rect {
    pub fn new(x0: Length, y0: Length, x1: Length, y1: Length) -> Self {
        Rect { x0, y0, x1, y1 }
    }

    pub fn area(&self) -> u64 {
        self.x1.saturating_sub(self.x0) as u64 * self.y1.saturating_sub(self.y0) as u64
    }

    pub fn clip(&self, bounds: &Rect) -> Option<Rect> {
        let r = Rect::new(
            self.x0.max(bounds.x0),
            self.y0.max(bounds.y0),
            self.x1.min(bounds.x1),
            self.y1.min(bounds.y1),
        );
        (r.x0 < r.x1 && r.y0 < r.y1).then_some(r)
    }
}

/// Area of the union of `rects`, by coordinate compression.
pub fn union_area(rects: &[Rect]) -> u64 {
    let rects: Vec<&Rect> = rects.iter().filter(|r| r.area() > 0).collect();
    match rects.len() {
        0 => return 0,
        1 => return rects[0].area(),
        _ => {}
    }
    let mut xs: Vec<Length> = rects.iter().flat_map(|r| [r.x0, r.x1]).collect();
    let mut ys: Vec<Length> = rects.iter().flat_map(|r| [r.y0, r.y1]).collect();
    xs.sort_unstable();
    xs.dedup();
    ys.sort_unstable();
    ys.dedup();
    let cols = ys.len() - 1;
    let mut covered = vec![false; (xs.len() - 1) * cols];
    for r in &rects {
        let a0 = xs.partition_point(|&x| x < r.x0);
        let a1 = xs.partition_point(|&x| x < r.x1);
        let b0 = ys.partition_point(|&y| y < r.y0);
        let b1 = ys.partition_point(|&y| y < r.y1);
        for a in a0..a1 {
            covered[a * cols + b0..a * cols + b1].fill(true);
        }
    }
    let mut area = 0;
    for a in 0..xs.len() - 1 {
        for b in 0..cols {
            if covered[a * cols + b] {
                area += (xs[a + 1] - xs[a]) as u64 * (ys[b + 1] - ys[b]) as u64;
            }
        }
    }
    area
}

fn intervals_overlap(a0: Length, a1: Length, b0: Length, b1: Length) -> bool {
    a0 < b1 && b0 < a1
}

/// Positive-volume intersection of the box at `pos` with placement `p`.
pub fn boxes_overlap(pos: Point, dims: Dims, p: &Placement) -> bool {
    intervals_overlap(pos.x, pos.x + dims.w, p.position.x, p.x_max())
        && intervals_overlap(pos.y, pos.y + dims.d, p.position.y, p.y_max())
        && intervals_overlap(pos.z, pos.z + dims.h, p.position.z, p.z_max())
}

pub fn within_pallet(pallet: &Pallet, pos: Point, dims: Dims) -> bool {
    pos.x as u64 + dims.w as u64 <= pallet.width as u64
        && pos.y as u64 + dims.d as u64 <= pallet.depth as u64
        && pos.z as u64 + dims.h as u64 <= pallet.max_height as u64
}

pub fn check_overlap_bounds(state: &PackingState, pos: Point, dims: Dims) -> bool {
    within_pallet(&state.pallet, pos, dims)
        && !state.placements.iter().any(|p| boxes_overlap(pos, dims, p))
}

/// True when no loaded unit whose footprint meets the candidate's footprint
/// rises above the candidate's bottom. Units arrive from above, so nothing
/// goes in underneath an earlier unit.
pub fn clears_envelope(state: &PackingState, pos: Point, dims: Dims) -> bool {
    state.placements.iter().all(|p| {
        !(intervals_overlap(pos.x, pos.x + dims.w, p.position.x, p.x_max())
            && intervals_overlap(pos.y, pos.y + dims.d, p.position.y, p.y_max()))
            || p.z_max() <= pos.z
    })
}

fn within_gap(plane: Length, surface: Length, gap: Length) -> bool {
    surface <= plane && plane - surface <= gap
}

/// Supported fraction of the bottom face.
pub fn vertical_support(state: &PackingState, pos: Point, dims: Dims, gap: Length) -> f64 {
    if pos.z <= gap {
        return 1.0;
    }
    let footprint = Rect::new(pos.x, pos.y, pos.x + dims.w, pos.y + dims.d);
    let tops: Vec<Rect> = state
        .placements
        .iter()
        .filter(|p| within_gap(pos.z, p.z_max(), gap))
        .filter_map(|p| Rect::new(p.position.x, p.position.y, p.x_max(), p.y_max()).clip(&footprint))
        .collect();
    union_area(&tops) as f64 / footprint.area() as f64
}

/// Supported fractions of the faces with normals `-x` and `-y`.
pub fn horizontal_support(state: &PackingState, pos: Point, dims: Dims, gap: Length) -> (f64, f64) {
    let fx = if pos.x <= gap {
        1.0
    } else {
        // Face in the (y, z) plane.
        let face = Rect::new(pos.y, pos.z, pos.y + dims.d, pos.z + dims.h);
        let backs: Vec<Rect> = state
            .placements
            .iter()
            .filter(|p| within_gap(pos.x, p.x_max(), gap))
            .filter_map(|p| Rect::new(p.position.y, p.position.z, p.y_max(), p.z_max()).clip(&face))
            .collect();
        union_area(&backs) as f64 / face.area() as f64
    };
    let fy = if pos.y <= gap {
        1.0
    } else {
        // Face in the (x, z) plane.
        let face = Rect::new(pos.x, pos.z, pos.x + dims.w, pos.z + dims.h);
        let backs: Vec<Rect> = state
            .placements
            .iter()
            .filter(|p| within_gap(pos.y, p.y_max(), gap))
            .filter_map(|p| Rect::new(p.position.x, p.position.z, p.x_max(), p.z_max()).clip(&face))
            .collect();
        union_area(&backs) as f64 / face.area() as f64
    };
    (fx, fy)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupportReport {
    pub vertical_fraction: f64,
    pub horiz_x_fraction: f64,
    pub horiz_y_fraction: f64,
    /// Inside the pallet and free of overlap.
    pub fits: bool,
    pub clears_envelope: bool,
    pub feasible: bool,
}

pub fn check_placement(state: &PackingState, pos: Point, dims: Dims, params: &SolverParams) -> SupportReport {
    let fits = check_overlap_bounds(state, pos, dims);
    let above = clears_envelope(state, pos, dims);
    let gap = params.gap_tolerance;
    let vertical = vertical_support(state, pos, dims, gap);
    let (hx, hy) = horizontal_support(state, pos, dims, gap);
    SupportReport {
        vertical_fraction: vertical,
        horiz_x_fraction: hx,
        horiz_y_fraction: hy,
        fits,
        clears_envelope: above,
        feasible: fits
            && above
            && vertical >= params.vertical_support_min
            && hx >= params.horizontal_support_min_x
            && hy >= params.horizontal_support_min_y,
    }
}

/// A constraint broken by a stored configuration.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    UnknownUnit(String),
    /// Unit appears out of picking order or twice.
    OrderNotIncreasing { id: String },
    DimsMismatch { id: String },
    OutOfBounds { id: String },
    Overlap { id: String, other: String },
    BelowEnvelope { id: String },
    VerticalSupport { id: String, fraction: f64, min: f64 },
    HorizontalSupportX { id: String, fraction: f64, min: f64 },
    HorizontalSupportY { id: String, fraction: f64, min: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownUnit(id) => write!(f, "unit `{id}` is not part of the instance"),
            Violation::OrderNotIncreasing { id } => {
                write!(f, "unit `{id}` breaks the picking order")
            }
            Violation::DimsMismatch { id } => {
                write!(f, "unit `{id}`: dimensions do not match the declared unit")
            }
            Violation::OutOfBounds { id } => write!(f, "unit `{id}` exceeds the pallet boundaries"),
            Violation::Overlap { id, other } => write!(f, "unit `{id}` overlaps unit `{other}`"),
            Violation::BelowEnvelope { id } => {
                write!(f, "unit `{id}` sits below an earlier unit")
            }
            Violation::VerticalSupport { id, fraction, min } => {
                write!(f, "unit `{id}`: vertical support {fraction:.4} below minimum {min}")
            }
            Violation::HorizontalSupportX { id, fraction, min } => {
                write!(f, "unit `{id}`: horizontal support (-x face) {fraction:.4} below minimum {min}")
            }
            Violation::HorizontalSupportY { id, fraction, min } => {
                write!(f, "unit `{id}`: horizontal support (-y face) {fraction:.4} below minimum {min}")
            }
        }
    }
}

/// Replays `placements` in order, checking each against only the units
/// loaded before it.
pub fn validate_configuration(
    units: &[TransportUnit],
    pallet: &Pallet,
    params: &SolverParams,
    placements: &[Placement],
) -> Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    let mut state = PackingState::new(*pallet);
    let mut last_order: Option<usize> = None;
    for p in placements {
        let Some(unit) = units.iter().find(|u| u.id == p.unit_id) else {
            violations.push(Violation::UnknownUnit(p.unit_id.clone()));
            continue;
        };
        let id = unit.id.clone();
        if last_order.is_some_and(|last| unit.order_index <= last) {
            violations.push(Violation::OrderNotIncreasing { id: id.clone() });
        }
        last_order = Some(unit.order_index);
        if p.dims != crate::model::oriented(unit, p.rotated) || p.unit != unit.order_index {
            violations.push(Violation::DimsMismatch { id: id.clone() });
        }
        if !within_pallet(pallet, p.position, p.dims) {
            violations.push(Violation::OutOfBounds { id: id.clone() });
        }
        for q in state.placements.iter().filter(|q| boxes_overlap(p.position, p.dims, q)) {
            violations.push(Violation::Overlap { id: id.clone(), other: q.unit_id.clone() });
        }
        let report = check_placement(&state, p.position, p.dims, params);
        if !report.clears_envelope {
            violations.push(Violation::BelowEnvelope { id: id.clone() });
        }
        if report.vertical_fraction < params.vertical_support_min {
            violations.push(Violation::VerticalSupport {
                id: id.clone(),
                fraction: report.vertical_fraction,
                min: params.vertical_support_min,
            });
        }
        if report.horiz_x_fraction < params.horizontal_support_min_x {
            violations.push(Violation::HorizontalSupportX {
                id: id.clone(),
                fraction: report.horiz_x_fraction,
                min: params.horizontal_support_min_x,
            });
        }
        if report.horiz_y_fraction < params.horizontal_support_min_y {
            violations.push(Violation::HorizontalSupportY {
                id,
                fraction: report.horiz_y_fraction,
                min: params.horizontal_support_min_y,
            });
        }
        state.push(p.clone());
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}
