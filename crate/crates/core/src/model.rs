//! Domain types shared by every module.
//!
//! All geometry is integer millimeters in the pallet frame: the origin sits at
//! one pallet corner, `x` runs along the width, `y` along the depth and `z`
//! upwards. Units stay axis-aligned; the only rotation is 90° about `z`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::InstanceError;

/// Length along one pallet axis, in millimeters.
pub type Length = u32;
/// Volume in cubic millimeters.
pub type Volume = u64;

/// Extents of an axis-aligned box along `x`, `y` and `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dims {
    pub w: Length,
    pub d: Length,
    pub h: Length,
}

impl Dims {
    pub const fn new(w: Length, d: Length, h: Length) -> Self {
        Dims { w, d, h }
    }

    pub fn is_valid(&self) -> bool {
        self.w > 0 && self.d > 0 && self.h > 0
    }

    pub fn volume(&self) -> Volume {
        volume(*self)
    }

    /// The same box turned 90° about the vertical axis.
    pub fn rotated(&self) -> Dims {
        Dims::new(self.d, self.w, self.h)
    }

    pub fn base_area(&self) -> u64 {
        self.w as u64 * self.d as u64
    }
}

pub fn volume(dims: Dims) -> Volume {
    dims.w as u64 * dims.d as u64 * dims.h as u64
}

/// A point in the pallet frame.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: Length,
    pub y: Length,
    pub z: Length,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0, z: 0 };

    pub const fn new(x: Length, y: Length, z: Length) -> Self {
        Point { x, y, z }
    }
}

/// An item to load, with its slot in the picking sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportUnit {
    pub id: String,
    pub dims: Dims,
    pub order_index: usize,
}

impl TransportUnit {
    pub fn new(id: impl Into<String>, dims: Dims, order_index: usize) -> Self {
        TransportUnit { id: id.into(), dims, order_index }
    }

    pub fn volume(&self) -> Volume {
        self.dims.volume()
    }
}

/// Dims of `unit` as declared, or with `w` and `d` swapped when `rotated`.
pub fn oriented(unit: &TransportUnit, rotated: bool) -> Dims {
    if rotated {
        unit.dims.rotated()
    } else {
        unit.dims
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pallet {
    pub width: Length,
    pub depth: Length,
    pub max_height: Length,
}

impl Pallet {
    pub const fn new(width: Length, depth: Length, max_height: Length) -> Self {
        Pallet { width, depth, max_height }
    }

    pub fn is_valid(&self) -> bool {
        self.width > 0 && self.depth > 0 && self.max_height > 0
    }

    pub fn volume(&self) -> Volume {
        self.width as u64 * self.depth as u64 * self.max_height as u64
    }
}

/// A unit sitting at a position in a given orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    /// Index of the unit in the picking order.
    pub unit: usize,
    pub unit_id: String,
    pub position: Point,
    pub dims: Dims,
    pub rotated: bool,
}

impl Placement {
    pub fn new(unit: &TransportUnit, position: Point, rotated: bool) -> Self {
        Placement {
            unit: unit.order_index,
            unit_id: unit.id.clone(),
            position,
            dims: oriented(unit, rotated),
            rotated,
        }
    }

    pub fn volume(&self) -> Volume {
        self.dims.volume()
    }

    pub fn x_max(&self) -> Length {
        self.position.x + self.dims.w
    }

    pub fn y_max(&self) -> Length {
        self.position.y + self.dims.d
    }

    pub fn z_max(&self) -> Length {
        self.position.z + self.dims.h
    }
}

/// The loaded units of one pallet, in loading order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingState {
    pub pallet: Pallet,
    pub placements: Vec<Placement>,
}

impl PackingState {
    pub fn new(pallet: Pallet) -> Self {
        PackingState { pallet, placements: Vec::new() }
    }

    pub fn with_placements(pallet: Pallet, placements: Vec<Placement>) -> Self {
        PackingState { pallet, placements }
    }

    pub fn is_empty(&self) -> bool {
        self.placements.is_empty()
    }

    pub fn len(&self) -> usize {
        self.placements.len()
    }

    pub fn loaded_volume(&self) -> Volume {
        self.placements.iter().map(Placement::volume).sum()
    }

    pub fn push(&mut self, placement: Placement) {
        self.placements.push(placement);
    }

    pub fn with(&self, placement: Placement) -> PackingState {
        let mut next = self.clone();
        next.push(placement);
        next
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMode {
    /// Optimum of the 0-1 knapsack over the remaining volumes.
    #[default]
    #[serde(alias = "exact")]
    ExactKnapsack,
    /// Fractional relaxation, `min(sum of volumes, capacity)`.
    #[serde(alias = "lp")]
    LpRelaxation,
}

/// Tunables of one solver run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverParams {
    /// Minimum supported fraction of the bottom face.
    pub vertical_support_min: f64,
    /// Minimum supported fraction of the face with normal `-x`.
    pub horizontal_support_min_x: f64,
    /// Minimum supported fraction of the face with normal `-y`.
    pub horizontal_support_min_y: f64,
    /// Largest distance between a supporting and a supported surface.
    pub gap_tolerance: Length,
    pub p_x: Length,
    pub p_y: Length,
    pub p_z: Length,
    /// Children kept per node after ranking.
    pub max_branches: usize,
    pub time_limit_ms: u64,
    pub bound_mode: BoundMode,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams {
            vertical_support_min: 0.8,
            horizontal_support_min_x: 0.0,
            horizontal_support_min_y: 0.0,
            gap_tolerance: 0,
            p_x: 0,
            p_y: 0,
            p_z: 0,
            max_branches: 4,
            time_limit_ms: 300_000,
            bound_mode: BoundMode::ExactKnapsack,
        }
    }
}

impl SolverParams {
    /// Every threshold disabled; anything that fits without overlap is feasible.
    pub fn permissive() -> Self {
        SolverParams {
            vertical_support_min: 0.0,
            ..SolverParams::default()
        }
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        let fractions = [
            ("vertical_support_min", self.vertical_support_min),
            ("horizontal_support_min_x", self.horizontal_support_min_x),
            ("horizontal_support_min_y", self.horizontal_support_min_y),
        ];
        for (field, value) in fractions {
            if !(0.0..=1.0).contains(&value) {
                return Err(InstanceError::InvalidParam {
                    field,
                    reason: format!("must be a fraction in [0, 1], got {value}"),
                });
            }
        }
        if self.max_branches == 0 {
            return Err(InstanceError::InvalidParam {
                field: "max_branches",
                reason: "must be at least 1".into(),
            });
        }
        if self.time_limit_ms == 0 {
            return Err(InstanceError::InvalidParam {
                field: "time_limit_ms",
                reason: "must be positive".into(),
            });
        }
        Ok(())
    }
}

/// Counters collected during one solver run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    pub nodes_pruned_by_bound: u64,
    pub candidates_evaluated: u64,
    pub elapsed_ms: u64,
    pub timed_out: bool,
}

/// Best pallet configuration found by a run.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub placements: Vec<Placement>,
    pub placed_volume: Volume,
    pub utilization: f64,
    pub stats: SearchStats,
}

impl Solution {
    pub fn from_placements(pallet: &Pallet, placements: Vec<Placement>, stats: SearchStats) -> Self {
        let placed_volume: Volume = placements.iter().map(Placement::volume).sum();
        Solution {
            placements,
            placed_volume,
            utilization: placed_volume as f64 / pallet.volume() as f64,
            stats,
        }
    }
}

/// Checks the unit list: positive dims, unique ids, `order_index` equal to
/// the list position.
pub fn validate_units(units: &[TransportUnit]) -> Result<(), InstanceError> {
    let mut seen = HashSet::with_capacity(units.len());
    for (position, unit) in units.iter().enumerate() {
        for (field, value) in [("w", unit.dims.w), ("d", unit.dims.d), ("h", unit.dims.h)] {
            if value == 0 {
                return Err(InstanceError::NonPositiveDimension {
                    id: unit.id.clone(),
                    field,
                });
            }
        }
        if !seen.insert(unit.id.as_str()) {
            return Err(InstanceError::DuplicateId(unit.id.clone()));
        }
        if unit.order_index != position {
            return Err(InstanceError::OrderIndex {
                id: unit.id.clone(),
                expected: position,
                found: unit.order_index,
            });
        }
    }
    Ok(())
}

pub fn validate_pallet(pallet: &Pallet) -> Result<(), InstanceError> {
    for (field, value) in [
        ("width", pallet.width),
        ("depth", pallet.depth),
        ("max_height", pallet.max_height),
    ] {
        if value == 0 {
            return Err(InstanceError::NonPositivePallet { field });
        }
    }
    Ok(())
}

/// Builds a unit list in picking order from bare dimensions, with ids `u0`, `u1`, ...
pub fn units_from_dims(dims: &[Dims]) -> Vec<TransportUnit> {
    dims
        .iter()
        .enumerate()
        .map(|(i, d)| TransportUnit::new(format!("u{i}"), *d, i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn volume_examples() {
        assert_eq!(volume(Dims::new(1, 1, 1)), 1);
        assert_eq!(volume(Dims::new(2, 3, 4)), 24);
        assert_eq!(volume(Dims::new(1000, 800, 600)), 480_000_000);
    }

    #[test]
    fn oriented_examples() {
        let u = TransportUnit::new("a", Dims::new(2, 3, 4), 0);
        assert_eq!(oriented(&u, false), Dims::new(2, 3, 4));
        assert_eq!(oriented(&u, true), Dims::new(3, 2, 4));
        let sq = TransportUnit::new("b", Dims::new(5, 5, 1), 0);
        assert_eq!(oriented(&sq, true), Dims::new(5, 5, 1));
    }

    #[test]
    fn unit_validation_errors() {
        let mut units = units_from_dims(&[Dims::new(1, 1, 1), Dims::new(2, 2, 2)]);
        assert!(validate_units(&units).is_ok());

        units[1].id = "u0".into();
        assert_eq!(validate_units(&units), Err(InstanceError::DuplicateId("u0".into())));

        let mut units = units_from_dims(&[Dims::new(1, 0, 1)]);
        assert!(matches!(
            validate_units(&units),
            Err(InstanceError::NonPositiveDimension { field: "d", .. })
        ));
        units[0].dims.d = 1;
        units[0].order_index = 3;
        assert!(matches!(validate_units(&units), Err(InstanceError::OrderIndex { .. })));
    }

    #[test]
    fn params_validation() {
        assert!(SolverParams::default().validate().is_ok());
        let p = SolverParams { vertical_support_min: 1.5, ..Default::default() };
        assert!(p.validate().is_err());
        let p = SolverParams { max_branches: 0, ..Default::default() };
        assert!(p.validate().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn rotation_is_involution(w in 1u32..500, d in 1u32..500, h in 1u32..500) {
                let dims = Dims::new(w, d, h);
                prop_assert_eq!(dims.rotated().rotated(), dims);
                let u = TransportUnit::new("x", dims, 0);
                prop_assert_eq!(volume(oriented(&u, false)), volume(oriented(&u, true)));
            }
        }
    }
}
