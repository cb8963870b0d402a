//! Instance and solution files.
//!
//! Both are JSON documents. An instance lists the pallet, the units in
//! picking order and optional solver parameters:
//!
//! ```json
//! {
//!   "pallet": { "width": 1200, "depth": 800, "max_height": 1500 },
//!   "units": [ { "id": "A", "w": 400, "d": 300, "h": 250 } ],
//!   "params": { "vertical_support_min": 0.8, "max_branches": 4 }
//! }
//! ```
//!
//! A solution records the loaded units by id with their positions and
//! orientation, the effective parameters and a digest of the pallet and unit
//! list it was computed for.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::InstanceError;
use crate::feasibility::{validate_configuration, Violation};
use crate::model::{Dims, Pallet, Placement, Point, Solution, SolverParams, TransportUnit, Volume};
use crate::search::validate_instance;

/// Parsed and validated instance.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub pallet: Pallet,
    pub units: Vec<TransportUnit>,
    pub params: SolverParams,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UnitRecord {
    id: String,
    w: u32,
    d: u32,
    h: u32,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    pallet: Option<Pallet>,
    units: Vec<UnitRecord>,
    #[serde(default)]
    params: SolverParams,
}

pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| InstanceError::Syntax(e.to_string()))?;
    let pallet = file.pallet.ok_or(InstanceError::MissingPallet)?;
    let units: Vec<TransportUnit> = file
        .units
        .into_iter()
        .enumerate()
        .map(|(i, u)| TransportUnit::new(u.id, Dims::new(u.w, u.d, u.h), i))
        .collect();
    validate_instance(&units, &pallet, &file.params)?;
    Ok(Instance { pallet, units, params: file.params })
}

fn unit_records(units: &[TransportUnit]) -> Vec<UnitRecord> {
    units
        .iter()
        .map(|u| UnitRecord { id: u.id.clone(), w: u.dims.w, d: u.dims.d, h: u.dims.h })
        .collect()
}

pub fn serialize_instance(instance: &Instance) -> String {
    let file = InstanceFile {
        pallet: Some(instance.pallet),
        units: unit_records(&instance.units),
        params: instance.params.clone(),
    };
    serde_json::to_string_pretty(&file).expect("instance serializes")
}

/// SHA-256 over the canonical pallet and unit list; parameters are excluded.
pub fn instance_digest(pallet: &Pallet, units: &[TransportUnit]) -> String {
    let canonical = serde_json::to_string(&(pallet, unit_records(units))).expect("instance serializes");
    let hash = Sha256::digest(canonical.as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacementRecord {
    pub id: String,
    pub x: u32,
    pub y: u32,
    pub z: u32,
    pub rotated: bool,
}

/// Run counters kept in solution files. Wall-clock time is left out so the
/// file depends only on the inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsRecord {
    pub nodes_expanded: u64,
    pub nodes_pruned_by_bound: u64,
    pub candidates_evaluated: u64,
    pub timed_out: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub instance_digest: String,
    pub placements: Vec<PlacementRecord>,
    pub placed_volume: Volume,
    pub utilization: f64,
    pub stats: StatsRecord,
    pub params_echo: SolverParams,
}

impl SolutionFile {
    pub fn new(instance: &Instance, params: &SolverParams, solution: &Solution) -> Self {
        SolutionFile {
            instance_digest: instance_digest(&instance.pallet, &instance.units),
            placements: solution
                .placements
                .iter()
                .map(|p| PlacementRecord {
                    id: p.unit_id.clone(),
                    x: p.position.x,
                    y: p.position.y,
                    z: p.position.z,
                    rotated: p.rotated,
                })
                .collect(),
            placed_volume: solution.placed_volume,
            utilization: solution.utilization,
            stats: StatsRecord {
                nodes_expanded: solution.stats.nodes_expanded,
                nodes_pruned_by_bound: solution.stats.nodes_pruned_by_bound,
                candidates_evaluated: solution.stats.candidates_evaluated,
                timed_out: solution.stats.timed_out,
            },
            params_echo: params.clone(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, InstanceError> {
        serde_json::from_str(text).map_err(|e| InstanceError::Syntax(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("solution serializes");
        text.push('\n');
        text
    }

    /// Rebuilds placements against the instance's units.
    pub fn rebuild_placements(&self, units: &[TransportUnit]) -> Result<Vec<Placement>, InstanceError> {
        self.placements
            .iter()
            .map(|r| {
                let unit = units
                    .iter()
                    .find(|u| u.id == r.id)
                    .ok_or_else(|| InstanceError::UnknownUnit(r.id.clone()))?;
                Ok(Placement::new(unit, Point::new(r.x, r.y, r.z), r.rotated))
            })
            .collect()
    }
}

/// A reason a solution file does not hold for an instance.
#[derive(Clone, Debug, PartialEq)]
pub enum SolutionIssue {
    DigestMismatch,
    Constraint(Violation),
    VolumeMismatch { recorded: Volume, actual: Volume },
    UtilizationMismatch { recorded: f64, actual: f64 },
}

impl std::fmt::Display for SolutionIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolutionIssue::DigestMismatch => f.write_str("solution was computed for a different instance"),
            SolutionIssue::Constraint(v) => write!(f, "{v}"),
            SolutionIssue::VolumeMismatch { recorded, actual } => {
                write!(f, "placed_volume {recorded} does not match the placements ({actual})")
            }
            SolutionIssue::UtilizationMismatch { recorded, actual } => {
                write!(f, "utilization {recorded} does not match the placements ({actual})")
            }
        }
    }
}

/// Re-checks every constraint of a stored solution, using the parameters it
/// echoes.
pub fn check_solution(instance: &Instance, file: &SolutionFile) -> Result<(), Vec<SolutionIssue>> {
    let mut issues = Vec::new();
    if file.instance_digest != instance_digest(&instance.pallet, &instance.units) {
        issues.push(SolutionIssue::DigestMismatch);
    }
    let mut placements = Vec::with_capacity(file.placements.len());
    for r in &file.placements {
        match instance.units.iter().find(|u| u.id == r.id) {
            Some(unit) => placements.push(Placement::new(unit, Point::new(r.x, r.y, r.z), r.rotated)),
            None => issues.push(SolutionIssue::Constraint(Violation::UnknownUnit(r.id.clone()))),
        }
    }
    if let Err(violations) =
        validate_configuration(&instance.units, &instance.pallet, &file.params_echo, &placements)
    {
        issues.extend(violations.into_iter().map(SolutionIssue::Constraint));
    }
    let actual: Volume = placements.iter().map(Placement::volume).sum();
    if actual != file.placed_volume {
        issues.push(SolutionIssue::VolumeMismatch { recorded: file.placed_volume, actual });
    }
    let util = actual as f64 / instance.pallet.volume() as f64;
    if (util - file.utilization).abs() > 1e-12 {
        issues.push(SolutionIssue::UtilizationMismatch { recorded: file.utilization, actual: util });
    }
    if issues.is_empty() {
        Ok(())
    } else {
        Err(issues)
    }
}
