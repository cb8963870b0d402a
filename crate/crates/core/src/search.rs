//! Depth-first branch and bound over the picking order.
//!
//! A node is a packing state together with the index of the next unit in the
//! picking order. Expanding it for unit `u` produces one child per ranked
//! placement of `u` (best first) followed by the branch that skips `u` for
//! good. Each child and the skip branch is entered only while its upper
//! bound beats the incumbent. Starting from the empty pallet, the skip
//! branches of the root make every unit in turn the first one loaded at the
//! origin.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::bounds::node_upper_bound;
use crate::error::InstanceError;
use crate::extreme;
use crate::feasibility::check_placement;
use crate::model::{
    validate_pallet, validate_units, PackingState, Pallet, Placement, Point, SearchStats, Solution,
    SolverParams, TransportUnit, Volume,
};
use crate::scoring::{evaluate, rank_and_cut, rank_order, ScoredCandidate};

/// One step of the search, in the order it happened.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum TraceEvent {
    /// Candidates were generated for `unit` on a state holding `depth` units.
    Expand { depth: usize, unit: usize, candidates: usize },
    /// `unit` was added on top of the first `depth` placements of the path.
    Place { depth: usize, unit: usize, x: u32, y: u32, z: u32, rotated: bool },
    /// The current path became the best configuration.
    Incumbent { volume: Volume, units: usize },
    /// The search moves past `unit` without loading it.
    Skip { depth: usize, unit: usize },
    /// A branch was cut: placing `unit` when `placed`, skipping it otherwise.
    Prune { depth: usize, unit: usize, placed: bool, bound: Volume, incumbent: Volume },
    /// Every branch below a state of `depth` units is done.
    Backtrack { depth: usize },
    Timeout,
}

/// Every feasible `(position, orientation)` for `unit`, in rank order.
///
/// Square-based units are only tried unrotated; the turned box is identical.
pub fn feasible_candidates(
    state: &PackingState,
    unit: &TransportUnit,
    params: &SolverParams,
    evaluated: &mut u64,
) -> Vec<ScoredCandidate> {
    let orientations: &[bool] = if unit.dims.w == unit.dims.d { &[false] } else { &[false, true] };
    let mut out = Vec::new();
    for point in extreme::generate(state) {
        for &rotated in orientations {
            let dims = crate::model::oriented(unit, rotated);
            *evaluated += 1;
            let report = check_placement(state, point.coords, dims, params);
            if report.feasible {
                out.push(ScoredCandidate {
                    position: point.coords,
                    rotated,
                    score: evaluate(state, point.coords, dims, params),
                    report,
                });
            }
        }
    }
    out.sort_by(rank_order);
    out
}

struct Search<'a> {
    units: &'a [TransportUnit],
    volumes: Vec<Volume>,
    params: &'a SolverParams,
    deadline: Instant,
    best: Vec<Placement>,
    best_volume: Volume,
    stats: SearchStats,
    trace: Option<Vec<TraceEvent>>,
}

impl Search<'_> {
    fn emit(&mut self, event: impl FnOnce() -> TraceEvent) {
        if let Some(trace) = self.trace.as_mut() {
            trace.push(event());
        }
    }

    fn out_of_time(&mut self) -> bool {
        if !self.stats.timed_out && Instant::now() >= self.deadline {
            self.stats.timed_out = true;
            self.emit(|| TraceEvent::Timeout);
        }
        self.stats.timed_out
    }

    fn explore(&mut self, state: &mut PackingState, from: usize) {
        let n = self.units.len();
        let depth = state.len();
        for u in from..n {
            if self.out_of_time() {
                return;
            }
            self.stats.nodes_expanded += 1;
            let unit = &self.units[u];
            let all = feasible_candidates(state, unit, self.params, &mut self.stats.candidates_evaluated);
            let children = rank_and_cut(all, self.params.max_branches);
            self.emit(|| TraceEvent::Expand { depth, unit: u, candidates: children.len() });

            for child in &children {
                let placement = Placement::new(unit, child.position, child.rotated);
                let Point { x, y, z } = child.position;
                self.emit(|| TraceEvent::Place { depth, unit: u, x, y, z, rotated: child.rotated });
                state.push(placement);
                let loaded = state.loaded_volume();
                if loaded > self.best_volume {
                    self.best_volume = loaded;
                    self.best = state.placements.clone();
                    self.emit(|| TraceEvent::Incumbent { volume: loaded, units: depth + 1 });
                }
                if u + 1 < n {
                    let bound = node_upper_bound(state, &self.volumes[u + 1..], self.params.bound_mode);
                    if bound > self.best_volume {
                        self.explore(state, u + 1);
                    } else {
                        self.stats.nodes_pruned_by_bound += 1;
                        let incumbent = self.best_volume;
                        self.emit(|| TraceEvent::Prune { depth, unit: u, placed: true, bound, incumbent });
                    }
                }
                state.placements.pop();
                if self.stats.timed_out {
                    return;
                }
            }

            if u + 1 < n {
                let bound = node_upper_bound(state, &self.volumes[u + 1..], self.params.bound_mode);
                if bound <= self.best_volume {
                    self.stats.nodes_pruned_by_bound += 1;
                    let incumbent = self.best_volume;
                    self.emit(|| TraceEvent::Prune { depth, unit: u, placed: false, bound, incumbent });
                    break;
                }
            }
            self.emit(|| TraceEvent::Skip { depth, unit: u });
        }
        self.emit(|| TraceEvent::Backtrack { depth });
    }
}

pub fn validate_instance(
    units: &[TransportUnit],
    pallet: &Pallet,
    params: &SolverParams,
) -> Result<(), InstanceError> {
    if units.is_empty() {
        return Err(InstanceError::NoUnits);
    }
    validate_pallet(pallet)?;
    validate_units(units)?;
    params.validate()
}

fn run(
    units: &[TransportUnit],
    pallet: &Pallet,
    params: &SolverParams,
    trace: Option<Vec<TraceEvent>>,
) -> Result<(Solution, Option<Vec<TraceEvent>>), InstanceError> {
    validate_instance(units, pallet, params)?;
    let started = Instant::now();
    let mut search = Search {
        units,
        volumes: units.iter().map(TransportUnit::volume).collect(),
        params,
        deadline: started + Duration::from_millis(params.time_limit_ms),
        best: Vec::new(),
        best_volume: 0,
        stats: SearchStats::default(),
        trace,
    };
    let mut state = PackingState::new(*pallet);
    search.explore(&mut state, 0);
    let mut stats = search.stats;
    stats.elapsed_ms = started.elapsed().as_millis() as u64;
    Ok((Solution::from_placements(pallet, search.best, stats), search.trace))
}

/// Best configuration found before the tree is exhausted or time runs out.
pub fn solve(units: &[TransportUnit], pallet: &Pallet, params: &SolverParams) -> Result<Solution, InstanceError> {
    run(units, pallet, params, None).map(|(solution, _)| solution)
}

/// [`solve`], also returning every search event.
pub fn solve_with_trace(
    units: &[TransportUnit],
    pallet: &Pallet,
    params: &SolverParams,
) -> Result<(Solution, Vec<TraceEvent>), InstanceError> {
    run(units, pallet, params, Some(Vec::new())).map(|(solution, trace)| (solution, trace.unwrap_or_default()))
}

/// Rebuilds the incumbent from the `place` and `incumbent` events of a trace.
///
/// Fails if an incumbent event does not match the path it claims.
pub fn replay_incumbent(units: &[TransportUnit], events: &[TraceEvent]) -> Result<Vec<Placement>, String> {
    let mut path: Vec<Placement> = Vec::new();
    let mut best = Vec::new();
    for (i, event) in events.iter().enumerate() {
        match *event {
            TraceEvent::Place { depth, unit, x, y, z, rotated } => {
                if depth > path.len() {
                    return Err(format!("event {i}: place at depth {depth} above a path of {}", path.len()));
                }
                let unit = units.get(unit).ok_or_else(|| format!("event {i}: unknown unit {unit}"))?;
                path.truncate(depth);
                path.push(Placement::new(unit, Point::new(x, y, z), rotated));
            }
            TraceEvent::Incumbent { volume, units: count } => {
                let loaded: Volume = path.iter().map(Placement::volume).sum();
                if count != path.len() || loaded != volume {
                    return Err(format!("event {i}: incumbent does not match the current path"));
                }
                best = path.clone();
            }
            _ => {}
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{units_from_dims, BoundMode, Dims};

    fn permissive() -> SolverParams {
        SolverParams { vertical_support_min: 0.0, ..SolverParams::default() }
    }

    #[test]
    fn single_unit_goes_to_origin() {
        let units = units_from_dims(&[Dims::new(2, 2, 1)]);
        let pallet = Pallet::new(4, 3, 10);
        let sol = solve(&units, &pallet, &permissive()).unwrap();
        assert_eq!(sol.placements.len(), 1);
        assert_eq!(sol.placements[0].position, Point::ORIGIN);
        assert_eq!(sol.placed_volume, 4);
        assert!((sol.utilization - 4.0 / 120.0).abs() < 1e-15);
        assert!(!sol.stats.timed_out);
    }

    #[test]
    fn oversized_unit_never_places() {
        let units = units_from_dims(&[Dims::new(5, 5, 5)]);
        let sol = solve(&units, &Pallet::new(4, 3, 10), &permissive()).unwrap();
        assert!(sol.placements.is_empty());
        assert_eq!(sol.utilization, 0.0);
    }

    #[test]
    fn three_cubes_fill_small_pallet() {
        let units = units_from_dims(&[Dims::new(2, 2, 1); 3]);
        let sol = solve(&units, &Pallet::new(4, 2, 2), &permissive()).unwrap();
        assert_eq!(sol.placed_volume, 12);
    }

    #[test]
    fn skipping_lets_later_units_in() {
        // The first unit fits but blocks the two that together fill the pallet.
        let units = units_from_dims(&[Dims::new(3, 2, 1), Dims::new(2, 2, 1), Dims::new(2, 2, 1)]);
        let sol = solve(&units, &Pallet::new(4, 2, 1), &permissive()).unwrap();
        assert_eq!(sol.placed_volume, 8);
        let order: Vec<usize> = sol.placements.iter().map(|p| p.unit).collect();
        assert_eq!(order, vec![1, 2]);
    }

    #[test]
    fn rejects_invalid_instances() {
        let pallet = Pallet::new(4, 3, 10);
        assert_eq!(solve(&[], &pallet, &permissive()), Err(InstanceError::NoUnits));
        let units = units_from_dims(&[Dims::new(0, 1, 1)]);
        assert!(solve(&units, &pallet, &permissive()).is_err());
    }

    #[test]
    fn trace_of_single_unit() {
        let units = units_from_dims(&[Dims::new(2, 2, 1)]);
        let (sol, trace) = solve_with_trace(&units, &Pallet::new(4, 3, 10), &permissive()).unwrap();
        let places = trace.iter().filter(|e| matches!(e, TraceEvent::Place { .. })).count();
        let incumbents = trace.iter().filter(|e| matches!(e, TraceEvent::Incumbent { .. })).count();
        assert_eq!((places, incumbents), (1, 1));
        assert_eq!(replay_incumbent(&units, &trace).unwrap(), sol.placements);
    }

    #[test]
    fn unit_that_never_fits_is_skipped_once_per_branch() {
        let units = units_from_dims(&[Dims::new(2, 3, 1), Dims::new(9, 9, 9), Dims::new(2, 3, 1)]);
        let (sol, trace) = solve_with_trace(&units, &Pallet::new(4, 3, 10), &permissive()).unwrap();
        let expands = trace
            .iter()
            .filter(|e| matches!(e, TraceEvent::Expand { unit: 1, .. }))
            .count();
        let skips = trace
            .iter()
            .filter(|e| matches!(e, TraceEvent::Skip { unit: 1, .. }))
            .count();
        assert!(expands > 0);
        assert_eq!(skips, expands);
        assert_eq!(sol.placed_volume, 12);
    }

    #[test]
    fn bound_prunes_hopeless_remainder() {
        let units = units_from_dims(&[Dims::new(4, 3, 10), Dims::new(1, 1, 1)]);
        let (sol, trace) = solve_with_trace(&units, &Pallet::new(4, 3, 10), &permissive()).unwrap();
        assert_eq!(sol.placed_volume, 120);
        let pos = trace.iter().position(|e| matches!(e, TraceEvent::Prune { .. })).unwrap();
        assert!(trace[pos + 1..].iter().all(|e| !matches!(e, TraceEvent::Expand { .. })));
        assert!(sol.stats.nodes_pruned_by_bound >= 1);
        assert_eq!(sol.stats.nodes_expanded, 1);
    }

    #[test]
    fn relaxation_mode_reaches_same_volume() {
        let units = units_from_dims(&[Dims::new(2, 2, 1), Dims::new(3, 1, 1), Dims::new(2, 2, 1), Dims::new(1, 3, 1)]);
        let pallet = Pallet::new(4, 3, 2);
        let exact = solve(&units, &pallet, &SolverParams { max_branches: 1000, ..permissive() }).unwrap();
        let lp = solve(
            &units,
            &pallet,
            &SolverParams { max_branches: 1000, bound_mode: BoundMode::LpRelaxation, ..permissive() },
        )
        .unwrap();
        assert_eq!(exact.placed_volume, lp.placed_volume);
        assert!(lp.stats.nodes_expanded >= exact.stats.nodes_expanded);
    }

    #[test]
    fn runs_are_deterministic() {
        let units = units_from_dims(&[
            Dims::new(3, 2, 2),
            Dims::new(2, 2, 1),
            Dims::new(1, 2, 3),
            Dims::new(2, 1, 1),
            Dims::new(2, 2, 2),
        ]);
        let pallet = Pallet::new(5, 4, 4);
        let params = SolverParams::default();
        let a = solve(&units, &pallet, &params).unwrap();
        let b = solve(&units, &pallet, &params).unwrap();
        assert_eq!(a.placements, b.placements);
        assert_eq!(a.stats.nodes_expanded, b.stats.nodes_expanded);
    }
}
