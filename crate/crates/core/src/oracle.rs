//! Brute-force reference implementations used to cross-check the solver.
//!
//! Nothing here is fast. Each routine recomputes its answer from first
//! principles: voxels instead of grids, a dense table instead of branch and
//! bound, and a full enumeration instead of a pruned search.

use crate::error::OracleError;
use crate::model::{PackingState, Pallet, Placement, SearchStats, Solution, SolverParams, TransportUnit, Volume};
use crate::search::{feasible_candidates, validate_instance};

/// Largest voxel grid the volume oracle will walk.
pub const MAX_VOXELS: u64 = 100_000_000;
/// Largest subset-sum table the knapsack oracle will allocate.
pub const MAX_TABLE: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub voxel_resolution: u32,
    pub max_units: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { voxel_resolution: 1, max_units: 6 }
    }
}

/// Counts the voxels of the pallet lying above every unit whose footprint
/// covers their column.
pub fn voxel_unused_volume(state: &PackingState, config: &OracleConfig) -> Result<Volume, OracleError> {
    let r = config.voxel_resolution.max(1);
    let Pallet { width, depth, max_height } = state.pallet;
    let mut aligned = [width, depth, max_height].iter().all(|v| v % r == 0);
    for p in &state.placements {
        aligned &= [p.position.x, p.position.y, p.position.z, p.x_max(), p.y_max(), p.z_max()]
            .iter()
            .all(|v| v % r == 0);
    }
    if !aligned {
        return Err(OracleError::Misaligned(r));
    }
    let (nx, ny, nz) = (width / r, depth / r, max_height / r);
    let cells = nx as u64 * ny as u64 * nz as u64;
    if cells > MAX_VOXELS {
        return Err(OracleError::ResolutionOverflow(cells));
    }
    let mut free = 0u64;
    for i in 0..nx {
        let x = i * r;
        for j in 0..ny {
            let y = j * r;
            let covering: Vec<&Placement> = state
                .placements
                .iter()
                .filter(|p| p.position.x <= x && x < p.x_max() && p.position.y <= y && y < p.y_max())
                .collect();
            for k in 0..nz {
                let z = k * r;
                if covering.iter().all(|p| p.z_max() <= z) {
                    free += 1;
                }
            }
        }
    }
    Ok(free * (r as u64).pow(3))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Classic subset-sum reachability table.
pub fn dp_knapsack(volumes: &[Volume], capacity: Volume) -> Result<Volume, OracleError> {
    let g = volumes.iter().fold(0, |g, &v| gcd(g, v)).max(1);
    let total: u64 = volumes.iter().map(|v| v / g).sum();
    let cap = (capacity / g).min(total);
    if cap > MAX_TABLE {
        return Err(OracleError::CapacityOverflow(cap));
    }
    let mut reachable = vec![false; cap as usize + 1];
    reachable[0] = true;
    for &v in volumes {
        let w = (v / g) as usize;
        if w == 0 {
            continue;
        }
        for s in (w..=cap as usize).rev() {
            if reachable[s - w] {
                reachable[s] = true;
            }
        }
    }
    let best = reachable.iter().rposition(|&r| r).unwrap_or(0);
    Ok(best as u64 * g)
}

struct Exhaustive<'a> {
    units: &'a [TransportUnit],
    params: &'a SolverParams,
    best: Vec<Placement>,
    best_volume: Volume,
    stats: SearchStats,
}

impl Exhaustive<'_> {
    fn visit(&mut self, state: &mut PackingState, from: usize) {
        for u in from..self.units.len() {
            self.stats.nodes_expanded += 1;
            let unit = &self.units[u];
            let all = feasible_candidates(state, unit, self.params, &mut self.stats.candidates_evaluated);
            for c in all {
                state.push(Placement::new(unit, c.position, c.rotated));
                let loaded = state.loaded_volume();
                if loaded > self.best_volume {
                    self.best_volume = loaded;
                    self.best = state.placements.clone();
                }
                self.visit(state, u + 1);
                state.placements.pop();
            }
        }
    }
}

/// Best configuration over every ranked candidate, with no branch cap and
/// no bound pruning. The time limit and branch cap in `params` are ignored.
pub fn exhaustive_solve(
    units: &[TransportUnit],
    pallet: &Pallet,
    params: &SolverParams,
    config: &OracleConfig,
) -> Result<Solution, OracleError> {
    if units.len() > config.max_units {
        return Err(OracleError::TooLarge { units: units.len(), limit: config.max_units });
    }
    validate_instance(units, pallet, params)?;
    let mut search = Exhaustive {
        units,
        params,
        best: Vec::new(),
        best_volume: 0,
        stats: SearchStats::default(),
    };
    search.visit(&mut PackingState::new(*pallet), 0);
    Ok(Solution::from_placements(pallet, search.best, search.stats))
}
