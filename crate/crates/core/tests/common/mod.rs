#![allow(dead_code)]

use palletpack::feasibility::check_overlap_bounds;
use palletpack::{BoundMode, Dims, PackingState, Pallet, Placement, Point, SolverParams, TransportUnit};
use rand::rngs::StdRng;
use rand::Rng;

/// Non-overlapping boxes dropped at random positions; no support required.
pub fn random_state(rng: &mut StdRng, max_units: usize, max_side: u32) -> PackingState {
    let pallet = Pallet::new(
        rng.gen_range(3..=max_side),
        rng.gen_range(3..=max_side),
        rng.gen_range(3..=max_side),
    );
    let mut state = PackingState::new(pallet);
    let target = rng.gen_range(0..=max_units);
    let mut attempts = 0;
    while state.len() < target && attempts < 200 {
        attempts += 1;
        let dims = Dims::new(
            rng.gen_range(1..=pallet.width.div_ceil(2)),
            rng.gen_range(1..=pallet.depth.div_ceil(2)),
            rng.gen_range(1..=pallet.max_height.div_ceil(2)),
        );
        let at = Point::new(
            rng.gen_range(0..=pallet.width - dims.w),
            rng.gen_range(0..=pallet.depth - dims.d),
            rng.gen_range(0..=pallet.max_height - dims.h),
        );
        if check_overlap_bounds(&state, at, dims) {
            let i = state.len();
            let unit = TransportUnit::new(format!("r{i}"), dims, i);
            state.push(Placement::new(&unit, at, false));
        }
    }
    state
}

pub fn random_units(rng: &mut StdRng, n: usize, lo: u32, hi: u32, hi_h: u32) -> Vec<TransportUnit> {
    (0..n)
        .map(|i| {
            let dims = Dims::new(rng.gen_range(lo..=hi), rng.gen_range(lo..=hi), rng.gen_range(lo..=hi_h));
            TransportUnit::new(format!("t{i}"), dims, i)
        })
        .collect()
}

pub fn random_params(rng: &mut StdRng) -> SolverParams {
    let pick = |rng: &mut StdRng, options: &[f64]| options[rng.gen_range(0..options.len())];
    SolverParams {
        vertical_support_min: pick(rng, &[0.0, 0.5, 0.8, 1.0]),
        horizontal_support_min_x: pick(rng, &[0.0, 0.0, 0.3, 0.5]),
        horizontal_support_min_y: pick(rng, &[0.0, 0.0, 0.3, 0.5]),
        gap_tolerance: rng.gen_range(0..=1),
        p_x: rng.gen_range(0..=1),
        p_y: rng.gen_range(0..=1),
        p_z: rng.gen_range(0..=1),
        max_branches: rng.gen_range(1..=6),
        time_limit_ms: 60_000,
        bound_mode: if rng.gen_bool(0.8) { BoundMode::ExactKnapsack } else { BoundMode::LpRelaxation },
    }
}

/// Small instance: up to `max_units` units of side 1..=4 on a pallet of side 4..=8.
pub fn small_instance(rng: &mut StdRng, max_units: usize) -> (Vec<TransportUnit>, Pallet, SolverParams) {
    let pallet = Pallet::new(rng.gen_range(4..=8), rng.gen_range(4..=8), rng.gen_range(3..=6));
    let n = rng.gen_range(1..=max_units);
    let units = random_units(rng, n, 1, 4, 3);
    (units, pallet, random_params(rng))
}

/// A euro-pallet load of standard-looking cartons.
pub fn forty_unit_instance(seed: u64) -> (Vec<TransportUnit>, Pallet) {
    use rand::SeedableRng;
    let mut rng = StdRng::seed_from_u64(seed);
    let sides = [200u32, 250, 300, 400, 600];
    let heights = [150u32, 200, 250, 300];
    let units = (0..40)
        .map(|i| {
            let dims = Dims::new(
                sides[rng.gen_range(0..sides.len())],
                sides[rng.gen_range(0..sides.len())],
                heights[rng.gen_range(0..heights.len())],
            );
            TransportUnit::new(format!("c{i:02}"), dims, i)
        })
        .collect();
    (units, Pallet::new(1200, 800, 1500))
}
