//! Acceptance suite. Runs every criterion in sequence, prints one line per
//! criterion and fails the process if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use palletpack::bounds::{knapsack_upper_bound, BoundContext};
use palletpack::extreme::generate;
use palletpack::grid::unused_volume;
use palletpack::io::{check_solution, Instance, SolutionFile};
use palletpack::oracle::{dp_knapsack, exhaustive_solve, voxel_unused_volume, OracleConfig};
use palletpack::scoring::evaluate;
use palletpack::svg::render_svg;
use palletpack::{solve, BoundMode, Dims, PackingState, Pallet, Placement, Point, SolverParams, TransportUnit};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
/// Corner and dimensions of a box.
type BoxSpec = ((u32, u32, u32), (u32, u32, u32));
type Criterion = (&'static str, fn() -> Outcome);

fn state_of(pallet: Pallet, boxes: &[BoxSpec]) -> PackingState {
    let mut s = PackingState::new(pallet);
    for (i, (at, d)) in boxes.iter().enumerate() {
        let u = TransportUnit::new(format!("u{i}"), Dims::new(d.0, d.1, d.2), i);
        s.push(Placement::new(&u, Point::new(at.0, at.1, at.2), false));
    }
    s
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:?}, limit {limit:?}"))
    }
}

fn volume_formula_equivalence() -> Outcome {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let cfg = OracleConfig::default();
    for case in 0..200 {
        let state = common::random_state(&mut rng, 10, 50);
        let grid = unused_volume(&state);
        let voxels = voxel_unused_volume(&state, &cfg).map_err(|e| e.to_string())?;
        if grid != voxels {
            return Err(format!("case {case}: grid {grid} != voxel {voxels}"));
        }
    }
    within(started.elapsed(), Duration::from_secs(10))?;
    Ok(format!("200 states exact, {:?}", started.elapsed()))
}

fn knapsack_equivalence() -> Outcome {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    for case in 0..500 {
        let n = rng.gen_range(0..=15);
        let hi = [100u64, 5_000, 40_000][case % 3];
        let volumes: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=hi)).collect();
        let capacity = rng.gen_range(0..=100_000);
        let ctx = BoundContext { remaining_volumes: volumes.clone(), capacity, loaded_volume: 0 };
        let exact = knapsack_upper_bound(&ctx, BoundMode::ExactKnapsack);
        let lp = knapsack_upper_bound(&ctx, BoundMode::LpRelaxation);
        let dp = dp_knapsack(&volumes, capacity).map_err(|e| e.to_string())?;
        if exact != dp {
            return Err(format!("case {case}: exact {exact} != dp {dp} for {volumes:?} / {capacity}"));
        }
        if lp < exact {
            return Err(format!("case {case}: relaxation {lp} below exact {exact}"));
        }
    }
    within(started.elapsed(), Duration::from_secs(10))?;
    Ok(format!("500 contexts exact, {:?}", started.elapsed()))
}

fn prune_safety() -> Outcome {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    let cfg = OracleConfig::default();
    let mut pruned = 0;
    for case in 0..100 {
        let (units, pallet, mut params) = common::small_instance(&mut rng, 6);
        params.max_branches = usize::MAX;
        params.time_limit_ms = 120_000;
        let fast = solve(&units, &pallet, &params).map_err(|e| e.to_string())?;
        let full = exhaustive_solve(&units, &pallet, &params, &cfg).map_err(|e| e.to_string())?;
        if fast.stats.timed_out {
            return Err(format!("case {case}: solver timed out"));
        }
        if fast.placed_volume != full.placed_volume {
            return Err(format!(
                "case {case}: solve {} != exhaustive {}",
                fast.placed_volume, full.placed_volume
            ));
        }
        pruned += fast.stats.nodes_pruned_by_bound;
    }
    within(started.elapsed(), Duration::from_secs(300))?;
    Ok(format!("100 instances equal, {pruned} prunes, {:?}", started.elapsed()))
}

fn feasibility_soundness() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    let mut placed = 0;
    for case in 0..200 {
        let pallet = Pallet::new(rng.gen_range(6..=20), rng.gen_range(6..=20), rng.gen_range(4..=12));
        let n = rng.gen_range(1..=12);
        let units = common::random_units(&mut rng, n, 1, 7, 5);
        let mut params = common::random_params(&mut rng);
        params.time_limit_ms = 10_000;
        let solution = solve(&units, &pallet, &params).map_err(|e| e.to_string())?;
        let instance = Instance { pallet, units, params: params.clone() };
        let file = SolutionFile::new(&instance, &params, &solution);
        if let Err(issues) = check_solution(&instance, &file) {
            return Err(format!("case {case}: {}", issues[0]));
        }
        placed += solution.placements.len();
    }
    Ok(format!("200 solutions valid, {placed} placements checked"))
}

fn extreme_point_fidelity() -> Outcome {
    let pallet = Pallet::new(4, 3, 10);
    let coords = |s: &PackingState| generate(s).into_iter().map(|c| c.coords).collect::<Vec<_>>();

    let empty = state_of(pallet, &[]);
    if coords(&empty) != vec![Point::ORIGIN] {
        return Err(format!("empty state gave {:?}", coords(&empty)));
    }
    let one = state_of(pallet, &[((0, 0, 0), (2, 2, 1))]);
    let expected = vec![Point::new(2, 0, 0), Point::new(0, 2, 0), Point::new(0, 0, 1)];
    if coords(&one) != expected {
        return Err(format!("single unit gave {:?}", coords(&one)));
    }
    let two = state_of(pallet, &[((0, 0, 0), (2, 2, 1)), ((2, 0, 0), (1, 1, 1))]);
    let yx = palletpack::extreme::projections(&two.placements, 1)[2].1;
    if yx != Point::new(2, 1, 0) || !coords(&two).contains(&yx) {
        return Err(format!("y_x of the second unit is {yx:?}"));
    }

    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let mut checked = 0;
    for case in 0..100 {
        let state = common::random_state(&mut rng, 10, 30);
        for c in generate(&state) {
            checked += 1;
            let inside = state.placements.iter().any(|p| {
                p.position.x < c.coords.x
                    && c.coords.x < p.x_max()
                    && p.position.y < c.coords.y
                    && c.coords.y < p.y_max()
                    && p.position.z < c.coords.z
                    && c.coords.z < p.z_max()
            });
            if inside {
                return Err(format!("case {case}: {:?} lies inside a placed unit", c.coords));
            }
        }
    }
    Ok(format!("hand traces reproduced, {checked} random points outside all boxes"))
}

fn determinism() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let pallet = Pallet::new(12, 10, 8);
    let units = common::random_units(&mut rng, 12, 2, 6, 4);
    let params = SolverParams { time_limit_ms: 60_000, ..SolverParams::default() };
    let instance = Instance { pallet, units, params: params.clone() };
    let run = || -> Result<(String, String), String> {
        let s = solve(&instance.units, &pallet, &params).map_err(|e| e.to_string())?;
        if s.stats.timed_out {
            return Err("run timed out".into());
        }
        Ok((SolutionFile::new(&instance, &params, &s).to_json(), render_svg(&pallet, &s.placements)))
    };
    let (json_a, svg_a) = run()?;
    let (json_b, svg_b) = run()?;
    if json_a != json_b {
        return Err("solution files differ".into());
    }
    if svg_a != svg_b {
        return Err("SVG renders differ".into());
    }
    Ok(format!("solution files ({} bytes) and SVGs ({} bytes) identical", json_a.len(), svg_a.len()))
}

fn scoring_hand_check() -> Outcome {
    let state = state_of(Pallet::new(4, 3, 10), &[((0, 0, 0), (2, 2, 1))]);
    let params = SolverParams { p_x: 0, p_y: 0, p_z: 0, ..SolverParams::default() };
    let score = evaluate(&state, Point::new(2, 0, 0), Dims::new(2, 2, 1), &params);
    let rel = (score - 3.0).abs() / 3.0;
    if rel <= 1e-9 {
        Ok(format!("O = {score}, relative error {rel:e}"))
    } else {
        Err(format!("O = {score}, relative error {rel:e}"))
    }
}

fn anytime_behavior() -> Outcome {
    let (units, pallet) = common::forty_unit_instance(40);
    let mut previous = 0;
    let mut report = Vec::new();
    for limit_ms in [100u64, 1_000, 10_000] {
        let params = SolverParams { time_limit_ms: limit_ms, ..SolverParams::default() };
        let started = Instant::now();
        let solution = solve(&units, &pallet, &params).map_err(|e| e.to_string())?;
        let elapsed = started.elapsed();
        within(elapsed, Duration::from_millis(limit_ms * 3 / 2))?;
        if solution.placed_volume < previous {
            return Err(format!("{limit_ms} ms run placed {} < {previous}", solution.placed_volume));
        }
        previous = solution.placed_volume;
        report.push(format!(
            "{limit_ms}ms: {:.4} in {:?}{}",
            solution.utilization,
            elapsed,
            if solution.stats.timed_out { "" } else { " (exhausted)" }
        ));
    }
    Ok(report.join(", "))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 volume formula equivalence", volume_formula_equivalence),
        ("2 knapsack equivalence", knapsack_equivalence),
        ("3 prune safety", prune_safety),
        ("4 feasibility soundness", feasibility_soundness),
        ("5 extreme-point trace fidelity", extreme_point_fidelity),
        ("6 determinism", determinism),
        ("7 scoring hand-check", scoring_hand_check),
        ("8 anytime behavior", anytime_behavior),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all {} acceptance criteria passed", criteria.len());
}
