//! Branch-and-bound pallet loading.
//!
//! Units arrive in a fixed picking order and may only be skipped, never
//! reordered. Each unit is tried at extreme points of the current load in
//! two orientations, filtered by overlap and support constraints, ranked by
//! how well its faces line up with existing faces, and the best few
//! placements are branched on. A 0-1 knapsack over the remaining volumes
//! and the free space above the load bounds every branch.
//!
//! ```
//! use palletpack::{solve, units_from_dims, Dims, Pallet, SolverParams};
//!
//! let units = units_from_dims(&[Dims::new(2, 2, 1); 3]);
//! let params = SolverParams { vertical_support_min: 0.0, ..SolverParams::default() };
//! let solution = solve(&units, &Pallet::new(4, 2, 2), &params).unwrap();
//! assert_eq!(solution.placed_volume, 12);
//! ```

pub mod bounds;
pub mod cli;
pub mod error;
pub mod extreme;
pub mod feasibility;
pub mod grid;
pub mod io;
pub mod model;
pub mod oracle;
pub mod scoring;
pub mod search;
pub mod svg;

pub use error::{InstanceError, OracleError};
pub use io::{check_solution, parse_instance, serialize_instance, Instance, SolutionFile};
pub use model::{
    oriented, units_from_dims, volume, BoundMode, Dims, PackingState, Pallet, Placement, Point, SearchStats,
    Solution, SolverParams, TransportUnit,
};
pub use search::{solve, solve_with_trace, TraceEvent};
