//! Load-retrieval route programming for puzzle-based storage systems.
//!
//! A puzzle-based storage system is a dense grid warehouse with no aisles:
//! every cell holds a unit load or is empty (an escort), and loads travel
//! by swapping with adjacent escorts. This crate plans retrieval routes for
//! multiple target items through multiple IO ports:
//!
//! - [`grid`]: the board, legal escort moves, retrieval semantics, and the
//!   text map format ([`map`]).
//! - [`assignment`]: the optimal distribution of IOs to target items.
//! - [`escort`]: escort demand per route corridor and escort target
//!   positions.
//! - [`distance`]: estimated escort travel costs with detour and reuse
//!   corrections.
//! - [`solver`]: the greedy index-driven decision loop.
//! - [`oracle`]: exact minimal step counts by best-first search, for gap
//!   measurement.
//! - [`generator`] and [`baseline`]: random instances and the golden
//!   benchmark grids.

pub mod assignment;
pub mod baseline;
pub mod distance;
pub mod escort;
pub mod generator;
pub mod grid;
pub mod map;
pub mod oracle;
pub mod solver;

pub use assignment::{optimal_assignments, plan_distance, AssignmentPlan, AssignmentPlanSet};
pub use distance::{
    approach_costs, detour_correction, escort_shortfall, estimate, reuse_correction,
    ApproachCosts, DistanceEstimate,
};
pub use escort::{
    escort_target_positions, escorts_in_rectangle, min_required_escorts, plan_escort_demand,
    required_escorts, EscortDemand,
};
pub use generator::{generate, GenerateError, GeneratorSpec};
pub use grid::{in_rectangle, manhattan, CellKind, GridError, GridState, MoveAction, Position};
pub use map::{parse_map, render_map, MapError, MapErrorKind};
pub use oracle::{gap, gap_of_means, optimal_steps, OracleLimits, OracleOutcome};
pub use solver::{
    decide, evaluate, reward, solve, DecisionRecord, Reason, SolveError, SolveTrace,
    SolverConfig, StatusIndexes,
};
