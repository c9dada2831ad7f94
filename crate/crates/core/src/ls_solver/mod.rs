//! Lyapunov–Schmidt solver for the truncated quasi-periodic wave equation:
//! a contraction on the range modes alternating with Newton on the bifurcation
//! modes, plus sampling of the physical wave.

mod constants;
mod nonlinearity;
mod solution;
mod solver;

pub use constants::{LEADING_ORDER_CONSTANT, RANGE_CONSTANT, SWEEP_SPREAD, Z_DISTANCE_CONSTANT};
pub use nonlinearity::{rescale_f, Nonlinearity};
pub use solution::{
    leading_order_deviation, linspace, sample_grid, sample_solution, solve_full,
    solve_full_with_profile, wave_residual, write_csv, z_distance, LSSolution, SolveDiagnostics,
    WaveCheck, MIN_AXIS_NORM,
};
pub use solver::{
    core_to_z, initial_guess, rescale_to_core, solve_bifurcation, solve_range, BifurcationSolution,
    CorePoint, Coupling, IterRecord, LSConfig, RangeSolution, ZPoint,
};
