//! Multiple watchman route planning on four-connected grids under the
//! makespan objective.
//!
//! The pipeline is: [`grid`] builds the map and problem, [`visibility`]
//! precomputes sight and distance data, [`reduction`] shrinks the set of
//! cells that must be seen, and [`search`] runs one of the joint-space
//! solvers using the bounds in [`heuristics`]. [`postprocess`] can then
//! shorten the longest route, and [`verify`] checks any result
//! independently.

pub mod bench;
pub mod grid;
pub mod heuristics;
pub mod io;
pub mod postprocess;
pub mod reduction;
pub mod render;
pub mod search;
pub mod verify;
pub mod visibility;
pub mod weight;

pub use grid::{Cell, GridMap, ProblemInstance};
pub use search::{solve, solve_with_index, Algorithm, Solution, SolveError, SolverConfig};
pub use visibility::VisibilityIndex;
pub use weight::Weight;
