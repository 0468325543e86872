//! The burning process on a nested sequence of boxes.

mod activation;
mod frontier;
pub(crate) mod growth;
mod mc;
mod runner;
mod trace;

pub use activation::{is_valid_activation, lit, Activation, Site};
pub use frontier::{frontier_step, frontier_step_with, FrontierState};
pub use growth::{AxisGrowth, GrowthSpec, Layout, Schedule};
pub use mc::{estimate_density_mc, estimate_density_mc_with, McEstimate};
pub use runner::{burned_by_balls, run_strategy_with, run_trace, run_trace_with, stride_checkpoints, Engine, RunOptions, RunOutput};
pub use trace::{format_density, read_csv, BurnTrace, Checkpoint, CsvRow, Sidecar};
