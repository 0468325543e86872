//! Graph burning on growing boxes of the integer lattice.
//!
//! The crate is split along the lines of the problem:
//!
//! * [`lattice`] holds exact L1 geometry: ball and sphere cardinalities, clipped
//!   ball counts, unions of balls, rounding toward the origin and uniform sphere
//!   sampling.
//! * [`process`] implements the burning process itself on a growing sequence of
//!   boxes, with two exact engines (union of balls, interval frontier) and a
//!   Monte Carlo estimator.
//! * [`strategies`] contains the activator constructions.
//! * [`analysis`] turns traces into windowed statistics and checks the closed-form
//!   bounds against exact counts.
//!
//! Inner loops run on rayon when the `parallel` feature is enabled (the default);
//! every parallel path has a sequential twin selected through [`Exec`].

pub mod analysis;
mod error;
mod exec;
pub mod lattice;
pub mod process;
pub mod reference;
pub mod strategies;

pub use error::{BurnError, Result};
pub use exec::Exec;

/// Version string written into trace sidecars.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
