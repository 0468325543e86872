//! Windowed density statistics and executable versions of the closed-form bounds.

mod bounds;
mod oscillation;
mod stats;
pub mod verify;

pub use bounds::{
    bound_lemma21, bound_thm41, lambda_lower_bound, lemma41_sphere_bounds, lemma42_bound, lemma42_bound_exact,
};
pub use oscillation::{oscillation_probe, OscillationRow};
pub use stats::{tail_stats, TailStats};
