#![allow(dead_code)]

pub mod oracle;

use gburn::lattice::GridBox;
use gburn::process::{GrowthSpec, Schedule};

pub fn linear(c: f64) -> GrowthSpec {
    GrowthSpec::symmetric(2, Schedule::linear(c))
}

pub fn quadrant() -> GrowthSpec {
    GrowthSpec::quadrant(2, Schedule::linear(1.0))
}

pub fn power(c: f64, p: f64) -> GrowthSpec {
    GrowthSpec::symmetric(2, Schedule::power(c, p))
}

pub fn square(e: i64) -> GridBox {
    GridBox::symmetric(2, e)
}
