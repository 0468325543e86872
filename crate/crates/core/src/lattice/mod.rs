//! Exact L1 geometry in `Z^d`.

mod counting;
mod round;
mod sample;
mod union;

pub use counting::{
    ball_box_count, ball_cardinality, binomial, sphere_ball_intersection_count, sphere_cardinality,
    sphere_points,
};
pub use round::round_toward_origin;
pub use sample::sample_sphere_uniform;
pub use union::{union_count_2d, union_count_2d_with, union_count_slab, union_count_slab_with, DEFAULT_CELL_BUDGET};

use crate::{BurnError, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A lattice point of `Z^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point {
    coords: Vec<i64>,
}

impl Point {
    pub fn new(coords: Vec<i64>) -> Self {
        assert!(!coords.is_empty(), "points have dimension at least 1");
        Point { coords }
    }

    pub fn origin(d: usize) -> Self {
        Point::new(vec![0; d])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn norm1(&self) -> i64 {
        self.coords.iter().map(|c| c.abs()).sum()
    }
}

impl<const D: usize> From<[i64; D]> for Point {
    fn from(c: [i64; D]) -> Self {
        Point::new(c.to_vec())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A point of `R^d` with finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPoint {
    coords: Vec<f64>,
}

impl RealPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(BurnError::param("real point of dimension 0"));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(BurnError::param("real point with non-finite coordinate"));
        }
        Ok(RealPoint { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn norm1(&self) -> f64 {
        self.coords.iter().map(|c| c.abs()).sum()
    }
}

/// Axis-aligned box `[lo_1, hi_1] x ... x [lo_d, hi_d]` of lattice points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridBox {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl GridBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(BurnError::DimensionMismatch { expected: lo.len(), got: hi.len() });
        }
        if lo.is_empty() {
            return Err(BurnError::param("box of dimension 0"));
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(BurnError::param(format!("empty box: lo {lo:?} hi {hi:?}")));
        }
        Ok(GridBox { lo, hi })
    }

    /// `[-e, e]^d`.
    pub fn symmetric(d: usize, e: i64) -> Self {
        assert!(e >= 0);
        GridBox { lo: vec![-e; d], hi: vec![e; d] }
    }

    /// `[0, e]^d`.
    pub fn quadrant(d: usize, e: i64) -> Self {
        assert!(e >= 0);
        GridBox { lo: vec![0; d], hi: vec![e; d] }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[i64] {
        &self.lo
    }

    pub fn hi(&self) -> &[i64] {
        &self.hi
    }

    pub fn width(&self, axis: usize) -> u64 {
        (self.hi[axis] - self.lo[axis] + 1) as u64
    }

    /// Number of lattice points; errors instead of wrapping.
    pub fn cells(&self) -> Result<u128> {
        (0..self.dim()).try_fold(1u128, |acc, i| {
            acc.checked_mul(self.width(i) as u128).ok_or(BurnError::Overflow("box cell count"))
        })
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.dim() == self.dim()
            && p.coords().iter().zip(self.lo.iter().zip(&self.hi)).all(|(c, (l, h))| l <= c && c <= h)
    }

    pub fn contains_box(&self, other: &GridBox) -> bool {
        other.dim() == self.dim()
            && (0..self.dim()).all(|i| self.lo[i] <= other.lo[i] && other.hi[i] <= self.hi[i])
    }
}

/// `sum |p_i - q_i|`.
pub fn l1_distance(p: &Point, q: &Point) -> Result<u64> {
    if p.dim() != q.dim() {
        return Err(BurnError::DimensionMismatch { expected: p.dim(), got: q.dim() });
    }
    Ok(dist(p.coords(), q.coords()))
}

#[inline]
pub(crate) fn dist(a: &[i64], b: &[i64]) -> u64 {
    a.iter().zip(b).map(|(x, y)| x.abs_diff(*y)).sum()
}
