use crate::lattice::GridBox;
use crate::{BurnError, Result};
use serde::{Deserialize, Serialize};

/// Relative slack used when snapping a real-valued schedule onto the integers.
const SNAP: f64 = 1e-9;

/// `⌈x⌉`, treating values within `SNAP` of an integer as that integer.
pub(crate) fn ceil_snap(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= SNAP * x.abs().max(1.0) {
        r
    } else {
        x.ceil()
    }
}

/// `⌊x⌋`, treating values within `SNAP` of an integer as that integer.
pub(crate) fn floor_snap(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= SNAP * x.abs().max(1.0) {
        r
    } else {
        x.floor()
    }
}

fn to_extent(x: f64, what: &'static str) -> Result<i64> {
    if !x.is_finite() || x < 0.0 {
        return Err(BurnError::param(format!("{what} produced {x}")));
    }
    if x >= 4.0e18 {
        return Err(BurnError::Overflow(what));
    }
    Ok(x as i64)
}

/// One side of one axis: how far the grid reaches at time `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Schedule {
    /// A fixed wall.
    Const { value: u64 },
    /// `⌈c n⌉`.
    Linear { c: f64 },
    /// `⌈c n^p⌉`.
    Power { c: f64, p: f64 },
    /// `2^⌊log2 n⌋`, and 0 at `n = 0`.
    StepLog2,
    /// `⌊(2^(2^⌊log2 log2 n⌋))^p⌋` for `n ≥ 2`; `n` itself below that.
    DoubleExpPow { p: f64 },
    /// Explicit values indexed by time.
    Table { values: Vec<u64> },
}

impl Schedule {
    pub fn linear(c: f64) -> Self {
        Schedule::Linear { c }
    }

    pub fn power(c: f64, p: f64) -> Self {
        Schedule::Power { c, p }
    }

    pub fn eval(&self, n: u64) -> Result<i64> {
        match self {
            Schedule::Const { value } => Ok(*value as i64),
            Schedule::Linear { c } => to_extent(ceil_snap(c * n as f64), "linear schedule"),
            Schedule::Power { c, p } => to_extent(ceil_snap(c * (n as f64).powf(*p)), "power schedule"),
            Schedule::StepLog2 => Ok(if n == 0 { 0 } else { 1i64 << n.ilog2() }),
            Schedule::DoubleExpPow { p } => {
                if n < 2 {
                    return Ok(n as i64);
                }
                let k = n.ilog2().ilog2();
                let exponent = (1u64 << k) as f64 * p;
                if exponent >= 62.0 {
                    return Err(BurnError::Overflow("double exponential schedule"));
                }
                to_extent(floor_snap(exponent.exp2()), "double exponential schedule")
            }
            Schedule::Table { values } => values
                .get(n as usize)
                .map(|v| *v as i64)
                .ok_or(BurnError::ScheduleExhausted(n)),
        }
    }

    fn check(&self) -> Result<()> {
        let ok = match self {
            Schedule::Linear { c } => c.is_finite() && *c > 0.0,
            Schedule::Power { c, p } => c.is_finite() && p.is_finite() && *c > 0.0 && *p >= 0.0,
            Schedule::DoubleExpPow { p } => p.is_finite() && *p > 0.0,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(BurnError::param(format!("bad schedule parameters: {self:?}")))
        }
    }
}

/// Axis `i` of the grid at time `n` is `[-lower(n), upper(n)]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisGrowth {
    pub lower: Schedule,
    pub upper: Schedule,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Layout {
    /// `[-f(n), f(n)]^d`.
    Symmetric(Schedule),
    /// `[0, f(n)]^d`.
    Quadrant(Schedule),
    PerAxis(Vec<AxisGrowth>),
}

/// The nested sequence of boxes the process runs on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthSpec {
    pub dimension: usize,
    #[serde(flatten)]
    pub layout: Layout,
}

impl GrowthSpec {
    pub fn symmetric(dimension: usize, f: Schedule) -> Self {
        GrowthSpec { dimension, layout: Layout::Symmetric(f) }
    }

    pub fn quadrant(dimension: usize, f: Schedule) -> Self {
        GrowthSpec { dimension, layout: Layout::Quadrant(f) }
    }

    pub fn per_axis(axes: Vec<AxisGrowth>) -> Self {
        GrowthSpec { dimension: axes.len(), layout: Layout::PerAxis(axes) }
    }

    /// Structural checks; monotonicity is checked over a range by [`GrowthSpec::validate`].
    pub fn check(&self) -> Result<()> {
        if self.dimension == 0 {
            return Err(BurnError::param("growth dimension must be at least 1"));
        }
        match &self.layout {
            Layout::Symmetric(f) | Layout::Quadrant(f) => f.check(),
            Layout::PerAxis(axes) => {
                if axes.len() != self.dimension {
                    return Err(BurnError::DimensionMismatch { expected: self.dimension, got: axes.len() });
                }
                axes.iter().try_for_each(|a| {
                    a.lower.check()?;
                    a.upper.check()
                })
            }
        }
    }

    /// `(lower_i(n), upper_i(n))` for every axis; the box is `[-lower, upper]`.
    pub fn sides(&self, n: u64) -> Result<Vec<(i64, i64)>> {
        match &self.layout {
            Layout::Symmetric(f) => {
                let e = f.eval(n)?;
                Ok(vec![(e, e); self.dimension])
            }
            Layout::Quadrant(f) => Ok(vec![(0, f.eval(n)?); self.dimension]),
            Layout::PerAxis(axes) => axes.iter().map(|a| Ok((a.lower.eval(n)?, a.upper.eval(n)?))).collect(),
        }
    }

    pub fn box_at(&self, n: u64) -> Result<GridBox> {
        let sides = self.sides(n)?;
        let lo = sides.iter().map(|s| -s.0).collect();
        let hi = sides.iter().map(|s| s.1).collect();
        GridBox::new(lo, hi)
    }

    /// Every side is nonnegative and nondecreasing on `[0, horizon]`.
    pub fn validate(&self, horizon: u64) -> Result<()> {
        self.check()?;
        let mut prev = self.sides(0)?;
        if prev.iter().any(|(l, u)| *l < 0 || *u < 0 || -*l > *u) {
            return Err(BurnError::NonMonotoneGrowth("negative extent at time 0".into()));
        }
        for n in 1..=horizon {
            let cur = self.sides(n)?;
            if cur.iter().zip(&prev).any(|(c, p)| c.0 < p.0 || c.1 < p.1) {
                return Err(BurnError::NonMonotoneGrowth(format!("grid shrinks at time {n}")));
            }
            prev = cur;
        }
        Ok(())
    }

    /// Whether burned sets on `[from, to]` are unions of clipped balls.
    ///
    /// Each side must, at every step, either advance by at least one or already
    /// sit at its final value `s(to)`. Under that condition every L1-shortest
    /// monotone path from an activator to a point of the final box stays inside
    /// the grid of the time it is walked, so fire never stalls at a wall.
    pub fn free_spread_certificate(&self, from: u64, to: u64) -> Result<bool> {
        if from == 0 {
            return Err(BurnError::param("certificate range starts at 1"));
        }
        if to < from {
            return Ok(true);
        }
        let last = self.sides(to)?;
        let mut prev = self.sides(from - 1)?;
        for n in from..=to {
            let cur = self.sides(n)?;
            for axis in 0..self.dimension {
                let ok_lo = cur[axis].0 > prev[axis].0 || prev[axis].0 == last[axis].0;
                let ok_hi = cur[axis].1 > prev[axis].1 || prev[axis].1 == last[axis].1;
                if !(ok_lo && ok_hi) {
                    return Ok(false);
                }
            }
            prev = cur;
        }
        Ok(true)
    }
}
