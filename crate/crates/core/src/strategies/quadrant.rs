//! Constructions on the quadrant grid `[0, n]^2` and their four-fold composition
//! on `[-n, n]^2`.

use super::{BurnView, Strategy};
use crate::lattice::Point;
use crate::process::growth::floor_snap;
use crate::process::Site;
use crate::{BurnError, Result};

/// Diagonal-filling walker: lights the free vertex of `[0, n]^2` nearest to
/// the origin, largest `y` first, whenever it is told to be active.
///
/// Assumes the origin was lit at time 0 and nothing else burns in the quadrant.
/// The burned part of the current diagonal `x + y = n + t` is always a prefix
/// starting at `x = t`; `next` is the index of its first free vertex.
#[derive(Debug, Clone)]
pub struct NearestTopWalker {
    t: i64,
    next: i64,
}

impl Default for NearestTopWalker {
    fn default() -> Self {
        NearestTopWalker { t: 1, next: 0 }
    }
}

impl NearestTopWalker {
    /// Advance to time `n` (called for every `n ≥ 1` in order).
    pub fn step(&mut self, n: u64, active: bool) -> Option<(i64, i64)> {
        let n = n as i64;
        if self.next > 0 {
            self.next += 1;
        }
        let mut len = n - self.t + 1;
        while len > 0 && self.next >= len {
            self.t += 1;
            self.next = 0;
            len = n - self.t + 1;
        }
        if !active || len <= 0 {
            return None;
        }
        let p = (self.t + self.next, n - self.next);
        self.next += 1;
        Some(p)
    }
}

/// Nearest-top on `[0, n]^2` with the single skip at time 1 or 2.
pub struct NearestTop {
    skip_at: u64,
    walker: NearestTopWalker,
}

impl NearestTop {
    pub fn new(skip_at: u64) -> Result<Self> {
        if !(1..=2).contains(&skip_at) {
            return Err(BurnError::param(format!("nearest_top skip_at must be 1 or 2, got {skip_at}")));
        }
        Ok(NearestTop { skip_at, walker: NearestTopWalker::default() })
    }
}

impl Strategy for NearestTop {
    fn dimension(&self) -> usize {
        2
    }

    fn next(&mut self, view: &dyn BurnView) -> Result<Site> {
        let n = view.time();
        if n == 0 {
            return Ok(Site::Vertex(Point::origin(2)));
        }
        Ok(match self.walker.step(n, n != self.skip_at) {
            Some((x, y)) => Site::Vertex(Point::from([x, y])),
            None => Site::Skip,
        })
    }
}

fn skinny_point(rho: f64, n: u64) -> Option<(i64, i64)> {
    if n == 0 {
        return None;
    }
    let cur = floor_snap(rho * n as f64);
    let prev = floor_snap(rho * (n - 1) as f64);
    (cur - prev >= 1.0).then_some((cur as i64, n as i64))
}

/// `(⌊ρn⌋, n)` whenever the floor increments.
pub struct SkinnyTriangle {
    rho: f64,
}

impl SkinnyTriangle {
    pub fn new(rho: f64) -> Result<Self> {
        if !(rho > 0.0 && rho < 1.0) {
            return Err(BurnError::param(format!("skinny_triangle needs ρ in (0, 1), got {rho}")));
        }
        Ok(SkinnyTriangle { rho })
    }
}

impl Strategy for SkinnyTriangle {
    fn dimension(&self) -> usize {
        2
    }

    fn next(&mut self, view: &dyn BurnView) -> Result<Site> {
        let n = view.time();
        if n == 0 {
            return Ok(Site::Vertex(Point::origin(2)));
        }
        Ok(match skinny_point(self.rho, n) {
            Some((x, y)) => Site::Vertex(Point::from([x, y])),
            None => Site::Skip,
        })
    }
}

/// The corner `(n, n)` every `period` steps.
pub struct LayerCake {
    period: u64,
}

impl LayerCake {
    /// `max_gap` bounds the run of consecutive skips; `period - 1` must not exceed it.
    pub fn new(period: u64, max_gap: Option<u64>) -> Result<Self> {
        if period == 0 {
            return Err(BurnError::param("layer_cake period must be positive"));
        }
        if let Some(k) = max_gap {
            if period - 1 > k {
                return Err(BurnError::param(format!(
                    "layer_cake period {period} leaves {} consecutive skips, more than {k}",
                    period - 1
                )));
            }
        }
        Ok(LayerCake { period })
    }
}

impl Strategy for LayerCake {
    fn dimension(&self) -> usize {
        2
    }

    fn next(&mut self, view: &dyn BurnView) -> Result<Site> {
        let n = view.time();
        Ok(if n.is_multiple_of(self.period) {
            Site::Vertex(Point::from([n as i64, n as i64]))
        } else {
            Site::Skip
        })
    }
}

/// Isometries taking the first quadrant onto the four quadrants, counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadrantFrame {
    First,
    Second,
    Third,
    Fourth,
}

impl QuadrantFrame {
    pub const ALL: [QuadrantFrame; 4] =
        [QuadrantFrame::First, QuadrantFrame::Second, QuadrantFrame::Third, QuadrantFrame::Fourth];

    pub fn map(self, (x, y): (i64, i64)) -> (i64, i64) {
        match self {
            QuadrantFrame::First => (x, y),
            QuadrantFrame::Second => (-y, x),
            QuadrantFrame::Third => (-x, -y),
            QuadrantFrame::Fourth => (y, -x),
        }
    }
}

/// Split `ε = 1/2 + (a + ρ)/8` into `a ∈ {0..4}` and `ρ ∈ [0, 1)`.
pub fn decompose_epsilon(epsilon: f64) -> Result<(u8, f64)> {
    if !(0.5 - 1e-12..=1.0 + 1e-12).contains(&epsilon) {
        return Err(BurnError::param(format!("quadrant_composition needs ε in [1/2, 1], got {epsilon}")));
    }
    let s = (8.0 * epsilon - 4.0).clamp(0.0, 4.0);
    let a = floor_snap(s);
    let mut rho = s - a;
    if rho < 1e-9 {
        rho = 0.0;
    }
    Ok((a as u8, rho))
}

enum Local {
    Cake,
    Nearest(NearestTopWalker),
}

impl Local {
    fn step(&mut self, n: u64, active: bool) -> Option<(i64, i64)> {
        match self {
            Local::Cake => active.then_some((n as i64, n as i64)),
            Local::Nearest(w) => w.step(n, active),
        }
    }
}

/// Four quadrant constructions sharing the origin, on `[-n, n]^2`.
///
/// With `ρ = 0` quadrant `n mod 4` acts at time `n`; the first `a` quadrants run
/// layer-cake and the rest nearest-top. With `ρ > 0` the first quadrant runs the
/// skinny triangle and hands its `i`-th skip to quadrant `1 + (i mod 3)`; of
/// those, the first `a` run layer-cake.
pub struct QuadrantComposition {
    a: u8,
    rho: f64,
    locals: Vec<Local>,
    handed: u64,
}

impl QuadrantComposition {
    pub fn new(epsilon: f64) -> Result<Self> {
        let (a, rho) = decompose_epsilon(epsilon)?;
        let first = if rho > 0.0 { 1 } else { 0 };
        let locals = (0..4)
            .map(|q| {
                if q < first + a as usize {
                    Local::Cake
                } else {
                    Local::Nearest(NearestTopWalker::default())
                }
            })
            .collect();
        Ok(QuadrantComposition { a, rho, locals, handed: 0 })
    }

    pub fn decomposition(&self) -> (u8, f64) {
        (self.a, self.rho)
    }

    /// Quadrant acting at time `n ≥ 1`, with its local point if it has one.
    fn plan(&mut self, n: u64) -> Option<(usize, (i64, i64))> {
        let target = if self.rho > 0.0 {
            if let Some(p) = skinny_point(self.rho, n) {
                for q in 1..4 {
                    self.locals[q].step(n, false);
                }
                return Some((0, p));
            }
            let q = 1 + (self.handed % 3) as usize;
            self.handed += 1;
            q
        } else {
            (n % 4) as usize
        };
        let mut hit = None;
        for (q, local) in self.locals.iter_mut().enumerate() {
            if self.rho > 0.0 && q == 0 {
                continue;
            }
            if let Some(p) = local.step(n, q == target) {
                hit = Some((q, p));
            }
        }
        hit
    }
}

impl Strategy for QuadrantComposition {
    fn dimension(&self) -> usize {
        2
    }

    fn next(&mut self, view: &dyn BurnView) -> Result<Site> {
        let n = view.time();
        if n == 0 {
            return Ok(Site::Vertex(Point::origin(2)));
        }
        Ok(match self.plan(n) {
            Some((q, local)) => {
                let (x, y) = QuadrantFrame::ALL[q].map(local);
                assert!(x != 0 && y != 0, "quadrant activator ({x}, {y}) on an axis at time {n}");
                Site::Vertex(Point::from([x, y]))
            }
            None => Site::Skip,
        })
    }
}
