//! Exact burned-set evolution as sorted interval lists, one list per line
//! along the last axis. Correct for any nested growth, including walls that
//! stall and then jump.

use super::activation::{Activation, Site};
use crate::lattice::{GridBox, Point};
use crate::{BurnError, Exec, Result};

type Span = (i64, i64);

#[derive(Debug, Clone, PartialEq)]
pub struct FrontierState {
    grid: GridBox,
    time: u64,
    /// Indexed by the first `d-1` coordinates, row-major, relative to `grid.lo`.
    rows: Vec<Vec<Span>>,
    count: u128,
}

impl FrontierState {
    /// Nothing burning yet.
    pub fn empty(grid: GridBox, time: u64) -> Result<Self> {
        let rows = prefix_count(&grid)?;
        Ok(FrontierState { grid, time, rows: vec![Vec::new(); rows], count: 0 })
    }

    /// `B_0` for a first activation.
    pub fn start(grid: GridBox, first: &Activation) -> Result<Self> {
        let mut s = FrontierState::empty(grid, first.time)?;
        if let Site::Vertex(p) = &first.site {
            s.insert(p)?;
        }
        Ok(s)
    }

    pub fn grid(&self) -> &GridBox {
        &self.grid
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn count(&self) -> u128 {
        self.count
    }

    /// Intervals on the line through `prefix` (the first `d-1` coordinates).
    pub fn line(&self, prefix: &[i64]) -> &[Span] {
        match self.row_index(prefix) {
            Some(i) => &self.rows[i],
            None => &[],
        }
    }

    fn row_index(&self, prefix: &[i64]) -> Option<usize> {
        let d = self.grid.dim();
        let mut idx = 0usize;
        for (i, &c) in prefix.iter().enumerate().take(d - 1) {
            if c < self.grid.lo()[i] || c > self.grid.hi()[i] {
                return None;
            }
            idx = idx * self.grid.width(i) as usize + (c - self.grid.lo()[i]) as usize;
        }
        Some(idx)
    }

    pub fn contains(&self, p: &Point) -> bool {
        if !self.grid.contains(p) {
            return false;
        }
        let c = p.coords();
        let x = c[c.len() - 1];
        let row = &self.rows[self.row_index(&c[..c.len() - 1]).expect("inside grid")];
        let i = row.partition_point(|s| s.1 < x);
        i < row.len() && row[i].0 <= x
    }

    /// Adds a single vertex. Errors if it lies outside the grid.
    pub fn insert(&mut self, p: &Point) -> Result<()> {
        if !self.grid.contains(p) {
            return Err(BurnError::OutsideGrid { time: self.time, point: p.coords().to_vec() });
        }
        if self.contains(p) {
            return Ok(());
        }
        let c = p.coords();
        let x = c[c.len() - 1];
        let idx = self.row_index(&c[..c.len() - 1]).expect("inside grid");
        let row = &mut self.rows[idx];
        row.push((x, x));
        let merged = merge(std::mem::take(row), i64::MIN, i64::MAX);
        *row = merged;
        self.count += 1;
        Ok(())
    }

    /// `N_{new_grid}[B]` at time `t + 1`.
    pub fn dilate(&self, new_grid: &GridBox, exec: Exec) -> Result<FrontierState> {
        if !new_grid.contains_box(&self.grid) {
            return Err(BurnError::NonMonotoneGrowth(format!(
                "grid at time {} does not contain the grid at time {}",
                self.time + 1,
                self.time
            )));
        }
        let d = new_grid.dim();
        let nrows = prefix_count(new_grid)?;
        let widths: Vec<u64> = (0..d - 1).map(|i| new_grid.width(i)).collect();
        let (lo, hi) = (new_grid.lo()[d - 1], new_grid.hi()[d - 1]);

        let rows: Vec<Vec<Span>> = exec.map_collect(0..nrows, |idx| {
            let mut prefix = vec![0i64; d - 1];
            let mut rest = idx as u64;
            for i in (0..d - 1).rev() {
                prefix[i] = new_grid.lo()[i] + (rest % widths[i]) as i64;
                rest /= widths[i];
            }
            let mut spans: Vec<Span> = self.line(&prefix).iter().map(|&(a, b)| (a - 1, b + 1)).collect();
            for i in 0..d - 1 {
                for step in [-1, 1] {
                    prefix[i] += step;
                    spans.extend_from_slice(self.line(&prefix));
                    prefix[i] -= step;
                }
            }
            if spans.is_empty() {
                spans
            } else {
                merge(spans, lo, hi)
            }
        });
        let count = rows.iter().flatten().map(|&(a, b)| (b - a + 1) as u128).sum();
        Ok(FrontierState { grid: new_grid.clone(), time: self.time + 1, rows, count })
    }
}

/// One step of the process: dilate into `new_grid`, then light `activation`.
pub fn frontier_step(state: &FrontierState, new_grid: &GridBox, activation: &Activation) -> Result<FrontierState> {
    frontier_step_with(Exec::default(), state, new_grid, activation)
}

pub fn frontier_step_with(
    exec: Exec,
    state: &FrontierState,
    new_grid: &GridBox,
    activation: &Activation,
) -> Result<FrontierState> {
    let t = state.time + 1;
    if activation.time != t {
        return Err(BurnError::TimeOrder { time: activation.time, horizon: t });
    }
    let mut next = state.dilate(new_grid, exec)?;
    if let Site::Vertex(p) = &activation.site {
        if !new_grid.contains(p) {
            return Err(BurnError::OutsideGrid { time: t, point: p.coords().to_vec() });
        }
        if next.contains(p) {
            return Err(BurnError::InvalidActivation { time: t, point: p.coords().to_vec() });
        }
        next.insert(p)?;
    }
    Ok(next)
}

fn prefix_count(grid: &GridBox) -> Result<usize> {
    let d = grid.dim();
    (0..d - 1)
        .try_fold(1u128, |acc, i| acc.checked_mul(grid.width(i) as u128))
        .filter(|n| *n <= usize::MAX as u128)
        .map(|n| n as usize)
        .ok_or(BurnError::Overflow("frontier rows"))
}

/// Sort, coalesce touching intervals and clip to `[lo, hi]`.
fn merge(mut spans: Vec<Span>, lo: i64, hi: i64) -> Vec<Span> {
    spans.sort_unstable();
    let mut out: Vec<Span> = Vec::with_capacity(spans.len());
    for (a, b) in spans {
        let (a, b) = (a.max(lo), b.min(hi));
        if a > b {
            continue;
        }
        match out.last_mut() {
            Some(last) if a <= last.1 + 1 => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    out
}
