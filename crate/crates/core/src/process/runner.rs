use super::activation::{Activation, Site};
use super::frontier::FrontierState;
use super::growth::GrowthSpec;
use super::mc::estimate_density_mc_with;
use super::trace::{BurnTrace, Checkpoint};
use crate::lattice::{dist, union_count_2d_with, union_count_slab_with, GridBox, Point, DEFAULT_CELL_BUDGET};
use crate::strategies::{BurnView, Strategy, StrategySpec};
use crate::{BurnError, Exec, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    /// Balls when certified, frontier otherwise.
    #[default]
    Auto,
    Balls,
    Frontier,
    MonteCarlo { samples: u64 },
}

impl Engine {
    pub fn tag(&self) -> &'static str {
        match self {
            Engine::Auto => "auto",
            Engine::Balls => "balls",
            Engine::Frontier => "frontier",
            Engine::MonteCarlo { .. } => "mc",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub exec: Exec,
    /// Cap on `cells × activators` for the slab engine and on the line count of
    /// the frontier engine.
    pub cell_budget: u128,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { exec: Exec::default(), cell_budget: DEFAULT_CELL_BUDGET }
    }
}

/// Whether `p` burns at time `n` when the burned set is a union of clipped balls.
pub fn burned_by_balls(acts: &[(u64, Point)], n: u64, p: &Point) -> bool {
    acts.iter().any(|(k, v)| *k <= n && dist(p.coords(), v.coords()) <= n - k)
}

struct BallsView<'a> {
    time: u64,
    grid: &'a GridBox,
    lit: &'a [(u64, Point)],
}

impl BurnView for BallsView<'_> {
    fn time(&self) -> u64 {
        self.time
    }
    fn grid(&self) -> &GridBox {
        self.grid
    }
    fn is_available(&self, p: &Point) -> bool {
        p.dim() == self.grid.dim()
            && self.grid.contains(p)
            && self.lit.iter().all(|(k, v)| dist(p.coords(), v.coords()) > self.time - k)
    }
}

struct FrontierView<'a> {
    time: u64,
    state: &'a FrontierState,
}

impl BurnView for FrontierView<'_> {
    fn time(&self) -> u64 {
        self.time
    }
    fn grid(&self) -> &GridBox {
        self.state.grid()
    }
    fn is_available(&self, p: &Point) -> bool {
        p.dim() == self.state.grid().dim() && self.state.grid().contains(p) && !self.state.contains(p)
    }
}

pub fn run_trace(
    spec: &StrategySpec,
    growth: &GrowthSpec,
    horizon: u64,
    checkpoints: &[u64],
    engine: Engine,
    seed: Option<u64>,
) -> Result<BurnTrace> {
    run_trace_with(RunOptions::default(), spec, growth, horizon, checkpoints, engine, seed)
}

/// Drive `spec` on `growth` up to `horizon`, recording the burned count at each checkpoint.
///
/// Every emitted activation is checked; an invalid one aborts the run.
pub fn run_trace_with(
    opts: RunOptions,
    spec: &StrategySpec,
    growth: &GrowthSpec,
    horizon: u64,
    checkpoints: &[u64],
    engine: Engine,
    seed: Option<u64>,
) -> Result<BurnTrace> {
    if spec.dimension() != growth.dimension {
        return Err(BurnError::DimensionMismatch { expected: growth.dimension, got: spec.dimension() });
    }
    let mut strategy = spec.build(seed)?;
    let out = run_strategy_with(opts, strategy.as_mut(), growth, horizon, checkpoints, engine, seed)?;
    Ok(BurnTrace {
        strategy: spec.clone(),
        growth: growth.clone(),
        engine: out.engine.tag().to_string(),
        seed,
        horizon,
        records: out.records,
        collisions: out.collisions,
        history: out.history,
    })
}

/// Result of driving an arbitrary [`Strategy`].
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    /// The engine actually used (`Auto` resolved).
    pub engine: Engine,
    pub records: Vec<Checkpoint>,
    pub history: Vec<Activation>,
    pub collisions: u64,
}

/// [`run_trace_with`] for a strategy object. `seed` only feeds the Monte Carlo sampler.
pub fn run_strategy_with(
    opts: RunOptions,
    strategy: &mut dyn Strategy,
    growth: &GrowthSpec,
    horizon: u64,
    checkpoints: &[u64],
    engine: Engine,
    seed: Option<u64>,
) -> Result<RunOutput> {
    growth.validate(horizon)?;
    if strategy.dimension() != growth.dimension {
        return Err(BurnError::DimensionMismatch { expected: growth.dimension, got: strategy.dimension() });
    }
    let mut cps = checkpoints.to_vec();
    cps.sort_unstable();
    cps.dedup();
    if let Some(&last) = cps.last() {
        if last > horizon {
            return Err(BurnError::param(format!("checkpoint {last} lies beyond the horizon {horizon}")));
        }
    }
    let certified = horizon == 0 || growth.free_spread_certificate(1, horizon)?;
    let engine = match engine {
        Engine::Auto if certified => Engine::Balls,
        Engine::Auto => Engine::Frontier,
        Engine::Balls | Engine::MonteCarlo { .. } if !certified => {
            return Err(BurnError::NotCertified { from: 1, to: horizon })
        }
        Engine::MonteCarlo { samples: 0 } => return Err(BurnError::param("Monte Carlo needs at least one sample")),
        e => e,
    };
    let mut run = Run { opts, growth, strategy, history: Vec::new(), lit: Vec::new() };
    let records = match engine {
        Engine::Frontier => run.frontier(horizon, &cps)?,
        Engine::MonteCarlo { samples } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(0));
            run.balls(horizon, &cps, |lit, n, grid| {
                let est = estimate_density_mc_with(opts.exec, lit, n, grid, samples, &mut rng)?;
                let cells = grid.cells()?;
                let burned = (est.estimate * cells as f64).round() as u128;
                Ok((burned.min(cells), est.estimate, Some(est.std_error)))
            })?
        }
        _ => run.balls(horizon, &cps, |lit, n, grid| {
            let burned = if grid.dim() == 2 {
                union_count_2d_with(opts.exec, lit, n, grid)?
            } else {
                union_count_slab_with(opts.exec, lit, n, grid, opts.cell_budget)?
            };
            Ok((burned, burned as f64 / grid.cells()? as f64, None))
        })?,
    };
    for w in records.windows(2) {
        if w[1].std_error.is_none() && w[1].burned < w[0].burned {
            return Err(BurnError::param(format!(
                "burned count fell from {} at {} to {} at {}",
                w[0].burned, w[0].n, w[1].burned, w[1].n
            )));
        }
    }
    let collisions = run.strategy.collisions();
    Ok(RunOutput { engine, records, history: run.history, collisions })
}

struct Run<'a> {
    opts: RunOptions,
    growth: &'a GrowthSpec,
    strategy: &'a mut dyn Strategy,
    history: Vec<Activation>,
    lit: Vec<(u64, Point)>,
}

impl Run<'_> {
    fn record(&mut self, n: u64, site: Site) {
        if let Site::Vertex(p) = &site {
            self.lit.push((n, p.clone()));
        }
        self.history.push(Activation { time: n, site });
    }

    fn balls<F>(&mut self, horizon: u64, cps: &[u64], mut count: F) -> Result<Vec<Checkpoint>>
    where
        F: FnMut(&[(u64, Point)], u64, &GridBox) -> Result<(u128, f64, Option<f64>)>,
    {
        let mut out = Vec::with_capacity(cps.len());
        let mut next_cp = cps.iter().peekable();
        for n in 0..=horizon {
            let grid = self.growth.box_at(n)?;
            let site = self.strategy.next(&BallsView { time: n, grid: &grid, lit: &self.lit })?;
            if let Site::Vertex(p) = &site {
                check_vertex(p, n, &grid)?;
                if !(BallsView { time: n, grid: &grid, lit: &self.lit }).is_available(p) {
                    return Err(BurnError::InvalidActivation { time: n, point: p.coords().to_vec() });
                }
            }
            self.record(n, site);
            if next_cp.peek() == Some(&&n) {
                next_cp.next();
                let (burned, density, se) = count(&self.lit, n, &grid)?;
                out.push(checkpoint(n, &grid, burned, density, se)?);
            }
        }
        Ok(out)
    }

    fn frontier(&mut self, horizon: u64, cps: &[u64]) -> Result<Vec<Checkpoint>> {
        let mut out = Vec::with_capacity(cps.len());
        let mut next_cp = cps.iter().peekable();
        let mut state: Option<FrontierState> = None;
        for n in 0..=horizon {
            let grid = self.growth.box_at(n)?;
            let lines: u128 = (0..grid.dim() - 1).map(|i| grid.width(i) as u128).product();
            if lines > self.opts.cell_budget {
                return Err(BurnError::BudgetExceeded { needed: lines, budget: self.opts.cell_budget });
            }
            let mut cur = match &state {
                None => FrontierState::empty(grid.clone(), 0)?,
                Some(s) => s.dilate(&grid, self.opts.exec)?,
            };
            let site = self.strategy.next(&FrontierView { time: n, state: &cur })?;
            if let Site::Vertex(p) = &site {
                check_vertex(p, n, &grid)?;
                if cur.contains(p) {
                    return Err(BurnError::InvalidActivation { time: n, point: p.coords().to_vec() });
                }
                cur.insert(p)?;
            }
            self.record(n, site);
            if next_cp.peek() == Some(&&n) {
                next_cp.next();
                let cells = grid.cells()?;
                out.push(checkpoint(n, &grid, cur.count(), cur.count() as f64 / cells as f64, None)?);
            }
            state = Some(cur);
        }
        Ok(out)
    }
}

fn check_vertex(p: &Point, n: u64, grid: &GridBox) -> Result<()> {
    if p.dim() != grid.dim() {
        return Err(BurnError::DimensionMismatch { expected: grid.dim(), got: p.dim() });
    }
    if !grid.contains(p) {
        return Err(BurnError::OutsideGrid { time: n, point: p.coords().to_vec() });
    }
    Ok(())
}

fn checkpoint(n: u64, grid: &GridBox, burned: u128, density: f64, std_error: Option<f64>) -> Result<Checkpoint> {
    Ok(Checkpoint {
        n,
        lo: grid.lo().to_vec(),
        hi: grid.hi().to_vec(),
        grid_cells: grid.cells()?,
        burned,
        density,
        std_error,
    })
}

/// `0, stride, 2·stride, ...` up to and including `horizon`.
pub fn stride_checkpoints(horizon: u64, stride: u64) -> Vec<u64> {
    let stride = stride.max(1);
    let mut v: Vec<u64> = (0..=horizon).step_by(stride as usize).collect();
    if v.last() != Some(&horizon) {
        v.push(horizon);
    }
    v
}
