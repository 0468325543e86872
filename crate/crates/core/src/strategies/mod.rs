//! Activator constructions. Each strategy is a deterministic state machine
//! (seeded, for the random one) asked once per time step for its next site.

mod epoch;
mod quadrant;
mod rotating;
mod spiral;

pub use epoch::{epoch_min_n1, epoch_radius, epoch_window, EpochRandom};
pub use quadrant::{
    decompose_epsilon, LayerCake, NearestTop, NearestTopWalker, QuadrantComposition, QuadrantFrame, SkinnyTriangle,
};
pub use rotating::RotatingSqrtGap;
pub use spiral::PolarSpiral;

use crate::lattice::{GridBox, Point};
use crate::process::Site;
use crate::{BurnError, Result};
use serde::{Deserialize, Serialize};

/// What a strategy may look at when choosing: the current grid and whether a
/// vertex is still free (inside the grid and outside `N[B_{n-1}]`).
pub trait BurnView {
    fn time(&self) -> u64;
    fn grid(&self) -> &GridBox;
    fn is_available(&self, p: &Point) -> bool;
}

pub trait Strategy: Send {
    fn dimension(&self) -> usize;

    /// The site for time `view.time()`. Called for every `n = 0, 1, 2, ...` in order.
    fn next(&mut self, view: &dyn BurnView) -> Result<Site>;

    /// Steps where the construction's vertex was unavailable and a skip was emitted instead.
    fn collisions(&self) -> u64 {
        0
    }
}

/// Serializable description of a construction and its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StrategySpec {
    /// Light the origin at time 0 and nothing else.
    OriginOnly {
        #[serde(default = "two")]
        dimension: usize,
    },
    /// Never light anything.
    AllSkip {
        #[serde(default = "two")]
        dimension: usize,
    },
    /// Nearest free vertex with the largest `y`, on `[0, n]^2`.
    NearestTop { skip_at: u64 },
    /// `(⌊ρn⌋, n)` whenever `⌊ρn⌋` increments, on `[0, n]^2`.
    SkinnyTriangle { rho: f64 },
    /// The corner `(n, n)` every `period` steps, on `[0, n]^2`.
    LayerCake {
        period: u64,
        #[serde(default)]
        max_gap: Option<u64>,
    },
    /// Four quadrant constructions interleaved on `[-n, n]^2`.
    QuadrantComposition { epsilon: f64 },
    /// Four rotated top-edge walkers with gaps `⌈√t⌉`, on `[-⌈cn⌉, ⌈cn⌉]^2`.
    RotatingSqrtGap { c: f64 },
    /// Target density `rho` on `[-⌈cn⌉, ⌈cn⌉]^2`; resolves to one of the two above.
    LinearTarget { c: f64, rho: f64 },
    /// `(c n^{3/2}, √n)` in polar coordinates, rounded toward the origin.
    PolarSpiral { c: f64 },
    /// Uniform sphere points in epoch windows, on `[-⌈n^{(d+1)/d}⌉, ...]^d`.
    EpochRandom {
        dimension: usize,
        n1: u64,
        #[serde(default)]
        seed: Option<u64>,
    },
}

fn two() -> usize {
    2
}

impl StrategySpec {
    pub fn dimension(&self) -> usize {
        match self {
            StrategySpec::OriginOnly { dimension }
            | StrategySpec::AllSkip { dimension }
            | StrategySpec::EpochRandom { dimension, .. } => *dimension,
            _ => 2,
        }
    }

    pub fn is_stochastic(&self) -> bool {
        matches!(self, StrategySpec::EpochRandom { .. })
    }

    /// Instantiate. `seed` overrides a seed stored in the spec; stochastic
    /// strategies without any seed are rejected.
    pub fn build(&self, seed: Option<u64>) -> Result<Box<dyn Strategy>> {
        Ok(match self {
            StrategySpec::OriginOnly { dimension } => Box::new(Fixed::origin(*dimension)?),
            StrategySpec::AllSkip { dimension } => Box::new(Fixed::idle(*dimension)?),
            StrategySpec::NearestTop { skip_at } => Box::new(NearestTop::new(*skip_at)?),
            StrategySpec::SkinnyTriangle { rho } => Box::new(SkinnyTriangle::new(*rho)?),
            StrategySpec::LayerCake { period, max_gap } => Box::new(LayerCake::new(*period, *max_gap)?),
            StrategySpec::QuadrantComposition { epsilon } => Box::new(QuadrantComposition::new(*epsilon)?),
            StrategySpec::RotatingSqrtGap { c } => Box::new(RotatingSqrtGap::new(*c)?),
            StrategySpec::LinearTarget { c, rho } => return linear_target_density(*c, *rho)?.build(seed),
            StrategySpec::PolarSpiral { c } => Box::new(PolarSpiral::new(*c)?),
            StrategySpec::EpochRandom { dimension, n1, seed: own } => {
                let seed = seed.or(*own).ok_or_else(|| {
                    BurnError::param("epoch_random is stochastic and needs an explicit seed")
                })?;
                Box::new(EpochRandom::new(*dimension, *n1, seed)?)
            }
        })
    }
}

/// Pick the construction reaching density `rho` on `[-⌈cn⌉, ⌈cn⌉]^2`.
///
/// For `rho ≤ 1/c²` the quadrant composition with `ε = ρc²` runs on the central
/// `[-n, n]^2`; above that the rotating walker runs on the central
/// `[-⌈dn⌉, ⌈dn⌉]^2` with `d = c√ρ`. Both already emit full-grid coordinates.
pub fn linear_target_density(c: f64, rho: f64) -> Result<StrategySpec> {
    if !(c.is_finite() && c >= 1.0) {
        return Err(BurnError::param(format!("linear_target needs c ≥ 1, got {c}")));
    }
    let floor = 1.0 / (2.0 * c * c);
    if !(rho.is_finite() && rho >= floor - 1e-12 && rho <= 1.0) {
        return Err(BurnError::param(format!("linear_target needs ρ in [{floor}, 1], got {rho}")));
    }
    if rho * c * c <= 1.0 + 1e-12 {
        let epsilon = (rho * c * c).clamp(0.5, 1.0);
        Ok(StrategySpec::QuadrantComposition { epsilon })
    } else {
        Ok(StrategySpec::RotatingSqrtGap { c: c * rho.sqrt() })
    }
}

/// Plays back a recorded history; times without an entry are skips.
pub struct Replay {
    dimension: usize,
    sites: std::collections::BTreeMap<u64, Site>,
}

impl Replay {
    pub fn new(dimension: usize, history: &[crate::process::Activation]) -> Self {
        Replay { dimension, sites: history.iter().map(|a| (a.time, a.site.clone())).collect() }
    }
}

impl Strategy for Replay {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn next(&mut self, view: &dyn BurnView) -> Result<Site> {
        Ok(self.sites.remove(&view.time()).unwrap_or(Site::Skip))
    }
}

/// Origin-only and all-skip.
struct Fixed {
    dimension: usize,
    light_origin: bool,
}

impl Fixed {
    fn origin(dimension: usize) -> Result<Self> {
        if dimension == 0 {
            return Err(BurnError::param("dimension must be at least 1"));
        }
        Ok(Fixed { dimension, light_origin: true })
    }

    fn idle(dimension: usize) -> Result<Self> {
        Ok(Fixed { light_origin: false, ..Fixed::origin(dimension)? })
    }
}

impl Strategy for Fixed {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn next(&mut self, view: &dyn BurnView) -> Result<Site> {
        Ok(if view.time() == 0 && self.light_origin {
            Site::Vertex(Point::origin(self.dimension))
        } else {
            Site::Skip
        })
    }
}
