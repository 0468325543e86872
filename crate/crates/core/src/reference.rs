//! Brute-force oracles: per-cell simulation and direct enumeration.
//!
//! Everything here is deliberately naive and only suitable for small inputs.
//! The verification suites and tests compare the fast engines against it.

use crate::lattice::{dist, GridBox, Point};
use crate::process::{Activation, GrowthSpec, Site};
use crate::{BurnError, Result};
use rand::Rng;

/// Dense cell set over a fixed box.
struct Cells {
    bx: GridBox,
    on: Vec<bool>,
}

impl Cells {
    fn new(bx: GridBox) -> Result<Self> {
        let n = bx.cells()?;
        if n > 50_000_000 {
            return Err(BurnError::BudgetExceeded { needed: n, budget: 50_000_000 });
        }
        Ok(Cells { on: vec![false; n as usize], bx })
    }

    fn index(&self, p: &[i64]) -> Option<usize> {
        let mut idx = 0usize;
        for (i, &c) in p.iter().enumerate() {
            if c < self.bx.lo()[i] || c > self.bx.hi()[i] {
                return None;
            }
            idx = idx * self.bx.width(i) as usize + (c - self.bx.lo()[i]) as usize;
        }
        Some(idx)
    }

    fn point(&self, mut idx: usize) -> Vec<i64> {
        let d = self.bx.dim();
        let mut p = vec![0; d];
        for i in (0..d).rev() {
            let w = self.bx.width(i) as usize;
            p[i] = self.bx.lo()[i] + (idx % w) as i64;
            idx /= w;
        }
        p
    }

    fn get(&self, p: &[i64]) -> bool {
        self.index(p).is_some_and(|i| self.on[i])
    }
}

/// Cell-by-cell simulation of `B_{n+1} = N_{G_{n+1}}[B_n] ∪ {v_{n+1}}`.
///
/// `history[t]` must be the activation at time `t`. Returns `|B_n|` for
/// `n = 0..=horizon`; an activation inside `N[B_{n-1}]` is an error.
pub fn naive_counts(growth: &GrowthSpec, history: &[Activation], horizon: u64) -> Result<Vec<u128>> {
    let mut sim = NaiveSim::new(growth, horizon)?;
    let mut out = Vec::with_capacity(horizon as usize + 1);
    for n in 0..=horizon {
        let site = history.get(n as usize).map(|a| {
            if a.time != n {
                Err(BurnError::TimeOrder { time: a.time, horizon: n })
            } else {
                Ok(a.site.clone())
            }
        });
        let site = site.transpose()?.unwrap_or(Site::Skip);
        out.push(sim.step(&site)?);
    }
    Ok(out)
}

/// Stepwise per-cell simulator.
pub struct NaiveSim<'a> {
    growth: &'a GrowthSpec,
    time: Option<u64>,
    grid: GridBox,
    burned: Cells,
    scratch: Vec<bool>,
}

impl<'a> NaiveSim<'a> {
    pub fn new(growth: &'a GrowthSpec, horizon: u64) -> Result<Self> {
        growth.validate(horizon)?;
        let outer = growth.box_at(horizon)?;
        let burned = Cells::new(outer)?;
        let scratch = burned.on.clone();
        Ok(NaiveSim { growth, time: None, grid: growth.box_at(0)?, burned, scratch })
    }

    /// Grid of the step about to be taken.
    pub fn next_grid(&self) -> Result<GridBox> {
        self.growth.box_at(self.time.map_or(0, |t| t + 1))
    }

    /// Whether `p` may be lit at the next step.
    pub fn is_free(&self, p: &[i64]) -> Result<bool> {
        let grid = self.next_grid()?;
        if !grid.contains(&Point::new(p.to_vec())) {
            return Ok(false);
        }
        if self.time.is_none() {
            return Ok(true);
        }
        let mut q = p.to_vec();
        if self.burned.get(&q) {
            return Ok(false);
        }
        for i in 0..q.len() {
            for s in [-1, 1] {
                q[i] += s;
                let hit = self.burned.get(&q);
                q[i] -= s;
                if hit {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Advance one step and light `site`; returns the new burned count.
    pub fn step(&mut self, site: &Site) -> Result<u128> {
        let t = self.time.map_or(0, |t| t + 1);
        let grid = self.growth.box_at(t)?;
        if let Site::Vertex(p) = site {
            if !grid.contains(p) {
                return Err(BurnError::OutsideGrid { time: t, point: p.coords().to_vec() });
            }
            if !self.is_free(p.coords())? {
                return Err(BurnError::InvalidActivation { time: t, point: p.coords().to_vec() });
            }
        }
        if self.time.is_some() {
            for idx in 0..self.burned.on.len() {
                let mut q = self.burned.point(idx);
                let mut hit = false;
                if grid.contains(&Point::new(q.clone())) {
                    hit = self.burned.on[idx];
                    for i in 0..q.len() {
                        for s in [-1, 1] {
                            q[i] += s;
                            hit |= self.burned.get(&q);
                            q[i] -= s;
                        }
                    }
                }
                self.scratch[idx] = hit;
            }
            std::mem::swap(&mut self.burned.on, &mut self.scratch);
        }
        if let Site::Vertex(p) = site {
            let i = self.burned.index(p.coords()).expect("activation inside the outer box");
            self.burned.on[i] = true;
        }
        self.time = Some(t);
        self.grid = grid;
        Ok(self.count())
    }

    pub fn count(&self) -> u128 {
        self.burned.on.iter().filter(|&&b| b).count() as u128
    }

    pub fn is_burned(&self, p: &[i64]) -> bool {
        self.burned.get(p)
    }
}

/// A random valid history: at each step, with probability `rate`, light a
/// uniformly drawn free cell of the grid if one turns up within a few draws.
pub fn random_valid_history<R: Rng + ?Sized>(
    growth: &GrowthSpec,
    horizon: u64,
    rate: f64,
    rng: &mut R,
) -> Result<Vec<Activation>> {
    let mut sim = NaiveSim::new(growth, horizon)?;
    let mut out = Vec::with_capacity(horizon as usize + 1);
    for n in 0..=horizon {
        let grid = sim.next_grid()?;
        let mut site = Site::Skip;
        if rng.random_bool(rate) {
            for _ in 0..16 {
                let p: Vec<i64> = (0..grid.dim()).map(|i| rng.random_range(grid.lo()[i]..=grid.hi()[i])).collect();
                if sim.is_free(&p)? {
                    site = Site::Vertex(Point::new(p));
                    break;
                }
            }
        }
        sim.step(&site)?;
        out.push(Activation { time: n, site });
    }
    Ok(out)
}

/// `|⋃_k B₁(v_k, n-k) ∩ box|` by scanning every cell.
pub fn naive_union(acts: &[(u64, Point)], n: u64, bx: &GridBox) -> Result<u128> {
    let cells = Cells::new(bx.clone())?;
    Ok((0..cells.on.len())
        .filter(|&i| {
            let p = cells.point(i);
            acts.iter().any(|(k, v)| *k <= n && dist(&p, v.coords()) <= n - k)
        })
        .count() as u128)
}

fn cube(d: usize, r: i64) -> impl Iterator<Item = Vec<i64>> {
    let w = (2 * r + 1) as u64;
    (0..w.pow(d as u32)).map(move |mut i| {
        (0..d)
            .map(|_| {
                let c = (i % w) as i64 - r;
                i /= w;
                c
            })
            .collect()
    })
}

/// `|B₁(0, r)|` by enumerating `[-r, r]^d`.
pub fn brute_ball(d: usize, r: u64) -> u128 {
    cube(d, r as i64).filter(|p| p.iter().map(|c| c.unsigned_abs()).sum::<u64>() <= r).count() as u128
}

/// `|S₁(0, r)|` by enumerating `[-r, r]^d`.
pub fn brute_sphere(d: usize, r: u64) -> u128 {
    cube(d, r as i64).filter(|p| p.iter().map(|c| c.unsigned_abs()).sum::<u64>() == r).count() as u128
}

/// `|S₁(0, x) ∩ B₁(p, y)|` by enumerating `[-x, x]^d`.
pub fn brute_sphere_ball(x: u64, p: &Point, y: u64) -> u128 {
    cube(p.dim(), x as i64)
        .filter(|q| q.iter().map(|c| c.unsigned_abs()).sum::<u64>() == x && dist(q, p.coords()) <= y)
        .count() as u128
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::Schedule;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn validity_example_from_bfs() {
        // (3,2) at time 2 after (0,0) at 0 and (3,0) at 1.
        let g = GrowthSpec::symmetric(2, Schedule::linear(3.0));
        let h = vec![Activation::at(0, [0, 0]), Activation::at(1, [3, 0]), Activation::at(2, [3, 2])];
        assert!(naive_counts(&g, &h, 2).is_ok());
        let bad = vec![Activation::at(0, [0, 0]), Activation::at(1, [3, 0]), Activation::at(2, [3, 1])];
        assert!(matches!(naive_counts(&g, &bad, 2), Err(BurnError::InvalidActivation { time: 2, .. })));
    }

    #[test]
    fn single_ball_counts() {
        let g = GrowthSpec::symmetric(2, Schedule::linear(1.0));
        let counts = naive_counts(&g, &[Activation::at(0, [0, 0])], 4).unwrap();
        assert_eq!(counts, vec![1, 5, 13, 25, 41]);
    }

    #[test]
    fn wall_stall() {
        let g = GrowthSpec::symmetric(1, Schedule::Table { values: vec![0, 1, 1, 1, 5] });
        let counts = naive_counts(&g, &[Activation::at(0, [0])], 4).unwrap();
        assert_eq!(counts, vec![1, 3, 3, 3, 5]);
    }

    #[test]
    fn random_histories_replay() {
        let g = GrowthSpec::symmetric(2, Schedule::linear(1.0));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let h = random_valid_history(&g, 20, 0.7, &mut rng).unwrap();
        assert_eq!(h.len(), 21);
        assert!(naive_counts(&g, &h, 20).is_ok());
    }

    #[test]
    fn enumeration() {
        assert_eq!(brute_ball(3, 2), 25);
        assert_eq!(brute_sphere(3, 2), 18);
        assert_eq!(brute_sphere_ball(4, &Point::from([2, 0]), 4), 7);
    }
}
