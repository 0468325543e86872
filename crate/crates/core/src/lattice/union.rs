//! Exact cardinality of a union of clipped L1 balls `⋃_k B_1(v_k, n - k) ∩ box`.

use super::{GridBox, Point};
use crate::{BurnError, Exec, Result};

/// Default cap on `box cells x balls` for the slab engine.
pub const DEFAULT_CELL_BUDGET: u128 = 100_000_000;

fn check_inputs(acts: &[(u64, Point)], n: u64, bx: &GridBox) -> Result<()> {
    for (k, v) in acts {
        if v.dim() != bx.dim() {
            return Err(BurnError::DimensionMismatch { expected: bx.dim(), got: v.dim() });
        }
        if *k > n {
            return Err(BurnError::TimeOrder { time: *k, horizon: n });
        }
    }
    Ok(())
}

pub fn union_count_2d(acts: &[(u64, Point)], n: u64, bx: &GridBox) -> Result<u128> {
    union_count_2d_with(Exec::default(), acts, n, bx)
}

/// Planar union count through the rotation `(u, w) = (x + y, x - y)`.
///
/// A ball of radius `ρ` about `(x0, y0)` becomes the square
/// `[u0-ρ, u0+ρ] x [w0-ρ, w0+ρ]` restricted to `u ≡ w (mod 2)`. The `u` axis is
/// swept with a coverage segment tree over compressed `w`; on each line `u` the box
/// cuts out one `w` interval and the tree answers how many covered `w` of the right
/// parity it holds.
pub fn union_count_2d_with(exec: Exec, acts: &[(u64, Point)], n: u64, bx: &GridBox) -> Result<u128> {
    if bx.dim() != 2 {
        return Err(BurnError::DimensionMismatch { expected: 2, got: bx.dim() });
    }
    check_inputs(acts, n, bx)?;
    let (xlo, ylo, xhi, yhi) = (bx.lo()[0], bx.lo()[1], bx.hi()[0], bx.hi()[1]);
    let (u_min, u_max) = (xlo + ylo, xhi + yhi);

    let squares: Vec<Square> = acts
        .iter()
        .filter_map(|(k, v)| {
            let rho = (n - k) as i64;
            let (x, y) = (v.coords()[0], v.coords()[1]);
            let sq = Square {
                u_lo: x + y - rho,
                u_hi: x + y + rho,
                w_lo: x - y - rho,
                w_end: x - y + rho + 1,
            };
            (sq.u_hi >= u_min && sq.u_lo <= u_max).then_some(sq)
        })
        .collect();
    if squares.is_empty() {
        return Ok(0);
    }

    let mut xs: Vec<i64> = squares.iter().flat_map(|s| [s.w_lo, s.w_end]).collect();
    xs.sort_unstable();
    xs.dedup();

    let mut starts: Vec<usize> = (0..squares.len()).collect();
    starts.sort_by_key(|&i| squares[i].u_lo);
    let mut ends: Vec<usize> = (0..squares.len()).collect();
    ends.sort_by_key(|&i| squares[i].u_hi);

    let sweep = Sweep { squares: &squares, xs: &xs, starts: &starts, ends: &ends, bx: (xlo, ylo, xhi, yhi) };
    let span = (u_max - u_min + 1) as usize;
    let chunk = match exec.pieces() {
        1 => span,
        k => span.div_ceil(k).max(512),
    };
    let chunks = span.div_ceil(chunk);
    Ok(exec.sum_u128(0..chunks, |c| {
        let a = u_min + (c * chunk) as i64;
        let b = (a + chunk as i64 - 1).min(u_max);
        sweep.run(a, b)
    }))
}

#[derive(Debug, Clone, Copy)]
struct Square {
    u_lo: i64,
    u_hi: i64,
    w_lo: i64,
    w_end: i64,
}

struct Sweep<'a> {
    squares: &'a [Square],
    xs: &'a [i64],
    starts: &'a [usize],
    ends: &'a [usize],
    bx: (i64, i64, i64, i64),
}

impl Sweep<'_> {
    /// Covered lattice points on the lines `u ∈ [a, b]`.
    fn run(&self, a: i64, b: i64) -> u128 {
        let mut tree = CoverTree::new(self.xs);
        for s in self.squares.iter().filter(|s| s.u_lo <= a && a <= s.u_hi) {
            tree.add(s.w_lo, s.w_end, 1);
        }
        let mut si = self.starts.partition_point(|&i| self.squares[i].u_lo <= a);
        let mut ei = self.ends.partition_point(|&i| self.squares[i].u_hi < a);
        let (xlo, ylo, xhi, yhi) = self.bx;
        let mut total: u128 = 0;
        for u in a..=b {
            if u > a {
                while ei < self.ends.len() && self.squares[self.ends[ei]].u_hi < u {
                    let s = self.squares[self.ends[ei]];
                    tree.add(s.w_lo, s.w_end, -1);
                    ei += 1;
                }
                while si < self.starts.len() && self.squares[self.starts[si]].u_lo <= u {
                    let s = self.squares[self.starts[si]];
                    tree.add(s.w_lo, s.w_end, 1);
                    si += 1;
                }
            }
            if tree.is_empty() {
                continue;
            }
            let xa = xlo.max(u - yhi);
            let xb = xhi.min(u - ylo);
            if xa > xb {
                continue;
            }
            total += tree.covered(2 * xa - u, 2 * xb - u + 1, u.rem_euclid(2) as usize) as u128;
        }
        total
    }
}

/// Integers `w ∈ [a, b)` with `w ≡ parity (mod 2)`.
#[inline]
fn parity_count(a: i64, b: i64, parity: usize) -> u64 {
    if a >= b {
        return 0;
    }
    let p = parity as i64;
    ((b - p + 1).div_euclid(2) - (a - p + 1).div_euclid(2)) as u64
}

/// Segment tree over elementary intervals `[xs[i], xs[i+1])` keeping, per node,
/// a cover count and the number of covered integers of each parity.
struct CoverTree<'a> {
    xs: &'a [i64],
    cnt: Vec<i32>,
    cov: Vec<[u64; 2]>,
    active: usize,
}

impl<'a> CoverTree<'a> {
    fn new(xs: &'a [i64]) -> Self {
        let leaves = xs.len().saturating_sub(1).max(1);
        CoverTree { xs, cnt: vec![0; 4 * leaves], cov: vec![[0; 2]; 4 * leaves], active: 0 }
    }

    fn leaves(&self) -> usize {
        self.xs.len() - 1
    }

    fn is_empty(&self) -> bool {
        self.active == 0
    }

    fn add(&mut self, a: i64, b: i64, delta: i32) {
        let ia = self.xs.binary_search(&a).expect("endpoint is compressed");
        let ib = self.xs.binary_search(&b).expect("endpoint is compressed");
        if delta > 0 {
            self.active += 1;
        } else {
            self.active -= 1;
        }
        self.update(1, 0, self.leaves(), ia, ib, delta);
    }

    fn update(&mut self, node: usize, l: usize, r: usize, a: usize, b: usize, delta: i32) {
        if b <= l || r <= a {
            return;
        }
        if a <= l && r <= b {
            self.cnt[node] += delta;
        } else {
            let m = (l + r) / 2;
            self.update(2 * node, l, m, a, b, delta);
            self.update(2 * node + 1, m, r, a, b, delta);
        }
        self.pull(node, l, r);
    }

    fn pull(&mut self, node: usize, l: usize, r: usize) {
        self.cov[node] = if self.cnt[node] > 0 {
            let (x0, x1) = (self.xs[l], self.xs[r]);
            [parity_count(x0, x1, 0), parity_count(x0, x1, 1)]
        } else if r - l == 1 {
            [0, 0]
        } else {
            let (c0, c1) = (self.cov[2 * node], self.cov[2 * node + 1]);
            [c0[0] + c1[0], c0[1] + c1[1]]
        };
    }

    fn covered(&self, qa: i64, qb: i64, parity: usize) -> u64 {
        self.query(1, 0, self.leaves(), qa, qb, parity)
    }

    fn query(&self, node: usize, l: usize, r: usize, qa: i64, qb: i64, parity: usize) -> u64 {
        let (x0, x1) = (self.xs[l], self.xs[r]);
        let (a, b) = (qa.max(x0), qb.min(x1));
        if a >= b {
            return 0;
        }
        if self.cnt[node] > 0 {
            return parity_count(a, b, parity);
        }
        if r - l == 1 {
            return 0;
        }
        if a == x0 && b == x1 {
            return self.cov[node][parity];
        }
        let m = (l + r) / 2;
        self.query(2 * node, l, m, qa, qb, parity) + self.query(2 * node + 1, m, r, qa, qb, parity)
    }
}

pub fn union_count_slab(acts: &[(u64, Point)], n: u64, bx: &GridBox, budget: u128) -> Result<u128> {
    union_count_slab_with(Exec::default(), acts, n, bx, budget)
}

/// Union count in any dimension: every `(d-1)`-coordinate prefix of the box is a
/// line along the last axis on which each ball leaves one interval.
///
/// Work is `box cells x balls`; above `budget` this returns
/// [`BurnError::BudgetExceeded`] so the caller can switch to sampling.
pub fn union_count_slab_with(
    exec: Exec,
    acts: &[(u64, Point)],
    n: u64,
    bx: &GridBox,
    budget: u128,
) -> Result<u128> {
    check_inputs(acts, n, bx)?;
    let d = bx.dim();
    let cells = bx.cells()?;
    let needed = cells.checked_mul(acts.len().max(1) as u128).ok_or(BurnError::Overflow("slab work"))?;
    if needed > budget {
        return Err(BurnError::BudgetExceeded { needed, budget });
    }
    if acts.is_empty() {
        return Ok(0);
    }
    let widths: Vec<u64> = (0..d - 1).map(|i| bx.width(i)).collect();
    let prefixes: usize = widths.iter().product::<u64>() as usize;
    let (last_lo, last_hi) = (bx.lo()[d - 1], bx.hi()[d - 1]);

    Ok(exec.sum_u128(0..prefixes, |idx| {
        let mut prefix = vec![0i64; d - 1];
        let mut rest = idx as u64;
        for i in (0..d - 1).rev() {
            prefix[i] = bx.lo()[i] + (rest % widths[i]) as i64;
            rest /= widths[i];
        }
        let mut spans: Vec<(i64, i64)> = acts
            .iter()
            .filter_map(|(k, v)| {
                let c = v.coords();
                let used: i64 = prefix.iter().zip(c).map(|(p, q)| (p - q).abs()).sum();
                let rem = (n - k) as i64 - used;
                if rem < 0 {
                    return None;
                }
                let a = (c[d - 1] - rem).max(last_lo);
                let b = (c[d - 1] + rem).min(last_hi);
                (a <= b).then_some((a, b))
            })
            .collect();
        merged_length(&mut spans)
    }))
}

/// Total length of a union of closed integer intervals.
pub(crate) fn merged_length(spans: &mut [(i64, i64)]) -> u128 {
    spans.sort_unstable();
    let mut total: u128 = 0;
    let mut cur: Option<(i64, i64)> = None;
    for &(a, b) in spans.iter() {
        match cur {
            Some((ca, cb)) if a <= cb + 1 => cur = Some((ca, cb.max(b))),
            Some((ca, cb)) => {
                total += (cb - ca + 1) as u128;
                cur = Some((a, b));
            }
            None => cur = Some((a, b)),
        }
    }
    if let Some((ca, cb)) = cur {
        total += (cb - ca + 1) as u128;
    }
    total
}
