use super::{dist, GridBox, Point};
use crate::{BurnError, Result};

/// Largest sphere the enumeration-based routines will walk.
const SPHERE_ENUMERATION_BUDGET: u128 = 50_000_000;

/// `C(n, k)` with overflow detection.
pub fn binomial(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or(BurnError::Overflow("binomial"))?
            / (i as u128 + 1);
    }
    Ok(acc)
}

fn pow2(k: u64) -> Result<u128> {
    1u128.checked_shl(k as u32).filter(|_| k < 128).ok_or(BurnError::Overflow("power of two"))
}

/// `|B_1(0, r)|` in `Z^d`.
///
/// Splitting by the number `k` of nonzero coordinates: choose them (`C(d,k)`),
/// their signs (`2^k`) and a composition of at most `r` into `k` positive parts
/// (`C(r,k)`).
pub fn ball_cardinality(d: usize, r: u64) -> Result<u128> {
    if d == 0 {
        return Err(BurnError::param("dimension must be at least 1"));
    }
    let mut total: u128 = 0;
    for k in 0..=(d as u64).min(r) {
        let term = pow2(k)?
            .checked_mul(binomial(d as u64, k)?)
            .and_then(|t| t.checked_mul(binomial(r, k).ok()?))
            .ok_or(BurnError::Overflow("ball cardinality"))?;
        total = total.checked_add(term).ok_or(BurnError::Overflow("ball cardinality"))?;
    }
    Ok(total)
}

/// `|S_1(0, r)|` in `Z^d`, the number of points at L1 norm exactly `r`.
pub fn sphere_cardinality(d: usize, r: u64) -> Result<u128> {
    if d == 0 {
        return Err(BurnError::param("dimension must be at least 1"));
    }
    if r == 0 {
        return Ok(1);
    }
    let mut total: u128 = 0;
    for k in 1..=(d as u64).min(r) {
        let term = pow2(k)?
            .checked_mul(binomial(d as u64, k)?)
            .and_then(|t| t.checked_mul(binomial(r - 1, k - 1).ok()?))
            .ok_or(BurnError::Overflow("sphere cardinality"))?;
        total = total.checked_add(term).ok_or(BurnError::Overflow("sphere cardinality"))?;
    }
    Ok(total)
}

/// `|B_1(center, r) ∩ box|`, one interval per row in the last coordinate.
pub fn ball_box_count(center: &Point, r: u64, bx: &GridBox) -> Result<u128> {
    if center.dim() != bx.dim() {
        return Err(BurnError::DimensionMismatch { expected: bx.dim(), got: center.dim() });
    }
    Ok(clipped(center.coords(), r as i64, bx.lo(), bx.hi()))
}

fn clipped(c: &[i64], r: i64, lo: &[i64], hi: &[i64]) -> u128 {
    if c.len() == 1 {
        let a = (c[0] - r).max(lo[0]);
        let b = (c[0] + r).min(hi[0]);
        return if a <= b { (b - a + 1) as u128 } else { 0 };
    }
    let from = (c[0] - r).max(lo[0]);
    let to = (c[0] + r).min(hi[0]);
    (from..=to)
        .map(|x| clipped(&c[1..], r - (x - c[0]).abs(), &lo[1..], &hi[1..]))
        .sum()
}

/// All points of `S_1(0, r)` in `Z^d`, in lexicographic order.
pub fn sphere_points(d: usize, r: u64) -> Result<Vec<Point>> {
    let size = sphere_cardinality(d, r)?;
    if size > SPHERE_ENUMERATION_BUDGET {
        return Err(BurnError::BudgetExceeded { needed: size, budget: SPHERE_ENUMERATION_BUDGET });
    }
    let mut out = Vec::with_capacity(size as usize);
    let mut buf = vec![0i64; d];
    fill_sphere(&mut buf, 0, r as i64, &mut out);
    Ok(out)
}

fn fill_sphere(buf: &mut [i64], axis: usize, rem: i64, out: &mut Vec<Point>) {
    if axis + 1 == buf.len() {
        if rem == 0 {
            buf[axis] = 0;
            out.push(Point::new(buf.to_vec()));
        } else {
            for v in [-rem, rem] {
                buf[axis] = v;
                out.push(Point::new(buf.to_vec()));
            }
        }
        return;
    }
    for v in -rem..=rem {
        buf[axis] = v;
        fill_sphere(buf, axis + 1, rem - v.abs(), out);
    }
}

/// `|S_1(0, x) ∩ B_1(p, y)|` by walking the sphere.
pub fn sphere_ball_intersection_count(x: u64, p: &Point, y: u64) -> Result<u128> {
    let pts = sphere_points(p.dim(), x)?;
    Ok(pts.iter().filter(|q| dist(q.coords(), p.coords()) <= y).count() as u128)
}
