use super::{Point, RealPoint};
use crate::{BurnError, Result};

const TIE_EPS: f64 = 1e-12;

/// `P*`: the lattice point of L1 norm at most `|p|_1` that is L1-closest to `p`.
///
/// Ties go to the lexicographically smallest coordinate vector. Only the plane is
/// supported.
pub fn round_toward_origin(p: &RealPoint) -> Result<Point> {
    if p.dim() != 2 {
        return Err(BurnError::param(format!(
            "rounding toward the origin is defined in the plane only (got dimension {})",
            p.dim()
        )));
    }
    let [px, py] = [p.coords()[0], p.coords()[1]];
    let limit = p.norm1();

    let mut candidates: Vec<[i64; 2]> = Vec::with_capacity(12);
    for x in [px.floor(), px.ceil()] {
        for y in [py.floor(), py.ceil()] {
            let corner = [x as i64, y as i64];
            candidates.push(corner);
            for axis in 0..2 {
                if corner[axis] != 0 {
                    let mut inward = corner;
                    inward[axis] -= corner[axis].signum();
                    candidates.push(inward);
                }
            }
        }
    }

    let dist = |q: &[i64; 2]| (q[0] as f64 - px).abs() + (q[1] as f64 - py).abs();
    let admissible: Vec<([i64; 2], f64)> = candidates
        .into_iter()
        .filter(|q| (q[0].abs() + q[1].abs()) as f64 <= limit)
        .map(|q| (q, dist(&q)))
        .collect();
    // Truncation toward zero is always admissible.
    let best = admissible.iter().map(|(_, d)| *d).fold(f64::INFINITY, f64::min);
    let pick = admissible
        .iter()
        .filter(|(_, d)| *d <= best + TIE_EPS * (1.0 + best))
        .map(|(q, _)| *q)
        .min()
        .expect("truncated corner is admissible");
    Ok(Point::new(pick.to_vec()))
}
