use super::{BurnView, Strategy};
use crate::lattice::Point;
use crate::process::growth::ceil_snap;
use crate::process::Site;
use crate::{BurnError, Result};

/// Four quarter-turned copies of a top-edge walker on `[-⌈cn⌉, ⌈cn⌉]^2`.
///
/// Region `r = n mod 4` acts at time `n`. Its `k`-th activation sits on the top
/// edge `y = ⌈cn⌉` of its own frame, `⌈√k⌉` to the right of the previous one,
/// wrapping by `2⌈cn⌉` past the corner. Region 0 starts at time 4, the others
/// at time `r`. A walker point that is already burned becomes a counted skip;
/// the walker still advances.
pub struct RotatingSqrtGap {
    c: f64,
    x: [i64; 4],
    k: [u64; 4],
    collisions: u64,
}

impl RotatingSqrtGap {
    pub fn new(c: f64) -> Result<Self> {
        if !(c.is_finite() && c >= 1.0) {
            return Err(BurnError::param(format!("rotating_sqrt_gap needs c ≥ 1, got {c}")));
        }
        Ok(RotatingSqrtGap { c, x: [0; 4], k: [0; 4], collisions: 0 })
    }

    /// The walker point for time `n ≥ 1`, in its own (unrotated) frame.
    fn walk(&mut self, n: u64) -> (usize, (i64, i64)) {
        let r = (n % 4) as usize;
        self.k[r] += 1;
        let h = ceil_snap(self.c * n as f64) as i64;
        let mut x = self.x[r] + self.k[r].isqrt() as i64 + i64::from(!is_square(self.k[r]));
        if x > h {
            x -= 2 * h;
        }
        self.x[r] = x;
        (r, (x, h))
    }
}

fn is_square(k: u64) -> bool {
    let s = k.isqrt();
    s * s == k
}

/// `r` clockwise quarter turns.
fn rotate(r: usize, (mut x, mut y): (i64, i64)) -> (i64, i64) {
    for _ in 0..r {
        (x, y) = (y, -x);
    }
    (x, y)
}

impl Strategy for RotatingSqrtGap {
    fn dimension(&self) -> usize {
        2
    }

    fn next(&mut self, view: &dyn BurnView) -> Result<Site> {
        let n = view.time();
        if n == 0 {
            return Ok(Site::Vertex(Point::origin(2)));
        }
        let (r, p) = self.walk(n);
        let (x, y) = rotate(r, p);
        let p = Point::from([x, y]);
        if view.is_available(&p) {
            Ok(Site::Vertex(p))
        } else {
            self.collisions += 1;
            Ok(Site::Skip)
        }
    }

    fn collisions(&self) -> u64 {
        self.collisions
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategies::testing::sites;

    #[test]
    fn walker_examples() {
        let mut s = RotatingSqrtGap::new(1.0).unwrap();
        let got = sites(&mut s, 8);
        assert_eq!(got[4], Site::Vertex(Point::from([1, 4])));
        assert_eq!(got[8], Site::Vertex(Point::from([3, 8])));
        assert_eq!(got[1], Site::Vertex(Point::from([1, -1])));
        let p = got[1].vertex().unwrap();
        assert_eq!(p.coords()[0], 1);
    }

    #[test]
    fn ceil_sqrt_gap() {
        for k in 1u64..200 {
            let want = (k as f64).sqrt().ceil() as i64;
            assert_eq!(k.isqrt() as i64 + i64::from(!is_square(k)), want);
        }
    }

    #[test]
    fn wrap_keeps_walker_on_edge() {
        for c in [1.0, 1.5, 2.0] {
            let mut s = RotatingSqrtGap::new(c).unwrap();
            for n in 1..20_000u64 {
                let (_, (x, h)) = s.walk(n);
                assert!(x.abs() <= h, "c={c} n={n} x={x} h={h}");
            }
        }
    }

    #[test]
    fn rejects_small_c() {
        assert!(RotatingSqrtGap::new(0.5).is_err());
    }
}
