use super::{BurnView, Strategy};
use crate::lattice::{round_toward_origin, Point, RealPoint};
use crate::process::Site;
use crate::{BurnError, Result};

/// `v_n = (c n^{3/2}, √n)` in polar coordinates, rounded toward the origin.
///
/// A rounded point that is already burned is replaced by a skip and counted.
pub struct PolarSpiral {
    c: f64,
    collisions: u64,
}

impl PolarSpiral {
    pub fn new(c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(BurnError::param(format!("polar_spiral needs c > 0, got {c}")));
        }
        Ok(PolarSpiral { c, collisions: 0 })
    }

    pub fn point(c: f64, n: u64) -> Result<Point> {
        let nf = n as f64;
        let (r, theta) = (c * nf * nf.sqrt(), nf.sqrt());
        round_toward_origin(&RealPoint::new(vec![r * theta.cos(), r * theta.sin()])?)
    }
}

impl Strategy for PolarSpiral {
    fn dimension(&self) -> usize {
        2
    }

    fn next(&mut self, view: &dyn BurnView) -> Result<Site> {
        let p = Self::point(self.c, view.time())?;
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

    #[test]
    fn spiral_examples() {
        assert_eq!(PolarSpiral::point(1.0, 0).unwrap(), Point::origin(2));
        assert_eq!(PolarSpiral::point(1.0, 1).unwrap(), Point::from([0, 1]));
        assert_eq!(PolarSpiral::point(1.0, 4).unwrap(), Point::from([-3, 7]));
    }

    #[test]
    fn rounded_norm_fits_extent() {
        for c in [0.5, 1.0, 2.0] {
            for n in 0..=10_000u64 {
                let p = PolarSpiral::point(c, n).unwrap();
                let extent = (c * (n as f64).powf(1.5)).ceil() as i64;
                assert!(p.coords().iter().all(|v| v.abs() <= extent), "c={c} n={n} {p}");
            }
        }
    }
}
