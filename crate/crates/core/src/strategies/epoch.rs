use super::{BurnView, Strategy};
use crate::lattice::sample_sphere_uniform;
use crate::process::Site;
use crate::{BurnError, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The activation window `[⌊N_i/6⌋ + 1, ⌊N_i/2⌋]` of epoch `i ≥ 1`, `N_i = 3^{i-1} N_1`.
pub fn epoch_window(n1: u64, i: u32) -> Option<(u64, u64)> {
    let ni = 3u64.checked_pow(i.checked_sub(1)?)?.checked_mul(n1)?;
    Some((ni / 6 + 1, ni / 2))
}

/// `max{2(3d/(d+1))^d, 2^{d+2}, 16d}`, rounded up.
pub fn epoch_min_n1(d: usize) -> Result<u64> {
    let d32 = u32::try_from(d).map_err(|_| BurnError::Overflow("epoch_min_n1"))?;
    let first = 2.0 * (3.0 * d as f64 / (d as f64 + 1.0)).powi(d32 as i32);
    let second = 2u64.checked_pow(d32 + 2).ok_or(BurnError::Overflow("epoch_min_n1"))?;
    Ok((first.ceil() as u64).max(second).max(16 * d as u64))
}

/// `⌊n^{(d+1)/d}⌋`, exactly: the largest `r` with `r^d ≤ n^{d+1}`.
pub fn epoch_radius(d: usize, n: u64) -> Result<u64> {
    let d32 = d as u32;
    let target = u128::from(n).checked_pow(d32 + 1).ok_or(BurnError::Overflow("epoch_radius"))?;
    let fits = |r: u64| u128::from(r).checked_pow(d32).is_some_and(|v| v <= target);
    let guess = (n as f64).powf((d as f64 + 1.0) / d as f64) as u64;
    let mut r = guess.saturating_sub(2);
    while fits(r + 1) {
        r += 1;
    }
    while r > 0 && !fits(r) {
        r -= 1;
    }
    Ok(r)
}

/// Uniform sphere points `‖v‖₁ = ⌊n^{(d+1)/d}⌋` at every time of an epoch window,
/// skips elsewhere. A sampled point that is already burned becomes a counted skip.
pub struct EpochRandom {
    d: usize,
    n1: u64,
    rng: ChaCha8Rng,
    collisions: u64,
}

impl EpochRandom {
    pub fn new(d: usize, n1: u64, seed: u64) -> Result<Self> {
        if d == 0 {
            return Err(BurnError::param("epoch_random dimension must be at least 1"));
        }
        let min = epoch_min_n1(d)?;
        if n1 < min {
            return Err(BurnError::param(format!("epoch_random needs N₁ ≥ {min} in dimension {d}, got {n1}")));
        }
        Ok(EpochRandom { d, n1, rng: ChaCha8Rng::seed_from_u64(seed), collisions: 0 })
    }

    pub fn in_window(&self, n: u64) -> bool {
        (1..)
            .map_while(|i| epoch_window(self.n1, i))
            .take_while(|&(lo, _)| lo <= n)
            .any(|(lo, hi)| (lo..=hi).contains(&n))
    }
}

impl Strategy for EpochRandom {
    fn dimension(&self) -> usize {
        self.d
    }

    fn next(&mut self, view: &dyn BurnView) -> Result<Site> {
        let n = view.time();
        if !self.in_window(n) {
            return Ok(Site::Skip);
        }
        let p = sample_sphere_uniform(self.d, epoch_radius(self.d, n)?, &mut self.rng)?;
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
    use crate::strategies::testing::OpenView;

    #[test]
    fn windows() {
        assert_eq!(epoch_window(36, 1), Some((7, 18)));
        assert_eq!(epoch_window(36, 2), Some((19, 54)));
        for i in 1..30 {
            let (_, hi) = epoch_window(36, i).unwrap();
            let (lo, _) = epoch_window(36, i + 1).unwrap();
            assert!(lo > hi);
        }
    }

    #[test]
    fn minimum_n1() {
        assert_eq!(epoch_min_n1(2).unwrap(), 32);
        assert_eq!(epoch_min_n1(3).unwrap(), 48);
        assert!(EpochRandom::new(2, 31, 0).is_err());
        assert!(EpochRandom::new(2, 36, 0).is_ok());
    }

    #[test]
    fn radii() {
        assert_eq!(epoch_radius(2, 10).unwrap(), 31);
        assert_eq!(epoch_radius(2, 19).unwrap(), 82);
        assert_eq!(epoch_radius(2, 4).unwrap(), 8);
        assert_eq!(epoch_radius(3, 8).unwrap(), 16);
        for n in 1..2000u64 {
            let r = epoch_radius(2, n).unwrap();
            assert!(r * r <= n * n * n && (r + 1) * (r + 1) > n * n * n);
        }
    }

    #[test]
    fn examples() {
        let mut s = EpochRandom::new(2, 36, 7).unwrap();
        let mut at = |n| s.next(&OpenView::at(n)).unwrap();
        assert_eq!(at(5), Site::Skip);
        assert_eq!(at(10).vertex().unwrap().norm1(), 31);
        assert_eq!(at(18).vertex().unwrap().norm1(), epoch_radius(2, 18).unwrap() as i64);
        assert_eq!(at(19).vertex().unwrap().norm1(), 82);
        assert_eq!(at(0), Site::Skip);
    }

    #[test]
    fn reproducible() {
        let run = |seed| {
            let mut s = EpochRandom::new(2, 36, seed).unwrap();
            (0..60).map(|n| s.next(&OpenView::at(n)).unwrap()).collect::<Vec<_>>()
        };
        assert_eq!(run(3), run(3));
        assert_ne!(run(3), run(4));
    }
}
