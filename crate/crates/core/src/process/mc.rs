use crate::lattice::{dist, GridBox, Point};
use crate::{BurnError, Exec, Result};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Samples per independently seeded block. Fixed so that results do not depend
/// on how blocks are spread over threads.
const BLOCK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    /// Estimated fraction of the box that is burning.
    pub estimate: f64,
    /// Binomial standard error of `estimate`.
    pub std_error: f64,
    pub samples: u64,
}

pub fn estimate_density_mc<R: RngCore + ?Sized>(
    acts: &[(u64, Point)],
    n: u64,
    bx: &GridBox,
    samples: u64,
    rng: &mut R,
) -> Result<McEstimate> {
    estimate_density_mc_with(Exec::default(), acts, n, bx, samples, rng)
}

/// Uniform box samples tested against `min_k d(p, v_k) - (n - k) ≤ 0`.
///
/// Only meaningful where the burned set is the union of clipped balls, i.e.
/// under the free-spread certificate.
pub fn estimate_density_mc_with<R: RngCore + ?Sized>(
    exec: Exec,
    acts: &[(u64, Point)],
    n: u64,
    bx: &GridBox,
    samples: u64,
    rng: &mut R,
) -> Result<McEstimate> {
    if samples == 0 {
        return Err(BurnError::param("Monte Carlo needs at least one sample"));
    }
    for (k, v) in acts {
        if v.dim() != bx.dim() {
            return Err(BurnError::DimensionMismatch { expected: bx.dim(), got: v.dim() });
        }
        if *k > n {
            return Err(BurnError::TimeOrder { time: *k, horizon: n });
        }
    }
    let key = rng.next_u64();
    let blocks = samples.div_ceil(BLOCK) as usize;
    let hits = exec.sum_u128(0..blocks, |b| {
        let mut r = ChaCha8Rng::seed_from_u64(key);
        r.set_stream(b as u64);
        let take = BLOCK.min(samples - b as u64 * BLOCK);
        let mut p = vec![0i64; bx.dim()];
        let mut hits = 0u128;
        for _ in 0..take {
            for (i, c) in p.iter_mut().enumerate() {
                *c = r.random_range(bx.lo()[i]..=bx.hi()[i]);
            }
            if acts.iter().any(|(k, v)| dist(&p, v.coords()) <= n - k) {
                hits += 1;
            }
        }
        hits
    });
    let m = samples as f64;
    let estimate = hits as f64 / m;
    let std_error = (estimate * (1.0 - estimate) / m).sqrt();
    Ok(McEstimate { estimate, std_error, samples })
}
