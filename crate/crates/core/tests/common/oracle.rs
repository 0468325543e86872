//! Expected values frozen before the engines were written. Thresholds come from
//! an independent Python simulation (its own strategy code and per-row interval
//! counting); exact counts from brute-force enumeration.

/// Origin-only on `[-n, n]^2`: `(2n² + 2n + 1) / (2n + 1)²`.
pub fn origin_only_density(n: u64) -> f64 {
    let n = n as f64;
    (2.0 * n * n + 2.0 * n + 1.0) / ((2.0 * n + 1.0) * (2.0 * n + 1.0))
}

/// √t-gap walker, density at `n = 2000`: simulated 0.989007 (`c = 1`) and
/// 0.581927 (`c = 2`); thresholds sit just below.
pub const ROTATING_FLOOR_2000: [(f64, f64); 2] = [(1.0, 0.985), (2.0, 0.575)];
/// Simulated densities at 500, 1000, 2000.
pub const ROTATING_SIMULATED: [(f64, [f64; 3]); 2] = [
    (1.0, [0.938770, 0.946127, 0.989007]),
    (2.0, [0.451205, 0.531374, 0.581927]),
];
/// Collisions replaced by skips up to `n = 2000`.
pub const ROTATING_COLLISIONS: [(f64, u64); 2] = [(1.0, 174), (2.0, 0)];

/// Polar spiral `c = 1`: simulated minimum over checkpoints in `[100, 400]` is
/// 0.032670 (at 400), with one collision up to `n = 400`.
pub const POLAR_FLOOR: f64 = 0.032;
pub const POLAR_DENSITY_400: f64 = 0.0326702715571871;

/// Polar spiral `c = 1` on `[-⌈n^{1.6}⌉, ⌈n^{1.6}⌉]^2`.
pub const POLAR16_DENSITY: [(u64, f64); 2] = [(100, 0.014829082664453293), (800, 0.008383381484741279)];

/// Epoch construction, `d = 2`, `N₁ = 36`: over 40 simulated seeds the minimum
/// density on `[36, 324]` ranged over [0.0545, 0.0591].
pub const EPOCH_FLOOR: f64 = 0.05;

/// Counterexamples to the intersection bound under `r ≤ x + y`, `r + x ≥ y`
/// alone, all sizes ≤ 12, orbit representatives: 451 for d = 2, 485 for d = 3.
pub const LEMMA42_STATED_FAILURES: [(usize, usize); 2] = [(2, 451), (3, 485)];

/// `|S₁(0, r)|` in Z^d, enumerated.
pub const SPHERES: [(usize, u64, u128); 6] = [(2, 1, 4), (2, 3, 12), (3, 2, 18), (3, 4, 66), (2, 5, 20), (4, 3, 88)];
/// `|B₁(0, r)|` in Z^d, enumerated.
pub const BALLS: [(usize, u64, u128); 4] = [(1, 3, 7), (2, 2, 13), (3, 2, 25), (4, 3, 129)];
