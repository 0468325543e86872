//! Named verification suites. Each returns a report of individual checks with
//! the values that decided them.

use super::{bound_lemma21, bound_thm41, lemma41_sphere_bounds, lemma42_bound_exact, oscillation_probe, tail_stats};
use crate::lattice::{
    ball_cardinality, sample_sphere_uniform, sphere_ball_intersection_count, sphere_cardinality, sphere_points,
    union_count_2d, union_count_slab, Point, DEFAULT_CELL_BUDGET,
};
use crate::process::{
    lit, run_strategy_with, run_trace_with, stride_checkpoints, AxisGrowth, Engine, GrowthSpec, RunOptions, Schedule,
};
use crate::reference::{brute_ball, brute_sphere, naive_counts, random_valid_history};
use crate::strategies::{epoch_window, Replay, StrategySpec};
use crate::{BurnError, Result};
use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use statrs::distribution::{ChiSquared, ContinuousCDF};

pub const SUITES: [&str; 8] = ["engines", "lemma21", "lemma41", "lemma42", "thm41", "densities", "oscillation", "sampler"];

/// Minimum densities pinned from an independent simulation.
pub mod pinned {
    /// √t-gap walker at `n = 2000`, for `c = 1` and `c = 2`.
    pub const ROTATING_2000: [(f64, f64); 2] = [(1.0, 0.985), (2.0, 0.575)];
    /// Polar spiral, `c = 1`, every checkpoint in `[100, 400]`.
    pub const POLAR_FLOOR: f64 = 0.032;
    /// Epoch construction, `d = 2`, `N₁ = 36`, minimum over `[36, 324]`.
    pub const EPOCH_FLOOR: f64 = 0.05;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    Quick,
    Full,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub parameters: Value,
    pub pass: bool,
    pub witness: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub scale: Scale,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
}

fn check(id: impl Into<String>, parameters: Value, pass: bool, witness: Value) -> CheckResult {
    CheckResult { id: id.into(), parameters, pass, witness }
}

pub fn run_suite(name: &str, scale: Scale, opts: RunOptions) -> Result<VerifyReport> {
    let checks = match name {
        "engines" => engines(scale, opts)?,
        "lemma21" => lemma21(scale, opts)?,
        "lemma41" => lemma41()?,
        "lemma42" => lemma42(scale)?,
        "thm41" => thm41(scale, opts)?,
        "densities" => densities(scale, opts)?,
        "oscillation" => oscillation(scale, opts)?,
        "sampler" => sampler()?,
        other => {
            return Err(BurnError::param(format!("unknown suite `{other}`; expected one of {}", SUITES.join(", "))))
        }
    };
    Ok(VerifyReport { suite: name.into(), scale, pass: checks.iter().all(|c| c.pass), checks })
}

fn rational_json(r: Ratio<i128>) -> Value {
    json!(*r.numer() as f64 / *r.denom() as f64)
}

/// Growth specs mixing certified and stalling walls.
pub fn engine_growths() -> Vec<GrowthSpec> {
    vec![
        GrowthSpec::symmetric(2, Schedule::linear(1.0)),
        GrowthSpec::symmetric(2, Schedule::linear(1.5)),
        GrowthSpec::quadrant(2, Schedule::linear(1.0)),
        GrowthSpec::per_axis(vec![
            AxisGrowth { lower: Schedule::Const { value: 2 }, upper: Schedule::linear(2.0) },
            AxisGrowth { lower: Schedule::linear(1.0), upper: Schedule::linear(1.0) },
        ]),
        GrowthSpec::symmetric(2, Schedule::StepLog2),
        GrowthSpec::symmetric(2, Schedule::power(0.1, 1.5)),
        GrowthSpec::per_axis(vec![
            AxisGrowth { lower: Schedule::StepLog2, upper: Schedule::linear(1.0) },
            AxisGrowth { lower: Schedule::Const { value: 3 }, upper: Schedule::power(0.5, 1.2) },
        ]),
    ]
}

fn engines(scale: Scale, opts: RunOptions) -> Result<Vec<CheckResult>> {
    let (cases, max_n) = match scale {
        Scale::Quick => (42, 24u64),
        Scale::Full => (210, 40u64),
    };
    let growths = engine_growths();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    for case in 0..cases {
        let g = &growths[case % growths.len()];
        let horizon = 8 + (case as u64 * 7) % (max_n - 7);
        let rate = [0.2, 0.5, 0.9][case % 3];
        let history = random_valid_history(g, horizon, rate, &mut rng)?;
        let naive = naive_counts(g, &history, horizon)?;
        let cps: Vec<u64> = (0..=horizon).collect();
        let frontier = run_strategy_with(opts, &mut Replay::new(2, &history), g, horizon, &cps, Engine::Frontier, None)?;
        let frontier: Vec<u128> = frontier.records.iter().map(|r| r.burned).collect();
        let certified = g.free_spread_certificate(1, horizon)?;
        let (balls, slab) = if certified {
            let acts = lit(&history);
            let grid = g.box_at(horizon)?;
            (
                Some(union_count_2d(&acts, horizon, &grid)?),
                Some(union_count_slab(&acts, horizon, &grid, DEFAULT_CELL_BUDGET)?),
            )
        } else {
            (None, None)
        };
        let last = naive[horizon as usize];
        let pass = frontier == naive && balls.is_none_or(|b| b == last) && slab.is_none_or(|s| s == last);
        out.push(check(
            format!("engines/{case}"),
            json!({"growth": g, "horizon": horizon, "rate": rate, "certified": certified}),
            pass,
            json!({"naive": last, "frontier": frontier[horizon as usize], "balls": balls, "slab": slab,
                   "activations": lit(&history).len()}),
        ));
    }
    Ok(out)
}

fn lemma21(scale: Scale, opts: RunOptions) -> Result<Vec<CheckResult>> {
    let horizon = match scale {
        Scale::Quick => 1000,
        Scale::Full => 4000,
    };
    let q = GrowthSpec::quadrant(2, Schedule::linear(1.0));
    let cps: Vec<u64> = (1..=horizon).collect();
    let mut out = Vec::new();
    for skip_at in [1, 2] {
        let spec = StrategySpec::NearestTop { skip_at };
        let t = run_trace_with(opts, &spec, &q, horizon, &cps, Engine::Frontier, None)?;
        let mut worst = (0u64, f64::NEG_INFINITY);
        let mut violations = Vec::new();
        for r in &t.records {
            let bound = bound_lemma21(r.n)?;
            let slack = bound - r.burned as f64;
            if slack < 0.0 {
                violations.push(r.n);
            }
            let ratio = r.burned as f64 / bound;
            if ratio > worst.1 {
                worst = (r.n, ratio);
            }
        }
        out.push(check(
            format!("lemma21/skip_at={skip_at}"),
            json!({"skip_at": skip_at, "horizon": horizon}),
            violations.is_empty(),
            json!({"violations": violations, "max_ratio": worst.1, "max_ratio_at": worst.0,
                   "burned_at_horizon": t.records.last().map(|r| r.burned)}),
        ));
    }
    Ok(out)
}

fn lemma41() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for d in 1..=4usize {
        for r in 0..=12u64 {
            let (ball, sphere) = (ball_cardinality(d, r)?, sphere_cardinality(d, r)?);
            let (bb, bs) = (brute_ball(d, r), brute_sphere(d, r));
            let mut pass = ball == bb && sphere == bs;
            let mut witness = json!({"ball": ball, "sphere": sphere, "brute_ball": bb, "brute_sphere": bs});
            if d >= 2 {
                let (lo, hi) = lemma41_sphere_bounds(d, r)?;
                let s = Ratio::from_integer(sphere as i128);
                let lower_applies = lo > Ratio::from_integer(0);
                pass &= s <= hi && (!lower_applies || lo <= s);
                witness["lower"] = rational_json(lo);
                witness["upper"] = rational_json(hi);
                witness["lower_asserted"] = json!(lower_applies);
            }
            out.push(check(format!("lemma41/sphere/d={d}/r={r}"), json!({"d": d, "r": r}), pass, witness));
        }
    }
    for d in 1..=4usize {
        for r in (d as u64 + 1)..=16 {
            let ball = ball_cardinality(d, r)?;
            let cube = (2 * r as u128 + 1).pow(d as u32);
            let floor = 2u128.pow(d as u32) * (d as u128).pow(d as u32);
            // ball / cube ≥ 1 / (2^d d^d)
            let pass = ball * floor >= cube;
            out.push(check(
                format!("lemma41/ball_fraction/d={d}/r={r}"),
                json!({"d": d, "r": r}),
                pass,
                json!({"ball": ball, "cube": cube, "fraction": ball as f64 / cube as f64, "floor": 1.0 / floor as f64}),
            ));
        }
    }
    Ok(out)
}

/// Points at distance `r` from the origin with nonnegative, nondecreasing
/// coordinates; every other point is a symmetry image of one of these.
fn orbit_representatives(d: usize, r: u64) -> Result<Vec<Point>> {
    Ok(sphere_points(d, r)?
        .into_iter()
        .filter(|p| p.coords().iter().all(|&c| c >= 0) && p.coords().windows(2).all(|w| w[0] <= w[1]))
        .collect())
}

/// Compares the bound with exact counts. `stated` uses only `r ≤ x + y` and
/// `r + x ≥ y`; `proof_domain` also requires `x ≤ r + y`, which the argument
/// behind the bound relies on. Outside it the sphere misses the ball entirely.
fn lemma42(scale: Scale) -> Result<Vec<CheckResult>> {
    let max = match scale {
        Scale::Quick => 8,
        Scale::Full => 12,
    };
    let mut out = Vec::new();
    for d in [2usize, 3] {
        for (label, proof_domain) in [("stated", false), ("proof_domain", true)] {
            let mut cases = 0u64;
            let mut failures = Vec::new();
            let mut tightest: Option<(f64, Value)> = None;
            for r in 1..=max {
                let reps = orbit_representatives(d, r)?;
                for x in 1..=max {
                    for y in 1..=max {
                        if r > x + y || r + x < y || (proof_domain && x > r + y) {
                            continue;
                        }
                        let bound = lemma42_bound_exact(d, x, y, r)?;
                        for p in &reps {
                            cases += 1;
                            let count = sphere_ball_intersection_count(x, p, y)?;
                            let c = Ratio::from_integer(count as i128);
                            let case = json!({"x": x, "y": y, "r": r, "p": p, "count": count, "bound": rational_json(bound)});
                            if c < bound {
                                failures.push(case);
                            } else if bound > Ratio::from_integer(0) {
                                let margin = count as f64 - *bound.numer() as f64 / *bound.denom() as f64;
                                if tightest.as_ref().is_none_or(|(m, _)| margin < *m) {
                                    tightest = Some((margin, case));
                                }
                            }
                        }
                    }
                }
            }
            let shown: Vec<&Value> = failures.iter().take(10).collect();
            out.push(check(
                format!("lemma42/d={d}/{label}"),
                json!({"d": d, "max": max, "requires_x_le_r_plus_y": proof_domain}),
                failures.is_empty(),
                json!({"cases": cases, "failures": failures.len(), "first_failures": shown,
                       "tightest": tightest.map(|t| t.1)}),
            ));
        }
    }
    Ok(out)
}

fn thm41(scale: Scale, opts: RunOptions) -> Result<Vec<CheckResult>> {
    let h = match scale {
        Scale::Quick => 200,
        Scale::Full => 800,
    };
    let lin = GrowthSpec::symmetric(2, Schedule::linear(1.0));
    let runs: Vec<(StrategySpec, GrowthSpec, Option<u64>)> = vec![
        (StrategySpec::OriginOnly { dimension: 2 }, lin.clone(), None),
        (StrategySpec::QuadrantComposition { epsilon: 1.0 }, lin.clone(), None),
        (StrategySpec::RotatingSqrtGap { c: 1.0 }, lin, None),
        (StrategySpec::PolarSpiral { c: 1.0 }, GrowthSpec::symmetric(2, Schedule::power(1.0, 1.6)), None),
        (StrategySpec::PolarSpiral { c: 1.0 }, GrowthSpec::symmetric(2, Schedule::power(1.0, 1.5)), None),
        (
            StrategySpec::EpochRandom { dimension: 2, n1: 36, seed: None },
            GrowthSpec::symmetric(2, Schedule::power(1.0, 1.5)),
            Some(1),
        ),
        (StrategySpec::OriginOnly { dimension: 3 }, GrowthSpec::symmetric(3, Schedule::linear(1.0)), None),
    ];
    let mut out = Vec::new();
    for (spec, growth, seed) in runs {
        let horizon = if growth.dimension == 3 { 40 } else { h };
        let cps = stride_checkpoints(horizon, (horizon / 40).max(1));
        let t = run_trace_with(opts, &spec, &growth, horizon, &cps, Engine::Auto, seed)?;
        let mut violations = Vec::new();
        let mut max_ratio = 0.0f64;
        for r in &t.records {
            let b = bound_thm41(growth.dimension, r.n)?;
            if r.burned > b {
                violations.push(r.n);
            }
            max_ratio = max_ratio.max(r.burned as f64 / b as f64);
        }
        out.push(check(
            format!("thm41/{}", serde_json::to_value(&spec).map(|v| v["kind"].clone()).unwrap_or_default()),
            json!({"strategy": spec, "growth": growth, "horizon": horizon, "seed": seed}),
            violations.is_empty(),
            json!({"violations": violations, "max_ratio": max_ratio}),
        ));
    }
    // Fast growth drives the density down.
    let g = GrowthSpec::symmetric(2, Schedule::power(1.0, 1.6));
    let t = run_trace_with(opts, &StrategySpec::PolarSpiral { c: 1.0 }, &g, 800, &[100, 800], Engine::Auto, None)?;
    let (a, b) = (&t.records[0], &t.records[1]);
    let cap = |n: u64, cells: u128| -> Result<f64> { Ok(bound_thm41(2, n)? as f64 / cells as f64) };
    let (cap_a, cap_b) = (cap(100, a.grid_cells)?, cap(800, b.grid_cells)?);
    out.push(check(
        "thm41/decay",
        json!({"strategy": "polar_spiral", "c": 1.0, "growth": g}),
        b.density < a.density && a.density <= cap_a && b.density <= cap_b,
        json!({"density_100": a.density, "density_800": b.density, "cap_100": cap_a, "cap_800": cap_b,
               "ratio": b.density / a.density}),
    ));
    Ok(out)
}

fn density_check(id: String, params: Value, got: f64, lo: f64, hi: f64) -> CheckResult {
    check(id, params, got >= lo && got <= hi, json!({"density": got, "accept": [lo, hi]}))
}

fn densities(scale: Scale, opts: RunOptions) -> Result<Vec<CheckResult>> {
    let quick = scale == Scale::Quick;
    let q = GrowthSpec::quadrant(2, Schedule::linear(1.0));
    let lin = GrowthSpec::symmetric(2, Schedule::linear(1.0));
    let mut out = Vec::new();

    let n = if quick { 1000 } else { 4000 };
    for rho in [0.25, 0.5, 0.75] {
        let t = run_trace_with(opts, &StrategySpec::SkinnyTriangle { rho }, &q, n, &[n], Engine::Auto, None)?;
        let target = (1.0 + rho) / 2.0;
        out.push(density_check(
            format!("densities/skinny/rho={rho}"),
            json!({"rho": rho, "n": n, "target": target}),
            t.records[0].density,
            target - 0.02,
            target + 0.02,
        ));
    }

    let k = 4u64;
    let cps: Vec<u64> = if quick { stride_checkpoints(n, 10) } else { (0..=n).collect() };
    let spec = StrategySpec::LayerCake { period: k, max_gap: Some(k) };
    let t = run_trace_with(opts, &spec, &q, n, &cps, Engine::Frontier, None)?;
    let bad: Vec<u64> = t
        .records
        .iter()
        .filter(|r| (r.burned as i128) < ((r.n as i128 + 1).pow(2) - 2 * r.n as i128 * k as i128))
        .map(|r| r.n)
        .collect();
    out.push(check(
        "densities/layer_cake/k=4",
        json!({"k": k, "horizon": n, "checkpoints": cps.len()}),
        bad.is_empty(),
        json!({"violations": bad, "final_density": t.records.last().map(|r| r.density)}),
    ));

    let n = if quick { 1000 } else { 3000 };
    for eps in [0.5, 0.625, 0.75, 0.875, 1.0] {
        let spec = StrategySpec::QuadrantComposition { epsilon: eps };
        let t = run_trace_with(opts, &spec, &lin, n, &[n], Engine::Auto, None)?;
        out.push(density_check(
            format!("densities/composition/eps={eps}"),
            json!({"epsilon": eps, "n": n}),
            t.records[0].density,
            eps - 0.03,
            eps + 0.03,
        ));
    }

    let cps = stride_checkpoints(1000, 25);
    let t = run_trace_with(opts, &StrategySpec::OriginOnly { dimension: 2 }, &lin, 1000, &cps, Engine::Auto, None)?;
    let last = t.records.last().map_or(0.0, |r| r.density);
    let mut c = density_check("densities/origin_only".into(), json!({"n": 1000}), last, 0.495, 0.505);
    c.witness["tail"] = serde_json::to_value(tail_stats(&t, 10)?).unwrap_or_default();
    out.push(c);

    for (c, floor) in pinned::ROTATING_2000 {
        let g = GrowthSpec::symmetric(2, Schedule::linear(c));
        let t = run_trace_with(opts, &StrategySpec::RotatingSqrtGap { c }, &g, 2000, &[500, 1000, 2000], Engine::Auto, None)?;
        let d: Vec<f64> = t.records.iter().map(|r| r.density).collect();
        out.push(check(
            format!("densities/rotating/c={c}"),
            json!({"c": c, "checkpoints": [500, 1000, 2000], "floor": floor}),
            d[2] > floor && d.windows(2).all(|w| w[0] <= w[1]),
            json!({"densities": d, "collisions": t.collisions}),
        ));
    }

    let g = GrowthSpec::symmetric(2, Schedule::power(1.0, 1.5));
    let cps: Vec<u64> = (100..=400).step_by(if quick { 50 } else { 10 }).collect();
    let t = run_trace_with(opts, &StrategySpec::PolarSpiral { c: 1.0 }, &g, 400, &cps, Engine::Auto, None)?;
    let min = t.records.iter().map(|r| r.density).fold(f64::INFINITY, f64::min);
    let weak_floor = 1.0 / (8.0 * 601f64.powi(3));
    out.push(check(
        "densities/polar/c=1",
        json!({"c": 1.0, "checkpoints": cps.len(), "floor": pinned::POLAR_FLOOR, "weak_floor": weak_floor}),
        min >= pinned::POLAR_FLOOR && min >= weak_floor,
        json!({"min_density": min, "collisions": t.collisions}),
    ));

    let seeds = if quick { 2 } else { 5 };
    let g = GrowthSpec::symmetric(2, Schedule::power(1.0, 1.5));
    let cps: Vec<u64> = (36..=324).collect();
    let mut disjoint = true;
    for i in 1..8 {
        let (_, hi) = epoch_window(36, i).ok_or(BurnError::Overflow("epoch window"))?;
        let (lo, _) = epoch_window(36, i + 1).ok_or(BurnError::Overflow("epoch window"))?;
        disjoint &= lo > hi;
    }
    for seed in 0..seeds {
        let spec = StrategySpec::EpochRandom { dimension: 2, n1: 36, seed: None };
        let t = run_trace_with(opts, &spec, &g, 324, &cps, Engine::Auto, Some(seed))?;
        let min = t.records.iter().map(|r| r.density).fold(f64::INFINITY, f64::min);
        out.push(check(
            format!("densities/epoch/seed={seed}"),
            json!({"d": 2, "n1": 36, "horizon": 324, "seed": seed, "floor": pinned::EPOCH_FLOOR}),
            disjoint && min > pinned::EPOCH_FLOOR,
            json!({"min_density": min, "windows_disjoint": disjoint, "collisions": t.collisions,
                   "lambda_2": super::lambda_lower_bound(2)?}),
        ));
    }
    Ok(out)
}

fn oscillation(scale: Scale, opts: RunOptions) -> Result<Vec<CheckResult>> {
    let ks = match scale {
        Scale::Quick => 5..=8,
        Scale::Full => 8..=10,
    };
    Ok(oscillation_probe(ks, opts)?
        .into_iter()
        .map(|r| {
            let side = (1u128 << r.k) + 1;
            check(
                format!("oscillation/k={}", r.k),
                json!({"k": r.k}),
                r.gap >= 0.3 && r.unburned_before <= 4,
                json!({"density_before": r.density_before, "density_after": r.density_after, "gap": r.gap,
                       "unburned_before": r.unburned_before, "floor_before": 1.0 - 4.0 / (side * side) as f64}),
            )
        })
        .collect())
}

/// Pearson statistic and upper-tail p-value of `draws` uniform sphere samples.
pub fn sphere_chi_square(d: usize, r: u64, draws: u64, seed: u64) -> Result<(f64, f64)> {
    let support = sphere_points(d, r)?;
    let index: std::collections::HashMap<&Point, usize> = support.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut counts = vec![0u64; support.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..draws {
        let p = sample_sphere_uniform(d, r, &mut rng)?;
        let i = index.get(&p).ok_or_else(|| BurnError::param(format!("sample {p} off the sphere")))?;
        counts[*i] += 1;
    }
    let expected = draws as f64 / support.len() as f64;
    let stat: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let dist = ChiSquared::new((support.len() - 1) as f64).map_err(|e| BurnError::param(e.to_string()))?;
    Ok((stat, 1.0 - dist.cdf(stat)))
}

fn sampler() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for (d, r) in [(2usize, 3u64), (3, 4)] {
        let size = sphere_cardinality(d, r)? as u64;
        let draws = 1000 * size;
        let (stat, p) = sphere_chi_square(d, r, draws, 2024)?;
        out.push(check(
            format!("sampler/chi_square/d={d}/r={r}"),
            json!({"d": d, "r": r, "draws": draws, "alpha": 1e-3}),
            p > 1e-3,
            json!({"statistic": stat, "p_value": p, "support": size}),
        ));
        let draw = |seed| -> Result<Vec<Point>> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..1000).map(|_| sample_sphere_uniform(d, r, &mut rng)).collect()
        };
        let (a, b) = (draw(99)?, draw(99)?);
        out.push(check(
            format!("sampler/reproducible/d={d}/r={r}"),
            json!({"d": d, "r": r, "seed": 99, "draws": 1000}),
            serde_json::to_string(&a).ok() == serde_json::to_string(&b).ok(),
            json!({"first": a.first()}),
        ));
    }
    Ok(out)
}
