mod common;

use common::{linear, power, quadrant};
use gburn::lattice::Point;
use gburn::process::{run_trace, Activation, Engine, GrowthSpec, Site};
use gburn::reference::NaiveSim;
use gburn::strategies::{epoch_window, NearestTopWalker, StrategySpec};
use proptest::prelude::*;

/// Among free cells of the next grid, the one closest to the origin with the
/// largest y.
fn greedy_choice(sim: &NaiveSim) -> Option<Point> {
    let grid = sim.next_grid().unwrap();
    let mut best: Option<(i64, i64, Point)> = None;
    for x in grid.lo()[0]..=grid.hi()[0] {
        for y in grid.lo()[1]..=grid.hi()[1] {
            if !sim.is_free(&[x, y]).unwrap() {
                continue;
            }
            let key = (x.abs() + y.abs(), -y);
            if best.as_ref().is_none_or(|(d, ny, _)| key < (*d, *ny)) {
                best = Some((key.0, key.1, Point::from([x, y])));
            }
        }
    }
    best.map(|(_, _, p)| p)
}

fn replay_greedy(growth: &GrowthSpec, active: &[bool]) -> Vec<Site> {
    let horizon = active.len() as u64 - 1;
    let mut sim = NaiveSim::new(growth, horizon).unwrap();
    let mut out = Vec::new();
    for &on in active {
        let site = match on {
            true => greedy_choice(&sim).map_or(Site::Skip, Site::Vertex),
            false => Site::Skip,
        };
        sim.step(&site).unwrap();
        out.push(site);
    }
    out
}

fn sites(history: &[Activation]) -> Vec<Site> {
    history.iter().map(|a| a.site.clone()).collect()
}

#[test]
fn nearest_top_is_the_greedy_rule() {
    for skip_at in [1u64, 2] {
        let horizon = 90;
        let t = run_trace(&StrategySpec::NearestTop { skip_at }, &quadrant(), horizon, &[horizon], Engine::Frontier, None)
            .unwrap();
        let active: Vec<bool> = (0..=horizon).map(|n| n != skip_at).collect();
        assert_eq!(sites(&t.history), replay_greedy(&quadrant(), &active), "skip_at={skip_at}");
    }
}

#[test]
fn walker_matches_greedy_under_sparse_activity() {
    // The composition drives each quadrant walker once every fourth step.
    for phase in 1..=4u64 {
        let horizon = 70;
        let active: Vec<bool> = (0..=horizon).map(|n| n == 0 || n % 4 == phase % 4).collect();
        let mut walker = NearestTopWalker::default();
        let mut got = vec![Site::Vertex(Point::from([0, 0]))];
        for n in 1..=horizon {
            got.push(match walker.step(n, active[n as usize]) {
                Some((x, y)) => Site::Vertex(Point::from([x, y])),
                None => Site::Skip,
            });
        }
        assert_eq!(got, replay_greedy(&quadrant(), &active), "phase {phase}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn walker_matches_greedy_on_random_activity(mask in proptest::collection::vec(any::<bool>(), 40)) {
        let mut active = vec![true];
        active.extend(mask);
        let mut walker = NearestTopWalker::default();
        let mut got = vec![Site::Vertex(Point::from([0, 0]))];
        for n in 1..active.len() as u64 {
            got.push(walker.step(n, active[n as usize]).map_or(Site::Skip, |(x, y)| Site::Vertex(Point::from([x, y]))));
        }
        prop_assert_eq!(got, replay_greedy(&quadrant(), &active));
    }
}

/// Every strategy runs through the frontier engine, which rejects any
/// activation that is not free at its time.
#[test]
fn strategies_stay_valid_under_the_exact_engine() {
    let cases: Vec<(StrategySpec, GrowthSpec, u64)> = vec![
        (StrategySpec::SkinnyTriangle { rho: 0.3 }, quadrant(), 600),
        (StrategySpec::LayerCake { period: 3, max_gap: None }, quadrant(), 600),
        (StrategySpec::QuadrantComposition { epsilon: 0.8 }, linear(1.0), 600),
        (StrategySpec::RotatingSqrtGap { c: 1.5 }, linear(1.5), 600),
        (StrategySpec::LinearTarget { c: 2.0, rho: 0.5 }, linear(2.0), 400),
        (StrategySpec::PolarSpiral { c: 1.0 }, power(1.0, 1.5), 300),
    ];
    for (spec, growth, horizon) in cases {
        let cps: Vec<u64> = (0..=horizon).step_by(50).collect();
        let t = run_trace(&spec, &growth, horizon, &cps, Engine::Frontier, None).unwrap();
        assert!(t.records.windows(2).all(|w| w[0].burned <= w[1].burned), "{spec:?}");
    }
}

#[test]
fn skinny_triangle_lights_floor_rho_n_vertices() {
    for (rho, n) in [(0.25, 1000u64), (0.6, 777), (0.9, 500)] {
        let t = run_trace(&StrategySpec::SkinnyTriangle { rho }, &quadrant(), n, &[n], Engine::Auto, None).unwrap();
        let lit = t.history.iter().filter(|a| a.site.vertex().is_some()).count() as u64;
        assert_eq!(lit, 1 + (rho * n as f64).floor() as u64, "ρ={rho}");
    }
}

#[test]
fn layer_cake_gaps_are_bounded() {
    for k in [2u64, 4, 7] {
        let t = run_trace(&StrategySpec::LayerCake { period: k, max_gap: Some(k) }, &quadrant(), 500, &[500], Engine::Auto, None)
            .unwrap();
        let times: Vec<u64> = t.history.iter().filter(|a| a.site.vertex().is_some()).map(|a| a.time).collect();
        assert!(times.windows(2).all(|w| w[1] - w[0] <= k), "k={k}");
    }
}

#[test]
fn polar_spiral_stays_inside_power_growth() {
    for c in [0.5, 1.0, 2.0] {
        let g = power(c, 1.5);
        let t = run_trace(&StrategySpec::PolarSpiral { c }, &g, 500, &[500], Engine::Auto, None).unwrap();
        for a in &t.history {
            if let Some(p) = a.site.vertex() {
                assert!(g.box_at(a.time).unwrap().contains(p), "c={c} at {}", a.time);
            }
        }
    }
}

#[test]
fn epoch_windows_are_disjoint_and_ordered() {
    for n1 in [32u64, 36, 100, 1000] {
        let mut prev = 0;
        let mut i = 1;
        while let Some((lo, hi)) = epoch_window(n1, i) {
            assert!(lo <= hi && lo > prev, "N₁={n1}, epoch {i}");
            prev = hi;
            i += 1;
        }
        assert!(i > 5);
    }
}

#[test]
fn epoch_random_is_valid_for_several_seeds() {
    let g = power(1.0, 1.5);
    for seed in 0..5 {
        let spec = StrategySpec::EpochRandom { dimension: 2, n1: 36, seed: None };
        let a = run_trace(&spec, &g, 200, &[200], Engine::Frontier, Some(seed)).unwrap();
        let b = run_trace(&spec, &g, 200, &[200], Engine::Auto, Some(seed)).unwrap();
        assert_eq!(a.records[0].burned, b.records[0].burned);
        assert_eq!(a.history, b.history);
    }
}
