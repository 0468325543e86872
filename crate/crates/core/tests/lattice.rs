mod common;

use common::oracle::{BALLS, SPHERES};
use gburn::analysis::verify::sphere_chi_square;
use gburn::lattice::{
    ball_box_count, ball_cardinality, l1_distance, round_toward_origin, sample_sphere_uniform, sphere_cardinality,
    union_count_2d, union_count_2d_with, union_count_slab, union_count_slab_with, GridBox, Point, RealPoint,
};
use gburn::reference::naive_union;
use gburn::Exec;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn frozen_cardinalities() {
    for (d, r, want) in SPHERES {
        assert_eq!(sphere_cardinality(d, r).unwrap(), want, "sphere d={d} r={r}");
    }
    for (d, r, want) in BALLS {
        assert_eq!(ball_cardinality(d, r).unwrap(), want, "ball d={d} r={r}");
    }
}

fn random_acts(rng: &mut ChaCha8Rng, d: usize, n: u64, e: i64, count: usize) -> Vec<(u64, Point)> {
    (0..count)
        .map(|_| {
            let k = rng.random_range(0..=n);
            (k, Point::new((0..d).map(|_| rng.random_range(-e..=e)).collect()))
        })
        .collect()
}

#[test]
fn union_engines_agree_with_cell_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for case in 0..150 {
        let d = if case % 3 == 0 { 3 } else { 2 };
        let e = rng.random_range(2..=12);
        let n = rng.random_range(0..=15);
        let bx = GridBox::new((0..d).map(|_| -rng.random_range(0..=e)).collect(), (0..d).map(|_| rng.random_range(0..=e)).collect())
            .unwrap();
        let count = rng.random_range(0..6);
        let acts = random_acts(&mut rng, d, n, e + 3, count);
        let want = naive_union(&acts, n, &bx).unwrap();
        assert_eq!(union_count_slab(&acts, n, &bx, u128::MAX).unwrap(), want, "slab case {case}");
        assert_eq!(union_count_slab_with(Exec::Seq, &acts, n, &bx, u128::MAX).unwrap(), want);
        if d == 2 {
            assert_eq!(union_count_2d(&acts, n, &bx).unwrap(), want, "2d case {case}");
            assert_eq!(union_count_2d_with(Exec::Seq, &acts, n, &bx).unwrap(), want);
        }
    }
}

#[test]
fn single_clipped_ball_matches_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let bx = GridBox::symmetric(2, rng.random_range(0..8));
        let c = Point::from([rng.random_range(-10..=10), rng.random_range(-10..=10)]);
        let r = rng.random_range(0..12);
        assert_eq!(ball_box_count(&c, r, &bx).unwrap(), naive_union(&[(0, c.clone())], r, &bx).unwrap());
    }
}

#[test]
fn slab_budget_is_enforced() {
    let bx = GridBox::symmetric(3, 50);
    let acts = vec![(0, Point::origin(3))];
    assert!(union_count_slab(&acts, 10, &bx, 10).is_err());
}

proptest! {
    #[test]
    fn rounding_stays_inside_and_is_nearest(x in -50.0f64..50.0, y in -50.0f64..50.0) {
        let p = RealPoint::new(vec![x, y]).unwrap();
        let q = round_toward_origin(&p).unwrap();
        prop_assert!(q.norm1() as f64 <= p.norm1() + 1e-9);
        let dist = |a: &[i64]| (a[0] as f64 - x).abs() + (a[1] as f64 - y).abs();
        let got = dist(q.coords());
        for a in (x.floor() as i64 - 2)..=(x.ceil() as i64 + 2) {
            for b in (y.floor() as i64 - 2)..=(y.ceil() as i64 + 2) {
                if (a.abs() + b.abs()) as f64 <= p.norm1() + 1e-9 {
                    prop_assert!(got <= dist(&[a, b]) + 1e-9, "({a},{b}) beats {:?}", q.coords());
                }
            }
        }
    }

    #[test]
    fn sampler_lands_on_the_sphere(d in 1usize..5, r in 0u64..30, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = sample_sphere_uniform(d, r, &mut rng).unwrap();
        prop_assert_eq!(l1_distance(&p, &Point::origin(d)).unwrap(), r);
    }
}

#[test]
fn sampler_passes_chi_square() {
    for (d, r) in [(2usize, 5u64), (3, 3), (4, 2)] {
        let draws = 500 * sphere_cardinality(d, r).unwrap() as u64;
        let (_, p) = sphere_chi_square(d, r, draws, 99).unwrap();
        assert!(p > 1e-3, "d={d} r={r} p={p}");
    }
}
