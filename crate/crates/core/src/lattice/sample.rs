use super::{sphere_cardinality, Point};
use crate::{BurnError, Result};
use rand::Rng;

/// Uniform point of `S_1(0, r)` in `Z^d` by exact unranking.
///
/// A rank is drawn uniformly from `[0, |S_1(0,r)|)` and decoded coordinate by
/// coordinate: the first coordinate takes value `j` for exactly
/// `|S_1^{d-1}(0, r - |j|)|` ranks. One draw from `rng` per call. Radius zero
/// yields the origin.
pub fn sample_sphere_uniform<R: Rng + ?Sized>(d: usize, r: u64, rng: &mut R) -> Result<Point> {
    if d == 0 {
        return Err(BurnError::param("dimension must be at least 1"));
    }
    let total = sphere_cardinality(d, r)?;
    let mut rank = rng.random_range(0..total);
    let mut coords = Vec::with_capacity(d);
    let mut rem = r as i64;
    for axis in 0..d {
        let left = d - axis - 1;
        if left == 0 {
            // rem > 0 leaves two choices, rem == 0 one.
            let v = if rem == 0 || rank == 0 { -rem } else { rem };
            coords.push(v);
            break;
        }
        let mut chosen = None;
        for j in -rem..=rem {
            let w = sphere_cardinality(left, (rem - j.abs()) as u64)?;
            if rank < w {
                chosen = Some(j);
                break;
            }
            rank -= w;
        }
        let j = chosen.expect("rank below sphere cardinality");
        coords.push(j);
        rem -= j.abs();
    }
    Ok(Point::new(coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::sphere_points;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashMap;

    #[test]
    fn one_dimension_is_two_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut seen = [0usize; 2];
        for _ in 0..2000 {
            let p = sample_sphere_uniform(1, 5, &mut rng).unwrap();
            match p.coords()[0] {
                -5 => seen[0] += 1,
                5 => seen[1] += 1,
                other => panic!("off-sphere sample {other}"),
            }
        }
        assert!(seen[0] > 850 && seen[1] > 850, "{seen:?}");
    }

    #[test]
    fn support_is_the_whole_sphere() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut hits: HashMap<Point, usize> = HashMap::new();
        for _ in 0..66 * 200 {
            let p = sample_sphere_uniform(3, 4, &mut rng).unwrap();
            assert_eq!(p.norm1(), 4);
            *hits.entry(p).or_default() += 1;
        }
        assert_eq!(hits.len(), 66);
        let all: Vec<Point> = sphere_points(3, 4).unwrap();
        assert!(all.iter().all(|p| hits.contains_key(p)));
    }

    #[test]
    fn unit_cross() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let p = sample_sphere_uniform(2, 1, &mut rng).unwrap();
            assert_eq!(p.norm1(), 1);
        }
    }

    #[test]
    fn seeded_streams_repeat() {
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..50).map(|_| sample_sphere_uniform(3, 9, &mut rng).unwrap()).collect::<Vec<_>>()
        };
        assert_eq!(draw(11), draw(11));
        assert_ne!(draw(11), draw(12));
    }

    #[test]
    fn radius_zero_is_origin() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(sample_sphere_uniform(3, 0, &mut rng).unwrap(), Point::origin(3));
    }
}
