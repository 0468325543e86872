use crate::lattice::binomial;
use crate::{BurnError, Result};
use num_rational::Ratio;

/// `(n+2)(n+1)/2 + (2 + log₂ n)(n+1)`.
pub fn bound_lemma21(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(BurnError::param("the nearest-top bound starts at n = 1"));
    }
    let n = n as f64;
    Ok((n + 2.0) * (n + 1.0) / 2.0 + (2.0 + n.log2()) * (n + 1.0))
}

/// `2^d · C(n+d+1, d+1)`, an upper bound on `|B_n|` for every strategy.
pub fn bound_thm41(d: usize, n: u64) -> Result<u128> {
    if d == 0 {
        return Err(BurnError::param("dimension must be at least 1"));
    }
    let c = binomial(n + d as u64 + 1, d as u64 + 1)?;
    1u128
        .checked_shl(d as u32)
        .filter(|_| d < 127)
        .and_then(|p| p.checked_mul(c))
        .ok_or(BurnError::Overflow("bound_thm41"))
}

fn factorial(k: usize) -> Result<i128> {
    (1..=k as i128).try_fold(1i128, |acc, i| acc.checked_mul(i)).ok_or(BurnError::Overflow("factorial"))
}

fn ipow(base: Ratio<i128>, e: usize) -> Result<Ratio<i128>> {
    (0..e).try_fold(Ratio::from_integer(1), |acc: Ratio<i128>, _| {
        acc.numer()
            .checked_mul(*base.numer())
            .zip(acc.denom().checked_mul(*base.denom()))
            .map(|(n, d)| Ratio::new(n, d))
            .ok_or(BurnError::Overflow("power"))
    })
}

/// `(2^d/(d-1)!)·(r-d+1)^{d-1}` and `(2^d/(d-1)!)·(r+d-1)^{d-1}`, with the
/// lower base clamped at zero.
pub fn lemma41_sphere_bounds(d: usize, r: u64) -> Result<(Ratio<i128>, Ratio<i128>)> {
    if !(2..=30).contains(&d) {
        return Err(BurnError::param(format!("sphere bounds need 2 ≤ d ≤ 30, got {d}")));
    }
    let r = i128::from(r);
    let d_ = d as i128;
    let scale = Ratio::new(1i128 << d, factorial(d - 1)?);
    let lower = ipow(Ratio::from_integer((r - d_ + 1).max(0)), d - 1)?;
    let upper = ipow(Ratio::from_integer(r + d_ - 1), d - 1)?;
    Ok((scale * lower, scale * upper))
}

/// `(1/(d-1)!)·(½(x+y-r) - d)^{d-1}`, keeping the sign of the base so that a
/// negative value always marks a vacuous bound.
pub fn lemma42_bound_exact(d: usize, x: u64, y: u64, r: u64) -> Result<Ratio<i128>> {
    if !(2..=30).contains(&d) {
        return Err(BurnError::param(format!("intersection bound needs 2 ≤ d ≤ 30, got {d}")));
    }
    if r > x + y || r + x < y {
        return Err(BurnError::param(format!("need r ≤ x + y and r + x ≥ y; got x={x} y={y} r={r}")));
    }
    let base = Ratio::new(x as i128 + y as i128 - r as i128, 2) - Ratio::from_integer(d as i128);
    let mag = ipow(if base < Ratio::from_integer(0) { -base } else { base }, d - 1)?;
    let signed = if base < Ratio::from_integer(0) { -mag } else { mag };
    Ok(signed / Ratio::from_integer(factorial(d - 1)?))
}

pub fn lemma42_bound(d: usize, x: u64, y: u64, r: u64) -> Result<f64> {
    let b = lemma42_bound_exact(d, x, y, r)?;
    Ok(*b.numer() as f64 / *b.denom() as f64)
}

/// `1 - exp(-d/((d+1)·2^{5d-3}))`.
pub fn lambda_lower_bound(d: usize) -> Result<f64> {
    if d < 2 {
        return Err(BurnError::param("lambda is defined for d ≥ 2"));
    }
    let d = d as f64;
    Ok(-(-d / ((d + 1.0) * 2f64.powf(5.0 * d - 3.0))).exp_m1())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::sphere_cardinality;

    fn r(n: i128) -> Ratio<i128> {
        Ratio::from_integer(n)
    }

    #[test]
    fn nearest_top_bound_examples() {
        assert_eq!(bound_lemma21(4).unwrap(), 35.0);
        assert_eq!(bound_lemma21(1).unwrap(), 7.0);
        assert_eq!(bound_lemma21(2).unwrap(), 15.0);
        assert!(bound_lemma21(0).is_err());
    }

    #[test]
    fn fast_growth_bound_examples() {
        assert_eq!(bound_thm41(2, 3).unwrap(), 80);
        assert_eq!(bound_thm41(2, 0).unwrap(), 4);
        assert_eq!(bound_thm41(3, 2).unwrap(), 120);
    }

    #[test]
    fn sphere_bracket_examples() {
        assert_eq!(lemma41_sphere_bounds(2, 5).unwrap(), (r(16), r(24)));
        assert_eq!(lemma41_sphere_bounds(2, 1).unwrap(), (r(0), r(8)));
        assert_eq!(lemma41_sphere_bounds(3, 2).unwrap(), (r(0), r(64)));
        for d in 2..=4 {
            for rad in 0..=12 {
                let (lo, hi) = lemma41_sphere_bounds(d, rad).unwrap();
                let s = r(sphere_cardinality(d, rad).unwrap() as i128);
                assert!(s <= hi);
                if lo > r(0) {
                    assert!(lo <= s, "d={d} r={rad}");
                }
            }
        }
    }

    #[test]
    fn intersection_bound_examples() {
        assert_eq!(lemma42_bound(2, 4, 4, 2).unwrap(), 1.0);
        assert_eq!(lemma42_bound(2, 3, 2, 3).unwrap(), -1.0);
        assert_eq!(lemma42_bound(3, 10, 10, 4).unwrap(), 12.5);
        assert!(lemma42_bound(2, 1, 1, 5).is_err());
        assert!(lemma42_bound(2, 1, 5, 1).is_err());
        assert!(lemma42_bound(3, 1, 1, 2).unwrap() < 0.0);
    }

    #[test]
    fn lambda_examples() {
        assert!((lambda_lower_bound(2).unwrap() - 0.0051948).abs() < 1e-7);
        assert!((lambda_lower_bound(3).unwrap() - 1.831e-4).abs() < 1e-7);
        for d in 2..12 {
            let l = lambda_lower_bound(d).unwrap();
            assert!(l > 0.0 && l < 1.0);
        }
        assert!(lambda_lower_bound(1).is_err());
    }
}
