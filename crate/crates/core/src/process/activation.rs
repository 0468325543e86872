use crate::lattice::{dist, GridBox, Point};
use crate::{BurnError, Result};
use serde::{Deserialize, Serialize};

/// What happens at one time step: a vertex is lit, or the step is skipped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Site {
    Vertex(Point),
    Skip,
}

impl Site {
    pub fn vertex(&self) -> Option<&Point> {
        match self {
            Site::Vertex(p) => Some(p),
            Site::Skip => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Activation {
    pub time: u64,
    pub site: Site,
}

impl Activation {
    pub fn at(time: u64, p: impl Into<Point>) -> Self {
        Activation { time, site: Site::Vertex(p.into()) }
    }

    pub fn skip(time: u64) -> Self {
        Activation { time, site: Site::Skip }
    }
}

/// The `(time, vertex)` pairs of a history, skips dropped.
pub fn lit(history: &[Activation]) -> Vec<(u64, Point)> {
    history.iter().filter_map(|a| a.site.vertex().map(|p| (a.time, p.clone()))).collect()
}

/// Whether `v` may be activated at time `n` after `history`.
///
/// `v` must be at distance at least `n - k + 1` from every earlier activator
/// `(k, v_k)`. On certified growth this is exactly `v ∉ N[B_{n-1}]`.
pub fn is_valid_activation(history: &[Activation], v: &Point, n: u64, grid: &GridBox) -> Result<bool> {
    if v.dim() != grid.dim() {
        return Err(BurnError::DimensionMismatch { expected: grid.dim(), got: v.dim() });
    }
    if !grid.contains(v) {
        return Err(BurnError::OutsideGrid { time: n, point: v.coords().to_vec() });
    }
    let mut last = None;
    for a in history {
        if a.time >= n || last.is_some_and(|t| a.time <= t) {
            return Err(BurnError::TimeOrder { time: a.time, horizon: n });
        }
        last = Some(a.time);
    }
    Ok(history.iter().all(|a| match &a.site {
        Site::Vertex(p) => dist(p.coords(), v.coords()) > n - a.time,
        Site::Skip => true,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let grid = GridBox::symmetric(2, 5);
        let h = vec![Activation::at(0, [0, 0])];
        assert!(!is_valid_activation(&h, &[1, 0].into(), 1, &grid).unwrap());
        assert!(is_valid_activation(&h, &[2, 0].into(), 1, &grid).unwrap());
        let h2 = vec![Activation::at(0, [0, 0]), Activation::at(1, [3, 0])];
        assert!(is_valid_activation(&h2, &[3, 2].into(), 2, &grid).unwrap());
        assert!(!is_valid_activation(&h2, &[3, 1].into(), 2, &grid).unwrap());
    }

    #[test]
    fn skips_only_history_is_vacuous() {
        let grid = GridBox::symmetric(2, 2);
        let h = vec![Activation::skip(0), Activation::skip(1)];
        assert!(is_valid_activation(&h, &[0, 0].into(), 2, &grid).unwrap());
    }

    #[test]
    fn outside_grid_is_an_error_not_invalidity() {
        let grid = GridBox::symmetric(2, 1);
        let err = is_valid_activation(&[], &[2, 0].into(), 1, &grid).unwrap_err();
        assert!(matches!(err, BurnError::OutsideGrid { .. }));
    }
}
