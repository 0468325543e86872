use crate::process::BurnTrace;
use crate::{BurnError, Result};
use serde::{Deserialize, Serialize};

/// Finite-window summary of a density series. These are finite-`n` estimates
/// of the lower and upper densities, not limits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailStats {
    pub window: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub first_n: u64,
    pub last_n: u64,
}

/// Statistics over the last `window` checkpoints.
pub fn tail_stats(trace: &BurnTrace, window: usize) -> Result<TailStats> {
    if window == 0 {
        return Err(BurnError::param("window must be nonempty"));
    }
    let recs = &trace.records;
    if recs.len() < window {
        return Err(BurnError::Insufficient(format!(
            "window of {window} needs that many checkpoints, trace has {}",
            recs.len()
        )));
    }
    let tail = &recs[recs.len() - window..];
    let (mut min, mut max, mut sum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
    for r in tail {
        min = min.min(r.density);
        max = max.max(r.density);
        sum += r.density;
    }
    Ok(TailStats {
        window,
        min,
        max,
        mean: (sum / window as f64).clamp(min, max),
        first_n: tail[0].n,
        last_n: tail[window - 1].n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::{run_trace, stride_checkpoints, Checkpoint, Engine, GrowthSpec, Schedule};
    use crate::strategies::StrategySpec;

    fn flat(values: &[f64]) -> BurnTrace {
        let mut t = run_trace(
            &StrategySpec::AllSkip { dimension: 1 },
            &GrowthSpec::symmetric(1, Schedule::linear(1.0)),
            0,
            &[],
            Engine::Auto,
            None,
        )
        .unwrap();
        t.records = values
            .iter()
            .enumerate()
            .map(|(i, &density)| Checkpoint {
                n: i as u64,
                lo: vec![0],
                hi: vec![0],
                grid_cells: 1,
                burned: 0,
                density,
                std_error: None,
            })
            .collect();
        t
    }

    #[test]
    fn constant_series() {
        let s = tail_stats(&flat(&[0.3; 6]), 4).unwrap();
        assert_eq!((s.min, s.max, s.mean), (0.3, 0.3, 0.3));
        assert_eq!((s.first_n, s.last_n), (2, 5));
    }

    #[test]
    fn errors() {
        assert!(matches!(tail_stats(&flat(&[0.1, 0.2]), 3), Err(BurnError::Insufficient(_))));
        assert!(tail_stats(&flat(&[0.1]), 0).is_err());
    }

    #[test]
    fn origin_only_half() {
        let mut cps = stride_checkpoints(1000, 25);
        cps.retain(|&n| n >= 900);
        let t = run_trace(
            &StrategySpec::OriginOnly { dimension: 2 },
            &GrowthSpec::symmetric(2, Schedule::linear(1.0)),
            1000,
            &cps,
            Engine::Auto,
            None,
        )
        .unwrap();
        let s = tail_stats(&t, 5).unwrap();
        assert_eq!(s.last_n, 1000);
        assert!((s.mean - 0.5).abs() < 1e-3);
    }
}
