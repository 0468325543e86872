use crate::process::{run_trace_with, Engine, GrowthSpec, RunOptions, Schedule};
use crate::strategies::StrategySpec;
use crate::{BurnError, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OscillationRow {
    pub k: u32,
    /// Density at `2^k - 1`, just before the grid doubles.
    pub density_before: f64,
    /// Density at `2^k`, just after.
    pub density_after: f64,
    pub gap: f64,
    /// Unburned cells at `2^k - 1`.
    pub unburned_before: u128,
}

/// Origin-only burning on `[-2^{⌊log₂ n⌋}, 2^{⌊log₂ n⌋}]^2`, frontier engine,
/// measured on both sides of each doubling `n = 2^k`.
pub fn oscillation_probe(ks: std::ops::RangeInclusive<u32>, opts: RunOptions) -> Result<Vec<OscillationRow>> {
    let (lo, hi) = (*ks.start(), *ks.end());
    if lo == 0 || hi >= 40 || lo > hi {
        return Err(BurnError::param(format!("oscillation probe needs 1 ≤ k ≤ 39, got {lo}..={hi}")));
    }
    let cps: Vec<u64> = (lo..=hi).flat_map(|k| [(1u64 << k) - 1, 1u64 << k]).collect();
    let growth = GrowthSpec::symmetric(2, Schedule::StepLog2);
    let spec = StrategySpec::OriginOnly { dimension: 2 };
    let t = run_trace_with(opts, &spec, &growth, 1 << hi, &cps, Engine::Frontier, None)?;
    Ok(t.records
        .chunks(2)
        .zip(lo..=hi)
        .map(|(pair, k)| OscillationRow {
            k,
            density_before: pair[0].density,
            density_after: pair[1].density,
            gap: pair[0].density - pair[1].density,
            unburned_before: pair[0].grid_cells - pair[0].burned,
        })
        .collect())
}
