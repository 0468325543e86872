use gburn::process::{Engine, GrowthSpec};
use gburn::strategies::StrategySpec;
use serde::Deserialize;
use std::path::PathBuf;

/// Engine names accepted on the command line and in config files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum EngineName {
    Auto,
    Balls,
    Frontier,
    Mc,
}

/// A simulation request as read from JSON. Command-line flags override it.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub strategy: StrategySpec,
    pub growth: GrowthSpec,
    pub horizon: u64,
    #[serde(default)]
    pub checkpoints: Option<Vec<u64>>,
    #[serde(default)]
    pub stride: Option<u64>,
    #[serde(default)]
    pub engine: Option<EngineName>,
    #[serde(default)]
    pub samples: Option<u64>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub sidecar: Option<PathBuf>,
}

pub const DEFAULT_MC_SAMPLES: u64 = 200_000;

impl RunConfig {
    pub fn engine(&self) -> Engine {
        match self.engine.unwrap_or(EngineName::Auto) {
            EngineName::Auto => Engine::Auto,
            EngineName::Balls => Engine::Balls,
            EngineName::Frontier => Engine::Frontier,
            EngineName::Mc => Engine::MonteCarlo { samples: self.samples.unwrap_or(DEFAULT_MC_SAMPLES) },
        }
    }

    /// Explicit list, else every `stride` steps, else 40 evenly spaced rows.
    pub fn checkpoint_list(&self) -> Vec<u64> {
        if let Some(c) = &self.checkpoints {
            return c.clone();
        }
        let stride = self.stride.unwrap_or((self.horizon / 40).max(1));
        gburn::process::stride_checkpoints(self.horizon, stride)
    }

    pub fn sidecar_path(&self) -> Option<PathBuf> {
        self.sidecar.clone().or_else(|| self.out.as_ref().map(|p| p.with_extension("json")))
    }
}
