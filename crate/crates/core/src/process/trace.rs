use super::activation::Activation;
use super::growth::GrowthSpec;
use crate::strategies::StrategySpec;
use crate::{BurnError, Result, TOOL_VERSION};
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};

/// One row of a trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub n: u64,
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
    pub grid_cells: u128,
    pub burned: u128,
    pub density: f64,
    /// Present only for Monte Carlo estimates.
    pub std_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BurnTrace {
    pub strategy: StrategySpec,
    pub growth: GrowthSpec,
    pub engine: String,
    pub seed: Option<u64>,
    pub horizon: u64,
    pub records: Vec<Checkpoint>,
    /// Steps where a strategy replaced an unavailable vertex by a skip.
    pub collisions: u64,
    #[serde(skip)]
    pub history: Vec<Activation>,
}

/// Metadata written next to the CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub strategy: StrategySpec,
    pub growth: GrowthSpec,
    pub engine: String,
    pub seed: Option<u64>,
    pub horizon: u64,
    pub checkpoints: usize,
    pub activations: usize,
    pub collisions: u64,
    pub tool_version: String,
}

/// Positional decimal with 16 significant digits.
pub fn format_density(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.15}");
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (15 - mag).clamp(0, 340) as usize;
    format!("{x:.decimals$}")
}

fn csv_err(e: csv::Error) -> BurnError {
    BurnError::param(format!("csv: {e}"))
}

impl BurnTrace {
    pub fn dimension(&self) -> usize {
        self.growth.dimension
    }

    pub fn sidecar(&self) -> Sidecar {
        Sidecar {
            strategy: self.strategy.clone(),
            growth: self.growth.clone(),
            engine: self.engine.clone(),
            seed: self.seed,
            horizon: self.horizon,
            checkpoints: self.records.len(),
            activations: self.history.iter().filter(|a| a.site.vertex().is_some()).count(),
            collisions: self.collisions,
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    fn has_std_error(&self) -> bool {
        self.records.iter().any(|r| r.std_error.is_some())
    }

    pub fn csv_header(&self) -> Vec<String> {
        let mut h = vec!["n".to_string()];
        h.extend((1..=self.dimension()).map(|i| format!("extent_{i}")));
        h.extend(["grid_cells", "burned_cells", "density"].map(String::from));
        if self.has_std_error() {
            h.push("std_error".into());
        }
        h
    }

    /// `n, extent_1..extent_d, grid_cells, burned_cells, density[, std_error]`;
    /// `extent_i` is the upper end of axis `i`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(self.csv_header()).map_err(csv_err)?;
        let se = self.has_std_error();
        for r in &self.records {
            let mut row = vec![r.n.to_string()];
            row.extend(r.hi.iter().map(|e| e.to_string()));
            row.push(r.grid_cells.to_string());
            row.push(r.burned.to_string());
            row.push(format_density(r.density));
            if se {
                row.push(r.std_error.map(format_density).unwrap_or_default());
            }
            w.write_record(&row).map_err(csv_err)?;
        }
        w.flush().map_err(|e| BurnError::param(format!("csv: {e}")))
    }

    pub fn write_sidecar<W: Write>(&self, mut out: W) -> Result<()> {
        let s = serde_json::to_string_pretty(&self.sidecar()).map_err(|e| BurnError::param(e.to_string()))?;
        writeln!(out, "{s}").map_err(|e| BurnError::param(format!("sidecar: {e}")))
    }
}

/// A parsed CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub n: u64,
    pub extents: Vec<i64>,
    pub grid_cells: u128,
    pub burned: u128,
    pub density: f64,
    pub std_error: Option<f64>,
}

/// Parse a trace CSV written by [`BurnTrace::write_csv`].
pub fn read_csv<R: Read>(input: R) -> Result<Vec<CsvRow>> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers().map_err(csv_err)?.clone();
    let se = header.iter().next_back() == Some("std_error");
    let d = header.len() - 4 - usize::from(se);
    let bad = |what: &str| BurnError::param(format!("malformed trace row: {what}"));
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(csv_err)?;
        let field = |i: usize| rec.get(i).ok_or_else(|| bad("short row"));
        let extents = (1..=d)
            .map(|i| field(i)?.parse().map_err(|_| bad("extent")))
            .collect::<Result<Vec<i64>>>()?;
        rows.push(CsvRow {
            n: field(0)?.parse().map_err(|_| bad("n"))?,
            extents,
            grid_cells: field(d + 1)?.parse().map_err(|_| bad("grid_cells"))?,
            burned: field(d + 2)?.parse().map_err(|_| bad("burned_cells"))?,
            density: field(d + 3)?.parse().map_err(|_| bad("density"))?,
            std_error: if se { field(d + 4)?.parse().ok() } else { None },
        });
    }
    Ok(rows)
}
