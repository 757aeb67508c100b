//! The `rhg-report v1` JSON summary of one analyzed graph.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::analysis::{component_stats, degree_stats, DIAMETER_CAP};
use crate::error::{Error, Result};
use crate::geometry::ModelParams;
use crate::graph::Graph;
use crate::measure::BandConstants;

pub const REPORT_SCHEMA: &str = "rhg-report v1";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiameterField {
    pub value: u32,
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CliqueField {
    pub size: usize,
    pub verified: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathField {
    pub overall: usize,
    pub in_band: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailField {
    pub window: [usize; 2],
    pub slope: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub version: String,
    pub params: ModelParams,
    pub seed: u64,
    pub model: String,
    pub builder: String,
    pub vertex_count: usize,
    pub probe_count: usize,
    pub edge_count: usize,
    pub component_sizes: Vec<usize>,
    pub giant_diameter: DiameterField,
    pub second_size: usize,
    pub center_clique: CliqueField,
    pub longest_induced_path: PathField,
    pub band: BandConstants,
    pub degree_tail: TailField,
    /// Wall-clock seconds per stage; only filled on request so that reports
    /// stay byte-reproducible by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportOptions {
    pub band: BandConstants,
    pub diameter_cap: usize,
    pub timings: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { band: BandConstants::default(), diameter_cap: DIAMETER_CAP, timings: false }
    }
}

pub fn analyze(g: &Graph, options: &ReportOptions) -> Report {
    let t0 = Instant::now();
    let stats = component_stats(g, &options.band, options.diameter_cap);
    let t1 = Instant::now();
    let degrees = degree_stats(g, None);
    let t2 = Instant::now();
    let timings = options.timings.then(|| {
        BTreeMap::from([
            ("components".to_string(), (t1 - t0).as_secs_f64()),
            ("degrees".to_string(), (t2 - t1).as_secs_f64()),
        ])
    });
    Report {
        schema: REPORT_SCHEMA.to_string(),
        version: crate::VERSION.to_string(),
        params: *g.params(),
        seed: g.points.seed,
        model: g.points.model.as_str().to_string(),
        builder: g.builder.as_str().to_string(),
        vertex_count: g.vertex_count(),
        probe_count: g.points.probes.len(),
        edge_count: g.edge_count(),
        component_sizes: stats.sizes,
        giant_diameter: DiameterField { value: stats.giant_diameter.value, exact: stats.giant_diameter.exact },
        second_size: stats.second_size,
        center_clique: CliqueField { size: stats.center_clique_size, verified: stats.center_clique_verified },
        longest_induced_path: PathField {
            overall: stats.longest_induced_path_overall,
            in_band: stats.longest_induced_path_in_band,
        },
        band: options.band,
        degree_tail: TailField { window: [degrees.window.min_degree, degrees.window.max_degree], slope: degrees.slope },
        timings,
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let r: Report = serde_json::from_str(text)?;
        if r.schema != REPORT_SCHEMA {
            return Err(Error::Validation(format!("unsupported report schema '{}'", r.schema)));
        }
        Ok(r)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Json(j) => Error::format(path, j.to_string()),
            other => other,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        crate::graph::write_atomic(path, &self.to_json())
    }

    /// `(metric, value)` pairs exported for plotting.
    pub fn metrics(&self) -> Vec<(&'static str, f64)> {
        vec![
            ("center_clique_size", self.center_clique.size as f64),
            ("giant_diameter", self.giant_diameter.value as f64),
            ("longest_induced_path", self.longest_induced_path.overall as f64),
            ("second_size", self.second_size as f64),
        ]
    }
}
