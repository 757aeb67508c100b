use std::path::{Path, PathBuf};

use clap::Args;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use rhg_core::analysis::distance_to_center;
use rhg_core::explorer::{expose, ExposeConfig, Verdict};
use rhg_core::graph::{build, write_atomic};
use rhg_core::measure::BandConstants;
use rhg_core::report::{analyze, Report, ReportOptions};
use rhg_core::sampler::sample_model;
use rhg_core::{Builder, Error, Graph, Result, SampleModel};

use crate::commands::model_params;
use crate::BandArgs;

pub const SWEEP_SCHEMA: &str = "rhg-sweep v1";

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', default_value = "0.6,0.75,0.9")]
    pub alpha: Vec<f64>,
    #[arg(long = "C", default_value_t = 0.0, allow_hyphen_values = true)]
    pub big_c: f64,
    /// Strictly increasing list of vertex counts.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n_grid: Vec<u64>,
    #[arg(long, default_value_t = 1)]
    pub reps: u64,
    /// Rep `k` of every cell uses seed `seed_base + k`.
    #[arg(long, default_value_t = 0)]
    pub seed_base: u64,
    #[arg(long, default_value = "uniform")]
    pub model: SampleModel,
    #[arg(long)]
    pub naive: bool,
    #[arg(long, default_value_t = rhg_core::analysis::DIAMETER_CAP)]
    pub diameter_cap: usize,
    #[command(flatten)]
    pub band: BandArgs,
    /// Run the exploration procedure from this many evenly spaced vertices per cell.
    #[arg(long, default_value_t = 0)]
    pub expose_queries: usize,
    #[arg(long, default_value_t = 1.0)]
    pub xi: f64,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long)]
    pub band_depth: Option<usize>,
    #[arg(long)]
    pub force_alpha: bool,
    #[arg(long, default_value = "sweep")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub alphas: Vec<f64>,
    #[serde(rename = "C")]
    pub big_c: f64,
    pub n_grid: Vec<u64>,
    pub reps: u64,
    pub seed_base: u64,
    pub model: SampleModel,
    pub builder: String,
    pub diameter_cap: usize,
    pub band: BandConstants,
    pub expose_queries: usize,
    pub expose: ExposeConfig,
}

impl SweepConfig {
    pub fn from_args(a: &SweepArgs) -> Result<Self> {
        let c = SweepConfig {
            alphas: a.alpha.clone(),
            big_c: a.big_c,
            n_grid: a.n_grid.clone(),
            reps: a.reps,
            seed_base: a.seed_base,
            model: a.model,
            builder: if a.naive { "naive" } else { "fast" }.to_string(),
            diameter_cap: a.diameter_cap,
            band: a.band.constants()?,
            expose_queries: a.expose_queries,
            expose: ExposeConfig {
                xi: a.xi,
                epsilon: a.epsilon,
                band_depth_override: a.band_depth,
                ..ExposeConfig::default()
            },
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.alphas.is_empty() || self.n_grid.is_empty() {
            return Err(Error::InvalidParameter("alpha list and n grid must be non-empty".into()));
        }
        if !self.n_grid.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(format!("n grid {:?} is not strictly increasing", self.n_grid)));
        }
        if self.reps == 0 {
            return Err(Error::InvalidParameter("reps must be >= 1".into()));
        }
        self.expose.validate()
    }

    fn cells(&self) -> Vec<CellSpec> {
        let mut out = Vec::new();
        for &alpha in &self.alphas {
            for &n in &self.n_grid {
                for rep in 0..self.reps {
                    out.push(CellSpec {
                        version: rhg_core::VERSION.to_string(),
                        alpha,
                        big_c: self.big_c,
                        n,
                        rep,
                        seed: self.seed_base.wrapping_add(rep),
                        model: self.model,
                        builder: self.builder.clone(),
                        diameter_cap: self.diameter_cap,
                        band: self.band,
                        expose_queries: self.expose_queries,
                        expose: (self.expose_queries > 0).then(|| self.expose.clone()),
                    });
                }
            }
        }
        out
    }
}

/// Everything that determines a cell's result; its hash names the cell file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSpec {
    pub version: String,
    pub alpha: f64,
    #[serde(rename = "C")]
    pub big_c: f64,
    pub n: u64,
    pub rep: u64,
    pub seed: u64,
    pub model: SampleModel,
    pub builder: String,
    pub diameter_cap: usize,
    pub band: BandConstants,
    pub expose_queries: usize,
    pub expose: Option<ExposeConfig>,
}

impl CellSpec {
    pub fn key(&self) -> String {
        let canonical = serde_json::to_string(self).expect("cell spec serializes");
        Sha256::digest(canonical.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExplorerSummary {
    pub queries: usize,
    pub success: usize,
    pub no_path: usize,
    pub failure: usize,
    pub fallback: usize,
    /// Verdict success but no path to the center in the graph, or vice versa.
    pub disagreements: usize,
    pub unverified: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub key: String,
    pub spec: CellSpec,
    pub report: Report,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub explorer: Option<ExplorerSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema: String,
    pub version: String,
    pub config: SweepConfig,
    pub cells: Vec<SweepCell>,
}

fn explore(g: &Graph, queries: usize, config: &ExposeConfig) -> Result<ExplorerSummary> {
    let schedule = config.schedule(g.params())?;
    let dist = distance_to_center(g);
    let n = g.vertex_count();
    let stride = (n / queries.max(1)).max(1);
    let mut s = ExplorerSummary {
        queries: 0,
        success: 0,
        no_path: 0,
        failure: 0,
        fallback: 0,
        disagreements: 0,
        unverified: 0,
    };
    for q in (0..n).step_by(stride).take(queries) {
        let out = expose(g, q, config, &schedule)?;
        s.queries += 1;
        match out.verdict {
            Verdict::Success => s.success += 1,
            Verdict::NoPath => s.no_path += 1,
            Verdict::Failure => s.failure += 1,
        }
        s.fallback += out.fallback as usize;
        s.disagreements += ((out.verdict == Verdict::Success) != dist[q].is_some()) as usize;
        s.unverified += !out.verify(g) as usize;
    }
    Ok(s)
}

pub fn run_cell(spec: &CellSpec, force_alpha: bool) -> Result<SweepCell> {
    let params = model_params(spec.alpha, spec.big_c, spec.n, force_alpha)?;
    let builder = if spec.builder == "naive" { Builder::Naive } else { Builder::Fast };
    let g = build(sample_model(&params, spec.seed, spec.model), builder)?;
    let opts = ReportOptions { band: spec.band, diameter_cap: spec.diameter_cap, timings: false };
    let report = analyze(&g, &opts);
    let explorer = match &spec.expose {
        Some(cfg) => Some(explore(&g, spec.expose_queries, cfg)?),
        None => None,
    };
    Ok(SweepCell { key: spec.key(), spec: spec.clone(), report, explorer })
}

fn cached(path: &Path, spec: &CellSpec) -> Option<SweepCell> {
    let text = std::fs::read_to_string(path).ok()?;
    let cell: SweepCell = serde_json::from_str(&text).ok()?;
    (cell.spec == *spec && cell.key == spec.key()).then_some(cell)
}

fn thread_count() -> Result<Option<usize>> {
    match std::env::var("RHG_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t >= 1 => Ok(Some(t)),
            _ => Err(Error::InvalidParameter(format!("RHG_THREADS must be a positive integer (got '{v}')"))),
        },
        Err(_) => Ok(None),
    }
}

pub fn run(a: &SweepArgs) -> Result<()> {
    let config = SweepConfig::from_args(a)?;
    for &alpha in &config.alphas {
        for &n in &config.n_grid {
            model_params(alpha, config.big_c, n, a.force_alpha)?;
        }
    }
    let cells_dir = a.out_dir.join("cells");
    std::fs::create_dir_all(&cells_dir).map_err(|e| Error::io(&cells_dir, e))?;

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = thread_count()? {
        pool = pool.num_threads(t);
    }
    let pool = pool.build().map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;

    let specs = config.cells();
    let results: Vec<Result<(SweepCell, bool)>> = pool.install(|| {
        specs
            .par_iter()
            .map(|spec| {
                let path = cells_dir.join(format!("{}.json", spec.key()));
                if let Some(cell) = cached(&path, spec) {
                    return Ok((cell, true));
                }
                let cell = run_cell(spec, a.force_alpha)?;
                let mut text = serde_json::to_string_pretty(&cell)?;
                text.push('\n');
                write_atomic(&path, &text)?;
                Ok((cell, false))
            })
            .collect()
    });
    let mut cells = Vec::with_capacity(results.len());
    let mut reused = 0;
    for r in results {
        let (cell, hit) = r?;
        reused += hit as usize;
        cells.push(cell);
    }

    let report =
        SweepReport { schema: SWEEP_SCHEMA.to_string(), version: rhg_core::VERSION.to_string(), config, cells };
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    let out = a.out_dir.join("sweep.json");
    write_atomic(&out, &text)?;
    eprintln!(
        "rhg: {} cells ({} computed, {reused} reused) written to {}",
        report.cells.len(),
        report.cells.len() - reused,
        out.display()
    );
    Ok(())
}
