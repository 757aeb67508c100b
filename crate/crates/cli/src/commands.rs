use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::Args;
use serde::Serialize;

use rhg_core::explorer::{expose as run_expose, ExposeConfig, ExposeOutcome};
use rhg_core::graph::{build as build_graph, load_graph, load_points, save_edges, save_points, write_atomic};
use rhg_core::measure::{run_check, standard_grid, CheckConfig, CheckRow};
use rhg_core::report::{analyze as analyze_graph, Report, ReportOptions, REPORT_SCHEMA};
use rhg_core::sampler::sample_model;
use rhg_core::{Builder, Error, ModelParams, Result, SampleModel};

use crate::sweep::{SweepReport, SWEEP_SCHEMA};
use crate::BandArgs;

/// Writes to `out`, or stdout when absent.
pub fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn model_params(alpha: f64, big_c: f64, n: u64, force_alpha: bool) -> Result<ModelParams> {
    if force_alpha {
        let (p, warning) = ModelParams::with_alpha_override(alpha, big_c, n)?;
        if let Some(w) = warning {
            eprintln!("rhg: warning: {w}");
        }
        Ok(p)
    } else if !(alpha > 0.5 && alpha < 1.0) {
        Err(Error::InvalidParameter(format!("alpha = {alpha} outside (1/2, 1); pass --force-alpha to accept it")))
    } else {
        ModelParams::new(alpha, big_c, n)
    }
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long = "C", default_value_t = 0.0, allow_hyphen_values = true)]
    pub big_c: f64,
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "uniform")]
    pub model: SampleModel,
    /// Extra probe vertices drawn from the model density.
    #[arg(long, default_value_t = 0)]
    pub probes: usize,
    /// Accept alpha outside (1/2, 1).
    #[arg(long)]
    pub force_alpha: bool,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn generate(a: &GenerateArgs) -> Result<()> {
    let params = model_params(a.alpha, a.big_c, a.n, a.force_alpha)?;
    let mut set = sample_model(&params, a.seed, a.model);
    for _ in 0..a.probes {
        set.add_random_probe()?;
    }
    save_points(&set, &a.out)?;
    eprintln!("rhg: wrote {} points ({} probes) to {}", set.points.len(), set.probes.len(), a.out.display());
    Ok(())
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long, conflicts_with = "naive")]
    pub fast: bool,
    #[arg(long)]
    pub naive: bool,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn build(a: &BuildArgs) -> Result<()> {
    let set = load_points(&a.points)?;
    let builder = if a.naive { Builder::Naive } else { Builder::Fast };
    let g = build_graph(set, builder)?;
    save_edges(&g, &a.out)?;
    eprintln!("rhg: wrote {} edges ({} builder) to {}", g.edge_count(), builder.as_str(), a.out.display());
    Ok(())
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long)]
    pub edges: PathBuf,
    /// Largest component for which the diameter is computed exactly.
    #[arg(long, default_value_t = rhg_core::analysis::DIAMETER_CAP)]
    pub diameter_cap: usize,
    /// Record per-stage wall-clock times (makes the report non-reproducible).
    #[arg(long)]
    pub timings: bool,
    #[command(flatten)]
    pub band: BandArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn analyze(a: &AnalyzeArgs) -> Result<()> {
    let g = load_graph(&a.points, &a.edges)?;
    let opts = ReportOptions { band: a.band.constants()?, diameter_cap: a.diameter_cap, timings: a.timings };
    emit(a.out.as_deref(), &analyze_graph(&g, &opts).to_json())
}

#[derive(Args, Debug)]
pub struct ExposeArgs {
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long)]
    pub edges: PathBuf,
    /// Query vertex index (probes follow the model points).
    #[arg(long)]
    pub query: usize,
    #[arg(long, default_value_t = 1.0)]
    pub xi: f64,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    /// Fixed angular window instead of (ln n)^(C0+eps)/n.
    #[arg(long)]
    pub window: Option<f64>,
    /// Phase-count constant: phases = ceil(constant * ln n).
    #[arg(long, default_value_t = 2.0)]
    pub phase_constant: f64,
    #[arg(long)]
    pub max_phases: Option<usize>,
    /// Override the clamped outer band depth i0.
    #[arg(long)]
    pub band_depth: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct ExposeTrace<'a> {
    schema: &'static str,
    version: &'static str,
    params: ModelParams,
    seed: u64,
    model: &'static str,
    config: &'a ExposeConfig,
    #[serde(flatten)]
    outcome: &'a ExposeOutcome,
    verified: bool,
    clamp_events: u64,
}

pub fn expose(a: &ExposeArgs) -> Result<()> {
    let g = load_graph(&a.points, &a.edges)?;
    if a.query >= g.vertex_count() {
        return Err(Error::InvalidParameter(format!(
            "query {} out of range (graph has {} vertices)",
            a.query,
            g.vertex_count()
        )));
    }
    let config = ExposeConfig {
        xi: a.xi,
        epsilon: a.epsilon,
        window_width: a.window,
        phase_constant: a.phase_constant,
        max_phases: a.max_phases,
        band_depth_override: a.band_depth,
    };
    config.validate()?;
    let schedule = config.schedule(g.params())?;
    let outcome = run_expose(&g, a.query, &config, &schedule)?;
    let trace = ExposeTrace {
        schema: "rhg-expose v1",
        version: rhg_core::VERSION,
        params: *g.params(),
        seed: g.points.seed,
        model: g.points.model.as_str(),
        config: &config,
        outcome: &outcome,
        verified: outcome.verify(&g),
        clamp_events: rhg_core::geometry::clamp_events(),
    };
    let mut text = serde_json::to_string_pretty(&trace)?;
    text.push('\n');
    emit(a.out.as_deref(), &text)
}

#[derive(Args, Debug)]
pub struct MeasureCheckArgs {
    /// Monte-Carlo samples per region.
    #[arg(long, default_value_t = 10_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Restrict to one disk radius of the standard grid (or any radius with --alpha/--variant).
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub variant: Option<usize>,
    #[command(flatten)]
    pub band: BandArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn check_grid(a: &MeasureCheckArgs) -> Result<Vec<CheckConfig>> {
    if let Some(v) = a.variant {
        if v >= rhg_core::measure::GRID_VARIANTS {
            return Err(Error::InvalidParameter(format!("variant {v} out of range")));
        }
    }
    let grid: Vec<CheckConfig> = standard_grid()
        .into_iter()
        .filter(|c| a.alpha.is_none_or(|x| c.alpha == x))
        .filter(|c| a.variant.is_none_or(|x| c.variant == x))
        .filter(|c| a.radius.is_none_or(|x| c.radius == x))
        .collect();
    if !grid.is_empty() {
        return Ok(grid);
    }
    // Off-grid request: use the given values, defaulting the rest.
    let mut out = Vec::new();
    for &radius in a.radius.as_slice() {
        for alpha in a.alpha.map_or(rhg_core::measure::GRID_ALPHAS.to_vec(), |x| vec![x]) {
            for variant in a.variant.map_or((0..rhg_core::measure::GRID_VARIANTS).collect(), |x| vec![x]) {
                out.push(CheckConfig { radius, alpha, variant });
            }
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidParameter("no measure-check configuration matches the filters".into()));
    }
    Ok(out)
}

pub fn measure_check(a: &MeasureCheckArgs) -> Result<()> {
    if a.samples == 0 {
        return Err(Error::InvalidParameter("samples must be positive".into()));
    }
    let constants = a.band.constants()?;
    let grid = check_grid(a)?;
    let mut text = format!(
        "# rhg-measure-check v1 version={} samples={} seed={} c1={} c2={} c3={}\n{}\n",
        rhg_core::VERSION,
        a.samples,
        a.seed,
        constants.c1,
        constants.c2,
        constants.c3,
        CheckRow::CSV_HEADER
    );
    let mut failed = 0;
    for (i, c) in grid.iter().enumerate() {
        for row in run_check(c, a.samples, a.seed.wrapping_add(i as u64), &constants)? {
            failed += !row.pass as usize;
            let _ = writeln!(text, "{}", row.csv_line());
        }
    }
    emit(a.out.as_deref(), &text)?;
    eprintln!("rhg: {} configurations, {failed} rows outside CI + envelope", grid.len());
    Ok(())
}

#[derive(Args, Debug)]
pub struct PlotDataArgs {
    /// Report files: single `rhg-report v1` JSON or `rhg-sweep v1` JSON.
    #[arg(required = true)]
    pub reports: Vec<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Long-format rows keyed by (n, alpha, seed, metric) for a deterministic order.
pub fn plot_rows(reports: &[Report]) -> String {
    let mut rows = BTreeMap::new();
    for r in reports {
        for (metric, value) in r.metrics() {
            let key = (r.params.n, r.params.alpha.to_bits(), r.seed, metric);
            rows.insert(key, (r.params.alpha, value));
        }
    }
    let mut out = String::from("n,alpha,seed,metric,value\n");
    for ((n, _, seed, metric), (alpha, value)) in rows {
        let _ = writeln!(out, "{n},{alpha},{seed},{metric},{value}");
    }
    out
}

fn read_reports(path: &Path) -> Result<Vec<Report>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::format(path, e.to_string()))?;
    match value.get("schema").and_then(|s| s.as_str()) {
        Some(REPORT_SCHEMA) => Ok(vec![Report::from_json(&text)?]),
        Some(SWEEP_SCHEMA) => {
            let sweep: SweepReport = serde_json::from_value(value).map_err(|e| Error::format(path, e.to_string()))?;
            Ok(sweep.cells.into_iter().map(|c| c.report).collect())
        }
        other => Err(Error::format(path, format!("unrecognised schema {other:?}"))),
    }
}

pub fn plot_data(a: &PlotDataArgs) -> Result<()> {
    let mut reports = Vec::new();
    for p in &a.reports {
        reports.extend(read_reports(p)?);
    }
    emit(a.out.as_deref(), &plot_rows(&reports))
}
