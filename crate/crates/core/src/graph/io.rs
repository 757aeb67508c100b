//! Points and edge files.
//!
//! Points: `# rhg-points v1 alpha=.. C=.. n=.. R=.. seed=.. model=.. count=..`
//! then `<index>\t<r>\t<theta>` per vertex, probes with negative indices.
//!
//! Edges: `# rhg-edges v1 count=.. checksum=..`, a provenance comment, then
//! `<u>\t<v>` with `u < v` in lexicographic order. The checksum is the
//! SHA-256 of everything after the first line.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use super::{from_edge_list, Graph};
use crate::error::{Error, Result};
use crate::geometry::{ModelParams, PolarPoint};
use crate::sampler::{CountMethod, SampleModel, SampleSet};

const POINTS_MAGIC: &str = "# rhg-points";
const EDGES_MAGIC: &str = "# rhg-edges";
const FORMAT_VERSION: &str = "v1";

/// Writes `contents` to `path` through a temporary file and a rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    fs::write(&tmp, contents).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

fn provenance_fields(p: &ModelParams, seed: u64) -> String {
    format!("alpha={} C={} n={} R={} seed={seed}", p.alpha, p.big_c, p.n, p.radius)
}

pub fn points_to_string(set: &SampleSet) -> String {
    let mut out = format!(
        "{POINTS_MAGIC} {FORMAT_VERSION} {} model={} count={}\n",
        provenance_fields(&set.params, set.seed),
        set.model.as_str(),
        set.vertex_count()
    );
    for (i, p) in set.points.iter().enumerate() {
        writeln!(out, "{i}\t{:.16e}\t{:.16e}", p.r, p.theta).unwrap();
    }
    for (j, p) in set.probes.iter().enumerate() {
        writeln!(out, "-{}\t{:.16e}\t{:.16e}", j + 1, p.r, p.theta).unwrap();
    }
    out
}

pub fn save_points(set: &SampleSet, path: &Path) -> Result<()> {
    write_atomic(path, &points_to_string(set))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// `key=value` pairs of a header line after the magic and version tokens.
fn header_fields(path: &Path, line: &str, magic: &str) -> Result<HashMap<String, String>> {
    let rest = line.strip_prefix(magic).ok_or_else(|| Error::format(path, format!("missing '{magic}' header")))?;
    let mut tokens = rest.split_whitespace();
    match tokens.next() {
        Some(FORMAT_VERSION) => {}
        Some(v) => return Err(Error::format(path, format!("unsupported format version '{v}'"))),
        None => return Err(Error::format(path, "missing format version")),
    }
    tokens
        .map(|t| {
            t.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| Error::format(path, format!("malformed header field '{t}'")))
        })
        .collect()
}

fn field<T: std::str::FromStr>(path: &Path, fields: &HashMap<String, String>, key: &str) -> Result<T> {
    let raw = fields.get(key).ok_or_else(|| Error::format(path, format!("header lacks '{key}'")))?;
    raw.parse().map_err(|_| Error::format(path, format!("header field {key}='{raw}' unparsable")))
}

/// Provenance recorded in a header, checked against the derived radius.
fn provenance(path: &Path, fields: &HashMap<String, String>) -> Result<(ModelParams, u64)> {
    let alpha: f64 = field(path, fields, "alpha")?;
    let big_c: f64 = field(path, fields, "C")?;
    let n: u64 = field(path, fields, "n")?;
    let stored_r: f64 = field(path, fields, "R")?;
    let seed: u64 = field(path, fields, "seed")?;
    let (params, _) = ModelParams::with_alpha_override(alpha, big_c, n)
        .map_err(|e| Error::Validation(format!("{}: {e}", path.display())))?;
    if (params.radius - stored_r).abs() > 1e-12 * stored_r.abs().max(1.0) {
        return Err(Error::Validation(format!(
            "{}: R = {stored_r} disagrees with 2 ln n + C = {}",
            path.display(),
            params.radius
        )));
    }
    Ok((params, seed))
}

pub fn points_from_str(text: &str, path: &Path) -> Result<SampleSet> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::format(path, "empty file"))?;
    let fields = header_fields(path, header, POINTS_MAGIC)?;
    let (params, seed) = provenance(path, &fields)?;
    let model: SampleModel =
        field::<String>(path, &fields, "model")?.parse().map_err(|e: Error| Error::format(path, e.to_string()))?;
    let count: usize = field(path, &fields, "count")?;

    let mut points = Vec::new();
    let mut probes = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let bad = |msg: &str| Error::format(path, format!("line {}: {msg}", lineno + 2));
        let mut cols = line.split('\t');
        let (Some(idx), Some(r), Some(theta), None) = (cols.next(), cols.next(), cols.next(), cols.next()) else {
            return Err(bad("expected three tab-separated columns"));
        };
        let idx: i64 = idx.parse().map_err(|_| bad("bad index"))?;
        let r: f64 = r.parse().map_err(|_| bad("bad radius"))?;
        let theta: f64 = theta.parse().map_err(|_| bad("bad angle"))?;
        let p = PolarPoint { r, theta };
        if !(r >= 0.0 && r <= params.radius && (0.0..std::f64::consts::TAU).contains(&theta)) {
            return Err(Error::Validation(format!(
                "{}: line {}: point ({r}, {theta}) outside the disk",
                path.display(),
                lineno + 2
            )));
        }
        if idx >= 0 {
            if idx as usize != points.len() || !probes.is_empty() {
                return Err(bad("vertex indices must be consecutive from 0, before probes"));
            }
            points.push(p);
        } else {
            if (-idx) as usize != probes.len() + 1 {
                return Err(bad("probe indices must run -1, -2, ..."));
            }
            probes.push(p);
        }
    }
    if points.len() + probes.len() != count {
        return Err(Error::format(
            path,
            format!("header count={count} but {} rows present", points.len() + probes.len()),
        ));
    }
    let count_method = match model {
        SampleModel::Uniform => {
            if points.len() as u64 != params.n {
                return Err(Error::Validation(format!(
                    "{}: uniform model needs exactly n = {} points (got {})",
                    path.display(),
                    params.n,
                    points.len()
                )));
            }
            CountMethod::Fixed
        }
        SampleModel::Poisson if params.n <= 10 => CountMethod::PoissonInversion,
        SampleModel::Poisson => CountMethod::PoissonPtrs,
    };
    Ok(SampleSet { points, probes, model, params, seed, count_method })
}

pub fn load_points(path: &Path) -> Result<SampleSet> {
    points_from_str(&read(path)?, path)
}

fn checksum(body: &str) -> String {
    Sha256::digest(body.as_bytes()).iter().fold(String::with_capacity(64), |mut s, b| {
        write!(s, "{b:02x}").unwrap();
        s
    })
}

pub fn edges_to_string(g: &Graph) -> String {
    let mut body =
        format!("# provenance {} model={}\n", provenance_fields(g.params(), g.points.seed), g.points.model.as_str());
    for (u, v) in g.edges() {
        writeln!(body, "{u}\t{v}").unwrap();
    }
    format!("{EDGES_MAGIC} {FORMAT_VERSION} count={} checksum={}\n{body}", g.edge_count(), checksum(&body))
}

pub fn save_edges(g: &Graph, path: &Path) -> Result<()> {
    write_atomic(path, &edges_to_string(g))
}

/// Writes the points file and the edge file of a graph bundle.
pub fn save_graph(g: &Graph, points: &Path, edges: &Path) -> Result<()> {
    save_points(&g.points, points)?;
    save_edges(g, edges)
}

/// Summary of a validated edge file header.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeFileInfo {
    pub count: usize,
    pub checksum: String,
}

fn parse_edges(text: &str, path: &Path, set: &SampleSet) -> Result<(Vec<(u32, u32)>, EdgeFileInfo)> {
    let (header, body) = text.split_once('\n').ok_or_else(|| Error::format(path, "missing header line"))?;
    let fields = header_fields(path, header, EDGES_MAGIC)?;
    let count: usize = field(path, &fields, "count")?;
    let expected: String = field(path, &fields, "checksum")?;
    let actual = checksum(body);
    if actual != expected {
        return Err(Error::format(path, format!("checksum mismatch (header {expected}, body {actual})")));
    }

    let mut lines = body.lines();
    let prov_line = lines
        .next()
        .and_then(|l| l.strip_prefix("# provenance "))
        .ok_or_else(|| Error::format(path, "missing provenance line"))?;
    let prov_fields = header_fields(path, &format!("{EDGES_MAGIC} {FORMAT_VERSION} {prov_line}"), EDGES_MAGIC)?;
    let (params, seed) = provenance(path, &prov_fields)?;
    let model: String = field(path, &prov_fields, "model")?;
    if params != set.params || seed != set.seed || model != set.model.as_str() {
        return Err(Error::Validation(format!(
            "{}: provenance ({}, seed {seed}, {model}) does not match the points file ({}, seed {}, {})",
            path.display(),
            provenance_fields(&params, seed),
            provenance_fields(&set.params, set.seed),
            set.seed,
            set.model.as_str()
        )));
    }

    let n = set.vertex_count();
    let mut edges = Vec::with_capacity(count);
    for (lineno, line) in lines.enumerate() {
        let bad = |msg: String| Error::format(path, format!("line {}: {msg}", lineno + 3));
        let (u, v) = line.split_once('\t').ok_or_else(|| bad("expected two tab-separated columns".into()))?;
        let u: u32 = u.parse().map_err(|_| bad(format!("bad vertex '{u}'")))?;
        let v: u32 = v.parse().map_err(|_| bad(format!("bad vertex '{v}'")))?;
        if u >= v || v as usize >= n {
            return Err(Error::Validation(format!(
                "{}: line {}: edge ({u}, {v}) needs u < v < {n}",
                path.display(),
                lineno + 3
            )));
        }
        if edges.last().is_some_and(|&last| last >= (u, v)) {
            return Err(bad("edges not strictly sorted".into()));
        }
        edges.push((u, v));
    }
    if edges.len() != count {
        return Err(Error::format(path, format!("header count={count} but {} edges present", edges.len())));
    }
    Ok((edges, EdgeFileInfo { count, checksum: actual }))
}

/// Loads a graph bundle and checks every edge against the distance predicate.
pub fn load_graph(points: &Path, edges: &Path) -> Result<Graph> {
    let set = load_points(points)?;
    let (list, _) = parse_edges(&read(edges)?, edges, &set)?;
    let g = from_edge_list(set, &list);
    g.verify().map_err(|e| Error::Validation(format!("{}: {e}", edges.display())))?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_fast;
    use crate::sampler::{sample_poisson_model, sample_uniform_model};

    fn graph() -> Graph {
        let p = ModelParams::new(0.75, 0.5, 400).unwrap();
        let mut s = sample_uniform_model(&p, 17);
        s.add_probe(PolarPoint::new(p.radius - 1.0, 0.0)).unwrap();
        s.add_random_probe().unwrap();
        build_fast(s).unwrap()
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let (pp, ep) = (dir.path().join("p.tsv"), dir.path().join("e.tsv"));
        let g = graph();
        save_graph(&g, &pp, &ep).unwrap();
        let back = load_graph(&pp, &ep).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.point(g.vertex_count() - 2), PolarPoint::new(g.params().radius - 1.0, 0.0));

        let ps = sample_poisson_model(&ModelParams::new(0.6, 0.0, 50).unwrap(), 2);
        save_points(&ps, &pp).unwrap();
        assert_eq!(load_points(&pp).unwrap(), ps);
    }

    #[test]
    fn truncated_edges_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let (pp, ep) = (dir.path().join("p.tsv"), dir.path().join("e.tsv"));
        let g = graph();
        save_graph(&g, &pp, &ep).unwrap();
        let text = fs::read_to_string(&ep).unwrap();
        fs::write(&ep, &text[..text.len() - 7]).unwrap();
        assert!(matches!(load_graph(&pp, &ep), Err(Error::Format { .. })));
    }

    #[test]
    fn truncated_points_rejected() {
        let g = graph();
        let text = points_to_string(&g.points);
        let cut: String = text.lines().take(10).map(|l| format!("{l}\n")).collect();
        assert!(matches!(points_from_str(&cut, Path::new("p")), Err(Error::Format { .. })));
    }

    #[test]
    fn alpha_mismatch_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let (pp, ep) = (dir.path().join("p.tsv"), dir.path().join("e.tsv"));
        let g = graph();
        save_graph(&g, &pp, &ep).unwrap();
        let text = fs::read_to_string(&pp).unwrap().replacen("alpha=0.75", "alpha=0.7", 1);
        fs::write(&pp, text).unwrap();
        assert!(matches!(load_graph(&pp, &ep), Err(Error::Validation(_))));
    }

    #[test]
    fn forged_edge_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let (pp, ep) = (dir.path().join("p.tsv"), dir.path().join("e.tsv"));
        let g = graph();
        save_points(&g.points, &pp).unwrap();
        // a pair of far-apart boundary vertices
        let far = (0..g.vertex_count())
            .flat_map(|u| (u + 1..g.vertex_count()).map(move |v| (u, v)))
            .find(|&(u, v)| !g.has_edge(u, v))
            .unwrap();
        let mut body = edges_to_string(&g).split_once('\n').unwrap().1.to_string();
        let mut lines: Vec<String> = body.lines().skip(1).map(String::from).collect();
        lines.push(format!("{}\t{}", far.0, far.1));
        lines.sort_by_key(|l| {
            let (a, b) = l.split_once('\t').unwrap();
            (a.parse::<u32>().unwrap(), b.parse::<u32>().unwrap())
        });
        let prov = body.lines().next().unwrap().to_string();
        body = format!("{prov}\n{}\n", lines.join("\n"));
        let text = format!("# rhg-edges v1 count={} checksum={}\n{body}", lines.len(), checksum(&body));
        fs::write(&ep, text).unwrap();
        assert!(matches!(load_graph(&pp, &ep), Err(Error::Validation(_))));
    }

    #[test]
    fn version_mismatch_rejected() {
        let g = graph();
        let text = points_to_string(&g.points).replacen("v1", "v9", 1);
        assert!(matches!(points_from_str(&text, Path::new("p")), Err(Error::Format { .. })));
    }
}
