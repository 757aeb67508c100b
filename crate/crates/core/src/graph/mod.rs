//! Adjacency construction and storage.
//!
//! Both builders decide every pair through the same canonical predicate, so
//! their edge sets agree exactly rather than approximately.

mod io;

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::Serialize;

pub use io::{
    edges_to_string, load_graph, load_points, points_from_str, points_to_string, save_edges, save_graph, save_points,
    write_atomic, EdgeFileInfo,
};

use crate::error::{Error, Result};
use crate::geometry::{max_angle_within, within_kernel, Kernel, ModelParams, Threshold};
use crate::sampler::SampleSet;

/// Default vertex limit for the quadratic builder.
pub const NAIVE_LIMIT: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Builder {
    Naive,
    Fast,
    /// Read back from an edge file.
    Loaded,
}

impl Builder {
    pub fn as_str(&self) -> &'static str {
        match self {
            Builder::Naive => "naive",
            Builder::Fast => "fast",
            Builder::Loaded => "loaded",
        }
    }
}

/// Immutable graph over a point set, stored as compressed neighbor lists.
///
/// Vertex `v` is `points[v]` for model points and `probes[v - points.len()]`
/// for probes. Neighbor lists are strictly increasing.
#[derive(Debug, Clone)]
pub struct Graph {
    pub points: SampleSet,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    pub builder: Builder,
}

impl PartialEq for Graph {
    /// Builder provenance is not part of graph identity.
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && self.offsets == other.offsets && self.targets == other.targets
    }
}

impl Graph {
    fn from_lists(points: SampleSet, lists: Vec<Vec<u32>>, builder: Builder) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        offsets.push(0);
        let mut total = 0;
        for l in &lists {
            total += l.len();
            offsets.push(total);
        }
        let mut targets = Vec::with_capacity(total);
        for l in lists {
            targets.extend(l);
        }
        Graph { points, offsets, targets, builder }
    }

    pub fn params(&self) -> &ModelParams {
        &self.points.params
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Polar coordinates of vertex `v` (model point or probe).
    pub fn point(&self, v: usize) -> crate::geometry::PolarPoint {
        let p = &self.points;
        if v < p.points.len() {
            p.points[v]
        } else {
            p.probes[v - p.points.len()]
        }
    }

    pub fn radius_of(&self, v: usize) -> f64 {
        self.point(v).r
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.neighbors(u).iter().map(|&v| v as usize).filter(move |&v| v > u).map(move |v| (u, v))
        })
    }

    /// Checks symmetry, sortedness, absence of self-loops and the edge
    /// predicate for every stored edge.
    pub fn verify(&self) -> Result<()> {
        let kernels = kernels(&self.points);
        let t = Threshold::new(self.params().radius);
        for u in 0..self.vertex_count() {
            let nb = self.neighbors(u);
            if !nb.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::Validation(format!("neighbor list of {u} not strictly sorted")));
            }
            for &v in nb {
                let v = v as usize;
                if v == u {
                    return Err(Error::Validation(format!("self-loop at {u}")));
                }
                if !self.has_edge(v, u) {
                    return Err(Error::Validation(format!("edge ({u}, {v}) not symmetric")));
                }
                if !within_kernel(&kernels[u], &kernels[v], &t) {
                    return Err(Error::Validation(format!("edge ({u}, {v}) violates the distance predicate")));
                }
            }
        }
        Ok(())
    }
}

fn kernels(set: &SampleSet) -> Vec<Kernel> {
    set.all_points().map(Kernel::new).collect()
}

fn check_indexable(set: &SampleSet) -> Result<()> {
    if set.vertex_count() > u32::MAX as usize {
        return Err(Error::SizeGuard(format!("{} vertices exceed the u32 index space", set.vertex_count())));
    }
    Ok(())
}

/// Tests all pairs. Refuses more than [`NAIVE_LIMIT`] vertices.
pub fn build_naive(set: SampleSet) -> Result<Graph> {
    build_naive_with_limit(set, NAIVE_LIMIT)
}

pub fn build_naive_with_limit(set: SampleSet, limit: usize) -> Result<Graph> {
    let n = set.vertex_count();
    if n > limit {
        return Err(Error::SizeGuard(format!("naive builder limited to {limit} vertices (got {n})")));
    }
    check_indexable(&set)?;
    let k = kernels(&set);
    let t = Threshold::new(set.params.radius);
    let lists = (0..n)
        .into_par_iter()
        .map(|u| (0..n).filter(|&v| v != u && within_kernel(&k[u], &k[v], &t)).map(|v| v as u32).collect())
        .collect();
    Ok(Graph::from_lists(set, lists, Builder::Naive))
}

/// Vertices of one unit-width radial band, sorted by angle.
struct Band {
    lo: f64,
    thetas: Vec<f64>,
    ids: Vec<u32>,
}

/// Radial bands of width one, each sorted by angle. For a vertex `u` and a
/// band with inner radius `lo`, every neighbor in the band lies within the
/// angular threshold at `(r_u, lo)`, since that threshold is decreasing in
/// the second radius. Each band is therefore searched over a single angular
/// window, and every candidate is decided by the canonical predicate.
pub fn build_fast(set: SampleSet) -> Result<Graph> {
    check_indexable(&set)?;
    let k = kernels(&set);
    let big_r = set.params.radius;
    let t = Threshold::new(big_r);
    let band_count = (big_r.ceil() as usize).max(1);
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); band_count];
    for (i, p) in k.iter().enumerate() {
        let b = (p.r.max(0.0).floor() as usize).min(band_count - 1);
        buckets[b].push(i as u32);
    }
    let bands: Vec<Band> = buckets
        .into_iter()
        .enumerate()
        .filter(|(_, ids)| !ids.is_empty())
        .map(|(b, mut ids)| {
            ids.sort_by(|&x, &y| k[x as usize].theta.total_cmp(&k[y as usize].theta).then(x.cmp(&y)));
            let thetas = ids.iter().map(|&i| k[i as usize].theta).collect();
            Band { lo: b as f64, thetas, ids }
        })
        .collect();

    let lists = (0..k.len())
        .into_par_iter()
        .map(|u| {
            let ku = &k[u];
            let mut out = Vec::new();
            let mut consider = |ids: &[u32]| {
                for &v in ids {
                    if v as usize != u && within_kernel(ku, &k[v as usize], &t) {
                        out.push(v);
                    }
                }
            };
            for band in &bands {
                if band.lo - ku.r > big_r {
                    continue;
                }
                let w = max_angle_within(ku.r, band.lo, big_r) * (1.0 + 1e-9) + 1e-12;
                if w >= PI {
                    consider(&band.ids);
                    continue;
                }
                let (lo, hi) = (ku.theta - w, ku.theta + w);
                let range = |a: f64, b: f64| {
                    let s = band.thetas.partition_point(|&x| x < a);
                    let e = band.thetas.partition_point(|&x| x <= b);
                    s..e
                };
                if lo < 0.0 {
                    consider(&band.ids[range(lo + TAU, TAU)]);
                    consider(&band.ids[range(0.0, hi)]);
                } else if hi >= TAU {
                    consider(&band.ids[range(lo, TAU)]);
                    consider(&band.ids[range(0.0, hi - TAU)]);
                } else {
                    consider(&band.ids[range(lo, hi)]);
                }
            }
            out.sort_unstable();
            out
        })
        .collect();
    Ok(Graph::from_lists(set, lists, Builder::Fast))
}

/// Builds with whichever builder is named.
pub fn build(set: SampleSet, builder: Builder) -> Result<Graph> {
    match builder {
        Builder::Naive => build_naive(set),
        Builder::Fast | Builder::Loaded => build_fast(set),
    }
}

/// Rebuilds a graph from stored neighbor lists; the caller validates them.
pub(crate) fn from_edge_list(points: SampleSet, edges: &[(u32, u32)]) -> Graph {
    let n = points.vertex_count();
    let mut lists = vec![Vec::new(); n];
    for &(u, v) in edges {
        lists[u as usize].push(v);
        lists[v as usize].push(u);
    }
    for l in &mut lists {
        l.sort_unstable();
    }
    Graph::from_lists(points, lists, Builder::Loaded)
}
