//! Structural measurements on a built graph.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measure::BandConstants;

/// Largest component for which the exact all-source diameter is computed.
pub const DIAMETER_CAP: usize = 30_000;
const DOUBLE_SWEEP_ROUNDS: usize = 4;

/// Disjoint-set forest with union by size and path halving.
struct Dsu {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n as u32).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a as usize] < self.size[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
    }
}

/// Partition of the vertex set into connected components.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Components {
    /// Component id of each vertex: the smallest vertex index in it.
    pub id: Vec<usize>,
    /// Members of each component (ascending), components ordered by size
    /// descending, ties by id.
    pub members: Vec<Vec<usize>>,
}

impl Components {
    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    pub fn giant_size(&self) -> usize {
        self.members.first().map_or(0, Vec::len)
    }

    pub fn second_size(&self) -> usize {
        self.members.get(1).map_or(0, Vec::len)
    }

    /// Position in `members` of the component holding `v`.
    pub fn rank_of(&self, v: usize) -> usize {
        let id = self.id[v];
        self.members.iter().position(|m| m[0] == id).expect("vertex has a component")
    }
}

pub fn connected_components(g: &Graph) -> Components {
    let n = g.vertex_count();
    let mut dsu = Dsu::new(n);
    for (u, v) in g.edges() {
        dsu.union(u as u32, v as u32);
    }
    let mut id = vec![usize::MAX; n];
    let mut root_id = vec![usize::MAX; n];
    for (v, slot_id) in id.iter_mut().enumerate() {
        let r = dsu.find(v as u32) as usize;
        if root_id[r] == usize::MAX {
            root_id[r] = v;
        }
        *slot_id = root_id[r];
    }
    let mut slot = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (v, &c) in id.iter().enumerate() {
        if slot[c] == usize::MAX {
            slot[c] = members.len();
            members.push(Vec::new());
        }
        members[slot[c]].push(v);
    }
    members.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    Components { id, members }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiameterMode {
    Exact,
    DoubleSweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Diameter {
    pub value: u32,
    /// False when `value` is only a lower bound.
    pub exact: bool,
}

/// Hop distances from `sources`, `u32::MAX` where unreachable.
pub fn bfs(g: &Graph, sources: &[usize]) -> Vec<u32> {
    let mut dist = vec![u32::MAX; g.vertex_count()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if dist[s] == u32::MAX {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            let v = v as usize;
            if dist[v] == u32::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Eccentricity of `s` and the smallest-index vertex attaining it.
fn eccentricity(
    g: &Graph,
    s: usize,
    dist: &mut [u32],
    queue: &mut VecDeque<usize>,
    touched: &mut Vec<usize>,
) -> (u32, usize) {
    dist[s] = 0;
    touched.push(s);
    queue.push_back(s);
    let (mut ecc, mut far) = (0, s);
    while let Some(u) = queue.pop_front() {
        let d = dist[u];
        if d > ecc || (d == ecc && u < far) {
            ecc = d;
            far = u;
        }
        for &v in g.neighbors(u) {
            let v = v as usize;
            if dist[v] == u32::MAX {
                dist[v] = d + 1;
                touched.push(v);
                queue.push_back(v);
            }
        }
    }
    for &t in touched.iter() {
        dist[t] = u32::MAX;
    }
    touched.clear();
    (ecc, far)
}

/// Diameter of the component whose members are given.
pub fn component_diameter(g: &Graph, component: &[usize], mode: DiameterMode) -> Result<Diameter> {
    component_diameter_capped(g, component, mode, DIAMETER_CAP)
}

pub fn component_diameter_capped(g: &Graph, component: &[usize], mode: DiameterMode, cap: usize) -> Result<Diameter> {
    let Some(&start) = component.iter().min() else {
        return Ok(Diameter { value: 0, exact: true });
    };
    let n = g.vertex_count();
    match mode {
        DiameterMode::Exact => {
            if component.len() > cap {
                return Err(Error::SizeGuard(format!(
                    "exact diameter limited to components of {cap} vertices (got {})",
                    component.len()
                )));
            }
            let value = component
                .par_iter()
                .map_init(
                    || (vec![u32::MAX; n], VecDeque::new(), Vec::new()),
                    |(dist, q, t), &s| eccentricity(g, s, dist, q, t).0,
                )
                .max()
                .unwrap_or(0);
            Ok(Diameter { value, exact: true })
        }
        DiameterMode::DoubleSweep => {
            let (mut dist, mut q, mut t) = (vec![u32::MAX; n], VecDeque::new(), Vec::new());
            let (mut best, mut from) = (0, start);
            for _ in 0..DOUBLE_SWEEP_ROUNDS {
                let (ecc, far) = eccentricity(g, from, &mut dist, &mut q, &mut t);
                if ecc <= best && from != start {
                    break;
                }
                best = best.max(ecc);
                from = far;
            }
            Ok(Diameter { value: best, exact: component.len() <= 2 })
        }
    }
}

/// Exact below `cap`, double-sweep lower bound above.
pub fn diameter_auto(g: &Graph, component: &[usize], cap: usize) -> Diameter {
    let mode = if component.len() <= cap { DiameterMode::Exact } else { DiameterMode::DoubleSweep };
    component_diameter_capped(g, component, mode, cap).expect("mode chosen within cap")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CenterClique {
    pub members: Vec<usize>,
    /// Every pair of members was confirmed adjacent.
    pub verified: bool,
}

/// Vertices with `r ≤ R/2`, checked for pairwise adjacency.
pub fn center_clique(g: &Graph) -> CenterClique {
    let half = 0.5 * g.params().radius;
    let members: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.radius_of(v) <= half).collect();
    let verified = members.par_iter().enumerate().all(|(i, &u)| members[i + 1..].iter().all(|&v| g.has_edge(u, v)));
    CenterClique { members, verified }
}

/// Hop distance to the nearest center vertex, `None` when unreachable.
pub fn distance_to_center(g: &Graph) -> Vec<Option<u32>> {
    let center = center_clique(g).members;
    bfs(g, &center).into_iter().map(|d| (d != u32::MAX).then_some(d)).collect()
}

/// A component whose induced subgraph is a simple path, listed end to end
/// starting from the smaller-index endpoint.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathComponent {
    pub vertices: Vec<usize>,
    pub in_band: bool,
}

impl PathComponent {
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InducedPaths {
    /// Path components with at least one edge, longest first.
    pub paths: Vec<PathComponent>,
    pub singletons: usize,
    pub longest_overall: usize,
    /// Longest path with every radius in `[R - c2, R - c1]`; 0 if none.
    pub longest_in_band: usize,
}

fn as_path(g: &Graph, members: &[usize]) -> Option<Vec<usize>> {
    let k = members.len();
    let degree_sum: usize = members.iter().map(|&v| g.degree(v)).sum();
    if degree_sum != 2 * (k - 1) || members.iter().any(|&v| g.degree(v) > 2) {
        return None;
    }
    let start = *members.iter().filter(|&&v| g.degree(v) <= 1).min()?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while order.len() < k {
        let next = g.neighbors(cur).iter().map(|&v| v as usize).find(|&v| v != prev)?;
        order.push(next);
        prev = cur;
        cur = next;
    }
    Some(order)
}

/// Components that are induced simple paths. With `band`, also reports the
/// longest such component lying entirely in `[R - c2, R - c1]`.
pub fn induced_path_components(g: &Graph, comps: &Components, band: Option<&BandConstants>) -> InducedPaths {
    let big_r = g.params().radius;
    let mut paths = Vec::new();
    let mut singletons = 0;
    for members in &comps.members {
        if members.len() == 1 {
            singletons += 1;
            continue;
        }
        if let Some(vertices) = as_path(g, members) {
            let in_band = band.is_some_and(|k| {
                vertices.iter().all(|&v| {
                    let r = g.radius_of(v);
                    r >= big_r - k.c2 && r <= big_r - k.c1
                })
            });
            paths.push(PathComponent { vertices, in_band });
        }
    }
    paths.sort_by(|a, b| b.vertices.len().cmp(&a.vertices.len()).then(a.vertices[0].cmp(&b.vertices[0])));
    let longest_overall = paths.first().map_or(0, PathComponent::length);
    let longest_in_band = paths.iter().filter(|p| p.in_band).map(PathComponent::length).max().unwrap_or(0);
    InducedPaths { paths, singletons, longest_overall, longest_in_band }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailWindow {
    pub min_degree: usize,
    pub max_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeStats {
    /// `histogram[k]` vertices of degree `k`.
    pub histogram: Vec<u64>,
    /// `(k, Pr[deg ≥ k])` for every `k` with a nonzero count.
    pub ccdf: Vec<(usize, f64)>,
    pub mean: f64,
    pub max: usize,
    pub window: TailWindow,
    /// Least-squares slope of `ln Pr[deg ≥ k]` against `ln k` over the
    /// window; `None` with fewer than three distinct degrees in it.
    pub slope: Option<f64>,
}

/// Degree histogram and CCDF tail fit. The default window starts at twice
/// the mean degree and runs to the maximum.
pub fn degree_stats(g: &Graph, window: Option<TailWindow>) -> DegreeStats {
    let n = g.vertex_count();
    let max = (0..n).map(|v| g.degree(v)).max().unwrap_or(0);
    let mut histogram = vec![0u64; max + 1];
    for v in 0..n {
        histogram[g.degree(v)] += 1;
    }
    let mean = if n == 0 { 0.0 } else { 2.0 * g.edge_count() as f64 / n as f64 };
    let mut ccdf = Vec::new();
    let mut above = n as u64;
    for (k, &c) in histogram.iter().enumerate() {
        if c > 0 {
            ccdf.push((k, above as f64 / n as f64));
        }
        above -= c;
    }
    let window = window.unwrap_or(TailWindow { min_degree: ((2.0 * mean).ceil() as usize).max(1), max_degree: max });
    let pts: Vec<(f64, f64)> = ccdf
        .iter()
        .filter(|(k, _)| *k >= window.min_degree.max(1) && *k <= window.max_degree)
        .map(|&(k, p)| ((k as f64).ln(), p.ln()))
        .collect();
    let slope = (pts.len() >= 3).then(|| {
        let m = pts.len() as f64;
        let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
        let (mx, my) = (sx / m, sy / m);
        let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
        sxy / sxx
    });
    DegreeStats { histogram, ccdf, mean, max, window, slope }
}

/// Summary statistics of a graph's component structure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentStats {
    pub sizes: Vec<usize>,
    pub giant_size: usize,
    pub second_size: usize,
    pub giant_diameter: Diameter,
    /// Exact diameters of the non-giant components with at least two
    /// vertices, in size order.
    pub other_diameters: Vec<u32>,
    pub center_clique_size: usize,
    pub center_clique_verified: bool,
    pub longest_induced_path_overall: usize,
    pub longest_induced_path_in_band: usize,
}

pub fn component_stats(g: &Graph, band: &BandConstants, cap: usize) -> ComponentStats {
    let comps = connected_components(g);
    let giant_diameter = comps.members.first().map_or(Diameter { value: 0, exact: true }, |m| diameter_auto(g, m, cap));
    let other_diameters =
        comps.members.iter().skip(1).filter(|m| m.len() > 1).map(|m| diameter_auto(g, m, cap).value).collect();
    let clique = center_clique(g);
    let paths = induced_path_components(g, &comps, Some(band));
    ComponentStats {
        sizes: comps.sizes(),
        giant_size: comps.giant_size(),
        second_size: comps.second_size(),
        giant_diameter,
        other_diameters,
        center_clique_size: clique.members.len(),
        center_clique_verified: clique.verified,
        longest_induced_path_overall: paths.longest_overall,
        longest_induced_path_in_band: paths.longest_in_band,
    }
}
