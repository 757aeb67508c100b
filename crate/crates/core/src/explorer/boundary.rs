use std::collections::VecDeque;
use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Step budget for the longest-path search in a cyclic component.
const DFS_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryConfig {
    pub xi: f64,
    /// Length bound `K ln n`.
    pub k_length: f64,
    /// Spread bound `K′ ln n / n`.
    pub k_spread: f64,
}

impl Default for BoundaryConfig {
    fn default() -> Self {
        BoundaryConfig { xi: 1.0, k_length: 10.0, k_spread: 10.0 }
    }
}

/// A connected piece of the subgraph induced on `r > R - ξ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryComponent {
    pub size: usize,
    /// Longest simple path found, in edges.
    pub longest_path: usize,
    /// False when the search budget ran out; `longest_path` is then a lower
    /// bound and `size - 1` an upper bound.
    pub exact: bool,
    /// Smallest arc covering every vertex of the component, capped at `π`.
    /// Every path inside the component spreads at most this much.
    pub spread: f64,
    pub length_violation: bool,
    pub spread_violation: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryAudit {
    pub config: BoundaryConfig,
    pub vertices: usize,
    pub length_bound: f64,
    pub spread_bound: f64,
    pub components: Vec<BoundaryComponent>,
    pub max_length: usize,
    pub max_spread: f64,
    pub length_violations: usize,
    pub spread_violations: usize,
    pub all_exact: bool,
}

/// Covering arc of a set of angles.
fn spread(mut thetas: Vec<f64>) -> f64 {
    if thetas.len() < 2 {
        return 0.0;
    }
    thetas.sort_by(f64::total_cmp);
    let wrap = thetas[0] + TAU - thetas[thetas.len() - 1];
    let max_gap = thetas.windows(2).map(|w| w[1] - w[0]).fold(wrap, f64::max);
    (TAU - max_gap).clamp(0.0, PI)
}

/// BFS inside `members` (flagged by `inside`); farthest vertex and its distance.
fn farthest(g: &Graph, from: usize, inside: &[bool]) -> (usize, usize) {
    let mut dist = std::collections::HashMap::from([(from, 0usize)]);
    let mut queue = VecDeque::from([from]);
    let (mut best, mut far) = (0, from);
    while let Some(u) = queue.pop_front() {
        let d = dist[&u];
        if d > best || (d == best && u < far) {
            best = d;
            far = u;
        }
        for &w in g.neighbors(u) {
            let w = w as usize;
            if inside[w] && !dist.contains_key(&w) {
                dist.insert(w, d + 1);
                queue.push_back(w);
            }
        }
    }
    (far, best)
}

struct PathSearch<'a> {
    g: &'a Graph,
    inside: &'a [bool],
    on_path: Vec<bool>,
    best: usize,
    steps: u64,
    target: usize,
}

impl PathSearch<'_> {
    fn dfs(&mut self, u: usize, len: usize) {
        self.best = self.best.max(len);
        if self.best >= self.target {
            return;
        }
        for &w in self.g.neighbors(u) {
            let w = w as usize;
            if !self.inside[w] || self.on_path[w] {
                continue;
            }
            self.steps += 1;
            if self.steps > DFS_BUDGET {
                return;
            }
            self.on_path[w] = true;
            self.dfs(w, len + 1);
            self.on_path[w] = false;
        }
    }
}

/// Longest simple path in a component: exact for trees via two sweeps,
/// exhaustive search under a budget otherwise.
fn longest_path(g: &Graph, members: &[usize], inside: &[bool]) -> (usize, bool) {
    let edges: usize =
        members.iter().map(|&u| g.neighbors(u).iter().filter(|&&w| inside[w as usize]).count()).sum::<usize>() / 2;
    if edges + 1 == members.len() {
        let (a, _) = farthest(g, members[0], inside);
        let (_, d) = farthest(g, a, inside);
        return (d, true);
    }
    let mut search =
        PathSearch { g, inside, on_path: vec![false; g.vertex_count()], best: 0, steps: 0, target: members.len() - 1 };
    for &s in members {
        search.on_path[s] = true;
        search.dfs(s, 0);
        search.on_path[s] = false;
        if search.steps > DFS_BUDGET || search.best >= search.target {
            break;
        }
    }
    let exact = search.steps <= DFS_BUDGET || search.best >= search.target;
    (search.best, exact)
}

/// Paths confined to `{v : r_v > R - ξ}`: per connected piece of that
/// region, the longest simple path and the angular spread, checked against
/// `K ln n` and `K′ ln n / n`.
pub fn boundary_path_audit(g: &Graph, config: &BoundaryConfig) -> Result<BoundaryAudit> {
    if !(config.xi > 0.0) {
        return Err(Error::InvalidParameter(format!("xi must be positive (got {})", config.xi)));
    }
    let params = g.params();
    let floor = params.radius - config.xi;
    let n = g.vertex_count();
    let inside: Vec<bool> = (0..n).map(|v| g.radius_of(v) > floor).collect();
    let ln_n = (params.n as f64).ln();
    let length_bound = config.k_length * ln_n;
    let spread_bound = config.k_spread * ln_n / params.n as f64;

    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for s in 0..n {
        if !inside[s] || seen[s] {
            continue;
        }
        let mut members = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < members.len() {
            let u = members[i];
            i += 1;
            for &w in g.neighbors(u) {
                let w = w as usize;
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    members.push(w);
                }
            }
        }
        members.sort_unstable();
        let (longest, exact) = longest_path(g, &members, &inside);
        let spread = spread(members.iter().map(|&v| g.point(v).theta).collect());
        components.push(BoundaryComponent {
            size: members.len(),
            longest_path: longest,
            exact,
            spread,
            length_violation: longest as f64 > length_bound,
            spread_violation: spread > spread_bound,
        });
    }
    components.sort_by(|a, b| b.longest_path.cmp(&a.longest_path).then(b.size.cmp(&a.size)));
    Ok(BoundaryAudit {
        config: *config,
        vertices: inside.iter().filter(|&&x| x).count(),
        length_bound,
        spread_bound,
        max_length: components.iter().map(|c| c.longest_path).max().unwrap_or(0),
        max_spread: components.iter().map(|c| c.spread).fold(0.0, f64::max),
        length_violations: components.iter().filter(|c| c.length_violation).count(),
        spread_violations: components.iter().filter(|c| c.spread_violation).count(),
        all_exact: components.iter().all(|c| c.exact),
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explorer::tests::graph_of;
    use crate::geometry::{ModelParams, PolarPoint};
    use crate::graph::build_fast;
    use crate::sampler::sample_uniform_model;

    #[test]
    fn empty_when_nothing_near_boundary() {
        let p = ModelParams::new(0.75, 0.0, 1000).unwrap();
        let g = graph_of(vec![PolarPoint::new(1.0, 0.0), PolarPoint::new(p.radius / 2.0, 1.0)], p);
        let a = boundary_path_audit(&g, &BoundaryConfig::default()).unwrap();
        assert!(a.components.is_empty());
        assert_eq!(a.max_length, 0);
    }

    #[test]
    fn spread_of_angles() {
        assert_eq!(spread(vec![1.0]), 0.0);
        assert!((spread(vec![0.1, TAU - 0.1]) - 0.2).abs() < 1e-12);
        assert_eq!(spread(vec![0.0, 2.0, 4.0]), PI);
    }

    #[test]
    fn generated_graph_audit() {
        let p = ModelParams::new(0.75, 0.0, 1 << 13).unwrap();
        let g = build_fast(sample_uniform_model(&p, 2)).unwrap();
        let a = boundary_path_audit(&g, &BoundaryConfig::default()).unwrap();
        assert!(a.vertices > 0);
        for c in &a.components {
            assert!(c.spread >= 0.0 && c.spread <= PI);
            assert!(c.longest_path < c.size);
        }
        assert!(a.all_exact);
        assert_eq!(a.spread_violations, 0);
    }

    #[test]
    fn cycle_longest_path() {
        let p = ModelParams::new(0.75, 0.0, 1000).unwrap();
        let r = p.radius - 0.2;
        // four points close together form a clique: longest path 3
        let pts = (0..4).map(|i| PolarPoint::new(r, 1.0 + i as f64 * 1e-7)).collect();
        let g = graph_of(pts, p);
        let a = boundary_path_audit(&g, &BoundaryConfig::default()).unwrap();
        assert_eq!(a.components.len(), 1);
        assert_eq!(a.max_length, 3);
        assert!(a.components[0].exact);
    }
}
