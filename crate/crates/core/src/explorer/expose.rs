use std::collections::HashMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{descend_inner, find_center_path, verify_path, BandSchedule};
use crate::analysis::bfs;
use crate::error::{Error, Result};
use crate::geometry::{angular_difference, ModelParams};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExposeConfig {
    /// Boundary margin `ξ`.
    pub xi: f64,
    /// Slack `ε` in the window exponent.
    pub epsilon: f64,
    /// Angular width added per phase; `(ln n)^{C0+ε}/n` when unset.
    pub window_width: Option<f64>,
    /// `C″` in the phase budget `⌈C″ ln n⌉`.
    pub phase_constant: f64,
    pub max_phases: Option<usize>,
    pub band_depth_override: Option<usize>,
}

impl Default for ExposeConfig {
    fn default() -> Self {
        ExposeConfig {
            xi: 1.0,
            epsilon: 0.1,
            window_width: None,
            phase_constant: 2.0,
            max_phases: None,
            band_depth_override: None,
        }
    }
}

impl ExposeConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.xi > 0.0 && self.xi.is_finite()) {
            return Err(Error::InvalidParameter(format!("xi must be positive (got {})", self.xi)));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidParameter(format!("epsilon must be positive (got {})", self.epsilon)));
        }
        if let Some(w) = self.window_width {
            if !(w > 0.0 && w <= PI) {
                return Err(Error::InvalidParameter(format!("window width {w} outside (0, pi]")));
            }
        }
        if !(self.phase_constant > 0.0) {
            return Err(Error::InvalidParameter("phase constant must be positive".into()));
        }
        if self.max_phases == Some(0) {
            return Err(Error::InvalidParameter("max phases must be >= 1".into()));
        }
        Ok(())
    }

    pub fn schedule(&self, params: &ModelParams) -> Result<BandSchedule> {
        BandSchedule::with_override(params, self.band_depth_override)
    }

    /// Window width and, if the formula exceeded `π`, a note recording the clamp.
    pub fn window(&self, params: &ModelParams, schedule: &BandSchedule) -> (f64, Option<String>) {
        if let Some(w) = self.window_width {
            return (w, None);
        }
        let n = params.n as f64;
        let raw = n.ln().powf(schedule.c0 + self.epsilon) / n;
        if raw > PI {
            (PI, Some(format!("window width (ln n)^(C0+eps)/n = {raw:.3e} clamped to pi")))
        } else {
            (raw, None)
        }
    }

    pub fn phases(&self, params: &ModelParams) -> usize {
        self.max_phases.unwrap_or_else(|| (self.phase_constant * (params.n as f64).ln()).ceil().max(1.0) as usize)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Success,
    NoPath,
    Failure,
}

/// One exposure step: the region `A^j(R_{i0}) ∪ A^{j+1}(R_ℓ)` and what the
/// restricted search found in it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionEvent {
    pub phase: usize,
    pub ell: Option<usize>,
    pub inner_floor: f64,
    pub inner_half_width: f64,
    pub outer_floor: f64,
    pub outer_half_width: f64,
    pub reached: usize,
    pub action: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExposeOutcome {
    pub query: usize,
    pub verdict: Verdict,
    /// From the query to a vertex with `r ≤ R/2`; empty unless successful.
    pub path: Vec<usize>,
    pub phase_reached: usize,
    pub vertices_touched: usize,
    pub region_trace: Vec<RegionEvent>,
    pub window_width: f64,
    pub max_phases: usize,
    /// The last leg was found by plain breadth-first search after the
    /// inner descent got stuck.
    pub fallback: bool,
    pub notes: Vec<String>,
}

impl ExposeOutcome {
    /// Success paths start at the query, are edges of `g` under the distance
    /// predicate, and end inside `B_O(R/2)`.
    pub fn verify(&self, g: &Graph) -> bool {
        match self.verdict {
            Verdict::Success => {
                self.path.first() == Some(&self.query)
                    && verify_path(g, &self.path)
                    && self.path.last().is_some_and(|&v| g.radius_of(v) <= 0.5 * g.params().radius)
            }
            _ => self.path.is_empty(),
        }
    }
}

struct Run<'a> {
    g: &'a Graph,
    schedule: &'a BandSchedule,
    out: ExposeOutcome,
}

/// Shortest path (smallest indices on ties) from `from` to any center vertex.
fn bfs_to_center(g: &Graph, from: usize) -> Option<Vec<usize>> {
    let half = 0.5 * g.params().radius;
    let dist = bfs(g, &[from]);
    let target = (0..g.vertex_count())
        .filter(|&v| dist[v] != u32::MAX && g.radius_of(v) <= half)
        .min_by_key(|&v| (dist[v], v))?;
    let mut path = vec![target];
    let mut cur = target;
    while cur != from {
        cur = g
            .neighbors(cur)
            .iter()
            .map(|&w| w as usize)
            .find(|&w| dist[w] != u32::MAX && dist[w] + 1 == dist[cur])
            .expect("bfs predecessor exists");
        path.push(cur);
    }
    path.reverse();
    Some(path)
}

impl Run<'_> {
    fn event(
        &mut self,
        phase: usize,
        ell: Option<usize>,
        halves: (f64, f64),
        reached: usize,
        action: impl Into<String>,
    ) {
        let s = self.schedule;
        self.out.region_trace.push(RegionEvent {
            phase,
            ell,
            inner_floor: s.r_i0(),
            inner_half_width: halves.0,
            outer_floor: ell.map_or(s.r_i0(), |l| s.r_outer(l)),
            outer_half_width: halves.1,
            reached,
            action: action.into(),
        });
    }

    /// Finishes a path whose last vertex has `r ≤ R_{i0}` by descending to
    /// the center.
    fn complete(mut self, mut prefix: Vec<usize>) -> ExposeOutcome {
        let entry = *prefix.last().expect("nonempty prefix");
        let leg = match descend_inner(self.g, entry, self.schedule).expect("entry below the inner radius") {
            Some(p) => Some(p),
            None => {
                let p = bfs_to_center(self.g, entry);
                if p.is_some() {
                    self.out.fallback = true;
                    self.out
                        .notes
                        .push(format!("inner descent from {entry} stalled; finished by breadth-first search"));
                }
                p
            }
        };
        match leg {
            Some(p) => {
                prefix.extend_from_slice(&p[1..]);
                self.out.path = prefix;
                self.out.verdict = Verdict::Success;
            }
            None => {
                self.out.verdict = Verdict::NoPath;
                self.out.notes.push(format!("vertex {entry} below R_i0 does not reach the center"));
            }
        }
        self.out
    }
}

/// Restricted breadth-first search from `q` inside a region, layer by layer
/// with each layer in index order. Stops at the first vertex with a neighbor
/// below `R_{i0}`.
struct Exposure {
    parent: HashMap<usize, usize>,
    depth: HashMap<usize, usize>,
    entry: Option<(usize, usize)>,
}

impl Exposure {
    fn run(g: &Graph, q: usize, r_i0: f64, inside: impl Fn(usize) -> bool) -> Self {
        let mut parent = HashMap::from([(q, q)]);
        let mut depth = HashMap::from([(q, 0)]);
        let mut layer = vec![q];
        let mut d = 0;
        while !layer.is_empty() {
            for &u in &layer {
                let below = g.neighbors(u).iter().map(|&w| w as usize).find(|&w| g.radius_of(w) <= r_i0);
                if let Some(y) = below {
                    return Exposure { parent, depth, entry: Some((u, y)) };
                }
            }
            d += 1;
            let mut next = Vec::new();
            for &u in &layer {
                for &w in g.neighbors(u) {
                    let w = w as usize;
                    if !parent.contains_key(&w) && inside(w) {
                        parent.insert(w, u);
                        depth.insert(w, d);
                        next.push(w);
                    }
                }
            }
            next.sort_unstable();
            layer = next;
        }
        Exposure { parent, depth, entry: None }
    }

    fn path_to(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while self.parent[&cur] != cur {
            cur = self.parent[&cur];
            path.push(cur);
        }
        path.reverse();
        path
    }
}

/// Phased exposure search from `q` toward the center of the disk.
///
/// Queries with `r_Q ≤ R_{i0}` go straight to the inner descent. Otherwise a
/// center path from `Q` is tried first; then for phases `j = 0, 1, …` and
/// `ℓ` from `ℓ0` down to `i0 + 1` the search is confined to
/// `A^j(R_{i0}) ∪ A^{j+1}(R_ℓ)`, where `A^j(ρ)` holds the vertices with
/// `r > ρ` within `min(π, (j+1)w)` of `θ_Q`. A reached vertex adjacent to
/// `B_O(R_{i0})` ends the search at once. Otherwise the nearest reached
/// vertex of `A^{j+1}(R_ℓ) \ A^j(R_{i0})` with `r ≤ R - ξ` becomes the
/// terminal, and a center path from it is attempted before the next phase.
pub fn expose(g: &Graph, q: usize, config: &ExposeConfig, schedule: &BandSchedule) -> Result<ExposeOutcome> {
    config.validate()?;
    if q >= g.vertex_count() {
        return Err(Error::InvalidParameter(format!("query {q} is not a vertex")));
    }
    let params = *g.params();
    let (w, window_note) = config.window(&params, schedule);
    let max_phases = config.phases(&params);
    let mut run = Run {
        g,
        schedule,
        out: ExposeOutcome {
            query: q,
            verdict: Verdict::Failure,
            path: Vec::new(),
            phase_reached: 0,
            vertices_touched: 0,
            region_trace: Vec::new(),
            window_width: w,
            max_phases,
            fallback: false,
            notes: schedule.clamp_note.iter().cloned().chain(window_note).collect(),
        },
    };
    let r_i0 = schedule.r_i0();
    let theta_q = g.point(q).theta;

    if g.radius_of(q) <= r_i0 {
        run.event(0, None, (0.0, 0.0), 1, "query below R_i0: inner descent");
        return Ok(run.complete(vec![q]));
    }
    if let Some(cp) = find_center_path(g, q, schedule)? {
        run.event(0, None, (0.0, 0.0), cp.len(), "center path from query");
        return Ok(run.complete(cp));
    }

    let ell0 = schedule.ell0(config.xi).max(schedule.i0 + 1);
    let boundary = params.radius - config.xi;
    for j in 0..max_phases {
        run.out.phase_reached = j;
        let inner_half = (w * (j + 1) as f64).min(PI);
        let outer_half = (w * (j + 2) as f64).min(PI);
        let mut terminal_tried = false;
        for ell in (schedule.i0 + 1..=ell0).rev() {
            let r_ell = schedule.r_outer(ell);
            let in_inner =
                |v: usize| g.radius_of(v) > r_i0 && angular_difference(g.point(v).theta, theta_q) <= inner_half;
            let in_outer =
                |v: usize| g.radius_of(v) > r_ell && angular_difference(g.point(v).theta, theta_q) <= outer_half;
            let ex = Exposure::run(g, q, r_i0, |v| in_inner(v) || in_outer(v));
            let reached = ex.parent.len();
            run.out.vertices_touched += reached;

            if let Some((u, y)) = ex.entry {
                run.event(j, Some(ell), (inner_half, outer_half), reached, format!("entry at {y} via {u}"));
                let mut path = ex.path_to(u);
                path.push(y);
                return Ok(run.complete(path));
            }
            let terminal = ex
                .depth
                .iter()
                .filter(|&(&v, _)| in_outer(v) && !in_inner(v) && g.radius_of(v) <= boundary)
                .map(|(&v, &d)| (d, v))
                .min();
            let Some((_, t)) = terminal else {
                run.event(j, Some(ell), (inner_half, outer_half), reached, "no terminal");
                continue;
            };
            terminal_tried = true;
            match find_center_path(g, t, schedule)? {
                Some(cp) => {
                    run.event(j, Some(ell), (inner_half, outer_half), reached, format!("terminal {t}: center path"));
                    let mut path = ex.path_to(t);
                    path.extend_from_slice(&cp[1..]);
                    return Ok(run.complete(path));
                }
                None => {
                    run.event(j, Some(ell), (inner_half, outer_half), reached, format!("terminal {t}: no center path"));
                    break;
                }
            }
        }
        if !terminal_tried {
            run.out.verdict = Verdict::NoPath;
            return Ok(run.out);
        }
        if inner_half >= PI {
            run.out.notes.push(format!("window saturated at phase {j}; later phases repeat it"));
            return Ok(run.out);
        }
    }
    run.out.notes.push(format!("phase budget {max_phases} exhausted"));
    Ok(run.out)
}
