//! Band schedules, greedy descent toward the center, and the phased
//! exposure search run on a realized graph.
//!
//! All choices among candidates break ties by smallest vertex index, so
//! every outcome is a deterministic function of the graph and configuration.

mod boundary;
mod expose;
mod schedule;

pub use boundary::{boundary_path_audit, BoundaryAudit, BoundaryComponent, BoundaryConfig};
pub use expose::{expose, ExposeConfig, ExposeOutcome, RegionEvent, Verdict};
pub use schedule::{c0, BandSchedule};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Greedy band descent from `v`: each step moves to the smallest-index
/// neighbor exactly one outer band lower, until a vertex with `r ≤ R_{i0}` is
/// reached. `None` when some step has no candidate.
pub fn find_center_path(g: &Graph, v: usize, schedule: &BandSchedule) -> Result<Option<Vec<usize>>> {
    let r_i0 = schedule.r_i0();
    let r_v = g.radius_of(v);
    if r_v <= r_i0 {
        return Err(Error::Precondition(format!("center path needs r_v > R_i0 = {r_i0} (got {r_v})")));
    }
    let mut path = vec![v];
    let mut cur = v;
    loop {
        let band = schedule.band_of(g.radius_of(cur)).expect("r > R_i0 > R/2");
        // (R_{band-1}, R_band]
        let (lo, hi) = (schedule.r_outer(band - 1), schedule.r_outer(band));
        let next = g.neighbors(cur).iter().map(|&w| w as usize).find(|&w| {
            let r = g.radius_of(w);
            r > lo && r <= hi
        });
        match next {
            None => return Ok(None),
            Some(w) => {
                path.push(w);
                if g.radius_of(w) <= r_i0 {
                    return Ok(Some(path));
                }
                cur = w;
            }
        }
    }
}

/// Position of `r` on a decreasing ladder: `k` with `L[k+1] < r ≤ L[k]`,
/// `L.len() - 1` once `r ≤ R/2` (the last rung).
fn rung(ladder: &[f64], r: f64) -> usize {
    let last = ladder.len() - 1;
    if r <= ladder[last] {
        return last;
    }
    // ladder is decreasing; count rungs that are ≥ r
    ladder.iter().take_while(|&&x| x >= r).count().saturating_sub(1)
}

/// Descent from `v` (with `r_v` at most the inner entry radius) through the
/// inner ladder to `B_O(R/2)`. Each step moves to a neighbor on the nearest
/// lower rung that has one, smallest index first. Returns `[v]` when `v` is
/// already central.
pub fn descend_inner(g: &Graph, v: usize, schedule: &BandSchedule) -> Result<Option<Vec<usize>>> {
    let entry = schedule.inner_entry();
    let r_v = g.radius_of(v);
    if r_v > entry {
        return Err(Error::Precondition(format!("inner descent needs r_v <= {entry} (got {r_v})")));
    }
    let ladder = schedule.inner_ladder();
    let last = ladder.len() - 1;
    let mut path = vec![v];
    let mut cur = v;
    let mut level = rung(&ladder, r_v);
    while level < last {
        let best = g
            .neighbors(cur)
            .iter()
            .map(|&w| (rung(&ladder, g.radius_of(w as usize)), w as usize))
            .filter(|&(k, _)| k > level)
            .min_by_key(|&(k, w)| (k, w));
        match best {
            None => return Ok(None),
            Some((k, w)) => {
                path.push(w);
                cur = w;
                level = k;
            }
        }
    }
    Ok(Some(path))
}

/// Whether `path` is a walk in `g` under the distance predicate.
pub fn verify_path(g: &Graph, path: &[usize]) -> bool {
    path.windows(2)
        .all(|w| g.has_edge(w[0], w[1]) && crate::geometry::is_adjacent(&g.point(w[0]), &g.point(w[1]), g.params()))
}
