//! Seeded Monte-Carlo oracle for `μ(S)`.
//!
//! The disk is cut into radial strata. Each stratum is sampled from the model
//! density restricted to the stratum radii and to an angular sector that is
//! guaranteed to contain every member of the region, and the per-stratum hit
//! frequencies are recombined with the exact stratum masses. Regions of
//! measure `~1/n` thus get many hits instead of a handful.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::mu_ball_origin_exact;
use super::region::{Arc, Compiled, RegionSpec};
use crate::error::{Error, Result};
use crate::geometry::{normalize_angle, Kernel, ModelParams};
use crate::sampler::{quantile_unchecked, substream};

/// Two-sided 99% standard normal quantile.
pub const Z99: f64 = 2.575_829_303_548_900_4;
pub const MIN_SAMPLES: u64 = 10_000;
/// Samples drawn per independent stream; the merged estimate does not depend
/// on how shards are scheduled.
const SHARD: u64 = 1 << 16;
const STRATUM_WIDTH: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub half_width: f64,
    pub samples: u64,
    pub seed: u64,
}

impl McEstimate {
    pub fn lower(&self) -> f64 {
        (self.mean - self.half_width).max(0.0)
    }

    pub fn upper(&self) -> f64 {
        (self.mean + self.half_width).min(1.0)
    }
}

struct Stratum {
    lo: f64,
    hi: f64,
    f_lo: f64,
    f_hi: f64,
    arc: Arc,
    mass: f64,
}

fn strata(region: &Compiled, params: &ModelParams) -> Vec<Stratum> {
    let (lo, hi) = region.radial_support(params.radius);
    if !(hi > lo) {
        return Vec::new();
    }
    let k = ((hi - lo) / STRATUM_WIDTH).ceil().max(1.0) as usize;
    (0..k)
        .filter_map(|s| {
            let a = lo + (hi - lo) * s as f64 / k as f64;
            let b = if s + 1 == k { hi } else { lo + (hi - lo) * (s + 1) as f64 / k as f64 };
            let arc = region.arc(a, b);
            let f_lo = mu_ball_origin_exact(a, params).ok()?;
            let f_hi = mu_ball_origin_exact(b, params).ok()?;
            let mass = (f_hi - f_lo) * (arc.half / std::f64::consts::PI);
            (mass > 0.0).then_some(Stratum { lo: a, hi: b, f_lo, f_hi, arc, mass })
        })
        .collect()
}

/// Splits `total` draws across strata in proportion to their bounding mass.
fn allocate(strata: &[Stratum], total: u64) -> Vec<u64> {
    let m: f64 = strata.iter().map(|s| s.mass).sum();
    strata.iter().map(|s| ((total as f64 * s.mass / m).round() as u64).max(2)).collect()
}

fn count_hits(region: &Compiled, st: &Stratum, params: &ModelParams, draws: u64, seed: u64, stream: u64) -> u64 {
    let mut rng = substream(seed, stream);
    let span = st.f_hi - st.f_lo;
    let mut hits = 0;
    for _ in 0..draws {
        let u_r: f64 = rng.random();
        let u_t: f64 = rng.random();
        let r = quantile_unchecked(st.f_lo + u_r * span, params.alpha, params.radius).clamp(st.lo, st.hi);
        let theta = if st.arc.is_full() {
            std::f64::consts::TAU * u_t
        } else {
            normalize_angle(st.arc.center + st.arc.half * (2.0 * u_t - 1.0))
        };
        let p = Kernel { r, theta, sinh_r: r.sinh() };
        hits += region.contains(&p) as u64;
    }
    hits
}

/// Stratified estimate of `μ(region)` with a 99% normal-approximation
/// half-width. Bit-identical for fixed `(region, samples, seed)`.
pub fn mu_monte_carlo(region: &RegionSpec, samples: u64, seed: u64, params: &ModelParams) -> Result<McEstimate> {
    if samples < MIN_SAMPLES {
        return Err(Error::Precondition(format!("Monte-Carlo needs at least {MIN_SAMPLES} samples (got {samples})")));
    }
    region.validate(params)?;
    let compiled = region.compile();
    let strata = strata(&compiled, params);
    if strata.is_empty() {
        return Ok(McEstimate { mean: 0.0, half_width: 0.0, samples: 0, seed });
    }
    let alloc = allocate(&strata, samples);

    let jobs: Vec<(usize, u64, u64)> = alloc
        .iter()
        .enumerate()
        .flat_map(|(s, &n)| (0..n.div_ceil(SHARD)).map(move |k| (s, k, (n - k * SHARD).min(SHARD))))
        .collect();
    let counts: Vec<(usize, u64)> = jobs
        .par_iter()
        .map(|&(s, k, n)| {
            let stream = ((s as u64) << 32) | k;
            (s, count_hits(&compiled, &strata[s], params, n, seed, stream))
        })
        .collect();
    let mut hits = vec![0u64; strata.len()];
    for (s, h) in counts {
        hits[s] += h;
    }

    let mut mean = 0.0;
    let mut var = 0.0;
    let mut saturated = true;
    for ((st, &n), &h) in strata.iter().zip(&alloc).zip(&hits) {
        let p = h as f64 / n as f64;
        mean += st.mass * p;
        // Adding one pseudo-hit and one pseudo-miss keeps the interval
        // honest for strata where every draw agreed.
        let q = (h as f64 + 1.0) / (n as f64 + 2.0);
        var += st.mass * st.mass * q * (1.0 - q) / n as f64;
        saturated &= h == n && st.arc.is_full();
    }
    if saturated {
        // Every draw hit and no angular restriction: the region covers the
        // whole support, whose mass is known exactly.
        let (lo, hi) = compiled.radial_support(params.radius);
        mean = mu_ball_origin_exact(hi, params)? - mu_ball_origin_exact(lo, params)?;
        var = 0.0;
    }
    Ok(McEstimate { mean: mean.clamp(0.0, 1.0), half_width: Z99 * var.sqrt(), samples: alloc.iter().sum(), seed })
}

/// Plain hit-frequency estimate with points drawn from the full model density.
/// Only useful for regions of appreciable measure.
pub fn mu_monte_carlo_direct(region: &RegionSpec, samples: u64, seed: u64, params: &ModelParams) -> Result<McEstimate> {
    if samples < MIN_SAMPLES {
        return Err(Error::Precondition(format!("Monte-Carlo needs at least {MIN_SAMPLES} samples (got {samples})")));
    }
    region.validate(params)?;
    let compiled = region.compile();
    let hits: u64 = (0..samples.div_ceil(SHARD))
        .into_par_iter()
        .map(|k| {
            let n = (samples - k * SHARD).min(SHARD);
            let mut rng = substream(seed, k);
            (0..n)
                .filter(|_| {
                    let p = crate::sampler::sample_vertex(&mut rng, params);
                    compiled.contains(&Kernel::new(&p))
                })
                .count() as u64
        })
        .sum();
    let p = hits as f64 / samples as f64;
    Ok(McEstimate { mean: p, half_width: Z99 * (p * (1.0 - p) / samples as f64).sqrt(), samples, seed })
}
