//! Vertex sets for the uniform n-vertex model and its Poissonized variant.
//!
//! Vertex `i` is drawn from its own ChaCha stream keyed by `(seed, i)`, so a
//! point set is identical however the generation is split across threads.

use std::f64::consts::TAU;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ModelParams, PolarPoint};

/// Stream reserved for the Poisson point count.
const COUNT_STREAM: u64 = u64::MAX;
/// Probe `j` drawn from the model uses stream `PROBE_STREAM_TOP - j`.
const PROBE_STREAM_TOP: u64 = u64::MAX - 1;

/// Exponent in the probe cap `m ≤ n^0.45`.
pub const PROBE_CAP_EXPONENT: f64 = 0.45;

/// Independent generator for stream `stream` under `seed`.
pub fn substream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleModel {
    Uniform,
    Poisson,
}

impl SampleModel {
    pub fn as_str(&self) -> &'static str {
        match self {
            SampleModel::Uniform => "uniform",
            SampleModel::Poisson => "poisson",
        }
    }
}

impl std::str::FromStr for SampleModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(SampleModel::Uniform),
            "poisson" => Ok(SampleModel::Poisson),
            other => Err(Error::InvalidParameter(format!("unknown model '{other}' (expected uniform or poisson)"))),
        }
    }
}

/// How the point count was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    Fixed,
    PoissonInversion,
    PoissonPtrs,
}

/// A realized point set plus any added probe vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub points: Vec<PolarPoint>,
    pub probes: Vec<PolarPoint>,
    pub model: SampleModel,
    pub params: ModelParams,
    pub seed: u64,
    pub count_method: CountMethod,
}

impl SampleSet {
    /// Model points followed by probes; the vertex order used by graphs.
    pub fn all_points(&self) -> impl Iterator<Item = &PolarPoint> {
        self.points.iter().chain(self.probes.iter())
    }

    pub fn vertex_count(&self) -> usize {
        self.points.len() + self.probes.len()
    }

    pub fn is_probe(&self, v: usize) -> bool {
        v >= self.points.len() && v < self.vertex_count()
    }

    /// Largest number of probes accepted for this `n`.
    pub fn probe_cap(&self) -> usize {
        (self.params.n as f64).powf(PROBE_CAP_EXPONENT).floor() as usize
    }

    /// Appends a probe at fixed coordinates.
    pub fn add_probe(&mut self, probe: PolarPoint) -> Result<usize> {
        if self.probes.len() + 1 > self.probe_cap() {
            return Err(Error::Precondition(format!(
                "probe cap exceeded: at most {} probes allowed for n = {}",
                self.probe_cap(),
                self.params.n
            )));
        }
        if !(probe.r >= 0.0 && probe.r <= self.params.radius) {
            return Err(Error::InvalidParameter(format!(
                "probe radius {} outside [0, R = {}]",
                probe.r, self.params.radius
            )));
        }
        self.probes.push(PolarPoint::new(probe.r, probe.theta));
        Ok(self.vertex_count() - 1)
    }

    /// Appends a probe drawn from the model density on its own stream.
    pub fn add_random_probe(&mut self) -> Result<usize> {
        let j = self.probes.len() as u64;
        let mut rng = substream(self.seed, PROBE_STREAM_TOP - j);
        let p = sample_vertex(&mut rng, &self.params);
        self.add_probe(p)
    }
}

/// Inverse of the radial CDF `F(r) = (cosh αr - 1)/(cosh αR - 1)`.
pub fn radial_quantile(u: f64, params: &ModelParams) -> Result<f64> {
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::Domain(format!("quantile level {u} outside [0, 1]")));
    }
    Ok(quantile_unchecked(u, params.alpha, params.radius))
}

/// `(2/α) asinh(√u sinh(αR/2))`, the half-angle form of
/// `acosh(1 + u (cosh αR - 1))/α`; exact near `u = 0` where the latter cancels.
#[inline]
pub(crate) fn quantile_unchecked(u: f64, alpha: f64, radius: f64) -> f64 {
    if u >= 1.0 {
        return radius;
    }
    let r = (2.0 / alpha) * (u.sqrt() * (0.5 * alpha * radius).sinh()).asinh();
    r.min(radius)
}

/// Draws one point: first the angle, then the radius.
pub fn sample_vertex<G: RngCore + ?Sized>(rng: &mut G, params: &ModelParams) -> PolarPoint {
    let u_theta: f64 = rng.random();
    let u_r: f64 = rng.random();
    let theta = TAU * u_theta;
    let mut r = quantile_unchecked(u_r, params.alpha, params.radius);
    // u_r < 1 but the quantile can still round up to R
    if r >= params.radius {
        r = params.radius.next_down();
    }
    PolarPoint { r, theta: if theta >= TAU { 0.0 } else { theta } }
}

fn sample_points(params: &ModelParams, seed: u64, count: usize) -> Vec<PolarPoint> {
    (0..count as u64).into_par_iter().map(|i| sample_vertex(&mut substream(seed, i), params)).collect()
}

/// Exactly `n` i.i.d. vertices.
pub fn sample_uniform_model(params: &ModelParams, seed: u64) -> SampleSet {
    SampleSet {
        points: sample_points(params, seed, params.n as usize),
        probes: Vec::new(),
        model: SampleModel::Uniform,
        params: *params,
        seed,
        count_method: CountMethod::Fixed,
    }
}

/// `N ~ Poisson(n)` drawn first, then `N` vertices exactly as in the uniform model.
pub fn sample_poisson_model(params: &ModelParams, seed: u64) -> SampleSet {
    let (count, method) = poisson_count(params.n, seed);
    SampleSet {
        points: sample_points(params, seed, count as usize),
        probes: Vec::new(),
        model: SampleModel::Poisson,
        params: *params,
        seed,
        count_method: method,
    }
}

pub fn sample_model(params: &ModelParams, seed: u64, model: SampleModel) -> SampleSet {
    match model {
        SampleModel::Uniform => sample_uniform_model(params, seed),
        SampleModel::Poisson => sample_poisson_model(params, seed),
    }
}

/// Draws the Poisson count with mean `n` on the reserved stream.
pub fn poisson_count(n: u64, seed: u64) -> (u64, CountMethod) {
    let mut rng = substream(seed, COUNT_STREAM);
    if n <= 10 {
        let u: f64 = rng.random();
        let mean = n as f64;
        let mut k = 0u64;
        let mut p = (-mean).exp();
        let mut cdf = p;
        while u > cdf && k < 1000 {
            k += 1;
            p *= mean / k as f64;
            cdf += p;
        }
        (k, CountMethod::PoissonInversion)
    } else {
        let dist = Poisson::new(n as f64).expect("positive mean");
        (dist.sample(&mut rng) as u64, CountMethod::PoissonPtrs)
    }
}

/// Poisson sample conditioned on `|P| = target` by rejection over seeds
/// `seed, seed+1, ...`. Only practical at toy `n`.
pub fn sample_poisson_conditioned(
    params: &ModelParams,
    seed: u64,
    target: u64,
    max_attempts: u64,
) -> Result<SampleSet> {
    for k in 0..max_attempts {
        let s = seed.wrapping_add(k);
        if poisson_count(params.n, s).0 == target {
            return Ok(sample_poisson_model(params, s));
        }
    }
    Err(Error::Precondition(format!("no Poisson draw with count {target} in {max_attempts} attempts")))
}
