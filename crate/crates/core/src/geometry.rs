//! Hyperbolic-plane primitives in native polar coordinates.
//!
//! All distance and adjacency decisions go through the half-angle form of the
//! hyperbolic law of cosines,
//!
//! ```text
//! sinh²(d/2) = sinh²((r - r')/2) + sinh(r) sinh(r') sin²(Δθ/2)
//! ```
//!
//! which is algebraically identical to `cosh d = cosh r cosh r' - sinh r sinh r' cos Δθ`
//! but keeps full relative precision when `Δθ` is of order `e^{-R/2}`. The
//! plain cosine form loses every significant digit of `1 - cos Δθ` once
//! `Δθ < 1e-8`, which is exactly the regime of near-boundary vertices.

use std::f64::consts::{PI, TAU};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest accepted disk radius. Beyond this `cosh`/`sinh` leave `f64` range.
pub const MAX_RADIUS: f64 = 700.0;

/// Clamps larger than this abort with a numeric-health error.
pub const CLAMP_ABORT: f64 = 1e-9;

static CLAMP_EVENTS: AtomicU64 = AtomicU64::new(0);

/// Number of domain clamps applied to `asin`/`acos` arguments since process start.
pub fn clamp_events() -> u64 {
    CLAMP_EVENTS.load(Ordering::Relaxed)
}

/// Clamp `x` into `[lo, hi]`, tallying the event. Errors when the overshoot
/// exceeds [`CLAMP_ABORT`].
pub(crate) fn clamp_checked(x: f64, lo: f64, hi: f64, what: &str) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::NumericHealth(format!("{what}: NaN argument")));
    }
    let over = if x < lo {
        lo - x
    } else if x > hi {
        x - hi
    } else {
        return Ok(x);
    };
    if over > CLAMP_ABORT {
        return Err(Error::NumericHealth(format!("{what}: argument {x} outside [{lo}, {hi}] by {over:e}")));
    }
    CLAMP_EVENTS.fetch_add(1, Ordering::Relaxed);
    Ok(x.clamp(lo, hi))
}

/// Model constants `(α, C, n)` and the derived disk radius `R = 2 ln n + C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub alpha: f64,
    #[serde(rename = "C")]
    pub big_c: f64,
    pub n: u64,
    #[serde(rename = "R")]
    pub radius: f64,
}

impl ModelParams {
    /// Validated constructor; requires `1/2 < alpha < 1`.
    pub fn new(alpha: f64, big_c: f64, n: u64) -> Result<Self> {
        if !(alpha > 0.5 && alpha < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha = {alpha} outside (1/2, 1); use ModelParams::with_alpha_override to force it"
            )));
        }
        Self::build(alpha, big_c, n)
    }

    /// Like [`ModelParams::new`] but accepts any `alpha > 0`. Returns a warning
    /// string when `alpha` is outside `(1/2, 1)`.
    pub fn with_alpha_override(alpha: f64, big_c: f64, n: u64) -> Result<(Self, Option<String>)> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!("alpha = {alpha} must be positive")));
        }
        let params = Self::build(alpha, big_c, n)?;
        let warning = (!params.alpha_in_range())
            .then(|| format!("alpha = {alpha} is outside (1/2, 1); structural results are not expected to hold"));
        Ok((params, warning))
    }

    fn build(alpha: f64, big_c: f64, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        if !big_c.is_finite() {
            return Err(Error::InvalidParameter(format!("C = {big_c} is not finite")));
        }
        let radius = 2.0 * (n as f64).ln() + big_c;
        if !(radius > 0.0) {
            return Err(Error::InvalidParameter(format!("R = 2 ln n + C = {radius} must be positive")));
        }
        if radius > MAX_RADIUS {
            return Err(Error::InvalidParameter(format!(
                "R = {radius} exceeds {MAX_RADIUS}; hyperbolic functions would overflow"
            )));
        }
        Ok(Self { alpha, big_c, n, radius })
    }

    pub fn alpha_in_range(&self) -> bool {
        self.alpha > 0.5 && self.alpha < 1.0
    }

    /// Re-check a deserialized or hand-assembled value.
    pub fn validate(&self) -> Result<()> {
        let rebuilt = Self::build(self.alpha, self.big_c, self.n)?;
        if (rebuilt.radius - self.radius).abs() > 1e-9 * rebuilt.radius.max(1.0) {
            return Err(Error::Validation(format!(
                "R = {} does not match 2 ln n + C = {}",
                self.radius, rebuilt.radius
            )));
        }
        if !(self.alpha > 0.0) {
            return Err(Error::Validation(format!("alpha = {} must be positive", self.alpha)));
        }
        Ok(())
    }

    /// Poisson intensity prefactor `δ = e^{-C/2}`.
    pub fn delta(&self) -> f64 {
        (-0.5 * self.big_c).exp()
    }

    /// `δ e^{R/2}`, the expected Poisson point count. Equals `n` up to rounding.
    pub fn poisson_mean(&self) -> f64 {
        self.delta() * (0.5 * self.radius).exp()
    }
}

/// Polar coordinates `(r, θ)` of a vertex or probe.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarPoint {
    pub r: f64,
    pub theta: f64,
}

impl PolarPoint {
    /// Builds a point, reducing `theta` into `[0, 2π)`.
    pub fn new(r: f64, theta: f64) -> Self {
        Self { r, theta: normalize_angle(theta) }
    }

    pub fn origin() -> Self {
        Self { r: 0.0, theta: 0.0 }
    }

    pub fn is_valid_in(&self, params: &ModelParams) -> bool {
        self.r >= 0.0 && self.r < params.radius && (0.0..TAU).contains(&self.theta)
    }
}

/// Reduce an angle into `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Circular distance between two angles, in `[0, π]`.
pub fn angular_difference(t1: f64, t2: f64) -> f64 {
    let d = (t1 - t2).abs().rem_euclid(TAU);
    d.min(TAU - d)
}

/// `ln sinh(x)` for `x > 0`, stable for large `x`.
fn ln_sinh(x: f64) -> f64 {
    if x > 20.0 {
        x - std::f64::consts::LN_2 + (-(-2.0 * x).exp()).ln_1p()
    } else {
        x.sinh().ln()
    }
}

/// Hyperbolic distance between two points.
pub fn hyperbolic_distance(p: &PolarPoint, q: &PolarPoint) -> f64 {
    let half_dr = 0.5 * (p.r - q.r).abs();
    let half_dt = 0.5 * (p.theta - q.theta).abs();
    let sh = half_dr.sinh();
    let s = half_dt.sin();
    let cross = p.r.sinh() * q.r.sinh() * s * s;
    let x = sh * sh + cross;
    if x.is_finite() {
        return 2.0 * x.sqrt().asinh();
    }
    // Both radii in the hundreds: fall back to log space, where
    // 2 asinh(sqrt x) = ln(4x) to within e^{-d}.
    let ln_cross = ln_sinh(p.r) + ln_sinh(q.r) + 2.0 * s.ln();
    let ln_radial = 2.0 * ln_sinh(half_dr.max(f64::MIN_POSITIVE));
    let (hi, lo) = if ln_cross > ln_radial { (ln_cross, ln_radial) } else { (ln_radial, ln_cross) };
    let ln_x = hi + (lo - hi).exp().ln_1p();
    std::f64::consts::LN_2 * 2.0 + ln_x
}

/// `sin²(θ*/2)` for the angular threshold at which two points with radii
/// `ra ≤ rb` are exactly at distance `rho`. Arguments must already be in
/// canonical order with `sinh` precomputed.
#[inline]
fn threshold_half_sin_sq(ra: f64, sha: f64, rb: f64, shb: f64, cosh_rho: f64) -> f64 {
    ((cosh_rho - (rb - ra).cosh()) / sha) / (2.0 * shb)
}

/// Point with its radial `sinh` cached; the unit the graph builders work on.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Kernel {
    pub r: f64,
    pub theta: f64,
    pub sinh_r: f64,
}

impl Kernel {
    pub fn new(p: &PolarPoint) -> Self {
        Self { r: p.r, theta: p.theta, sinh_r: p.r.sinh() }
    }

    #[inline]
    fn precedes(&self, other: &Kernel) -> bool {
        (self.r, self.theta) <= (other.r, other.theta)
    }
}

/// Precomputed distance threshold used by the canonical predicate.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Threshold {
    pub rho: f64,
    pub cosh_rho: f64,
}

impl Threshold {
    pub fn new(rho: f64) -> Self {
        Self { rho, cosh_rho: rho.cosh() }
    }
}

/// The single canonical decision `d(u, v) ≤ rho`.
///
/// Every adjacency test in the crate (both graph builders, region membership,
/// explorer audits) routes through this function. The pair is put in a fixed
/// order first so the floating-point evaluation is identical for `(u, v)` and
/// `(v, u)`.
#[inline]
pub(crate) fn within_kernel(u: &Kernel, v: &Kernel, t: &Threshold) -> bool {
    if u.r + v.r <= t.rho {
        return true;
    }
    let (a, b) = if u.precedes(v) { (u, v) } else { (v, u) };
    if b.r - a.r > t.rho {
        return false;
    }
    let rhs = threshold_half_sin_sq(a.r, a.sinh_r, b.r, b.sinh_r, t.cosh_rho);
    let s = (0.5 * (a.theta - b.theta).abs()).sin();
    s * s <= rhs
}

/// `d(p, q) ≤ rho`, decided through the canonical predicate.
pub fn within_distance(p: &PolarPoint, q: &PolarPoint, rho: f64) -> bool {
    within_kernel(&Kernel::new(p), &Kernel::new(q), &Threshold::new(rho))
}

/// The model's edge rule `d(u, v) ≤ R`.
pub fn is_adjacent(p: &PolarPoint, q: &PolarPoint, params: &ModelParams) -> bool {
    within_distance(p, q, params.radius)
}

/// Largest angular separation at which radii `r_u`, `r_v` are still within
/// distance `rho`. Returns `π` when `r_u + r_v ≤ rho` and `0` when the radii
/// alone already exceed `rho`.
pub fn max_angle_within(r_u: f64, r_v: f64, rho: f64) -> f64 {
    if r_u + r_v <= rho {
        return PI;
    }
    let (ra, rb) = if r_u <= r_v { (r_u, r_v) } else { (r_v, r_u) };
    if rb - ra > rho {
        return 0.0;
    }
    let x = threshold_half_sin_sq(ra, ra.sinh(), rb, rb.sinh(), rho.cosh());
    if x >= 1.0 {
        PI
    } else if x <= 0.0 {
        0.0
    } else {
        2.0 * x.sqrt().asin()
    }
}

/// Exact angular adjacency threshold: `d(u,v) ≤ R` iff the angular difference
/// is at most this value.
pub fn max_angle_for_edge(r_u: f64, r_v: f64, params: &ModelParams) -> f64 {
    max_angle_within(r_u, r_v, params.radius)
}

/// Angle between sides `a` and `b` of a hyperbolic triangle whose third side
/// is `c`. With one vertex at the origin this is the angular separation of two
/// points at radii `a`, `b` and distance `c`.
pub fn angle_at_origin(a: f64, b: f64, c: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::Precondition(format!("angle_at_origin needs a, b > 0 (got a = {a}, b = {b})")));
    }
    let lo = (a - b).abs();
    let hi = a + b;
    if c < lo - CLAMP_ABORT || c > hi + CLAMP_ABORT {
        return Err(Error::Domain(format!("side c = {c} outside [{lo}, {hi}] for a = {a}, b = {b}")));
    }
    // tan²(θ/2) = sinh((c-d)/2) sinh((c+d)/2) / (sinh((s-c)/2) sinh((s+c)/2)), d = |a-b|, s = a+b
    let c = clamp_checked(c, lo, hi, "angle_at_origin")?;
    if c - lo <= 0.0 {
        return Ok(0.0);
    }
    if hi - c <= 0.0 {
        return Ok(PI);
    }
    let ln_tan_sq =
        ln_sinh(0.5 * (c - lo)) + ln_sinh(0.5 * (c + lo)) - ln_sinh(0.5 * (hi - c)) - ln_sinh(0.5 * (hi + c));
    Ok(2.0 * (0.5 * ln_tan_sq).exp().atan())
}

/// Leading-order angle `2 e^{(c-a-b)/2}`.
pub fn angle_approx(a: f64, b: f64, c: f64) -> Result<f64> {
    check_approx_domain(a, b, c)?;
    Ok(2.0 * (0.5 * (c - a - b)).exp())
}

fn check_approx_domain(a: f64, b: f64, c: f64) -> Result<()> {
    if !(a >= 0.0 && b >= 0.0 && a.min(b) <= c && c <= a + b) {
        return Err(Error::Precondition(format!(
            "angle approximation needs 0 <= min(a,b) <= c <= a+b (got a = {a}, b = {b}, c = {c})"
        )));
    }
    Ok(())
}

/// Exact angle next to its leading-order approximation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngleBracket {
    pub exact: f64,
    pub approx: f64,
    /// `exact / approx - 1`.
    pub relative_error: f64,
    /// `|relative_error| / e^{c-a-b}`: the constant in the `Θ(e^{c-a-b})` correction.
    pub scaled_error: f64,
}

/// Evaluates both the exact angle and its approximation; the observed
/// multiplicative correction is reported alongside.
pub fn angle_approx_bracket(a: f64, b: f64, c: f64) -> Result<AngleBracket> {
    check_approx_domain(a, b, c)?;
    let exact = angle_at_origin(a, b, c)?;
    let approx = angle_approx(a, b, c)?;
    let relative_error = exact / approx - 1.0;
    Ok(AngleBracket { exact, approx, relative_error, scaled_error: relative_error.abs() / (c - a - b).exp() })
}
