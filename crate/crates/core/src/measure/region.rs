use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{max_angle_within, normalize_angle, Kernel, ModelParams, PolarPoint, Threshold};

/// Angular interval `[start, start + width]` (mod 2π).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleInterval {
    pub start: f64,
    pub width: f64,
}

impl AngleInterval {
    pub fn contains(&self, theta: f64) -> bool {
        normalize_angle(theta - self.start) <= self.width
    }
}

/// Subsets of the disk built from pairwise ball algebra.
///
/// Balls are closed: `ball_origin(ρ) = {r ≤ ρ}` and `band_origin(inner, outer)`
/// is `B_O(outer) \ B_O(inner) = {inner < r ≤ outer}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegionSpec {
    BallOrigin { rho: f64 },
    BallAt { center: PolarPoint, rho: f64 },
    BandOrigin { inner: f64, outer: f64 },
    Intersection { parts: Vec<RegionSpec> },
    Difference { keep: Box<RegionSpec>, remove: Box<RegionSpec> },
    Cone { intervals: Vec<AngleInterval> },
}

impl RegionSpec {
    pub fn ball_origin(rho: f64) -> Self {
        RegionSpec::BallOrigin { rho }
    }

    pub fn ball_at(center: PolarPoint, rho: f64) -> Self {
        RegionSpec::BallAt { center, rho }
    }

    pub fn band_origin(inner: f64, outer: f64) -> Self {
        RegionSpec::BandOrigin { inner, outer }
    }

    pub fn intersection(parts: Vec<RegionSpec>) -> Self {
        RegionSpec::Intersection { parts }
    }

    pub fn difference(keep: RegionSpec, remove: RegionSpec) -> Self {
        RegionSpec::Difference { keep: Box::new(keep), remove: Box::new(remove) }
    }

    pub fn cone(intervals: Vec<AngleInterval>) -> Self {
        RegionSpec::Cone { intervals }
    }

    pub fn validate(&self, params: &ModelParams) -> Result<()> {
        let big_r = params.radius;
        let radius_ok = |x: f64| (0.0..=big_r).contains(&x);
        match self {
            RegionSpec::BallOrigin { rho } | RegionSpec::BallAt { rho, .. } if !radius_ok(*rho) => {
                Err(Error::Domain(format!("ball radius {rho} outside [0, {big_r}]")))
            }
            RegionSpec::BallAt { center, .. } if !(center.r >= 0.0 && center.r <= big_r) => {
                Err(Error::Domain(format!("ball center radius {} outside [0, {big_r}]", center.r)))
            }
            RegionSpec::BandOrigin { inner, outer } if !(radius_ok(*inner) && radius_ok(*outer) && inner <= outer) => {
                Err(Error::Domain(format!("band ({inner}, {outer}] must satisfy 0 <= inner <= outer <= {big_r}")))
            }
            RegionSpec::Intersection { parts } => {
                if parts.is_empty() {
                    return Err(Error::Domain("empty intersection".into()));
                }
                parts.iter().try_for_each(|p| p.validate(params))
            }
            RegionSpec::Difference { keep, remove } => {
                keep.validate(params)?;
                remove.validate(params)
            }
            RegionSpec::Cone { intervals } => {
                for iv in intervals {
                    if !(0.0..=TAU).contains(&iv.width) {
                        return Err(Error::Domain(format!("cone width {} outside [0, 2π]", iv.width)));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn contains(&self, p: &PolarPoint) -> bool {
        self.compile().contains(&Kernel::new(p))
    }

    pub(crate) fn compile(&self) -> Compiled {
        match self {
            RegionSpec::BallOrigin { rho } => Compiled::BallOrigin(*rho),
            RegionSpec::BallAt { center, rho } => {
                Compiled::BallAt { center: Kernel::new(center), threshold: Threshold::new(*rho) }
            }
            RegionSpec::BandOrigin { inner, outer } => Compiled::Band(*inner, *outer),
            RegionSpec::Intersection { parts } => Compiled::All(parts.iter().map(RegionSpec::compile).collect()),
            RegionSpec::Difference { keep, remove } => {
                Compiled::Minus(Box::new(keep.compile()), Box::new(remove.compile()))
            }
            RegionSpec::Cone { intervals } => Compiled::Cone(intervals.clone()),
        }
    }
}

/// Region with per-center hyperbolic functions cached.
#[derive(Debug, Clone)]
pub(crate) enum Compiled {
    BallOrigin(f64),
    BallAt { center: Kernel, threshold: Threshold },
    Band(f64, f64),
    All(Vec<Compiled>),
    Minus(Box<Compiled>, Box<Compiled>),
    Cone(Vec<AngleInterval>),
}

/// Angular sector `center ± half`; `half = π` is the full circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Arc {
    pub center: f64,
    pub half: f64,
}

impl Arc {
    pub const FULL: Arc = Arc { center: 0.0, half: PI };

    pub fn is_full(&self) -> bool {
        self.half >= PI
    }
}

/// Slack added to every arc bound so rounding never clips a member point.
fn widen(half: f64) -> f64 {
    (half * (1.0 + 1e-9) + 1e-15).min(PI)
}

impl Compiled {
    pub fn contains(&self, p: &Kernel) -> bool {
        match self {
            Compiled::BallOrigin(rho) => p.r <= *rho,
            Compiled::BallAt { center, threshold } => crate::geometry::within_kernel(p, center, threshold),
            Compiled::Band(inner, outer) => p.r > *inner && p.r <= *outer,
            Compiled::All(parts) => parts.iter().all(|c| c.contains(p)),
            Compiled::Minus(keep, remove) => keep.contains(p) && !remove.contains(p),
            Compiled::Cone(ivs) => ivs.iter().any(|iv| iv.contains(p.theta)),
        }
    }

    /// Radial interval outside of which the region is empty.
    pub fn radial_support(&self, big_r: f64) -> (f64, f64) {
        match self {
            Compiled::BallOrigin(rho) => (0.0, rho.min(big_r)),
            Compiled::BallAt { center, threshold } => {
                ((center.r - threshold.rho).max(0.0), (center.r + threshold.rho).min(big_r))
            }
            Compiled::Band(inner, outer) => (inner.max(0.0), outer.min(big_r)),
            Compiled::All(parts) => parts.iter().fold((0.0, big_r), |(lo, hi), c| {
                let (a, b) = c.radial_support(big_r);
                (lo.max(a), hi.min(b))
            }),
            Compiled::Minus(keep, _) => keep.radial_support(big_r),
            Compiled::Cone(_) => (0.0, big_r),
        }
    }

    /// Angular sector containing every member with radius in `[a, b]`.
    pub fn arc(&self, a: f64, b: f64) -> Arc {
        match self {
            Compiled::BallOrigin(_) | Compiled::Band(..) => Arc::FULL,
            Compiled::BallAt { center, threshold } => {
                let (r_c, rho) = (center.r, threshold.rho);
                if a + r_c <= rho {
                    return Arc::FULL;
                }
                // The angular reach θ_ρ(r, r_c) peaks where cosh r = cosh r_c / cosh ρ
                // (the tangent radius) and is monotone on either side.
                let peak = if r_c >= rho { (r_c.cosh() / rho.cosh()).acosh() } else { a };
                let r_star = peak.clamp(a, b);
                Arc { center: center.theta, half: widen(max_angle_within(r_star, r_c, rho)) }
            }
            Compiled::All(parts) => {
                parts.iter().map(|c| c.arc(a, b)).min_by(|x, y| x.half.total_cmp(&y.half)).unwrap_or(Arc::FULL)
            }
            Compiled::Minus(keep, _) => keep.arc(a, b),
            Compiled::Cone(ivs) => match ivs.as_slice() {
                [iv] if iv.width < TAU => {
                    Arc { center: normalize_angle(iv.start + 0.5 * iv.width), half: widen(0.5 * iv.width) }
                }
                _ => Arc::FULL,
            },
        }
    }
}

/// Whether `theta` lies in the arc.
#[cfg(test)]
pub(crate) fn in_arc(arc: &Arc, theta: f64) -> bool {
    arc.is_full() || crate::geometry::angular_difference(arc.center, theta) <= arc.half
}
