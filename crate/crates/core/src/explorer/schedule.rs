use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::ModelParams;

/// Outer bands are generated until `R - R_i` drops below this fraction of `R`.
const OUTER_RESOLUTION: f64 = 1e-9;
const MAX_OUTER_BANDS: usize = 4096;
/// Window of indices over which the `j0` inequality must keep holding.
const J0_LOOKAHEAD: u32 = 50;

/// Concentric radii organising descent toward the origin.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandSchedule {
    pub radius: f64,
    pub alpha: f64,
    #[serde(rename = "C0")]
    pub c0: f64,
    pub i0_raw: f64,
    pub i0: usize,
    /// `R_0 = R/2`, `R_i = R e^{-α^i/2}`.
    pub outer: Vec<f64>,
    pub j0: usize,
    pub c: f64,
    /// `R'_0 = cR`, `R'_i = R(c - (i/2)(1-c)(1-α))` for `i ≤ T`.
    pub inner: Vec<f64>,
    #[serde(rename = "T")]
    pub t: usize,
    pub clamp_note: Option<String>,
}

/// `C0 = 2/(1/2 - 3α/4 + α²/4)`.
pub fn c0(alpha: f64) -> f64 {
    2.0 / (0.5 - 0.75 * alpha + 0.25 * alpha * alpha)
}

fn j0_holds(alpha: f64, j: u32) -> bool {
    let a = alpha.powi(j as i32);
    (-0.5 * a).exp() <= 1.0 - (1.0 - 0.5 * (1.0 - alpha)) * 0.5 * a
}

impl BandSchedule {
    pub fn compute(params: &ModelParams) -> Result<Self> {
        Self::with_override(params, None)
    }

    /// Like [`BandSchedule::compute`], replacing `i0` when `band_depth` is given.
    pub fn with_override(params: &ModelParams, band_depth: Option<usize>) -> Result<Self> {
        let alpha = params.alpha;
        if !params.alpha_in_range() {
            return Err(Error::InvalidParameter(format!("band schedule needs 1/2 < alpha < 1 (got {alpha})")));
        }
        let radius = params.radius;
        let c0 = c0(alpha);

        let i0_raw = ((2.0 * c0 * radius.ln()) / radius).ln() / alpha.ln();
        let rounded = i0_raw.round();
        let mut clamp_note = None;
        let mut i0 = if rounded < 1.0 || !rounded.is_finite() {
            clamp_note = Some(format!("i0_raw = {i0_raw:.4} clamped to 1"));
            1
        } else {
            rounded as usize
        };
        if let Some(depth) = band_depth {
            if depth < 1 {
                return Err(Error::InvalidParameter("band depth override must be >= 1".into()));
            }
            let prev = clamp_note.map(|n| format!("{n}; ")).unwrap_or_default();
            clamp_note = Some(format!("{prev}i0 overridden to {depth}"));
            i0 = depth;
        }

        let mut outer = vec![0.5 * radius];
        let mut i = 1;
        loop {
            let r_i = radius * (-0.5 * alpha.powi(i)).exp();
            outer.push(r_i);
            if (radius - r_i <= OUTER_RESOLUTION * radius && outer.len() > i0 + 1) || outer.len() >= MAX_OUTER_BANDS {
                break;
            }
            i += 1;
        }
        while outer.len() <= i0 + 1 {
            let k = outer.len() as i32;
            outer.push(radius * (-0.5 * alpha.powi(k)).exp());
        }

        let mut j0 = 1u32;
        while !(j0..=j0 + J0_LOOKAHEAD).all(|j| j0_holds(alpha, j)) {
            j0 += 1;
        }
        let c = (-0.5 * alpha.powi(j0 as i32)).exp();
        let step = 0.5 * (1.0 - c) * (1.0 - alpha);
        let mut t = 0usize;
        while c - (t + 1) as f64 * step > 0.5 {
            t += 1;
        }
        let inner = (0..=t).map(|i| radius * (c - i as f64 * step)).collect();

        Ok(Self { radius, alpha, c0, i0_raw, i0, outer, j0: j0 as usize, c, inner, t, clamp_note })
    }

    /// `R_i`.
    pub fn r_outer(&self, i: usize) -> f64 {
        self.outer[i.min(self.outer.len() - 1)]
    }

    pub fn r_i0(&self) -> f64 {
        self.r_outer(self.i0)
    }

    /// Index `ℓ` with `R_ℓ < r ≤ R_{ℓ+1}`; `None` when `r ≤ R/2`. Radii past
    /// the last generated band map to the last index.
    pub fn band_of(&self, r: f64) -> Option<usize> {
        if r <= self.outer[0] {
            return None;
        }
        // first index with outer[k] >= r, minus one
        let k = self.outer.partition_point(|&x| x < r);
        Some(k.saturating_sub(1).min(self.outer.len() - 1))
    }

    /// Smallest `ℓ` with `R_ℓ > R - ξ`.
    pub fn ell0(&self, xi: f64) -> usize {
        let target = self.radius - xi;
        self.outer.iter().position(|&x| x > target).unwrap_or(self.outer.len() - 1)
    }

    /// Radius below which the inner descent machinery applies.
    pub fn inner_entry(&self) -> f64 {
        self.r_i0().max(self.inner[0])
    }

    /// Strictly decreasing ladder used by the inner descent: outer radii
    /// `R_i` for `j0 ≤ i ≤ i0`, then `R'_0 … R'_T`, then `R/2`.
    pub fn inner_ladder(&self) -> Vec<f64> {
        let mut levels: Vec<f64> = (self.j0..=self.i0).rev().map(|i| self.r_outer(i)).collect();
        levels.push(self.inner_entry());
        levels.extend(self.inner.iter().copied());
        levels.push(self.outer[0]);
        levels.sort_by(|a, b| b.total_cmp(a));
        levels.dedup();
        levels
    }
}
