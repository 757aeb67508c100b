//! The fixed grid of closed-form vs Monte-Carlo comparisons.

use serde::Serialize;

use super::{
    lens_minus_ball_region, mu_ball_intersection_approx, mu_ball_origin_approximation, mu_band_origin_approx,
    mu_monte_carlo, pair_at_distance, ring_band_leading, ring_band_region, Approximation, BandConstants, RegionSpec,
};
use crate::error::Result;
use crate::geometry::{ModelParams, PolarPoint};

pub const GRID_RADII: [f64; 3] = [25.0, 30.0, 35.0];
pub const GRID_ALPHAS: [f64; 3] = [0.6, 0.75, 0.9];
pub const GRID_VARIANTS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CheckConfig {
    pub radius: f64,
    pub alpha: f64,
    pub variant: usize,
}

impl CheckConfig {
    /// `n = round(e^{R/2})` and `C = R - 2 ln n`, so that `1/n` is the natural
    /// scale of the near-boundary regions.
    pub fn params(&self) -> Result<ModelParams> {
        let n = (0.5 * self.radius).exp().round() as u64;
        ModelParams::new(self.alpha, self.radius - 2.0 * (n as f64).ln(), n)
    }

    pub fn id(&self) -> String {
        format!("R{}_a{}_v{}", self.radius, self.alpha, self.variant)
    }
}

/// `R ∈ {25, 30, 35} × α ∈ {0.6, 0.75, 0.9} ×` three geometric variants.
pub fn standard_grid() -> Vec<CheckConfig> {
    let mut out = Vec::new();
    for radius in GRID_RADII {
        for alpha in GRID_ALPHAS {
            for variant in 0..GRID_VARIANTS {
                out.push(CheckConfig { radius, alpha, variant });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRow {
    pub region_id: String,
    pub closed_form: f64,
    pub mc_mean: f64,
    pub mc_halfwidth: f64,
    pub envelope: f64,
    pub pass: bool,
    /// `n · mc_mean`; only meaningful for lens rows.
    #[serde(skip)]
    pub n_mean: f64,
}

impl CheckRow {
    pub const CSV_HEADER: &'static str = "region_id,closed_form,mc_mean,mc_halfwidth,envelope,pass";

    pub fn csv_line(&self) -> String {
        format!(
            "{},{:.16e},{:.16e},{:.16e},{:.16e},{}",
            self.region_id, self.closed_form, self.mc_mean, self.mc_halfwidth, self.envelope, self.pass
        )
    }

    pub fn kind(&self) -> &str {
        self.region_id.rsplit('_').next().unwrap_or("")
    }
}

fn compare(
    id: String,
    region: &RegionSpec,
    approx: Approximation,
    samples: u64,
    seed: u64,
    params: &ModelParams,
) -> Result<CheckRow> {
    let est = mu_monte_carlo(region, samples, seed, params)?;
    Ok(CheckRow {
        region_id: id,
        closed_form: approx.value,
        mc_mean: est.mean,
        mc_halfwidth: est.half_width,
        envelope: approx.envelope,
        pass: approx.admits(est.mean, est.half_width),
        n_mean: params.n as f64 * est.mean,
    })
}

/// The five comparisons of one configuration: ball, intersection, band
/// (origin annulus), ring-band and lens-minus-ball.
pub fn run_check(config: &CheckConfig, samples: u64, seed: u64, constants: &BandConstants) -> Result<Vec<CheckRow>> {
    let params = config.params()?;
    let big_r = params.radius;
    let v = config.variant;
    let vf = v as f64;
    let id = config.id();
    let seed_for = |k: u64| seed.wrapping_add(k.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut rows = Vec::with_capacity(5);

    let rho = [0.5 * big_r, 0.75 * big_r, big_r - 1.0][v % 3];
    rows.push(compare(
        format!("{id}_ball"),
        &RegionSpec::ball_origin(rho),
        mu_ball_origin_approximation(rho, &params)?,
        samples,
        seed_for(0),
        &params,
    )?);

    let (r_a, rho_a, rho_o) =
        [(big_r - 1.0, big_r, big_r), (big_r - 5.0, big_r, 0.5 * big_r), (0.75 * big_r, big_r - 1.0, 0.8 * big_r)]
            [v % 3];
    let a = PolarPoint::new(r_a, 1.0 + vf);
    rows.push(compare(
        format!("{id}_intersection"),
        &RegionSpec::intersection(vec![RegionSpec::ball_at(a, rho_a), RegionSpec::ball_origin(rho_o)]),
        mu_ball_intersection_approx(r_a, rho_a, rho_o, &params)?,
        samples,
        seed_for(1),
        &params,
    )?);

    let (hi, lo) = [(big_r - 1.0, big_r - 2.0), (big_r - 0.5, big_r - 3.0), (0.5 * big_r + 3.0, 0.5 * big_r)][v % 3];
    rows.push(compare(
        format!("{id}_band"),
        &RegionSpec::band_origin(lo, hi),
        mu_band_origin_approx(hi, lo, &params)?,
        samples,
        seed_for(2),
        &params,
    )?);

    let k = constants;
    let r_ring = [big_r - k.c2, 0.5 * (2.0 * big_r - k.c1 - k.c2), big_r - k.c1][v % 3];
    let center = PolarPoint::new(r_ring, 2.0 + vf);
    rows.push(compare(
        format!("{id}_ringband"),
        &ring_band_region(center, k, &params),
        ring_band_leading(r_ring, k, &params)?,
        samples,
        seed_for(3),
        &params,
    )?);

    // B mid-band; A sweeps the band while d(A, B) sweeps [R - c3, R]
    let r_b = 0.5 * (2.0 * big_r - k.c1 - k.c2);
    let r_a = big_r - k.c2 + vf * 0.5 * (k.c2 - k.c1);
    let d = big_r - k.c3 * (0.9 - 0.4 * vf);
    let (a, b) = pair_at_distance(r_a, r_b, d, 0.5 + vf)?;
    let ring = ring_band_leading(r_b, k, &params)?;
    // The region is at most the whole ring-band and at least half of it, up
    // to the leading-term envelope; compare against the midpoint.
    let sandwich = Approximation { value: 0.75 * ring.value, envelope: 0.25 * ring.value + ring.envelope };
    rows.push(compare(
        format!("{id}_lens"),
        &lens_minus_ball_region(a, b, k, &params),
        sandwich,
        samples,
        seed_for(4),
        &params,
    )?);
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape() {
        let g = standard_grid();
        assert_eq!(g.len(), 27);
        for c in &g {
            let p = c.params().unwrap();
            assert!((p.radius - c.radius).abs() < 1e-9);
        }
    }

    #[test]
    fn small_check_runs() {
        let c = CheckConfig { radius: 30.0, alpha: 0.75, variant: 1 };
        let rows = run_check(&c, 200_000, 1, &BandConstants::default()).unwrap();
        assert_eq!(rows.len(), 5);
        for r in &rows {
            assert!(r.pass, "{r:?}");
            assert_eq!(r.csv_line().split(',').count(), 6);
        }
        assert_eq!(rows[4].kind(), "lens");
    }
}
