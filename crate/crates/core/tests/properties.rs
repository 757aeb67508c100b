use std::path::Path;

use proptest::prelude::*;

use rhg_core::analysis::{
    bfs, center_clique, component_diameter, connected_components, distance_to_center, induced_path_components,
    DiameterMode,
};
use rhg_core::explorer::{expose, ExposeConfig, Verdict};
use rhg_core::geometry::{hyperbolic_distance, within_distance};
use rhg_core::graph::{build_fast, build_naive, points_from_str, points_to_string};
use rhg_core::measure::{mu_ball_origin_exact, BandConstants};
use rhg_core::sampler::{sample_model, sample_uniform_model};
use rhg_core::{Graph, ModelParams, PolarPoint, SampleModel};

fn graph(alpha: f64, n: u64, seed: u64) -> Graph {
    build_fast(sample_uniform_model(&ModelParams::new(alpha, 0.0, n).unwrap(), seed)).unwrap()
}

fn point() -> impl Strategy<Value = PolarPoint> {
    (0.0..25.0f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| PolarPoint::new(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn builders_agree(alpha in 0.55..0.95f64, n in 2u64..400, seed: u64, poisson: bool) {
        let p = ModelParams::new(alpha, 0.0, n).unwrap();
        let model = if poisson { SampleModel::Poisson } else { SampleModel::Uniform };
        let set = sample_model(&p, seed, model);
        let fast = build_fast(set.clone()).unwrap();
        prop_assert_eq!(&fast, &build_naive(set).unwrap());
        fast.verify().unwrap();
    }

    #[test]
    fn center_is_a_clique(alpha in 0.55..0.95f64, n in 2u64..600, seed: u64) {
        let g = graph(alpha, n, seed);
        let c = center_clique(&g);
        prop_assert!(c.verified);
        for (i, &u) in c.members.iter().enumerate() {
            for &v in &c.members[i + 1..] {
                prop_assert!(g.has_edge(u, v));
            }
        }
    }

    #[test]
    fn distance_is_a_metric(p in point(), q in point(), s in point()) {
        let pq = hyperbolic_distance(&p, &q);
        prop_assert_eq!(pq, hyperbolic_distance(&q, &p));
        prop_assert!(pq >= 0.0);
        prop_assert!(pq <= hyperbolic_distance(&p, &s) + hyperbolic_distance(&s, &q) + 1e-9);
        prop_assert!(pq >= (p.r - q.r).abs() - 1e-9 && pq <= p.r + q.r + 1e-9);
    }

    #[test]
    fn predicate_matches_distance_off_the_boundary(p in point(), q in point(), rho in 0.1..40.0f64) {
        let d = hyperbolic_distance(&p, &q);
        prop_assume!((d - rho).abs() > 1e-6 * rho.max(1.0));
        prop_assert_eq!(within_distance(&p, &q, rho), d <= rho);
        prop_assert_eq!(within_distance(&p, &q, rho), within_distance(&q, &p, rho));
    }

    #[test]
    fn ball_mass_is_a_cdf(alpha in 0.55..0.95f64, n in 10u64..1_000_000, a in 0.0..1.0f64, b in 0.0..1.0f64) {
        let p = ModelParams::new(alpha, 0.0, n).unwrap();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let f_lo = mu_ball_origin_exact(lo * p.radius, &p).unwrap();
        let f_hi = mu_ball_origin_exact(hi * p.radius, &p).unwrap();
        prop_assert!((0.0..=1.0).contains(&f_lo) && f_lo <= f_hi && f_hi <= 1.0);
        prop_assert!((mu_ball_origin_exact(p.radius, &p).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn points_file_round_trips_bit_exactly(n in 1u64..300, seed: u64, probes in 0usize..3) {
        let mut set = sample_uniform_model(&ModelParams::new(0.75, 0.0, n.max(2)).unwrap(), seed);
        for _ in 0..probes.min(set.probe_cap()) {
            set.add_random_probe().unwrap();
        }
        let text = points_to_string(&set);
        let back = points_from_str(&text, Path::new("mem")).unwrap();
        prop_assert_eq!(&back, &set);
        prop_assert_eq!(points_to_string(&back), text);
    }

    #[test]
    fn center_distance_follows_components(n in 50u64..800, seed: u64) {
        let g = graph(0.75, n, seed);
        let comps = connected_components(&g);
        let clique = center_clique(&g).members;
        let dist = distance_to_center(&g);
        for (v, d) in dist.iter().enumerate() {
            let reachable = clique.iter().any(|&c| comps.id[c] == comps.id[v]);
            prop_assert_eq!(d.is_some(), reachable);
        }
    }

    #[test]
    fn double_sweep_is_a_lower_bound(n in 20u64..600, seed: u64) {
        let g = graph(0.75, n, seed);
        let comps = connected_components(&g);
        for members in comps.members.iter().take(5) {
            let exact = component_diameter(&g, members, DiameterMode::Exact).unwrap();
            let sweep = component_diameter(&g, members, DiameterMode::DoubleSweep).unwrap();
            prop_assert!(exact.exact);
            prop_assert!(sweep.value <= exact.value);
        }
    }

    #[test]
    fn induced_paths_are_paths(n in 50u64..800, seed: u64) {
        let g = graph(0.75, n, seed);
        let comps = connected_components(&g);
        let found = induced_path_components(&g, &comps, Some(&BandConstants::default()));
        for path in &found.paths {
            let v = &path.vertices;
            prop_assert_eq!(comps.members[comps.rank_of(v[0])].len(), v.len());
            for w in v.windows(2) {
                prop_assert!(g.has_edge(w[0], w[1]));
            }
            let edges: usize = v.iter().map(|&x| g.degree(x)).sum::<usize>() / 2;
            prop_assert_eq!(edges, v.len() - 1);
        }
        prop_assert!(found.longest_in_band <= found.longest_overall);
    }

    #[test]
    fn expose_success_iff_center_reachable(n in 100u64..1500, seed: u64, query in 0usize..100) {
        let g = graph(0.75, n, seed);
        let q = query % g.vertex_count();
        let cfg = ExposeConfig::default();
        let schedule = cfg.schedule(g.params()).unwrap();
        let out = expose(&g, q, &cfg, &schedule).unwrap();
        let reach = bfs(&g, &center_clique(&g).members)[q] != u32::MAX;
        prop_assert_eq!(out.verdict == Verdict::Success, reach);
        prop_assert!(out.verify(&g));
    }
}
