mod common;

use nest_core::analysis::{adaptive_pr_bound, jaccard_diversity, worstcase_pr_bound, CheckStatus};
use nest_core::baselines::erdos_renyi;
use nest_core::{audit_sample, sample, Graph, InitialColoring, Mode, SamplerConfig};

#[test]
fn samples_pass_every_check() {
    let mut r = common::rng(21);
    for i in 0..20 {
        let directed = i % 2 == 0;
        let g = common::random_graph(&mut r, 10, 80, directed);
        let mode = if directed { Mode::In } else { Mode::Undirected };
        for depth in 1..4 {
            let config = SamplerConfig::new(depth, InitialColoring::OutDegree, mode, i);
            let s = sample(&g, &config).unwrap().graph;
            let report = audit_sample(&g, &s, depth, &InitialColoring::OutDegree, mode, 0.85).unwrap();
            assert!(report.passed(), "graph {i}, depth {depth}: {:?}", report.checks);
            assert!(report.checks.iter().all(|c| c.status == CheckStatus::Pass));
            assert!(report.sae <= report.bound_adaptive.unwrap() + 1e-12);
        }
    }
}

#[test]
fn adaptive_bound_shrinks_with_depth() {
    let mut r = common::rng(22);
    for i in 0..20 {
        let g = common::random_graph(&mut r, 5, 60, i % 2 == 1);
        for alpha in [0.5, 0.85] {
            let bounds: Vec<f64> = (1..12).map(|k| adaptive_pr_bound(&g, alpha, k).unwrap()).collect();
            for (k, w) in bounds.windows(2).enumerate() {
                assert!(w[1] <= alpha * w[0] + 1e-15, "graph {i}, k {}", k + 1);
            }
        }
    }
}

#[test]
fn worstcase_bound_values() {
    assert!((worstcase_pr_bound(0.85, 1) - 2.0 * 0.85 * 0.85).abs() < 1e-15);
    assert!((worstcase_pr_bound(0.5, 3) - 0.125).abs() < 1e-15);
}

#[test]
fn unrelated_graphs_fail_colors_and_skip_bounds() {
    let g = common::karate();
    let er = erdos_renyi(g.n(), g.m(), false, 3).unwrap();
    let report = audit_sample(&g, &er, 2, &InitialColoring::OutDegree, Mode::Undirected, 0.85).unwrap();
    assert!(!report.passed());
    assert_eq!(report.checks[0].status, CheckStatus::Fail);
    assert!(report.checks[1..].iter().all(|c| c.status == CheckStatus::NotApplicable));
    assert!(report.bound_worstcase.is_none());
    assert!(report.jaccard_diversity > 0.5);
}

#[test]
fn constant_colors_skip_bounds() {
    let g = common::karate();
    let config = SamplerConfig::new(2, InitialColoring::Constant, Mode::Undirected, 1);
    let s = sample(&g, &config).unwrap().graph;
    let report = audit_sample(&g, &s, 2, &InitialColoring::Constant, Mode::Undirected, 0.85).unwrap();
    assert!(report.passed());
    assert_eq!(report.checks.iter().filter(|c| c.status == CheckStatus::NotApplicable).count(), 3);
}

#[test]
fn jaccard_of_relabeled_graph() {
    let g = Graph::from_edges(4, true, [(0, 1), (1, 2), (2, 3)]).unwrap();
    let h = Graph::from_edges(4, true, [(0, 1), (1, 2), (3, 2)]).unwrap();
    assert!((jaccard_diversity(&g, &h).unwrap() - 0.5).abs() < 1e-15);
    assert_eq!(jaccard_diversity(&g, &g).unwrap(), 0.0);
}
