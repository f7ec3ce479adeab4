mod common;

use nest_core::{
    cross_depth, initial_coloring, inject_external_colors, is_equitable, partial_refine, quotient, refine, Coloring,
    Depth, Graph, InitialColoring, Mode,
};
use proptest::prelude::*;

fn arb_graph() -> impl Strategy<Value = Graph> {
    (2usize..16, any::<bool>(), 0u64..u64::MAX)
        .prop_map(|(n, directed, seed)| common::gnp(n, 2.5 / n as f64, directed, seed))
}

fn modes(g: &Graph) -> Vec<Mode> {
    if g.is_directed() {
        vec![Mode::In, Mode::Out, Mode::Both, Mode::Gram]
    } else {
        vec![Mode::Undirected, Mode::Gram]
    }
}

proptest! {
    #[test]
    fn rounds_only_split_classes(g in arb_graph()) {
        for mode in modes(&g) {
            let h = refine(&g, &Coloring::constant(g.n()), mode, Depth::UntilStable).unwrap();
            let cs = h.colorings();
            for w in cs.windows(2) {
                prop_assert!(w[1].refines(&w[0]));
                prop_assert!(w[1].k() >= w[0].k());
            }
            prop_assert!(h.stable_depth().is_some());
            prop_assert!(h.stable_depth().unwrap() < g.n().max(1) + 1);
        }
    }

    #[test]
    fn stable_colorings_are_equitable(g in arb_graph()) {
        for mode in modes(&g) {
            let h = refine(&g, &Coloring::constant(g.n()), mode, Depth::UntilStable).unwrap();
            prop_assert!(is_equitable(&g, h.last(), mode).unwrap());
            if mode != Mode::Gram {
                prop_assert!(quotient(&g, h.last(), mode).is_ok());
            }
        }
    }

    #[test]
    fn partial_refinement_is_sandwiched(g in arb_graph(), mask in any::<u64>()) {
        let mode = if g.is_directed() { Mode::In } else { Mode::Undirected };
        let h = refine(&g, &Coloring::constant(g.n()), mode, Depth::Rounds(1)).unwrap();
        let pushing: Vec<usize> = (0..h.last().k()).filter(|c| mask >> (c % 64) & 1 == 1).collect();
        let star = partial_refine(&g, &h, &pushing).unwrap();
        let next = refine(&g, &Coloring::constant(g.n()), mode, Depth::Rounds(2)).unwrap();
        prop_assert!(star.refines(h.last()));
        prop_assert!(next.at(2).refines(&star));
    }

    #[test]
    fn injected_colors_refine_plain_ones(g in arb_graph(), labels in prop::collection::vec(0usize..3, 16)) {
        let mode = if g.is_directed() { Mode::Both } else { Mode::Undirected };
        let h = refine(&g, &Coloring::constant(g.n()), mode, Depth::Rounds(3)).unwrap();
        let ext = Coloring::from_labels(&labels[..g.n()], 0);
        let inj = inject_external_colors(&g, &h, &ext, 1).unwrap();
        prop_assert!(inj.at(1).equivalent(&h.at(1)));
        for t in 2..=3 {
            prop_assert!(inj.at(t).refines(&h.at(t)));
        }
    }
}

/// `AᵀH^{(t)} = H^{(t+1)} X_{t+1}` entrywise, checked from the count table.
#[test]
fn cross_depth_tables_factor_the_adjacency() {
    for seed in 0..20 {
        let g = common::gnp(12, 0.25, seed % 2 == 0, seed);
        let mode = if g.is_directed() { Mode::In } else { Mode::Undirected };
        let h = refine(&g, &Coloring::constant(g.n()), mode, Depth::UntilStable).unwrap();
        for t in 0..h.max_depth() {
            let x = cross_depth(&g, &h, t).unwrap();
            let (prev, next) = (h.at(t), h.at(t + 1));
            for v in 0..g.n() {
                let mut row = vec![0; prev.k()];
                for &u in g.in_neighbors(v) {
                    row[prev.color(u)] += 1;
                }
                assert_eq!(x.row(next.color(v)), row.as_slice());
            }
        }
    }
}

/// `AᵀH = HA^π` for the stable coloring.
#[test]
fn quotient_commutes_with_indicator() {
    for seed in 0..20 {
        let g = common::gnp_with_cycle(10, 0.2, seed % 2 == 1, seed);
        let mode = if g.is_directed() { Mode::In } else { Mode::Undirected };
        let h = refine(&g, &Coloring::constant(g.n()), mode, Depth::UntilStable).unwrap();
        let q = quotient(&g, h.last(), mode).unwrap();
        let w: Vec<f64> = (0..q.k()).map(|i| (i * i + 1) as f64).collect();
        let lifted = q.lift(&w);
        let left: Vec<f64> = (0..g.n()).map(|v| g.in_neighbors(v).iter().map(|&u| lifted[u]).sum()).collect();
        let aq: Vec<f64> =
            (0..q.k()).map(|i| q.quotient.row(i).iter().zip(&w).map(|(&c, x)| c as f64 * x).sum()).collect();
        assert_eq!(left, q.lift(&aq));
    }
}

#[test]
fn colors_match_unfolding_trees_on_random_graphs() {
    let mut r = common::rng(7);
    for i in 0..60 {
        let g = common::random_graph(&mut r, 3, 12, i % 2 == 0);
        for mode in modes(&g).into_iter().filter(|&m| m != Mode::Gram) {
            for init in [InitialColoring::Constant, InitialColoring::OutDegree] {
                let c0 = initial_coloring(&g, &init).unwrap();
                let h = refine(&g, &c0, mode, Depth::Rounds(g.n())).unwrap();
                for t in 0..=g.n() {
                    let trees = common::unfolding_tree_ids(&g, c0.colors(), mode, t);
                    assert_eq!(
                        h.at(t).colors(),
                        Coloring::from_labels(&trees, t).colors(),
                        "graph {i}, mode {}, depth {t}",
                        common::mode_label(mode)
                    );
                }
            }
        }
    }
}

#[test]
fn karate_class_counts() {
    let g = common::karate();
    let h = refine(&g, &Coloring::constant(34), Mode::Undirected, Depth::UntilStable).unwrap();
    let trees: Vec<usize> = (0..=h.max_depth())
        .map(|t| Coloring::from_labels(&common::unfolding_tree_ids(&g, &[0; 34], Mode::Undirected, t), t).k())
        .collect();
    assert_eq!(h.class_counts(), trees);
}
