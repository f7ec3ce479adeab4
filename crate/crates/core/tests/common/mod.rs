#![allow(dead_code)]

use std::collections::HashMap;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nest_core::{EdgeListOptions, Graph, Mode};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn karate() -> Graph {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/karate.edges");
    Graph::load(path, &EdgeListOptions::directed(false)).unwrap()
}

/// G(n, p) over all dyads.
pub fn gnp(n: usize, p: f64, directed: bool, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let dyad = if directed { u != v } else { u < v };
            if dyad && r.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, directed, edges).unwrap()
}

/// G(n, p) plus the cycle 0 → 1 → … → n−1 → 0, so the graph is connected
/// (strongly, when directed) and has a well-defined dominant eigenvector.
pub fn gnp_with_cycle(n: usize, p: f64, directed: bool, seed: u64) -> Graph {
    let base = gnp(n, p, directed, seed);
    let cycle = (0..n).map(|i| (i, (i + 1) % n));
    Graph::from_edges_dedup(n, directed, base.edges().chain(cycle)).unwrap()
}

/// Random `k`-fold cover of `base`: node `(v, i)` is `v·k + i`, and every
/// base edge `u → v` becomes `(u, i) → (v, π(i))` for its own random
/// permutation `π`. Colors of the base lift to equitable classes of the cover.
pub fn random_lift(base: &Graph, k: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for (u, v) in base.edges() {
        let mut perm: Vec<usize> = (0..k).collect();
        perm.shuffle(&mut r);
        edges.extend(perm.iter().enumerate().map(|(i, &j)| (u * k + i, v * k + j)));
    }
    Graph::from_edges(base.n() * k, base.is_directed(), edges).unwrap()
}

/// Random graph with a random node count in `lo..=hi` and a random density.
pub fn random_graph(r: &mut impl Rng, lo: usize, hi: usize, directed: bool) -> Graph {
    let n = r.random_range(lo..=hi);
    let mean_degree = r.random_range(1.0..6.0);
    let p = (mean_degree / n as f64).min(0.9);
    gnp(n, p, directed, r.random())
}

pub fn mode_label(mode: Mode) -> &'static str {
    match mode {
        Mode::In => "in",
        Mode::Out => "out",
        Mode::Both => "both",
        Mode::Undirected => "undirected",
        Mode::Gram => "gram",
    }
}

/// Isomorphism classes of depth-`depth` unfolding trees, as interned ids.
///
/// A node's depth-0 tree is its initial label; its depth-`t` tree is the
/// label plus the multiset of its neighbors' depth-`t−1` trees (in-neighbors,
/// out-neighbors, or both as separate multisets).
pub fn unfolding_tree_ids(graph: &Graph, labels: &[usize], mode: Mode, depth: usize) -> Vec<usize> {
    let mut interner: HashMap<(usize, Vec<usize>, Vec<usize>), usize> = HashMap::new();
    let mut intern = |key: (usize, Vec<usize>, Vec<usize>)| {
        let next = interner.len();
        *interner.entry(key).or_insert(next)
    };
    let mut ids: Vec<usize> = labels.iter().map(|&l| intern((l, vec![], vec![]))).collect();
    for _ in 0..depth {
        let next: Vec<usize> = (0..graph.n())
            .map(|v| {
                let gather = |nbrs: &[usize]| {
                    let mut c: Vec<usize> = nbrs.iter().map(|&u| ids[u]).collect();
                    c.sort_unstable();
                    c
                };
                let (a, b) = match mode {
                    Mode::In => (gather(graph.in_neighbors(v)), vec![]),
                    Mode::Out | Mode::Undirected => (gather(graph.out_neighbors(v)), vec![]),
                    Mode::Both => (gather(graph.in_neighbors(v)), gather(graph.out_neighbors(v))),
                    Mode::Gram => unimplemented!("no tree oracle for the Gram mode"),
                };
                (labels[v], a, b)
            })
            .map(&mut intern)
            .collect();
        ids = next;
    }
    ids
}

pub fn adjacency(graph: &Graph) -> DMatrix<f64> {
    let n = graph.n();
    let mut a = DMatrix::zeros(n, n);
    for u in 0..n {
        for &v in graph.out_neighbors(u) {
            a[(u, v)] = 1.0;
        }
    }
    a
}

/// PageRank by a dense solve of `(I − α Āᵀ D̄⁻¹) x = (1−α)/n · 1`, where `Ā`
/// links every dangling node to all nodes.
pub fn dense_pagerank(graph: &Graph, alpha: f64) -> Vec<f64> {
    let n = graph.n();
    let mut a = adjacency(graph);
    for u in 0..n {
        if graph.out_degree(u) == 0 {
            a.row_mut(u).fill(1.0);
        }
    }
    let mut m = DMatrix::<f64>::identity(n, n);
    for u in 0..n {
        let deg: f64 = a.row(u).sum();
        for v in 0..n {
            m[(v, u)] -= alpha * a[(u, v)] / deg;
        }
    }
    let rhs = DVector::from_element(n, (1.0 - alpha) / n as f64);
    let x = m.lu().solve(&rhs).unwrap();
    let s = x.sum();
    x.iter().map(|v| v / s).collect()
}

/// Katz by a dense solve of `(I − a Aᵀ) x = 1`.
pub fn dense_katz(graph: &Graph, a: f64) -> Vec<f64> {
    let n = graph.n();
    let m = DMatrix::<f64>::identity(n, n) - adjacency(graph).transpose() * a;
    m.lu().solve(&DVector::from_element(n, 1.0)).unwrap().iter().copied().collect()
}

/// Unit eigenvector of the largest eigenvalue of a symmetric matrix, signed
/// to have a nonnegative sum.
pub fn dominant_symmetric_eigenvector(m: DMatrix<f64>) -> Vec<f64> {
    let eig = m.symmetric_eigen();
    let i = eig.eigenvalues.imax();
    let v = eig.eigenvectors.column(i);
    let sign = if v.sum() < 0.0 { -1.0 } else { 1.0 };
    v.iter().map(|x| x * sign).collect()
}

pub fn sae(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
