//! Centralities computed on the quotient of an equitable coloring and lifted
//! back to nodes. Each class is one unknown, so the iteration runs on a
//! `k × k` table instead of the whole graph.

use super::pagerank::{Convergence, Step};
use super::spectral::{is_acyclic, spectral_radius_estimate};
use super::IterOptions;
use crate::error::{NestError, Result};
use crate::graph::Graph;
use crate::quotient::{quotient, QuotientView};
use crate::refine::{Coloring, Mode};

fn in_quotient(graph: &Graph, coloring: &Coloring) -> Result<QuotientView> {
    let mode = if graph.is_directed() { Mode::In } else { Mode::Undirected };
    quotient(graph, coloring, mode)
}

/// `y(i) = Σ_j Q(i, j) x(j)`.
fn apply(view: &QuotientView, x: &[f64]) -> Vec<f64> {
    (0..view.k()).map(|i| view.quotient.row(i).iter().zip(x).map(|(&q, &v)| q as f64 * v).sum()).collect()
}

/// Node-level SAE of two lifted vectors.
fn weighted_sae(view: &QuotientView, a: &[f64], b: &[f64]) -> f64 {
    view.class_sizes.iter().zip(a.iter().zip(b)).map(|(&s, (x, y))| s as f64 * (x - y).abs()).sum()
}

/// PageRank via the quotient. The coloring must be equitable with respect to
/// in-neighbors and constant out-degree on every class.
pub fn lifted_pagerank(graph: &Graph, coloring: &Coloring, alpha: f64, opts: &IterOptions) -> Result<Vec<f64>> {
    let view = in_quotient(graph, coloring)?;
    let k = view.k();
    let n = graph.n() as f64;
    let mut outdeg: Vec<Option<usize>> = vec![None; k];
    for (v, &c) in view.colors.iter().enumerate() {
        match outdeg[c] {
            Some(d) if d != graph.out_degree(v) => return Err(NestError::NotEquitable),
            _ => outdeg[c] = Some(graph.out_degree(v)),
        }
    }
    let outdeg: Vec<usize> = outdeg.into_iter().map(|d| d.unwrap_or(0)).collect();
    let mut x = vec![1.0 / n; k];
    let mut conv = Convergence::new(opts);
    loop {
        let dangling: f64 = (0..k).filter(|&j| outdeg[j] == 0).map(|j| view.class_sizes[j] as f64 * x[j]).sum();
        let share: Vec<f64> = (0..k).map(|j| if outdeg[j] == 0 { 0.0 } else { x[j] / outdeg[j] as f64 }).collect();
        let base = alpha * dangling / n + (1.0 - alpha) / n;
        let y: Vec<f64> = apply(&view, &share).into_iter().map(|v| alpha * v + base).collect();
        let r = weighted_sae(&view, &x, &y);
        x = y;
        if let Step::Done = conv.record("pagerank", r)? {
            break;
        }
    }
    let total: f64 = view.class_sizes.iter().zip(&x).map(|(&s, v)| s as f64 * v).sum();
    x.iter_mut().for_each(|v| *v /= total);
    Ok(view.lift(&x))
}

/// Eigenvector centrality via the quotient, unit 2-norm after lifting.
pub fn lifted_eigenvector(graph: &Graph, coloring: &Coloring, opts: &IterOptions) -> Result<Vec<f64>> {
    if graph.m() == 0 {
        return Err(NestError::NoEdges);
    }
    if is_acyclic(graph) {
        return Err(NestError::InvalidParameter(
            "eigenvector centrality is undefined on acyclic graphs (spectral radius 0)".into(),
        ));
    }
    let view = in_quotient(graph, coloring)?;
    let weighted_norm =
        |x: &[f64]| -> f64 { view.class_sizes.iter().zip(x).map(|(&s, v)| s as f64 * v * v).sum::<f64>().sqrt() };
    let n = graph.n() as f64;
    let mut x = vec![1.0 / n.sqrt(); view.k()];
    let mut conv = Convergence::new(opts);
    loop {
        let mut y = apply(&view, &x);
        y.iter_mut().zip(&x).for_each(|(a, b)| *a += b);
        let norm = weighted_norm(&y);
        y.iter_mut().for_each(|v| *v /= norm);
        let r = weighted_sae(&view, &x, &y);
        x = y;
        if let Step::Done = conv.record("eigenvector", r)? {
            break;
        }
    }
    Ok(view.lift(&x))
}

/// Katz centrality via the quotient. `None` uses the same default
/// attenuation as [`super::katz`].
pub fn lifted_katz(
    graph: &Graph,
    coloring: &Coloring,
    attenuation: Option<f64>,
    opts: &IterOptions,
) -> Result<Vec<f64>> {
    let view = in_quotient(graph, coloring)?;
    let radius = spectral_radius_estimate(graph);
    let a = attenuation.unwrap_or(0.5 / radius.max(1.0));
    if a * radius >= 1.0 {
        return Err(NestError::DivergentSeries { attenuation: a, radius });
    }
    let mut term = vec![1.0; view.k()];
    let mut sum = term.clone();
    let mut conv = Convergence::new(opts);
    loop {
        term = apply(&view, &term).into_iter().map(|v| a * v).collect();
        let size: f64 = view.class_sizes.iter().zip(&term).map(|(&s, v)| s as f64 * v.abs()).sum();
        sum.iter_mut().zip(&term).for_each(|(s, t)| *s += t);
        if let Step::Done = conv.record("katz", size)? {
            break;
        }
    }
    Ok(view.lift(&sum))
}
