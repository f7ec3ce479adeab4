use serde::Serialize;

use super::{check_nonempty, sae, transpose_product, CentralityKind, CentralityVector, IterOptions, Norm};
use crate::error::{NestError, Result};
use crate::graph::Graph;

/// Once the residual has not improved for this many rounds and sits below
/// [`STALL_CEILING`], rounding noise dominates and the iteration is done.
pub(crate) const STALL_WINDOW: usize = 64;
pub(crate) const STALL_CEILING: f64 = 1e-9;

/// Tracks residuals of an iteration and decides when to stop.
pub(crate) struct Convergence {
    tol: f64,
    max_iter: usize,
    best: f64,
    since_best: usize,
    pub iterations: usize,
    pub residual: f64,
}

pub(crate) enum Step {
    Continue,
    Done,
}

impl Convergence {
    pub fn new(opts: &IterOptions) -> Self {
        Convergence {
            tol: opts.tol,
            max_iter: opts.max_iter,
            best: f64::INFINITY,
            since_best: 0,
            iterations: 0,
            residual: f64::INFINITY,
        }
    }

    pub fn record(&mut self, kind: &'static str, residual: f64) -> Result<Step> {
        self.iterations += 1;
        self.residual = residual;
        if residual < self.tol {
            return Ok(Step::Done);
        }
        if residual < self.best {
            self.best = residual;
            self.since_best = 0;
        } else {
            self.since_best += 1;
            if self.since_best >= STALL_WINDOW && self.best < STALL_CEILING {
                return Ok(Step::Done);
            }
        }
        if self.iterations >= self.max_iter {
            return Err(NestError::NotConverged { kind, iterations: self.iterations, residual });
        }
        Ok(Step::Continue)
    }
}

/// One PageRank step. Dangling nodes spread their mass uniformly.
fn pagerank_step(graph: &Graph, alpha: f64, x: &[f64]) -> Vec<f64> {
    let n = graph.n();
    let mut dangling = 0.0;
    let share: Vec<f64> = (0..n)
        .map(|u| match graph.out_degree(u) {
            0 => {
                dangling += x[u];
                0.0
            }
            d => x[u] / d as f64,
        })
        .collect();
    let base = alpha * dangling / n as f64 + (1.0 - alpha) / n as f64;
    let mut y = transpose_product(graph, &share);
    y.iter_mut().for_each(|v| *v = alpha * *v + base);
    y
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(NestError::InvalidParameter(format!("damping factor must lie in (0, 1), got {alpha}")))
    }
}

/// PageRank with damping `alpha`, starting from the uniform vector and
/// normalized to sum 1.
pub fn pagerank(graph: &Graph, alpha: f64, opts: &IterOptions) -> Result<CentralityVector> {
    check_nonempty(graph)?;
    check_alpha(alpha)?;
    let n = graph.n();
    let mut x = vec![1.0 / n as f64; n];
    let mut conv = Convergence::new(opts);
    loop {
        let y = pagerank_step(graph, alpha, &x);
        let r = sae(&x, &y);
        x = y;
        if let Step::Done = conv.record("pagerank", r)? {
            break;
        }
    }
    let total: f64 = x.iter().sum();
    x.iter_mut().for_each(|v| *v /= total);
    Ok(CentralityVector {
        values: x,
        kind: CentralityKind::PageRank,
        norm: Norm::L1,
        iterations: conv.iterations,
        residual: conv.residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IterationKind {
    PageRank {
        alpha: f64,
    },
    /// Plain `x ← Aᵀx`, unnormalized.
    Eigenvector,
}

/// Iterates `x⁽⁰⁾, …, x⁽ᵗ⁾` of a power iteration, without any stopping rule.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationTrace {
    pub kind: IterationKind,
    pub iterates: Vec<Vec<f64>>,
}

impl IterationTrace {
    pub fn get(&self, t: usize) -> Option<&[f64]> {
        self.iterates.get(t).map(Vec::as_slice)
    }

    pub fn last(&self) -> &[f64] {
        self.iterates.last().expect("trace holds the start vector")
    }
}

/// Records `t_max` steps from `start` (uniform `1/n` for PageRank and all
/// ones for eigenvector iteration when `None`).
pub fn power_iterates(
    graph: &Graph,
    kind: IterationKind,
    t_max: usize,
    start: Option<Vec<f64>>,
) -> Result<IterationTrace> {
    check_nonempty(graph)?;
    let n = graph.n();
    let x0 = match start {
        Some(x) if x.len() != n => return Err(NestError::LengthMismatch { expected: n, actual: x.len() }),
        Some(x) => x,
        None => match kind {
            IterationKind::PageRank { .. } => vec![1.0 / n as f64; n],
            IterationKind::Eigenvector => vec![1.0; n],
        },
    };
    if let IterationKind::PageRank { alpha } = kind {
        check_alpha(alpha)?;
    }
    let mut iterates = Vec::with_capacity(t_max + 1);
    iterates.push(x0);
    for _ in 0..t_max {
        let x = iterates.last().unwrap();
        let y = match kind {
            IterationKind::PageRank { alpha } => pagerank_step(graph, alpha, x),
            IterationKind::Eigenvector => transpose_product(graph, x),
        };
        iterates.push(y);
    }
    Ok(IterationTrace { kind, iterates })
}

/// Same as [`pagerank`] but also returns every iterate. Meant for small
/// graphs.
pub fn pagerank_with_trace(
    graph: &Graph,
    alpha: f64,
    opts: &IterOptions,
) -> Result<(CentralityVector, IterationTrace)> {
    let pr = pagerank(graph, alpha, opts)?;
    let trace = power_iterates(graph, IterationKind::PageRank { alpha }, pr.iterations, None)?;
    Ok((pr, trace))
}
