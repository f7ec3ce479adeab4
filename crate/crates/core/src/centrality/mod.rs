//! Spectral centralities computed by sparse power iteration.
//!
//! Every iteration stops when the sum of absolute differences between two
//! successive iterates drops below `tol`.

mod lift;
mod pagerank;
mod spectral;

use serde::{Deserialize, Serialize};

pub use lift::{lifted_eigenvector, lifted_katz, lifted_pagerank};
pub use pagerank::{pagerank, pagerank_with_trace, power_iterates, IterationKind, IterationTrace};
pub use spectral::{
    default_attenuation, eigenvector_centrality, hits, katz, spectral_radius_estimate, RADIUS_ESTIMATE_STEPS,
};

use crate::error::{NestError, Result};
use crate::graph::Graph;
use crate::par::{map_indices, Execution};

pub const DEFAULT_TOL: f64 = 1e-15;
pub const DEFAULT_MAX_ITER: usize = 100_000;
pub const DEFAULT_ALPHA: f64 = 0.85;

/// Graphs at least this large get their matrix-vector products spread over
/// the thread pool.
const PARALLEL_MIN_NODES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CentralityKind {
    #[serde(rename = "pr")]
    PageRank,
    #[serde(rename = "ev")]
    Eigenvector,
    Katz,
    #[serde(rename = "auth")]
    Authority,
    Hub,
}

impl CentralityKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "pr" | "pagerank" => Ok(CentralityKind::PageRank),
            "ev" | "eigenvector" => Ok(CentralityKind::Eigenvector),
            "katz" => Ok(CentralityKind::Katz),
            "auth" | "authority" => Ok(CentralityKind::Authority),
            "hub" => Ok(CentralityKind::Hub),
            other => Err(NestError::InvalidParameter(format!("unknown centrality {other:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CentralityKind::PageRank => "pr",
            CentralityKind::Eigenvector => "ev",
            CentralityKind::Katz => "katz",
            CentralityKind::Authority => "auth",
            CentralityKind::Hub => "hub",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    L1,
    L2,
    Raw,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CentralityVector {
    pub values: Vec<f64>,
    pub kind: CentralityKind,
    pub norm: Norm,
    pub iterations: usize,
    /// SAE between the last two iterates.
    pub residual: f64,
}

impl CentralityVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for IterOptions {
    fn default() -> Self {
        IterOptions { tol: DEFAULT_TOL, max_iter: DEFAULT_MAX_ITER }
    }
}

/// Parameters for [`compute`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralityParams {
    pub alpha: f64,
    /// Katz attenuation; `None` picks half the inverse spectral radius estimate.
    pub attenuation: Option<f64>,
    pub iter: IterOptions,
}

impl Default for CentralityParams {
    fn default() -> Self {
        CentralityParams { alpha: DEFAULT_ALPHA, attenuation: None, iter: IterOptions::default() }
    }
}

/// Dispatches on `kind`.
pub fn compute(graph: &Graph, kind: CentralityKind, params: &CentralityParams) -> Result<CentralityVector> {
    match kind {
        CentralityKind::PageRank => pagerank(graph, params.alpha, &params.iter),
        CentralityKind::Eigenvector => eigenvector_centrality(graph, &params.iter),
        CentralityKind::Katz => katz(graph, params.attenuation, &params.iter),
        CentralityKind::Authority => Ok(hits(graph, &params.iter)?.0),
        CentralityKind::Hub => Ok(hits(graph, &params.iter)?.1),
    }
}

fn exec_for(graph: &Graph) -> Execution {
    if graph.n() >= PARALLEL_MIN_NODES {
        Execution::Parallel
    } else {
        Execution::Sequential
    }
}

/// `Aᵀx`: every node sums its in-neighbors' values.
pub(crate) fn transpose_product(graph: &Graph, x: &[f64]) -> Vec<f64> {
    map_indices(graph.n(), exec_for(graph), |v| graph.in_neighbors(v).iter().map(|&u| x[u]).sum())
}

/// `Ax`: every node sums its out-neighbors' values.
pub(crate) fn product(graph: &Graph, x: &[f64]) -> Vec<f64> {
    map_indices(graph.n(), exec_for(graph), |v| graph.out_neighbors(v).iter().map(|&u| x[u]).sum())
}

pub(crate) fn sae(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

pub(crate) fn norm1(x: &[f64]) -> f64 {
    x.iter().map(|v| v.abs()).sum()
}

pub(crate) fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub(crate) fn scale(x: &mut [f64], factor: f64) {
    x.iter_mut().for_each(|v| *v *= factor);
}

pub(crate) fn check_nonempty(graph: &Graph) -> Result<()> {
    if graph.n() == 0 {
        Err(NestError::EmptyGraph)
    } else {
        Ok(())
    }
}

pub(crate) fn check_edges(graph: &Graph) -> Result<()> {
    check_nonempty(graph)?;
    if graph.m() == 0 {
        Err(NestError::NoEdges)
    } else {
        Ok(())
    }
}
