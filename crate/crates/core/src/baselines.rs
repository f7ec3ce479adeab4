//! Reference null models: uniform random graphs with a fixed edge count, the
//! configuration model, and an exponential random graph model that rewards
//! PageRank similarity.

use rand::seq::index;
use rand::Rng;
use serde::Serialize;

use crate::centrality::{pagerank, IterOptions, DEFAULT_ALPHA};
use crate::error::{NestError, Result};
use crate::graph::Graph;
use crate::rng::{self, StreamRng};

pub use crate::sampler::configuration_model;

const ER_STREAM: u64 = u64::MAX - 1;
const ERGM_STREAM: u64 = u64::MAX - 2;

fn dyad_count(n: usize, directed: bool) -> usize {
    if directed {
        n * n.saturating_sub(1)
    } else {
        n * n.saturating_sub(1) / 2
    }
}

/// Maps `0..dyad_count` onto node pairs: row-major over `u < v` for
/// undirected graphs, over `u ≠ v` for directed ones.
fn dyad(n: usize, directed: bool, idx: usize) -> (usize, usize) {
    if directed {
        let (u, r) = (idx / (n - 1), idx % (n - 1));
        (u, if r >= u { r + 1 } else { r })
    } else {
        // row u starts at u·(2n − u − 1)/2
        let start = |u: usize| u * (2 * n - u - 1) / 2;
        let (mut lo, mut hi) = (0, n - 1);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if start(mid) <= idx {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo, lo + 1 + idx - start(lo))
    }
}

/// Uniform simple graph on `n` nodes with exactly `m` edges.
pub fn erdos_renyi(n: usize, m: usize, directed: bool, seed: u64) -> Result<Graph> {
    let max = dyad_count(n, directed);
    if m > max {
        return Err(NestError::InfeasibleEdgeCount { m, max });
    }
    let mut rng = rng::stream(seed, &[ER_STREAM]);
    let picks = index::sample(&mut rng, max, m);
    Graph::from_edges(n, directed, picks.iter().map(|i| dyad(n, directed, i)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErgmConfig {
    /// Weight of the PageRank similarity term; 0 gives unconstrained dyad
    /// flips.
    pub theta: f64,
    pub steps: usize,
    pub seed: u64,
    /// Damping factor of the PageRank energy.
    pub alpha: f64,
}

impl Default for ErgmConfig {
    fn default() -> Self {
        ErgmConfig { theta: 30.0, steps: 5_000, seed: 0, alpha: DEFAULT_ALPHA }
    }
}

/// Metropolis dyad-flip chain targeting
/// `p(G̃) ∝ exp(−10·θ·‖PR(G̃) − PR(G)‖₁)`.
pub struct ErgmChain {
    graph: Graph,
    target: Vec<f64>,
    energy: f64,
    config: ErgmConfig,
    rng: StreamRng,
    dyads: usize,
    accepted: u64,
    steps: u64,
}

impl ErgmChain {
    pub fn new(original: &Graph, config: ErgmConfig) -> Result<Self> {
        if !(config.theta >= 0.0 && config.theta.is_finite()) {
            return Err(NestError::InvalidParameter(format!("theta must be nonnegative, got {}", config.theta)));
        }
        let dyads = dyad_count(original.n(), original.is_directed());
        if dyads == 0 {
            return Err(NestError::InvalidParameter("graph has no dyads to flip".into()));
        }
        let target = pagerank(original, config.alpha, &IterOptions::default())?.values;
        Ok(ErgmChain {
            graph: original.clone(),
            target,
            energy: 0.0,
            config,
            rng: rng::stream(config.seed, &[ERGM_STREAM]),
            dyads,
            accepted: 0,
            steps: 0,
        })
    }

    fn energy_of(&self, graph: &Graph) -> Result<f64> {
        let pr = pagerank(graph, self.config.alpha, &IterOptions::default())?.values;
        Ok(pr.iter().zip(&self.target).map(|(a, b)| (a - b).abs()).sum())
    }

    fn flip(&mut self, (u, v): (usize, usize)) {
        if self.graph.contains_edge(u, v) {
            self.graph.remove_edge(u, v).expect("dyad in range");
        } else {
            self.graph.add_edge(u, v).expect("dyad in range");
        }
    }

    /// One proposal; returns whether it was accepted.
    pub fn step(&mut self) -> Result<bool> {
        self.steps += 1;
        let d = dyad(self.graph.n(), self.graph.is_directed(), self.rng.random_range(0..self.dyads));
        self.flip(d);
        if self.config.theta == 0.0 {
            self.accepted += 1;
            return Ok(true);
        }
        let proposed = self.energy_of(&self.graph)?;
        let log_ratio = -10.0 * self.config.theta * (proposed - self.energy);
        if log_ratio >= 0.0 || self.rng.random::<f64>() < log_ratio.exp() {
            self.energy = proposed;
            self.accepted += 1;
            Ok(true)
        } else {
            self.flip(d);
            Ok(false)
        }
    }

    pub fn run(&mut self, steps: usize) -> Result<()> {
        for _ in 0..steps {
            self.step()?;
        }
        Ok(())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// `‖PR(current) − PR(original)‖₁`; not tracked when `theta` is 0.
    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn acceptance_rate(&self) -> f64 {
        if self.steps == 0 {
            0.0
        } else {
            self.accepted as f64 / self.steps as f64
        }
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }
}

/// Runs [`ErgmChain`] from `graph` for `config.steps` proposals.
pub fn ergm_pagerank(graph: &Graph, config: ErgmConfig) -> Result<Graph> {
    let mut chain = ErgmChain::new(graph, config)?;
    chain.run(config.steps)?;
    Ok(chain.into_graph())
}
