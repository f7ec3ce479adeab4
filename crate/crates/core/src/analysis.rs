//! Comparison metrics between an original graph and a sample, and the
//! PageRank error bounds that hold for samples of the model.

use std::collections::HashSet;

use serde::Serialize;

use crate::centrality::{pagerank, power_iterates, IterOptions, IterationKind};
use crate::error::{NestError, Result};
use crate::graph::Graph;
use crate::refine::{joint_agreement, Depth, InitialColoring, Mode};

/// Additive slack for bound checks.
pub const BOUND_SLACK: f64 = 1e-12;
/// Elementwise tolerance for iterate-prefix equality.
pub const PREFIX_TOL: f64 = 1e-12;

fn check_len(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(NestError::LengthMismatch { expected: x.len(), actual: y.len() });
    }
    Ok(())
}

/// Sum of absolute errors.
pub fn sae(x: &[f64], y: &[f64]) -> Result<f64> {
    check_len(x, y)?;
    Ok(x.iter().zip(y).map(|(a, b)| (a - b).abs()).sum())
}

/// Maximum absolute error.
pub fn mae(x: &[f64], y: &[f64]) -> Result<f64> {
    check_len(x, y)?;
    Ok(x.iter().zip(y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}

/// `1 − |E1 ∩ E2| / |E1 ∪ E2|`; 0 when both edge sets are empty.
pub fn jaccard_diversity(g1: &Graph, g2: &Graph) -> Result<f64> {
    if g1.n() != g2.n() || g1.is_directed() != g2.is_directed() {
        return Err(NestError::Incompatible("graphs differ in size or directedness".into()));
    }
    let e1: HashSet<(usize, usize)> = g1.edges().collect();
    let common = g2.edges().filter(|e| e1.contains(e)).count();
    let union = g1.m() + g2.m() - common;
    if union == 0 {
        return Ok(0.0);
    }
    Ok(1.0 - common as f64 / union as f64)
}

/// `2α^{d+1}`: PageRank error of any sample that keeps depth-`d` colors
/// refined from out-degrees.
pub fn worstcase_pr_bound(alpha: f64, depth: usize) -> f64 {
    2.0 * alpha.powi(depth as i32 + 1)
}

/// `(2/(1−α))·‖x^{(k−1)} − x^{(k)}‖₁` with PageRank iterates of `graph` from
/// the uniform start.
pub fn adaptive_pr_bound(graph: &Graph, alpha: f64, k: usize) -> Result<f64> {
    if k < 1 {
        return Err(NestError::InvalidDepth);
    }
    let trace = power_iterates(graph, IterationKind::PageRank { alpha }, k, None)?;
    let step = sae(&trace.iterates[k - 1], &trace.iterates[k])?;
    Ok(2.0 / (1.0 - alpha) * step)
}

/// Whether the PageRank bounds apply to samples drawn with these settings:
/// colors must start from out-degree and follow in-neighbors.
pub fn pr_bounds_apply(init: &InitialColoring, mode: Mode) -> bool {
    *init == InitialColoring::OutDegree && matches!(mode, Mode::In | Mode::Undirected)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, ok: bool, detail: String) -> Self {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        Check { name, status, detail }
    }

    fn skipped(name: &'static str, why: &str) -> Self {
        Check { name, status: CheckStatus::NotApplicable, detail: why.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub depth: usize,
    pub alpha: f64,
    /// PageRank SAE / MAE between original and sample.
    pub sae: f64,
    pub mae: f64,
    pub jaccard_diversity: f64,
    pub bound_worstcase: Option<f64>,
    pub bound_adaptive: Option<f64>,
    /// Deepest `t` up to which all colors agree; `None` if they already
    /// differ at depth 0.
    pub colors_preserved_to_depth: Option<usize>,
    pub colors_preserved_all_depths: bool,
    pub checks: Vec<Check>,
}

impl ComparisonReport {
    /// No check failed (skipped checks count as passing).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }
}

/// Compares `sample` against `original` as a depth-`depth` sample: colors,
/// PageRank error, edge overlap, and (where their hypotheses hold) the two
/// PageRank bounds and iterate-prefix equality.
pub fn audit_sample(
    original: &Graph,
    sample: &Graph,
    depth: usize,
    init: &InitialColoring,
    mode: Mode,
    alpha: f64,
) -> Result<ComparisonReport> {
    if original.is_directed() != sample.is_directed() {
        return Err(NestError::Incompatible("graphs differ in directedness".into()));
    }
    let agreement = joint_agreement(original, sample, init, mode, Depth::UntilStable)?;
    let preserved = agreement.preserved_to_depth();
    let all_depths = agreement.preserved_at_all_depths();
    let colors_ok = all_depths || preserved >= Some(depth);

    let opts = IterOptions::default();
    let x = pagerank(original, alpha, &opts)?.values;
    let y = pagerank(sample, alpha, &opts)?.values;
    let err = sae(&x, &y)?;
    let max_err = mae(&x, &y)?;

    let mut checks = vec![Check::new(
        "colors_preserved",
        colors_ok,
        match (all_depths, preserved) {
            (true, _) => "all depths".to_string(),
            (false, Some(t)) => format!("to depth {t}, required {depth}"),
            (false, None) => format!("differ at depth 0, required {depth}"),
        },
    )];
    let (mut worst, mut adaptive) = (None, None);
    let hypotheses = pr_bounds_apply(init, mode) && depth >= 1;
    if hypotheses && colors_ok {
        let w = worstcase_pr_bound(alpha, depth);
        let a = adaptive_pr_bound(original, alpha, depth)?;
        checks.push(Check::new("worstcase_bound", err <= w + BOUND_SLACK, format!("{err:.3e} <= {w:.3e}")));
        checks.push(Check::new("adaptive_bound", err <= a + BOUND_SLACK, format!("{err:.3e} <= {a:.3e}")));
        let kind = IterationKind::PageRank { alpha };
        let tx = power_iterates(original, kind, depth, None)?;
        let ty = power_iterates(sample, kind, depth, None)?;
        let gap = tx
            .iterates
            .iter()
            .zip(&ty.iterates)
            .map(|(a, b)| mae(a, b))
            .try_fold(0.0, |acc: f64, m| m.map(|m| acc.max(m)))?;
        checks.push(Check::new("iterate_prefix", gap <= PREFIX_TOL, format!("max gap {gap:.3e} for t <= {depth}")));
        worst = Some(w);
        adaptive = Some(a);
    } else {
        let why = if hypotheses {
            "colors not preserved"
        } else {
            "requires out-degree initial colors and in-neighbor refinement"
        };
        for name in ["worstcase_bound", "adaptive_bound", "iterate_prefix"] {
            checks.push(Check::skipped(name, why));
        }
    }
    Ok(ComparisonReport {
        depth,
        alpha,
        sae: err,
        mae: max_err,
        jaccard_diversity: jaccard_diversity(original, sample)?,
        bound_worstcase: worst,
        bound_adaptive: adaptive,
        colors_preserved_to_depth: preserved,
        colors_preserved_all_depths: all_depths,
        checks,
    })
}
