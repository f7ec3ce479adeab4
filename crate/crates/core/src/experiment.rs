//! Batch runs: draw many samples per depth (and per baseline model), compare
//! each sample's centrality with the original's, and aggregate.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use crate::analysis::{adaptive_pr_bound, jaccard_diversity, mae, sae, worstcase_pr_bound};
use crate::baselines::{erdos_renyi, ergm_pagerank, ErgmConfig};
use crate::centrality::{compute, CentralityKind, CentralityParams};
use crate::error::{NestError, Result};
use crate::graph::Graph;
use crate::par::{map_indices, Execution};
use crate::refine::{InitialColoring, Mode};
use crate::rng::derive_seed;
use crate::sampler::{configuration_model, sample, SamplerConfig};

/// Summary SAE values are floored here so they can be plotted on a log axis.
pub const SAE_FLOOR: f64 = 1e-16;

/// Initial coloring and refinement mode under which a centrality is
/// preserved at the stable depth.
pub fn model_for(kind: CentralityKind, directed: bool) -> (InitialColoring, Mode) {
    let init = match kind {
        CentralityKind::PageRank => InitialColoring::OutDegree,
        _ => InitialColoring::Constant,
    };
    let mode = match (directed, kind) {
        (false, _) => Mode::Undirected,
        (true, CentralityKind::Authority | CentralityKind::Hub) => Mode::Both,
        (true, _) => Mode::In,
    };
    (init, mode)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaselineSpec {
    pub erdos_renyi: bool,
    pub configuration: bool,
    /// One ERGM cell per value.
    pub thetas: Vec<f64>,
    pub ergm_steps: usize,
    /// Samples per ERGM cell; `None` uses the experiment's sample count.
    pub ergm_samples: Option<usize>,
}

impl Default for BaselineSpec {
    fn default() -> Self {
        BaselineSpec {
            erdos_renyi: true,
            configuration: true,
            thetas: vec![0.0, 10.0, 20.0, 30.0, 40.0, 60.0],
            ergm_steps: 5_000,
            ergm_samples: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub kinds: Vec<CentralityKind>,
    pub depths: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    pub rate: f64,
    pub params: CentralityParams,
    pub baselines: Option<BaselineSpec>,
    pub execution: Execution,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        ExperimentSpec {
            kinds: vec![CentralityKind::PageRank],
            depths: vec![1, 2, 3],
            samples: 100,
            seed: 0,
            rate: 10.0,
            params: CentralityParams::default(),
            baselines: None,
            execution: Execution::default(),
        }
    }
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        if self.kinds.is_empty() {
            return Err(NestError::InvalidParameter("no centrality selected".into()));
        }
        if self.depths.is_empty() {
            return Err(NestError::InvalidParameter("depth range is empty".into()));
        }
        if self.depths.contains(&0) {
            return Err(NestError::InvalidDepth);
        }
        if self.samples == 0 {
            return Err(NestError::InvalidParameter("need at least one sample".into()));
        }
        Ok(())
    }
}

/// Null model a row was drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Nest,
    Er,
    Cm,
    Ergm,
}

impl Model {
    fn key(self) -> u64 {
        self as u64
    }
}

/// One sample. Metric columns are empty when the centrality could not be
/// computed on the sample (`note` says why).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub model: Model,
    pub centrality: &'static str,
    pub depth: Option<usize>,
    pub theta: Option<f64>,
    pub sample_idx: usize,
    pub sae: Option<f64>,
    pub mae: Option<f64>,
    pub jaccard: f64,
    pub bound_worstcase: Option<f64>,
    pub bound_adaptive: Option<f64>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimingRow {
    pub model: Model,
    pub centrality: &'static str,
    pub depth: Option<usize>,
    pub theta: Option<f64>,
    pub sample_idx: usize,
    pub runtime_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub model: Model,
    pub centrality: &'static str,
    pub depth: Option<usize>,
    pub theta: Option<f64>,
    pub samples: usize,
    pub failures: usize,
    pub sae_median: Option<f64>,
    pub sae_q16: Option<f64>,
    pub sae_q84: Option<f64>,
    pub jaccard_median: f64,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub rows: Vec<ExperimentRow>,
    pub timings: Vec<TimingRow>,
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    model: Model,
    kind_idx: usize,
    depth: Option<usize>,
    theta: Option<(usize, f64)>,
    sample_idx: usize,
}

fn cells(spec: &ExperimentSpec) -> Vec<Cell> {
    let mut out = Vec::new();
    for kind_idx in 0..spec.kinds.len() {
        for &d in &spec.depths {
            for s in 0..spec.samples {
                out.push(Cell { model: Model::Nest, kind_idx, depth: Some(d), theta: None, sample_idx: s });
            }
        }
        let Some(b) = &spec.baselines else { continue };
        for (model, on) in [(Model::Er, b.erdos_renyi), (Model::Cm, b.configuration)] {
            if on {
                for s in 0..spec.samples {
                    out.push(Cell { model, kind_idx, depth: None, theta: None, sample_idx: s });
                }
            }
        }
        for (i, &t) in b.thetas.iter().enumerate() {
            for s in 0..b.ergm_samples.unwrap_or(spec.samples) {
                out.push(Cell { model: Model::Ergm, kind_idx, depth: None, theta: Some((i, t)), sample_idx: s });
            }
        }
    }
    out
}

impl Cell {
    fn seed(&self, base: u64) -> u64 {
        let variant = self.depth.map(|d| d as u64).or(self.theta.map(|(i, _)| i as u64)).unwrap_or(0);
        derive_seed(base, &[self.model.key(), self.kind_idx as u64, variant, self.sample_idx as u64])
    }
}

/// Runs every (model, centrality, depth or theta, sample) cell. Cells are
/// independent and seeded from `spec.seed` and their coordinates, so the
/// rows do not depend on the execution mode.
pub fn run_experiment(graph: &Graph, spec: &ExperimentSpec) -> Result<ExperimentOutput> {
    spec.validate()?;
    let originals =
        spec.kinds.iter().map(|&k| compute(graph, k, &spec.params).map(|c| c.values)).collect::<Result<Vec<_>>>()?;
    let cells = cells(spec);
    let results = map_indices(cells.len(), spec.execution, |i| run_cell(graph, spec, &originals, cells[i]));
    let mut rows = Vec::with_capacity(cells.len());
    let mut timings = Vec::with_capacity(cells.len());
    for r in results {
        let (row, ms) = r?;
        timings.push(TimingRow {
            model: row.model,
            centrality: row.centrality,
            depth: row.depth,
            theta: row.theta,
            sample_idx: row.sample_idx,
            runtime_ms: ms,
        });
        rows.push(row);
    }
    Ok(ExperimentOutput { rows, timings })
}

fn run_cell(graph: &Graph, spec: &ExperimentSpec, originals: &[Vec<f64>], cell: Cell) -> Result<(ExperimentRow, f64)> {
    let start = Instant::now();
    let kind = spec.kinds[cell.kind_idx];
    let seed = cell.seed(spec.seed);
    let drawn = match cell.model {
        Model::Nest => {
            let (init, mode) = model_for(kind, graph.is_directed());
            let config = SamplerConfig {
                rate: spec.rate,
                execution: Execution::Sequential,
                ..SamplerConfig::new(cell.depth.expect("nest cells carry a depth"), init, mode, seed)
            };
            sample(graph, &config)?.graph
        }
        Model::Er => erdos_renyi(graph.n(), graph.m(), graph.is_directed(), seed)?,
        Model::Cm => configuration_model(graph, seed, spec.rate)?,
        Model::Ergm => {
            let b = spec.baselines.as_ref().expect("ergm cells come from a baseline spec");
            let theta = cell.theta.expect("ergm cells carry theta").1;
            ergm_pagerank(graph, ErgmConfig { theta, steps: b.ergm_steps, seed, alpha: spec.params.alpha })?
        }
    };
    let original = &originals[cell.kind_idx];
    let (err, max_err, note) = match compute(&drawn, kind, &spec.params) {
        Ok(c) => (Some(sae(original, &c.values)?), Some(mae(original, &c.values)?), String::new()),
        Err(e) => (None, None, e.to_string()),
    };
    let (worst, adaptive) = match (cell.model, kind, cell.depth) {
        (Model::Nest, CentralityKind::PageRank, Some(d)) => {
            (Some(worstcase_pr_bound(spec.params.alpha, d)), Some(adaptive_pr_bound(graph, spec.params.alpha, d)?))
        }
        _ => (None, None),
    };
    let row = ExperimentRow {
        model: cell.model,
        centrality: kind.name(),
        depth: cell.depth,
        theta: cell.theta.map(|(_, t)| t),
        sample_idx: cell.sample_idx,
        sae: err,
        mae: max_err,
        jaccard: jaccard_diversity(graph, &drawn)?,
        bound_worstcase: worst,
        bound_adaptive: adaptive,
        note,
    };
    Ok((row, start.elapsed().as_secs_f64() * 1e3))
}

/// Linear-interpolation quantile of sorted values.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let (lo, hi) = (pos.floor() as usize, pos.ceil() as usize);
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Median and 16%/84% quantiles of SAE (floored at [`SAE_FLOOR`]) and the
/// median diversity, per (model, centrality, depth or theta).
pub fn summarize(rows: &[ExperimentRow]) -> Vec<SummaryRow> {
    let mut groups: Vec<(SummaryRow, Vec<f64>, Vec<f64>)> = Vec::new();
    for row in rows {
        let pos = groups.iter().position(|(s, _, _)| {
            s.model == row.model && s.centrality == row.centrality && s.depth == row.depth && s.theta == row.theta
        });
        let idx = pos.unwrap_or_else(|| {
            groups.push((
                SummaryRow {
                    model: row.model,
                    centrality: row.centrality,
                    depth: row.depth,
                    theta: row.theta,
                    samples: 0,
                    failures: 0,
                    sae_median: None,
                    sae_q16: None,
                    sae_q84: None,
                    jaccard_median: 0.0,
                },
                Vec::new(),
                Vec::new(),
            ));
            groups.len() - 1
        });
        let (summary, saes, jac) = &mut groups[idx];
        summary.samples += 1;
        match row.sae {
            Some(v) => saes.push(v.max(SAE_FLOOR)),
            None => summary.failures += 1,
        }
        jac.push(row.jaccard);
    }
    groups
        .into_iter()
        .map(|(mut s, mut saes, mut jac)| {
            saes.sort_by(f64::total_cmp);
            jac.sort_by(f64::total_cmp);
            if !saes.is_empty() {
                s.sae_median = Some(quantile(&saes, 0.5));
                s.sae_q16 = Some(quantile(&saes, 0.16));
                s.sae_q84 = Some(quantile(&saes, 0.84));
            }
            s.jaccard_median = quantile(&jac, 0.5);
            s
        })
        .collect()
}

pub fn write_csv<W: Write, T: Serialize>(writer: W, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for row in rows {
        w.serialize(row).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_error(e: csv::Error) -> NestError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => NestError::Io(io),
        other => NestError::InvalidParameter(format!("csv: {other:?}")),
    }
}

/// Writes `samples.csv`, `summary.csv` and `timings.csv` into `dir`.
pub fn write_outputs(dir: &Path, output: &ExperimentOutput) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let open = |name: &str| std::fs::File::create(dir.join(name)).map(std::io::BufWriter::new);
    write_csv(open("samples.csv")?, &output.rows)?;
    write_csv(open("summary.csv")?, &summarize(&output.rows))?;
    write_csv(open("timings.csv")?, &output.timings)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Graph {
        Graph::from_edges(
            8,
            true,
            [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (6, 7), (7, 6), (1, 6), (5, 0), (7, 0)],
        )
        .unwrap()
    }

    #[test]
    fn quantiles_interpolate() {
        let v = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(quantile(&v, 0.5), 3.0);
        assert_eq!(quantile(&v, 0.0), 1.0);
        assert!((quantile(&v, 0.16) - 1.64).abs() < 1e-12);
    }

    #[test]
    fn rows_are_independent_of_execution() {
        let spec = ExperimentSpec {
            kinds: vec![CentralityKind::PageRank, CentralityKind::Katz],
            depths: vec![1, 2],
            samples: 4,
            seed: 11,
            baselines: Some(BaselineSpec { thetas: vec![0.0, 5.0], ergm_steps: 50, ..Default::default() }),
            ..Default::default()
        };
        let par = run_experiment(&small(), &spec).unwrap();
        let seq =
            run_experiment(&small(), &ExperimentSpec { execution: Execution::Sequential, ..spec.clone() }).unwrap();
        assert_eq!(par.rows, seq.rows);
        assert_eq!(par.rows.len(), 2 * (2 * 4 + 4 + 4 + 2 * 4));
        let summary = summarize(&par.rows);
        assert_eq!(summary.len(), 2 * (2 + 2 + 2));
        assert!(summary.iter().all(|s| s.samples == 4));
    }

    #[test]
    fn bounds_only_for_pagerank_samples() {
        let spec = ExperimentSpec {
            kinds: vec![CentralityKind::PageRank, CentralityKind::Eigenvector],
            depths: vec![1],
            samples: 2,
            ..Default::default()
        };
        let out = run_experiment(&small(), &spec).unwrap();
        for row in &out.rows {
            assert_eq!(row.bound_worstcase.is_some(), row.centrality == "pr");
        }
    }

    #[test]
    fn csv_has_header_and_one_line_per_row() {
        let spec = ExperimentSpec { depths: vec![1], samples: 3, ..Default::default() };
        let out = run_experiment(&small(), &spec).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &out.rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[0].starts_with("model,centrality,depth,theta,sample_idx,sae,mae,jaccard"));
    }

    #[test]
    fn rejects_empty_specs() {
        let g = small();
        assert!(run_experiment(&g, &ExperimentSpec { depths: vec![], ..Default::default() }).is_err());
        assert!(run_experiment(&g, &ExperimentSpec { samples: 0, ..Default::default() }).is_err());
        assert!(run_experiment(&g, &ExperimentSpec { depths: vec![0], ..Default::default() }).is_err());
    }
}
