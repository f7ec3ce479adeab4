use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde_json::json;

use nest_core::analysis::{audit_sample, CheckStatus};
use nest_core::baselines::{configuration_model, erdos_renyi, ergm_pagerank, ErgmConfig};
use nest_core::centrality::{
    compute, default_attenuation, power_iterates, spectral_radius_estimate, CentralityKind, CentralityParams,
    IterOptions, IterationKind,
};
use nest_core::experiment::{run_experiment, summarize, write_outputs, BaselineSpec, ExperimentSpec};
use nest_core::refine::{
    initial_coloring, inject_external_colors, read_colors, write_colors, Coloring, Depth, InitialColoring, Mode,
};
use nest_core::rng::derive_seed;
use nest_core::sampler::{partition_coloring, sample_with_coloring, Algorithm, BlockChoice, SamplerConfig};
use nest_core::{EdgeListOptions, Execution, Graph};

use crate::args::*;

fn load_graph(input: &InputArgs) -> Result<Graph> {
    load_path(&input.input, input.directed, Some(input))
}

fn load_path(path: &Path, directed: bool, input: Option<&InputArgs>) -> Result<Graph> {
    let opts = EdgeListOptions {
        directed,
        dedup: input.is_some_and(|i| i.dedup),
        strip_self_loops: input.is_some_and(|i| i.strip_self_loops),
        num_nodes: input.and_then(|i| i.nodes),
    };
    Graph::load(path, &opts).with_context(|| format!("reading {}", path.display()))
}

fn read_color_file(path: &Path) -> Result<Vec<usize>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_colors(file).with_context(|| format!("reading {}", path.display()))
}

fn parse_init(spec: &str) -> Result<InitialColoring> {
    match spec {
        "const" => Ok(InitialColoring::Constant),
        "outdeg" => Ok(InitialColoring::OutDegree),
        other => match other.strip_prefix("file:") {
            Some(path) => Ok(InitialColoring::External(read_color_file(Path::new(path))?)),
            None => bail!("--init must be const, outdeg or file:PATH, got {other:?}"),
        },
    }
}

fn resolve_mode(mode: Option<ModeArg>, directed: bool) -> Mode {
    match mode {
        Some(ModeArg::In) => Mode::In,
        Some(ModeArg::Out) => Mode::Out,
        Some(ModeArg::Both) => Mode::Both,
        Some(ModeArg::Undirected) => Mode::Undirected,
        Some(ModeArg::Gram) => Mode::Gram,
        None if directed => Mode::In,
        None => Mode::Undirected,
    }
}

fn kind_of(arg: KindArg) -> CentralityKind {
    match arg {
        KindArg::Pr => CentralityKind::PageRank,
        KindArg::Ev => CentralityKind::Eigenvector,
        KindArg::Katz => CentralityKind::Katz,
        KindArg::Auth => CentralityKind::Authority,
        KindArg::Hub => CentralityKind::Hub,
    }
}

fn params_of(iter: &IterArgs) -> CentralityParams {
    CentralityParams {
        alpha: iter.alpha,
        attenuation: iter.attenuation,
        iter: IterOptions { tol: iter.tol, max_iter: iter.max_iter },
    }
}

fn execution(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

/// Opens `path` for writing, or stdout.
fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let mut w = output(Some(path))?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn print_json(value: &serde_json::Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

pub fn refine(a: RefineArgs) -> Result<bool> {
    let graph = load_graph(&a.input)?;
    let init = initial_coloring(&graph, &parse_init(&a.model.init)?)?;
    let mode = resolve_mode(a.model.mode, graph.is_directed());
    let depth = a.depth.map_or(Depth::UntilStable, Depth::Rounds);
    let history = nest_core::refine(&graph, &init, mode, depth)?;
    if let Some(dir) = &a.out_dir {
        std::fs::create_dir_all(dir)?;
        for (t, coloring) in history.colorings().iter().enumerate() {
            let file = File::create(dir.join(format!("colors_{t}.txt")))?;
            write_colors(file, coloring)?;
        }
    }
    let report = json!({
        "n": graph.n(),
        "m": graph.m(),
        "directed": graph.is_directed(),
        "mode": mode,
        "classes_per_depth": history.class_counts(),
        "stable_depth": history.stable_depth(),
    });
    match &a.json {
        Some(p) => write_json(p, &report)?,
        None => print_json(&report)?,
    }
    Ok(true)
}

/// Partition coloring with external labels folded into the last round.
fn injected_coloring(graph: &Graph, config: &SamplerConfig, labels: Vec<usize>) -> Result<Coloring> {
    if labels.len() != graph.n() {
        bail!("injected colors cover {} nodes, graph has {}", labels.len(), graph.n());
    }
    let external = Coloring::from_labels(&labels, 0);
    if config.depth == 1 {
        let base = initial_coloring(graph, &config.init)?;
        let pairs: Vec<(usize, usize)> = (0..graph.n()).map(|v| (base.color(v), external.color(v))).collect();
        return Ok(Coloring::from_labels(&pairs, 0));
    }
    let init = initial_coloring(graph, &config.init)?;
    let history = nest_core::refine(graph, &init, config.mode, Depth::Rounds(config.depth - 1))?;
    let injected = inject_external_colors(graph, &history, &external, config.depth - 2)?;
    Ok(injected.at(config.depth - 1))
}

pub fn sample(a: SampleArgs) -> Result<bool> {
    let graph = load_graph(&a.input)?;
    let config = SamplerConfig {
        depth: a.depth,
        init: parse_init(&a.model.init)?,
        mode: resolve_mode(a.model.mode, graph.is_directed()),
        rate: a.rate,
        total_steps: a.steps,
        algorithm: match a.alg {
            AlgArg::Subgraph => Algorithm::PerSubgraph,
            AlgArg::Global => Algorithm::GlobalRandom,
        },
        block_choice: match a.block_choice {
            BlockChoiceArg::Uniform => BlockChoice::Uniform,
            BlockChoiceArg::Edges => BlockChoice::EdgeProportional,
        },
        seed: a.seed,
        execution: execution(a.sequential),
        ..Default::default()
    };
    if config.depth == 0 {
        bail!("--depth must be at least 1");
    }
    let coloring = match &a.inject {
        Some(path) => injected_coloring(&graph, &config, read_color_file(path)?)?,
        None => partition_coloring(&graph, &config)?,
    };
    let drawn = sample_with_coloring(&graph, &coloring, &config)?;
    let mut w = output(a.out.as_deref())?;
    drawn.graph.write_edge_list(&mut w)?;
    w.flush()?;
    if let Some(p) = &a.stats {
        write_json(p, &json!({ "seed": a.seed, "depth": a.depth, "stats": drawn.stats }))?;
    }
    Ok(true)
}

pub fn centrality(a: CentralityArgs) -> Result<bool> {
    let graph = load_graph(&a.input)?;
    let kind = kind_of(a.kind);
    let params = params_of(&a.iter);
    let result = compute(&graph, kind, &params)?;
    let mut w = output(a.out.as_deref())?;
    for v in &result.values {
        writeln!(w, "{v}")?;
    }
    w.flush()?;

    let mut meta = json!({
        "kind": kind,
        "norm": result.norm,
        "iterations": result.iterations,
        "residual": result.residual,
        "tol": params.iter.tol,
    });
    match kind {
        CentralityKind::PageRank => meta["alpha"] = json!(params.alpha),
        CentralityKind::Katz => {
            meta["attenuation"] = json!(params.attenuation.unwrap_or_else(|| default_attenuation(&graph)));
            meta["attenuation_is_default"] = json!(params.attenuation.is_none());
            meta["spectral_radius_estimate"] = json!(spectral_radius_estimate(&graph));
        }
        _ => {}
    }
    if let Some(path) = &a.trace {
        let iteration = match kind {
            CentralityKind::PageRank => IterationKind::PageRank { alpha: params.alpha },
            CentralityKind::Eigenvector => IterationKind::Eigenvector,
            _ => bail!("--trace is available for pr and ev only"),
        };
        let trace = power_iterates(&graph, iteration, a.trace_steps.unwrap_or(result.iterations), None)?;
        let mut t = output(Some(path))?;
        for x in &trace.iterates {
            let line: Vec<String> = x.iter().map(f64::to_string).collect();
            writeln!(t, "{}", line.join(" "))?;
        }
        t.flush()?;
    }
    let text = serde_json::to_string_pretty(&meta)?;
    match &a.meta {
        Some(p) => write_json(p, &meta)?,
        None => eprintln!("{text}"),
    }
    Ok(true)
}

pub fn compare(a: CompareArgs) -> Result<bool> {
    let original = load_path(&a.original, a.directed, None)?;
    let drawn = load_path(&a.sample, a.directed, None)?;
    let init = parse_init(&a.model.init)?;
    let mode = resolve_mode(a.model.mode, a.directed);
    let report = audit_sample(&original, &drawn, a.depth, &init, mode, a.alpha)?;
    let value = serde_json::to_value(&report)?;
    print_json(&value)?;
    if let Some(p) = &a.json {
        write_json(p, &value)?;
    }
    Ok(report.passed())
}

fn suffixed(path: &Path, theta: f64) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("sample");
    let name = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}_theta{theta}.{ext}"),
        None => format!("{stem}_theta{theta}"),
    };
    path.with_file_name(name)
}

pub fn baseline(a: BaselineArgs) -> Result<bool> {
    let graph = load_graph(&a.input)?;
    let drawn: Vec<(Option<f64>, Graph)> = match a.model {
        BaselineModel::Er => vec![(None, erdos_renyi(graph.n(), graph.m(), graph.is_directed(), a.seed)?)],
        BaselineModel::Cm => vec![(None, configuration_model(&graph, a.seed, a.rate)?)],
        BaselineModel::Ergm => a
            .theta
            .iter()
            .map(|&theta| {
                let config = ErgmConfig { theta, steps: a.steps, seed: a.seed, alpha: a.alpha };
                Ok((Some(theta), ergm_pagerank(&graph, config)?))
            })
            .collect::<Result<_>>()?,
    };
    if drawn.len() > 1 && a.out.is_none() {
        bail!("several thetas need --out");
    }
    for (theta, g) in &drawn {
        let path = match (&a.out, theta) {
            (Some(p), Some(t)) if drawn.len() > 1 => Some(suffixed(p, *t)),
            (p, _) => p.clone(),
        };
        let mut w = output(path.as_deref())?;
        g.write_edge_list(&mut w)?;
        w.flush()?;
    }
    Ok(true)
}

fn parse_depths(s: &str) -> Result<Vec<usize>> {
    if let Some((lo, hi)) = s.split_once("..") {
        let (lo, hi): (usize, usize) = (lo.trim().parse()?, hi.trim().parse()?);
        if lo > hi {
            bail!("empty depth range {s:?}");
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',').map(|d| d.trim().parse().with_context(|| format!("bad depth {d:?}"))).collect()
}

pub fn experiment(a: ExperimentArgs) -> Result<bool> {
    let graph = load_graph(&a.input)?;
    let spec = ExperimentSpec {
        kinds: a.kinds.iter().map(|&k| kind_of(k)).collect(),
        depths: parse_depths(&a.depths)?,
        samples: a.samples,
        seed: a.seed,
        rate: a.rate,
        params: params_of(&a.iter),
        baselines: a.baselines.then(|| BaselineSpec {
            erdos_renyi: true,
            configuration: true,
            thetas: a.thetas.clone(),
            ergm_steps: a.ergm_steps,
            ergm_samples: a.ergm_samples,
        }),
        execution: execution(a.sequential),
    };
    let out = run_experiment(&graph, &spec)?;
    write_outputs(&a.out_dir, &out)?;
    let summary = summarize(&out.rows);
    eprintln!("{} rows, {} summary groups written to {}", out.rows.len(), summary.len(), a.out_dir.display());
    Ok(true)
}

pub fn verify(a: VerifyArgs) -> Result<bool> {
    let graph = load_graph(&a.input)?;
    let init = parse_init(&a.model.init)?;
    let mode = resolve_mode(a.model.mode, graph.is_directed());
    let samples: Vec<(String, Graph)> = if a.sample.is_empty() {
        let config = SamplerConfig { rate: a.rate, ..SamplerConfig::new(a.depth, init.clone(), mode, a.seed) };
        (0..a.count)
            .map(|i| {
                let cfg = config.with_seed(derive_seed(a.seed, &[i as u64]));
                Ok((format!("drawn #{i}"), nest_core::sample(&graph, &cfg)?.graph))
            })
            .collect::<Result<_>>()?
    } else {
        a.sample
            .iter()
            .map(|p| Ok((p.display().to_string(), load_path(p, graph.is_directed(), None)?)))
            .collect::<Result<_>>()?
    };

    let mut all_pass = true;
    let mut reports = Vec::new();
    for (name, drawn) in &samples {
        let report = audit_sample(&graph, drawn, a.depth, &init, mode, a.alpha)?;
        for check in &report.checks {
            let tag = match check.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::NotApplicable => "N/A ",
            };
            println!("{tag} {name} {}: {}", check.name, check.detail);
        }
        all_pass &= report.passed();
        reports.push(json!({ "sample": name, "report": report }));
    }
    println!("{}: {} sample(s) checked", if all_pass { "PASS" } else { "FAIL" }, samples.len());
    if let Some(p) = &a.json {
        write_json(p, &serde_json::Value::Array(reports))?;
    }
    Ok(all_pass)
}
