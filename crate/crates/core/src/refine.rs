//! Color refinement (1-WL) with exact signature grouping.
//!
//! Each round maps a node to the signature `(own color, sorted neighbor
//! colors)` and hands out dense ids in order of first appearance over the
//! node ids. Grouping on the full signature makes the "hash" injective by
//! construction and keeps colorings canonical, so two partitions are equal
//! iff their color vectors are equal.

use std::collections::HashMap;
use std::hash::Hash;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{NestError, Result};
use crate::graph::Graph;
use crate::par::{map_indices, Execution};

/// Which neighborhoods a refinement round aggregates over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// In-neighbors (predecessors).
    In,
    /// Out-neighbors (successors).
    Out,
    /// Separate multisets for in- and out-neighbors.
    Both,
    /// Neighbors of an undirected graph.
    Undirected,
    /// Weighted neighbors in the graph of `AᵀA` (common in-neighbors).
    Gram,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Mode> {
        match s {
            "in" => Ok(Mode::In),
            "out" => Ok(Mode::Out),
            "both" => Ok(Mode::Both),
            "undirected" => Ok(Mode::Undirected),
            "gram" => Ok(Mode::Gram),
            other => Err(NestError::InvalidParameter(format!("unknown mode {other:?}"))),
        }
    }

    pub fn check(self, graph: &Graph) -> Result<()> {
        if self == Mode::Undirected && graph.is_directed() {
            return Err(NestError::DirectionMismatch("mode 'undirected' needs an undirected graph".into()));
        }
        Ok(())
    }
}

/// A canonical node coloring: colors are `0..k`, numbered by first
/// appearance over node ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    colors: Vec<usize>,
    k: usize,
    depth: usize,
}

impl Coloring {
    /// Canonicalizes arbitrary labels.
    pub fn from_labels<T: Hash + Eq>(labels: &[T], depth: usize) -> Coloring {
        let mut ids: HashMap<&T, usize> = HashMap::with_capacity(labels.len());
        let colors = labels
            .iter()
            .map(|l| {
                let next = ids.len();
                *ids.entry(l).or_insert(next)
            })
            .collect();
        Coloring { colors, k: ids.len(), depth }
    }

    pub fn constant(n: usize) -> Coloring {
        Coloring { colors: vec![0; n], k: usize::from(n > 0), depth: 0 }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub(crate) fn with_depth(mut self, depth: usize) -> Coloring {
        self.depth = depth;
        self
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &c in &self.colors {
            sizes[c] += 1;
        }
        sizes
    }

    /// Members of each class, in node order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.k];
        for (v, &c) in self.colors.iter().enumerate() {
            classes[c].push(v);
        }
        classes
    }

    /// `self ⊑ other`: every class of `self` lies inside one class of `other`.
    pub fn refines(&self, other: &Coloring) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mut image: Vec<Option<usize>> = vec![None; self.k];
        self.colors.iter().zip(&other.colors).all(|(&a, &b)| match image[a] {
            Some(prev) => prev == b,
            None => {
                image[a] = Some(b);
                true
            }
        })
    }

    /// Same partition (canonical colorings make this a vector comparison).
    pub fn equivalent(&self, other: &Coloring) -> bool {
        self.colors == other.colors
    }
}

/// How the depth-0 colors are chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InitialColoring {
    Constant,
    /// Out-degree (plain degree for undirected graphs).
    OutDegree,
    /// Externally supplied labels, one per node.
    External(Vec<usize>),
}

pub fn initial_coloring(graph: &Graph, kind: &InitialColoring) -> Result<Coloring> {
    match kind {
        InitialColoring::Constant => Ok(Coloring::constant(graph.n())),
        InitialColoring::OutDegree => Ok(Coloring::from_labels(&graph.out_degrees(), 0)),
        InitialColoring::External(labels) => {
            if labels.len() != graph.n() {
                return Err(NestError::LengthMismatch { expected: graph.n(), actual: labels.len() });
            }
            Ok(Coloring::from_labels(labels, 0))
        }
    }
}

/// Reads a colors file: one decimal color per line, line `i` for node `i`.
/// Blank lines and `#` comments are skipped.
pub fn read_colors<R: Read>(reader: R) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let c =
            line.parse().map_err(|e| NestError::Parse { line: i + 1, message: format!("bad color {line:?}: {e}") })?;
        out.push(c);
    }
    Ok(out)
}

pub fn write_colors<W: Write>(writer: W, coloring: &Coloring) -> Result<()> {
    let mut w = BufWriter::new(writer);
    for &c in coloring.colors() {
        writeln!(w, "{c}")?;
    }
    w.flush()?;
    Ok(())
}

/// Number of rounds to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    Rounds(usize),
    UntilStable,
}

/// Colorings `c⁽⁰⁾ … c⁽ᵈ⁾` of one refinement run.
///
/// Once a round reproduces its input the run stops early; later depths are
/// served by [`RefinementHistory::at`] from the stable coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementHistory {
    colorings: Vec<Coloring>,
    stable_depth: Option<usize>,
    mode: Mode,
}

impl RefinementHistory {
    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn stable_depth(&self) -> Option<usize> {
        self.stable_depth
    }

    /// Deepest computed coloring.
    pub fn last(&self) -> &Coloring {
        self.colorings.last().expect("history holds depth 0")
    }

    pub fn max_depth(&self) -> usize {
        self.colorings.len() - 1
    }

    pub fn colorings(&self) -> &[Coloring] {
        &self.colorings
    }

    /// Coloring at depth `t`; `None` if `t` lies past the computed rounds and
    /// the run never stabilized.
    pub fn get(&self, t: usize) -> Option<Coloring> {
        match self.colorings.get(t) {
            Some(c) => Some(c.clone()),
            None if self.stable_depth.is_some() => Some(self.last().clone().with_depth(t)),
            None => None,
        }
    }

    /// Like [`get`](Self::get) but panics on missing depths.
    pub fn at(&self, t: usize) -> Coloring {
        self.get(t).unwrap_or_else(|| panic!("depth {t} not computed (max {})", self.max_depth()))
    }

    /// Class counts per computed depth.
    pub fn class_counts(&self) -> Vec<usize> {
        self.colorings.iter().map(Coloring::k).collect()
    }
}

/// Per-node weighted neighbor lists of the graph of `AᵀA`.
fn gram_adjacency(graph: &Graph) -> Vec<Vec<(usize, usize)>> {
    (0..graph.n())
        .map(|v| {
            let mut acc: HashMap<usize, usize> = HashMap::new();
            for &u in graph.in_neighbors(v) {
                for &w in graph.out_neighbors(u) {
                    *acc.entry(w).or_default() += 1;
                }
            }
            let mut row: Vec<_> = acc.into_iter().collect();
            row.sort_unstable();
            row
        })
        .collect()
}

/// Everything a single round needs besides the current coloring.
pub(crate) struct RoundContext<'a> {
    graph: &'a Graph,
    mode: Mode,
    gram: Option<Vec<Vec<(usize, usize)>>>,
    exec: Execution,
}

impl<'a> RoundContext<'a> {
    pub(crate) fn new(graph: &'a Graph, mode: Mode, exec: Execution) -> Result<Self> {
        mode.check(graph)?;
        let gram = (mode == Mode::Gram).then(|| gram_adjacency(graph));
        Ok(RoundContext { graph, mode, gram, exec })
    }

    /// One refinement round. `extra` augments every color with an external
    /// label (own and neighbors); `pushing` restricts which neighbors
    /// contribute their color.
    pub(crate) fn step(&self, current: &Coloring, extra: Option<&Coloring>, pushing: Option<&[bool]>) -> Coloring {
        let ext_k = extra.map_or(1, Coloring::k);
        let label = |x: usize| current.colors[x] * ext_k + extra.map_or(0, |e| e.colors[x]);
        let pushes = |x: usize| pushing.is_none_or(|p| p[current.colors[x]]);
        let graph = self.graph;

        let signatures: Vec<Vec<usize>> = map_indices(graph.n(), self.exec, |v| {
            let mut sig = vec![label(v)];
            let push_sorted = |list: &[usize], sig: &mut Vec<usize>| {
                let start = sig.len();
                sig.extend(list.iter().copied().filter(|&x| pushes(x)).map(label));
                sig[start..].sort_unstable();
            };
            match self.mode {
                Mode::In => push_sorted(graph.in_neighbors(v), &mut sig),
                Mode::Out | Mode::Undirected => push_sorted(graph.out_neighbors(v), &mut sig),
                Mode::Both => {
                    push_sorted(graph.in_neighbors(v), &mut sig);
                    // separator keeps the two multisets apart
                    sig.push(usize::MAX);
                    push_sorted(graph.out_neighbors(v), &mut sig);
                }
                Mode::Gram => {
                    let row = &self.gram.as_ref().expect("gram adjacency")[v];
                    let mut per_color: Vec<(usize, usize)> =
                        row.iter().filter(|&&(w, _)| pushes(w)).map(|&(w, weight)| (label(w), weight)).collect();
                    per_color.sort_unstable();
                    let mut merged: Vec<(usize, usize)> = Vec::with_capacity(per_color.len());
                    for (c, w) in per_color {
                        match merged.last_mut() {
                            Some((lc, lw)) if *lc == c => *lw += w,
                            _ => merged.push((c, w)),
                        }
                    }
                    sig.extend(merged.into_iter().flat_map(|(c, w)| [c, w]));
                }
            }
            sig
        });
        Coloring::from_labels(&signatures, current.depth + 1)
    }
}

/// Runs color refinement from `init`.
pub fn refine(graph: &Graph, init: &Coloring, mode: Mode, depth: Depth) -> Result<RefinementHistory> {
    refine_with(graph, init, mode, depth, Execution::default())
}

pub fn refine_with(
    graph: &Graph,
    init: &Coloring,
    mode: Mode,
    depth: Depth,
    exec: Execution,
) -> Result<RefinementHistory> {
    if init.len() != graph.n() {
        return Err(NestError::LengthMismatch { expected: graph.n(), actual: init.len() });
    }
    let ctx = RoundContext::new(graph, mode, exec)?;
    let init = Coloring::from_labels(init.colors(), 0);
    Ok(continue_rounds(&ctx, vec![init], depth))
}

/// Extends `colorings` with plain rounds until `depth` or stability.
fn continue_rounds(ctx: &RoundContext<'_>, mut colorings: Vec<Coloring>, depth: Depth) -> RefinementHistory {
    // at most n strict refinements can happen, so n + 1 rounds always detect stability
    let limit = match depth {
        Depth::Rounds(d) => d,
        Depth::UntilStable => ctx.graph.n() + 1,
    };
    let mut stable_depth = None;
    while colorings.len() <= limit {
        let current = colorings.last().expect("non-empty");
        let next = ctx.step(current, None, None);
        if next.k() == current.k() {
            stable_depth = Some(current.depth());
            break;
        }
        colorings.push(next);
    }
    RefinementHistory { colorings, stable_depth, mode: ctx.mode }
}

/// True iff one more round splits no class.
pub fn is_equitable(graph: &Graph, coloring: &Coloring, mode: Mode) -> Result<bool> {
    if coloring.len() != graph.n() {
        return Err(NestError::LengthMismatch { expected: graph.n(), actual: coloring.len() });
    }
    let ctx = RoundContext::new(graph, mode, Execution::Sequential)?;
    let canonical = Coloring::from_labels(coloring.colors(), coloring.depth());
    Ok(ctx.step(&canonical, None, None).k() == canonical.k())
}

/// Intermediate-depth coloring: only nodes whose depth-`d` color is in
/// `pushing_classes` contribute their color to their neighbors' signatures.
/// The result `c*` satisfies `c⁽ᵈ⁺¹⁾ ⊑ c* ⊑ c⁽ᵈ⁾`, where `d` is the deepest
/// computed depth of `history`.
pub fn partial_refine(graph: &Graph, history: &RefinementHistory, pushing_classes: &[usize]) -> Result<Coloring> {
    let base = history.last();
    let mut pushing = vec![false; base.k()];
    for &c in pushing_classes {
        *pushing.get_mut(c).ok_or(NestError::UnknownClass(c))? = true;
    }
    let ctx = RoundContext::new(graph, history.mode(), Execution::default())?;
    Ok(ctx.step(base, None, Some(&pushing)).with_depth(base.depth()))
}

/// Recomputes every depth after `at_depth`, where round `at_depth → at_depth+1`
/// also sees the external label of each node and of each neighbor. Depths up
/// to `at_depth` are kept; the history keeps its original depth budget.
pub fn inject_external_colors(
    graph: &Graph,
    history: &RefinementHistory,
    external: &Coloring,
    at_depth: usize,
) -> Result<RefinementHistory> {
    if external.len() != graph.n() {
        return Err(NestError::LengthMismatch { expected: graph.n(), actual: external.len() });
    }
    if history.get(at_depth).is_none() {
        return Err(NestError::InvalidParameter(format!(
            "injection depth {at_depth} exceeds computed depth {}",
            history.max_depth()
        )));
    }
    let ctx = RoundContext::new(graph, history.mode(), Execution::default())?;
    let external = Coloring::from_labels(external.colors(), 0);
    // a stable history stands for every later depth too
    let mut colorings: Vec<Coloring> = (0..=at_depth).filter_map(|t| history.get(t)).collect();
    let budget = match history.stable_depth {
        // a stable run may stop long before its budget; keep refining as needed
        Some(_) => Depth::UntilStable,
        None => Depth::Rounds(history.max_depth().max(at_depth + 1)),
    };
    let injected = ctx.step(&colorings[at_depth], Some(&external), None);
    colorings.push(injected);
    let mut out = continue_rounds(&ctx, colorings, budget);
    // the injected round is a real refinement step, not a stability witness
    if out.stable_depth == Some(at_depth) {
        out.stable_depth = None;
    }
    Ok(out)
}

/// Refines `a` and `b` jointly (on their disjoint union) and reports, per
/// depth, whether every node carries the same color in both graphs. This
/// compares the colors themselves, not merely the induced partitions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JointAgreement {
    /// `agree[t]` for every computed depth `t`.
    pub agree: Vec<bool>,
    /// Depth at which the union's refinement became stable, if reached.
    pub stable_depth: Option<usize>,
}

impl JointAgreement {
    /// Largest `t` such that colors agree at every depth `≤ t`.
    pub fn preserved_to_depth(&self) -> Option<usize> {
        self.agree.iter().take_while(|&&a| a).count().checked_sub(1)
    }

    /// Agreement at the stable depth means agreement at every depth.
    pub fn preserved_at_all_depths(&self) -> bool {
        self.stable_depth.is_some() && self.agree.iter().all(|&a| a)
    }
}

pub fn joint_agreement(
    a: &Graph,
    b: &Graph,
    init: &InitialColoring,
    mode: Mode,
    depth: Depth,
) -> Result<JointAgreement> {
    if a.n() != b.n() {
        return Err(NestError::Incompatible(format!("{} vs {} nodes", a.n(), b.n())));
    }
    let union = a.disjoint_union(b)?;
    let union_init = match init {
        InitialColoring::External(labels) => {
            if labels.len() != a.n() {
                return Err(NestError::LengthMismatch { expected: a.n(), actual: labels.len() });
            }
            InitialColoring::External(labels.iter().chain(labels).copied().collect())
        }
        other => other.clone(),
    };
    let init = initial_coloring(&union, &union_init)?;
    let history = refine(&union, &init, mode, depth)?;
    let n = a.n();
    let agree = history.colorings().iter().map(|c| (0..n).all(|v| c.color(v) == c.color(v + n))).collect();
    Ok(JointAgreement { agree, stable_depth: history.stable_depth() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn undirected(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, false, edges.iter().copied()).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        undirected(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    fn path(n: usize) -> Graph {
        undirected(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    #[test]
    fn colors_file_round_trip() {
        let c = Coloring::from_labels(&[3, 3, 1, 0], 2);
        let mut buf = Vec::new();
        write_colors(&mut buf, &c).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "0\n0\n1\n2\n");
        assert_eq!(read_colors(&buf[..]).unwrap(), vec![0, 0, 1, 2]);
        assert!(matches!(read_colors(&b"1\nx\n"[..]), Err(NestError::Parse { line: 2, .. })));
    }

    #[test]
    fn initial_colorings() {
        let tri = cycle(3);
        assert_eq!(initial_coloring(&tri, &InitialColoring::Constant).unwrap().colors(), &[0, 0, 0]);
        let p3 = path(3);
        let deg = initial_coloring(&p3, &InitialColoring::OutDegree).unwrap();
        assert_eq!(deg.colors(), &[0, 1, 0]);
        let ext = initial_coloring(&tri, &InitialColoring::External(vec![5, 5, 9])).unwrap();
        assert_eq!((ext.colors(), ext.k()), (&[0, 0, 1][..], 2));
        assert!(matches!(
            initial_coloring(&tri, &InitialColoring::External(vec![1])),
            Err(NestError::LengthMismatch { expected: 3, actual: 1 })
        ));
    }

    #[test]
    fn regular_graph_is_stable_immediately() {
        let c4 = cycle(4);
        let h = refine(&c4, &Coloring::constant(4), Mode::Undirected, Depth::UntilStable).unwrap();
        assert_eq!(h.stable_depth(), Some(0));
        assert_eq!(h.last().k(), 1);
        assert_eq!(h.at(5).colors(), &[0, 0, 0, 0]);
    }

    #[test]
    fn path_stabilizes_after_one_round() {
        let p3 = path(3);
        let h = refine(&p3, &Coloring::constant(3), Mode::Undirected, Depth::UntilStable).unwrap();
        assert_eq!(h.stable_depth(), Some(1));
        assert_eq!(h.class_counts(), vec![1, 2]);
        assert_eq!(h.at(1).colors(), &[0, 1, 0]);
        assert_eq!(h.at(2).colors(), &[0, 1, 0]);
    }

    #[test]
    fn fixed_rounds_without_stability() {
        let p6 = path(6);
        let h = refine(&p6, &Coloring::constant(6), Mode::Undirected, Depth::Rounds(1)).unwrap();
        assert_eq!(h.max_depth(), 1);
        assert_eq!(h.stable_depth(), None);
        assert!(h.get(2).is_none());
    }

    #[test]
    fn undirected_mode_rejects_digraph() {
        let g = Graph::from_edges(2, true, [(0, 1)]).unwrap();
        assert!(refine(&g, &Coloring::constant(2), Mode::Undirected, Depth::UntilStable).is_err());
    }

    #[test]
    fn in_and_out_modes_differ() {
        let g = Graph::from_edges(5, true, [(0, 1), (2, 1), (3, 4)]).unwrap();
        let h_in = refine(&g, &Coloring::constant(5), Mode::In, Depth::UntilStable).unwrap();
        assert_eq!(h_in.last().colors(), &[0, 1, 0, 0, 2]);
        let h_out = refine(&g, &Coloring::constant(5), Mode::Out, Depth::UntilStable).unwrap();
        assert_eq!(h_out.last().colors(), &[0, 1, 0, 0, 1]);
        // a directed path is discrete under both directions
        let p = Graph::from_edges(3, true, [(0, 1), (1, 2)]).unwrap();
        let h_both = refine(&p, &Coloring::constant(3), Mode::Both, Depth::Rounds(1)).unwrap();
        assert_eq!(h_both.last().k(), 3);
        let h_in = refine(&p, &Coloring::constant(3), Mode::In, Depth::Rounds(1)).unwrap();
        assert_eq!(h_in.last().colors(), &[0, 1, 1]);
    }

    #[test]
    fn equitability() {
        assert!(is_equitable(&cycle(4), &Coloring::constant(4), Mode::Undirected).unwrap());
        assert!(!is_equitable(&path(3), &Coloring::constant(3), Mode::Undirected).unwrap());
        let c = Coloring::from_labels(&[0, 1, 0], 1);
        assert!(is_equitable(&path(3), &c, Mode::Undirected).unwrap());
    }

    #[test]
    fn refinement_relation() {
        let coarse = Coloring::from_labels(&[0, 0, 1, 1], 0);
        let fine = Coloring::from_labels(&[0, 1, 2, 2], 0);
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
        assert!(coarse.refines(&coarse));
        let relabeled = Coloring::from_labels(&[7, 7, 3, 3], 0);
        assert!(relabeled.equivalent(&coarse));
    }

    #[test]
    fn partial_refine_extremes() {
        let g = path(6);
        let h = refine(&g, &Coloring::constant(6), Mode::Undirected, Depth::Rounds(1)).unwrap();
        let all: Vec<usize> = (0..h.last().k()).collect();
        let next = refine(&g, &Coloring::constant(6), Mode::Undirected, Depth::Rounds(2)).unwrap();
        assert!(partial_refine(&g, &h, &all).unwrap().equivalent(next.last()));
        assert!(partial_refine(&g, &h, &[]).unwrap().equivalent(h.last()));
        assert!(matches!(partial_refine(&g, &h, &[9]), Err(NestError::UnknownClass(9))));
    }

    #[test]
    fn partial_refine_on_p4_pushing_ends() {
        // depth 1 on P4: ends {0,3}, middles {1,2}; each middle has one end
        // neighbor, so pushing only the end class splits nothing
        let g = path(4);
        let h = refine(&g, &Coloring::constant(4), Mode::Undirected, Depth::Rounds(1)).unwrap();
        let ends = h.last().color(0);
        let star = partial_refine(&g, &h, &[ends]).unwrap();
        assert_eq!(star.colors(), &[0, 1, 1, 0]);
        let deeper = refine(&g, h.last(), Mode::Undirected, Depth::Rounds(1)).unwrap();
        assert!(deeper.last().refines(&star) && star.refines(h.last()));
    }

    #[test]
    fn partial_refine_splits_by_pushing_class() {
        let g = path(5);
        let h = refine(&g, &Coloring::constant(5), Mode::Undirected, Depth::Rounds(1)).unwrap();
        assert_eq!(h.last().colors(), &[0, 1, 1, 1, 0]);
        // only the degree-1 class pushes: node 1 and 3 see one end, node 2 none
        let star = partial_refine(&g, &h, &[0]).unwrap();
        assert_eq!(star.colors(), &[0, 1, 2, 1, 0]);
        // only the degree-2 class pushes: ends see one middle, 1 and 3 see one, 2 sees two
        let star = partial_refine(&g, &h, &[1]).unwrap();
        assert_eq!(star.colors(), &[0, 1, 2, 1, 0]);
        let next = refine(&g, h.last(), Mode::Undirected, Depth::Rounds(1)).unwrap();
        assert!(next.last().refines(&star) && star.refines(h.last()));
    }

    #[test]
    fn injection() {
        let g = cycle(6);
        let h = refine(&g, &Coloring::constant(6), Mode::Undirected, Depth::Rounds(3)).unwrap();
        let same = inject_external_colors(&g, &h, &Coloring::constant(6), 0).unwrap();
        assert!(same.last().equivalent(h.last()));

        let ids = Coloring::from_labels(&(0..6).collect::<Vec<_>>(), 0);
        let discrete = inject_external_colors(&g, &h, &ids, 0).unwrap();
        assert_eq!(discrete.at(1).k(), 6);

        let alternating = Coloring::from_labels(&[0, 1, 0, 1, 0, 1], 0);
        let bip = inject_external_colors(&g, &h, &alternating, 0).unwrap();
        assert_eq!(bip.at(0).k(), 1);
        assert!(bip.at(1).refines(&alternating));
        assert_eq!(bip.at(1).colors(), &[0, 1, 0, 1, 0, 1]);

        assert!(inject_external_colors(&g, &h, &Coloring::constant(5), 0).is_err());
    }

    #[test]
    fn joint_agreement_compares_colors_not_partitions() {
        // same partition shape, different degrees: 0 has degree 1 in a, 2 in b
        let a = undirected(3, &[(0, 1), (1, 2)]);
        let b = undirected(3, &[(1, 0), (0, 2)]);
        let j = joint_agreement(&a, &b, &InitialColoring::Constant, Mode::Undirected, Depth::UntilStable).unwrap();
        assert_eq!(j.preserved_to_depth(), Some(0));
        let j = joint_agreement(&a, &a, &InitialColoring::Constant, Mode::Undirected, Depth::UntilStable).unwrap();
        assert!(j.preserved_at_all_depths());
    }

    #[test]
    fn gram_mode_runs() {
        let g = Graph::from_edges(4, true, [(0, 1), (0, 2), (3, 2)]).unwrap();
        let h = refine(&g, &Coloring::constant(4), Mode::Gram, Depth::UntilStable).unwrap();
        // AᵀA: node 1 and 2 share in-neighbor 0; 2 has in-degree 2, 1 has 1
        let c = h.last();
        assert_ne!(c.color(1), c.color(2));
        assert_eq!(c.color(0), c.color(3));
    }
}
