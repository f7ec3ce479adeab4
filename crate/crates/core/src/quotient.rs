//! Algebraic view of a coloring: class indicator, quotient count tables
//! and the cross-depth tables relating consecutive refinement rounds.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{NestError, Result};
use crate::graph::Graph;
use crate::refine::{Coloring, Mode, RefinementHistory};

/// Dense `rows × cols` table of counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountTable {
    rows: usize,
    cols: usize,
    data: Vec<usize>,
}

impl CountTable {
    fn zeros(rows: usize, cols: usize) -> Self {
        CountTable { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn row_mut(&mut self, i: usize) -> &mut [usize] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }
}

/// Per-node neighbor counts by class: `counts[v][j]` is the number (or, for
/// [`Mode::Gram`], total weight) of `v`'s neighbors of color `j`.
fn node_class_counts(graph: &Graph, coloring: &Coloring, neighborhood: Neighborhood) -> Vec<Vec<usize>> {
    let k = coloring.k();
    (0..graph.n())
        .map(|v| {
            let mut row = vec![0; k];
            match neighborhood {
                Neighborhood::In => graph.in_neighbors(v).iter().for_each(|&x| row[coloring.color(x)] += 1),
                Neighborhood::Out => graph.out_neighbors(v).iter().for_each(|&x| row[coloring.color(x)] += 1),
                Neighborhood::Gram => {
                    let mut weights: HashMap<usize, usize> = HashMap::new();
                    for &u in graph.in_neighbors(v) {
                        for &w in graph.out_neighbors(u) {
                            *weights.entry(w).or_default() += 1;
                        }
                    }
                    for (w, c) in weights {
                        row[coloring.color(w)] += c;
                    }
                }
            }
            row
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Neighborhood {
    In,
    Out,
    Gram,
}

fn primary_neighborhood(mode: Mode) -> Neighborhood {
    match mode {
        Mode::In | Mode::Both => Neighborhood::In,
        Mode::Out | Mode::Undirected => Neighborhood::Out,
        Mode::Gram => Neighborhood::Gram,
    }
}

/// Collapses per-node rows into one row per class, failing if two members
/// of a class disagree.
fn collapse(coloring: &Coloring, per_node: &[Vec<usize>], cols: usize) -> Option<CountTable> {
    let mut table = CountTable::zeros(coloring.k(), cols);
    let mut seen = vec![false; coloring.k()];
    for (v, row) in per_node.iter().enumerate() {
        let c = coloring.color(v);
        if seen[c] {
            if table.row(c) != row.as_slice() {
                return None;
            }
        } else {
            table.row_mut(c).copy_from_slice(row);
            seen[c] = true;
        }
    }
    Some(table)
}

/// Indicator `H` (as colors plus class sizes) and the quotient `A^π` of an
/// equitable coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientView {
    pub colors: Vec<usize>,
    pub class_sizes: Vec<usize>,
    pub mode: Mode,
    /// `(i, j)`: neighbors of color `j` of any node of color `i`. In-neighbors
    /// for `in`/`both`, out-neighbors for `out`, neighbors for `undirected`,
    /// `AᵀA` weights for `gram`.
    pub quotient: CountTable,
    /// Out-neighbor table, only for [`Mode::Both`].
    pub quotient_out: Option<CountTable>,
}

impl QuotientView {
    /// `H w`: lifts one value per class to one value per node.
    pub fn lift(&self, class_values: &[f64]) -> Vec<f64> {
        self.colors.iter().map(|&c| class_values[c]).collect()
    }

    pub fn k(&self) -> usize {
        self.class_sizes.len()
    }
}

/// Builds the quotient of an equitable coloring. Equitability is checked
/// directly: every member of a class must have the same per-class counts.
pub fn quotient(graph: &Graph, coloring: &Coloring, mode: Mode) -> Result<QuotientView> {
    if coloring.len() != graph.n() {
        return Err(NestError::LengthMismatch { expected: graph.n(), actual: coloring.len() });
    }
    mode.check(graph)?;
    let coloring = Coloring::from_labels(coloring.colors(), coloring.depth());
    let k = coloring.k();
    let per_node = node_class_counts(graph, &coloring, primary_neighborhood(mode));
    let quotient = collapse(&coloring, &per_node, k).ok_or(NestError::NotEquitable)?;
    let quotient_out = if mode == Mode::Both {
        let per_node = node_class_counts(graph, &coloring, Neighborhood::Out);
        Some(collapse(&coloring, &per_node, k).ok_or(NestError::NotEquitable)?)
    } else {
        None
    };
    Ok(QuotientView {
        colors: coloring.colors().to_vec(),
        class_sizes: coloring.class_sizes(),
        mode,
        quotient,
        quotient_out,
    })
}

/// Cross-depth table `X^π_{t+1}` with rows indexed by depth-`t+1` colors and
/// columns by depth-`t` colors: entry `(i, j)` counts the neighbors of depth-`t`
/// color `j` of any node with depth-`t+1` color `i` (in-neighbors for `in` and
/// `both`). Always well defined because round `t+1` separates every pair of
/// nodes whose counts differ.
pub fn cross_depth(graph: &Graph, history: &RefinementHistory, t: usize) -> Result<CountTable> {
    let (Some(prev), Some(next)) = (history.get(t), history.get(t + 1)) else {
        return Err(NestError::InvalidParameter(format!("depth {} not computed", t + 1)));
    };
    let per_node = node_class_counts(graph, &prev, primary_neighborhood(history.mode()));
    // a round that injected external labels may refine further than the counts
    // alone; collapse still succeeds because finer rows are consistent
    collapse(&next, &per_node, prev.k()).ok_or(NestError::NotEquitable)
}
