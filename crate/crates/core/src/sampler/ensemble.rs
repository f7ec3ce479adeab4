//! Brute-force enumeration of a model's support, used as a test oracle.

use crate::error::{NestError, Result};
use crate::graph::Graph;
use crate::refine::{joint_agreement, Depth, InitialColoring, Mode};

pub const DEFAULT_ENUMERATION_CAP: usize = 7;

/// Hard limit on the number of dyads when no degree budget prunes the search.
const MAX_UNCONSTRAINED_DYADS: usize = 22;

/// Every labeled simple graph on `graph.n()` nodes whose refinement colors
/// agree with `graph`'s at all depths `t ≤ depth`.
///
/// Candidates are generated by backtracking over dyads under the degree
/// sequence the colors must preserve, then filtered by an exact joint
/// refinement check.
pub fn enumerate_ensemble(
    graph: &Graph,
    depth: usize,
    init: &InitialColoring,
    mode: Mode,
    cap: usize,
) -> Result<Vec<Graph>> {
    let n = graph.n();
    if n > cap {
        return Err(NestError::EnumerationCap { cap, n });
    }
    if depth < 1 {
        return Err(NestError::InvalidDepth);
    }
    mode.check(graph)?;
    let directed = graph.is_directed();
    let dyads: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| if directed { u != v } else { u < v })
        .collect();

    let (track_out, track_in) = if !directed {
        (mode != Mode::Gram, false)
    } else {
        (
            matches!(mode, Mode::Out | Mode::Both) || *init == InitialColoring::OutDegree,
            matches!(mode, Mode::In | Mode::Both),
        )
    };
    if !track_out && !track_in && dyads.len() > MAX_UNCONSTRAINED_DYADS {
        return Err(NestError::EnumerationCap { cap, n });
    }
    let mut search = Search {
        directed,
        dyads: &dyads,
        out_left: track_out.then(|| graph.out_degrees()),
        in_left: track_in.then(|| graph.in_degrees()),
        chosen: Vec::new(),
        found: Vec::new(),
    };
    search.run(0);

    let mut members = Vec::new();
    for edges in search.found {
        let candidate = Graph::from_edges(n, directed, edges).expect("dyads are simple");
        let agreement = joint_agreement(graph, &candidate, init, mode, Depth::Rounds(depth))?;
        if agreement.preserved_at_all_depths() || agreement.preserved_to_depth() >= Some(depth) {
            members.push(candidate);
        }
    }
    Ok(members)
}

struct Search<'a> {
    directed: bool,
    dyads: &'a [(usize, usize)],
    out_left: Option<Vec<usize>>,
    in_left: Option<Vec<usize>>,
    chosen: Vec<(usize, usize)>,
    found: Vec<Vec<(usize, usize)>>,
}

impl Search<'_> {
    fn budgets_empty(&self) -> bool {
        self.out_left.as_ref().is_none_or(|b| b.iter().all(|&x| x == 0))
            && self.in_left.as_ref().is_none_or(|b| b.iter().all(|&x| x == 0))
    }

    fn fits(&self, u: usize, v: usize) -> bool {
        let out_ok = self.out_left.as_ref().is_none_or(|b| if self.directed { b[u] > 0 } else { b[u] > 0 && b[v] > 0 });
        let in_ok = self.in_left.as_ref().is_none_or(|b| b[v] > 0);
        out_ok && in_ok
    }

    fn apply(&mut self, u: usize, v: usize, delta: isize) {
        let directed = self.directed;
        let bump = |x: &mut usize| *x = x.checked_add_signed(-delta).expect("budget underflow");
        if let Some(b) = self.out_left.as_mut() {
            bump(&mut b[u]);
            if !directed {
                bump(&mut b[v]);
            }
        }
        if let Some(b) = self.in_left.as_mut() {
            bump(&mut b[v]);
        }
    }

    fn run(&mut self, idx: usize) {
        if idx == self.dyads.len() {
            if self.budgets_empty() {
                self.found.push(self.chosen.clone());
            }
            return;
        }
        let (u, v) = self.dyads[idx];
        if self.fits(u, v) {
            self.apply(u, v, 1);
            self.chosen.push((u, v));
            self.run(idx + 1);
            self.chosen.pop();
            self.apply(u, v, -1);
        }
        self.run(idx + 1);
    }
}
