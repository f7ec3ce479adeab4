use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use serde::Serialize;

use crate::graph::Graph;
use crate::refine::Coloring;

/// Endpoint colors of a block. For undirected graphs `source <= target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BlockKey {
    pub source: usize,
    pub target: usize,
}

impl BlockKey {
    pub fn is_unicolored(&self) -> bool {
        self.source == self.target
    }
}

/// Move counters of one block.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SwapStats {
    pub attempts: u64,
    pub accepted: u64,
    /// Attempts that hit a repeated node, an existing target edge or the same edge twice.
    pub rejected: u64,
    pub triangle_attempts: u64,
    pub triangle_reversals: u64,
}

impl SwapStats {
    pub fn merge(&mut self, other: &SwapStats) {
        self.attempts += other.attempts;
        self.accepted += other.accepted;
        self.rejected += other.rejected;
        self.triangle_attempts += other.triangle_attempts;
        self.triangle_reversals += other.triangle_reversals;
    }
}

/// The edges of one color-pair subgraph together with a private membership
/// index, so blocks can be rewired independently.
///
/// Undirected two-color blocks store every edge oriented from the `source`
/// class to the `target` class; exchanging heads then keeps the block
/// bipartite. Undirected unicolored blocks store an arbitrary orientation
/// that is re-randomized on every swap proposal.
#[derive(Debug, Clone)]
pub struct Block {
    key: BlockKey,
    directed: bool,
    edges: Vec<(usize, usize)>,
    position: HashMap<(usize, usize), usize>,
    nodes: Vec<usize>,
    stats: SwapStats,
}

impl Block {
    fn new(key: BlockKey, directed: bool, edges: Vec<(usize, usize)>) -> Block {
        let mut nodes: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        nodes.sort_unstable();
        nodes.dedup();
        let position = edges.iter().enumerate().map(|(i, &(u, v))| (canonical(directed, u, v), i)).collect();
        Block { key, directed, edges, position, nodes, stats: SwapStats::default() }
    }

    pub fn key(&self) -> BlockKey {
        self.key
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Nodes incident to at least one edge of the block.
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn stats(&self) -> SwapStats {
        self.stats
    }

    /// A block with fewer than two edges admits no move.
    pub fn is_frozen(&self) -> bool {
        self.edges.len() < 2
    }

    /// Triangle reversals are needed only in directed unicolored blocks.
    pub fn needs_triangle_moves(&self) -> bool {
        self.directed && self.key.is_unicolored()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.position.contains_key(&canonical(self.directed, u, v))
    }

    fn replace(&mut self, slot: usize, edge: (usize, usize)) {
        let (ou, ov) = self.edges[slot];
        self.position.remove(&canonical(self.directed, ou, ov));
        self.position.insert(canonical(self.directed, edge.0, edge.1), slot);
        self.edges[slot] = edge;
    }

    /// One double-edge-swap proposal: pick two edges `u1v1`, `u2v2` uniformly
    /// (with replacement) and, if the four endpoints are distinct and neither
    /// `u1v2` nor `u2v1` exists, replace them by `u1v2`, `u2v1`.
    pub fn edge_swap_attempt<R: Rng + ?Sized>(&mut self, rng: &mut R) -> bool {
        if self.is_frozen() {
            return false;
        }
        self.stats.attempts += 1;
        let m = self.edges.len();
        let i = rng.random_range(0..m);
        let j = rng.random_range(0..m);
        let (mut u1, mut v1) = self.edges[i];
        let (mut u2, mut v2) = self.edges[j];
        if !self.directed && self.key.is_unicolored() {
            if rng.random::<bool>() {
                std::mem::swap(&mut u1, &mut v1);
            }
            if rng.random::<bool>() {
                std::mem::swap(&mut u2, &mut v2);
            }
        }
        let distinct = i != j && u1 != u2 && u1 != v2 && v1 != u2 && v1 != v2;
        if !distinct || self.contains(u1, v2) || self.contains(u2, v1) {
            self.stats.rejected += 1;
            return false;
        }
        self.replace(i, (u1, v2));
        self.replace(j, (u2, v1));
        self.stats.accepted += 1;
        true
    }

    /// Directed triangle reversal: draw three nodes of the block uniformly
    /// (with replacement); if they are distinct and form a directed 3-cycle
    /// whose reverse arcs are all absent, reverse it.
    ///
    /// Only meaningful for directed unicolored blocks; a no-op elsewhere.
    pub fn triangle_swap_attempt<R: Rng + ?Sized>(&mut self, rng: &mut R) -> bool {
        if !self.needs_triangle_moves() || self.nodes.len() < 3 {
            return false;
        }
        self.stats.triangle_attempts += 1;
        let k = self.nodes.len();
        let a = self.nodes[rng.random_range(0..k)];
        let b = self.nodes[rng.random_range(0..k)];
        let c = self.nodes[rng.random_range(0..k)];
        if a == b || b == c || a == c {
            return false;
        }
        let cycle = if self.contains(a, b) && self.contains(b, c) && self.contains(c, a) {
            [a, b, c]
        } else if self.contains(a, c) && self.contains(c, b) && self.contains(b, a) {
            [a, c, b]
        } else {
            return false;
        };
        let [x, y, z] = cycle;
        if self.contains(y, x) || self.contains(z, y) || self.contains(x, z) {
            return false;
        }
        for (from, to) in [((x, y), (y, x)), ((y, z), (z, y)), ((z, x), (x, z))] {
            let slot = self.position[&from];
            self.replace(slot, to);
        }
        self.stats.triangle_reversals += 1;
        true
    }
}

fn canonical(directed: bool, u: usize, v: usize) -> (usize, usize) {
    if directed || u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Disjoint edge blocks keyed by endpoint colors. Blocks are ordered by key.
#[derive(Debug, Clone)]
pub struct SubgraphPartition {
    n: usize,
    directed: bool,
    blocks: Vec<Block>,
}

impl SubgraphPartition {
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub(crate) fn blocks_mut(&mut self) -> &mut [Block] {
        &mut self.blocks
    }

    pub fn block(&self, key: BlockKey) -> Option<&Block> {
        self.blocks.binary_search_by(|b| b.key.cmp(&key)).ok().map(|i| &self.blocks[i])
    }

    pub fn total_edges(&self) -> usize {
        self.blocks.iter().map(Block::len).sum()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Reassembles the union of all blocks.
    pub fn to_graph(&self) -> Graph {
        let edges = self.blocks.iter().flat_map(|b| b.edges.iter().copied());
        Graph::from_edges(self.n, self.directed, edges).expect("moves keep every block simple and blocks are disjoint")
    }
}

/// Splits the edges of `graph` into blocks by the colors of their endpoints.
pub fn partition_edges(graph: &Graph, coloring: &Coloring) -> SubgraphPartition {
    assert_eq!(coloring.len(), graph.n(), "coloring length must match node count");
    let directed = graph.is_directed();
    let mut groups: BTreeMap<BlockKey, Vec<(usize, usize)>> = BTreeMap::new();
    for (u, v) in graph.edges() {
        let (cu, cv) = (coloring.color(u), coloring.color(v));
        let (key, edge) = if directed || cu <= cv {
            (BlockKey { source: cu, target: cv }, (u, v))
        } else {
            (BlockKey { source: cv, target: cu }, (v, u))
        };
        groups.entry(key).or_default().push(edge);
    }
    let blocks = groups.into_iter().map(|(key, edges)| Block::new(key, directed, edges)).collect();
    SubgraphPartition { n: graph.n(), directed, blocks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    #[test]
    fn constant_coloring_gives_one_block() {
        let g = Graph::from_edges(4, false, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let p = partition_edges(&g, &Coloring::constant(4));
        assert_eq!(p.blocks().len(), 1);
        assert_eq!(p.total_edges(), 4);
    }

    #[test]
    fn path_coloring_gives_one_bipartite_block() {
        let g = Graph::from_edges(3, false, [(0, 1), (1, 2)]).unwrap();
        let p = partition_edges(&g, &Coloring::from_labels(&[0, 1, 0], 1));
        assert_eq!(p.blocks().len(), 1);
        let b = &p.blocks()[0];
        assert_eq!(b.key(), BlockKey { source: 0, target: 1 });
        // oriented source class -> target class
        assert_eq!(b.edges(), &[(0, 1), (2, 1)]);
    }

    #[test]
    fn directed_blocks_keep_direction() {
        let g = Graph::from_edges(4, true, [(0, 2), (3, 1), (0, 1)]).unwrap();
        let c = Coloring::from_labels(&[0, 0, 1, 1], 0);
        let p = partition_edges(&g, &c);
        let keys: Vec<_> = p.blocks().iter().map(|b| (b.key().source, b.key().target)).collect();
        assert_eq!(keys, vec![(0, 0), (0, 1), (1, 0)]);
    }

    #[test]
    fn single_edge_block_is_frozen() {
        let g = Graph::from_edges(2, false, [(0, 1)]).unwrap();
        let mut p = partition_edges(&g, &Coloring::constant(2));
        let mut r = rng::stream(1, &[]);
        for _ in 0..100 {
            assert!(!p.blocks_mut()[0].edge_swap_attempt(&mut r));
        }
        assert_eq!(p.blocks()[0].edges(), &[(0, 1)]);
        assert_eq!(p.blocks()[0].stats().attempts, 0);
    }

    #[test]
    fn directed_swap_preserves_degrees() {
        let g = Graph::from_edges(4, true, [(0, 1), (2, 3)]).unwrap();
        let mut p = partition_edges(&g, &Coloring::constant(4));
        let mut r = rng::stream(3, &[]);
        let block = &mut p.blocks_mut()[0];
        while !block.edge_swap_attempt(&mut r) {}
        let after = p.to_graph();
        assert_eq!(after.edge_vec(), vec![(0, 3), (2, 1)]);
        assert_eq!(after.out_degrees(), g.out_degrees());
        assert_eq!(after.in_degrees(), g.in_degrees());
    }

    #[test]
    fn complete_bipartite_block_never_changes() {
        let g = Graph::from_edges(4, false, [(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let c = Coloring::from_labels(&[0, 0, 1, 1], 1);
        let mut p = partition_edges(&g, &c);
        let mut r = rng::stream(9, &[]);
        for _ in 0..1000 {
            assert!(!p.blocks_mut()[0].edge_swap_attempt(&mut r));
        }
        assert_eq!(p.to_graph(), g);
    }

    #[test]
    fn triangle_reversal() {
        let g = Graph::from_edges(3, true, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let mut p = partition_edges(&g, &Coloring::constant(3));
        let mut r = rng::stream(5, &[]);
        let block = &mut p.blocks_mut()[0];
        while !block.triangle_swap_attempt(&mut r) {}
        assert_eq!(p.to_graph().edge_vec(), vec![(0, 2), (1, 0), (2, 1)]);
    }

    #[test]
    fn non_triangle_is_left_alone() {
        // 0->1->2, 0->2 is transitive, not a cycle
        let g = Graph::from_edges(3, true, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let mut p = partition_edges(&g, &Coloring::constant(3));
        let mut r = rng::stream(5, &[]);
        for _ in 0..200 {
            assert!(!p.blocks_mut()[0].triangle_swap_attempt(&mut r));
        }
        assert_eq!(p.to_graph(), g);
    }

    #[test]
    fn triangle_blocked_by_reverse_arc() {
        let g = Graph::from_edges(3, true, [(0, 1), (1, 2), (2, 0), (1, 0)]).unwrap();
        let mut p = partition_edges(&g, &Coloring::constant(3));
        let mut r = rng::stream(5, &[]);
        for _ in 0..200 {
            p.blocks_mut()[0].triangle_swap_attempt(&mut r);
        }
        assert_eq!(p.to_graph(), g);
    }
}
