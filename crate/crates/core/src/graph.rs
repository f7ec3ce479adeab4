//! Simple labeled graphs with sorted adjacency lists and edge-list I/O.
//!
//! Nodes are the contiguous integers `0..n`. Undirected graphs keep one
//! adjacency list per node; directed graphs keep separate out- and
//! in-adjacency lists. All lists are sorted, so membership tests are a
//! binary search and edge iteration is lexicographic.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{NestError, Result};

/// Which neighborhood of a node is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    In,
    Out,
    Undirected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    directed: bool,
    m: usize,
    out_adj: Vec<Vec<usize>>,
    /// Empty for undirected graphs.
    in_adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Graph with `n` isolated nodes.
    pub fn empty(n: usize, directed: bool) -> Self {
        Graph {
            n,
            directed,
            m: 0,
            out_adj: vec![Vec::new(); n],
            in_adj: if directed { vec![Vec::new(); n] } else { Vec::new() },
        }
    }

    /// Builds a graph, rejecting self-loops, duplicates and out-of-range ids.
    /// For undirected graphs `(u, v)` and `(v, u)` count as the same edge.
    pub fn from_edges<I>(n: usize, directed: bool, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::build(n, directed, edges, false)
    }

    /// Like [`Graph::from_edges`] but silently collapses duplicate edges.
    pub fn from_edges_dedup<I>(n: usize, directed: bool, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::build(n, directed, edges, true)
    }

    fn build<I>(n: usize, directed: bool, edges: I, dedup: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n, directed);
        for (u, v) in edges {
            g.check_node(u)?;
            g.check_node(v)?;
            if u == v {
                return Err(NestError::SelfLoop { node: u });
            }
            g.out_adj[u].push(v);
            if directed {
                g.in_adj[v].push(u);
            } else {
                g.out_adj[v].push(u);
            }
        }
        let mut duplicate = None;
        for (u, list) in g.out_adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                duplicate.get_or_insert((u, w[0]));
            }
            list.dedup();
        }
        for list in g.in_adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        if let (Some((u, v)), false) = (duplicate, dedup) {
            let (u, v) = if directed { (u, v) } else { (u.min(v), u.max(v)) };
            return Err(NestError::DuplicateEdge { u, v });
        }
        let total: usize = g.out_adj.iter().map(Vec::len).sum();
        g.m = if directed { total } else { total / 2 };
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    fn check_node(&self, node: usize) -> Result<()> {
        if node < self.n {
            Ok(())
        } else {
            Err(NestError::NodeOutOfRange { node, n: self.n })
        }
    }

    /// Successors for directed graphs, neighbors for undirected ones.
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    /// Predecessors for directed graphs, neighbors for undirected ones.
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        if self.directed {
            &self.in_adj[v]
        } else {
            &self.out_adj[v]
        }
    }

    pub fn neighbors(&self, v: usize, direction: Direction) -> &[usize] {
        match direction {
            Direction::In => self.in_neighbors(v),
            Direction::Out | Direction::Undirected => self.out_neighbors(v),
        }
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_neighbors(v).len()
    }

    /// Checked degree query. Undirected graphs only accept
    /// [`Direction::Undirected`], directed graphs only `In` or `Out`.
    pub fn degree(&self, v: usize, direction: Direction) -> Result<usize> {
        self.check_node(v)?;
        match (self.directed, direction) {
            (false, Direction::Undirected) => Ok(self.out_adj[v].len()),
            (true, Direction::Out) => Ok(self.out_adj[v].len()),
            (true, Direction::In) => Ok(self.in_adj[v].len()),
            (true, Direction::Undirected) => {
                Err(NestError::DirectionMismatch("directed graph needs an in or out direction".into()))
            }
            (false, _) => Err(NestError::DirectionMismatch("undirected graph has no in/out distinction".into())),
        }
    }

    /// Unchecked membership test; panics if `u` is out of range.
    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        self.out_adj[u].binary_search(&v).is_ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> Result<bool> {
        self.check_node(u)?;
        self.check_node(v)?;
        Ok(self.contains_edge(u, v))
    }

    /// Inserts an edge; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v {
            return Err(NestError::SelfLoop { node: u });
        }
        let Err(pos) = self.out_adj[u].binary_search(&v) else {
            return Ok(false);
        };
        self.out_adj[u].insert(pos, v);
        let back = if self.directed { &mut self.in_adj[v] } else { &mut self.out_adj[v] };
        let pos = back.binary_search(&u).unwrap_err();
        back.insert(pos, u);
        self.m += 1;
        Ok(true)
    }

    /// Removes an edge; returns `false` if it was absent.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_node(u)?;
        self.check_node(v)?;
        let Ok(pos) = self.out_adj[u].binary_search(&v) else {
            return Ok(false);
        };
        self.out_adj[u].remove(pos);
        let back = if self.directed { &mut self.in_adj[v] } else { &mut self.out_adj[v] };
        let pos = back.binary_search(&u).expect("adjacency index out of sync");
        back.remove(pos);
        self.m -= 1;
        Ok(true)
    }

    /// Edges in lexicographic order; undirected edges appear once as `(u, v)`
    /// with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let directed = self.directed;
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(move |(u, list)| list.iter().copied().filter(move |&v| directed || u < v).map(move |v| (u, v)))
    }

    pub fn edge_vec(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        self.out_adj.iter().map(Vec::len).collect()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.in_degree(v)).collect()
    }

    /// Same graph with every edge reversed. Undirected graphs are returned as is.
    pub fn transpose(&self) -> Graph {
        if !self.directed {
            return self.clone();
        }
        Graph { n: self.n, directed: true, m: self.m, out_adj: self.in_adj.clone(), in_adj: self.out_adj.clone() }
    }

    /// Disjoint union; nodes of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        if self.directed != other.directed {
            return Err(NestError::Incompatible("directedness differs".into()));
        }
        let shift = self.n;
        let edges = self.edges().chain(other.edges().map(|(u, v)| (u + shift, v + shift)));
        Graph::from_edges(self.n + other.n, self.directed, edges)
    }

    pub fn read_edge_list<R: Read>(reader: R, options: &EdgeListOptions) -> Result<Graph> {
        let mut edges = Vec::new();
        let mut max_id: Option<usize> = None;
        let mut header_n = None;
        for (idx, line) in BufReader::new(reader).lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(comment) = trimmed.strip_prefix('#') {
                if header_n.is_none() {
                    header_n = parse_header_nodes(comment);
                }
                continue;
            }
            let mut tokens = trimmed.split_whitespace();
            let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
                return Err(NestError::Parse {
                    line: lineno,
                    message: format!("expected two node ids, got {trimmed:?}"),
                });
            };
            let parse = |tok: &str| {
                tok.parse::<usize>()
                    .map_err(|e| NestError::Parse { line: lineno, message: format!("bad node id {tok:?}: {e}") })
            };
            let (u, v) = (parse(a)?, parse(b)?);
            max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
            if u == v {
                if options.strip_self_loops {
                    continue;
                }
                return Err(NestError::Parse { line: lineno, message: format!("self-loop on node {u}") });
            }
            edges.push((u, v));
        }
        let inferred = max_id.map_or(0, |m| m + 1);
        let n = options.num_nodes.or(header_n).unwrap_or(inferred);
        if n < inferred {
            return Err(NestError::NodeOutOfRange { node: inferred - 1, n });
        }
        if options.dedup {
            Graph::from_edges_dedup(n, options.directed, edges)
        } else {
            Graph::from_edges(n, options.directed, edges)
        }
    }

    pub fn load(path: impl AsRef<Path>, options: &EdgeListOptions) -> Result<Graph> {
        Graph::read_edge_list(File::open(path)?, options)
    }

    /// Writes a header comment followed by one `u v` line per edge, in
    /// canonical order.
    pub fn write_edge_list<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = BufWriter::new(writer);
        writeln!(w, "# nodes {} edges {} directed {}", self.n, self.m, self.directed)?;
        for (u, v) in self.edges() {
            writeln!(w, "{u} {v}")?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_edge_list(File::create(path)?)
    }
}

fn parse_header_nodes(comment: &str) -> Option<usize> {
    let mut tokens = comment.split_whitespace();
    while let Some(tok) = tokens.next() {
        if tok == "nodes" {
            return tokens.next()?.parse().ok();
        }
    }
    None
}

/// How an edge-list file is interpreted.
#[derive(Debug, Clone, Default)]
pub struct EdgeListOptions {
    pub directed: bool,
    /// Collapse repeated edges instead of failing.
    pub dedup: bool,
    /// Drop `u u` lines instead of failing.
    pub strip_self_loops: bool,
    /// Overrides the node count (needed for isolated trailing nodes when
    /// the file carries no header).
    pub num_nodes: Option<usize>,
}

impl EdgeListOptions {
    pub fn directed(directed: bool) -> Self {
        EdgeListOptions { directed, ..Default::default() }
    }
}
