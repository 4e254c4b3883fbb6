//! Regular multigraphs, bipartite graphs and neighborhood queries.

mod format;
pub mod random;

pub use format::{parse_document, Document};

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A sorted, duplicate-free set of vertices on one side of a bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexSubset {
    side: Side,
    members: Vec<usize>,
}

impl VertexSubset {
    /// Sorts and deduplicates `members`.
    pub fn new(side: Side, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSubset { side, members }
    }

    pub fn left(members: Vec<usize>) -> Self {
        Self::new(Side::Left, members)
    }

    pub fn right(members: Vec<usize>) -> Self {
        Self::new(Side::Right, members)
    }

    pub fn empty(side: Side) -> Self {
        VertexSubset {
            side,
            members: Vec::new(),
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &VertexSubset) -> bool {
        self.side == other.side && self.members.iter().all(|&v| other.contains(v))
    }
}

/// An undirected multigraph stored as a dense symmetric adjacency matrix.
///
/// A diagonal entry `t` is `t` loop units, each adding 1 to the row sum, so
/// that matrix powers of a `d`-regular graph are exactly `d^k`-regular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularGraph {
    n: usize,
    adj: Vec<u64>,
    degree: Option<u64>,
}

impl RegularGraph {
    pub fn from_adjacency(n: usize, adj: Vec<u64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("graph must have at least one vertex"));
        }
        if adj.len() != n * n {
            return Err(Error::invalid(format!(
                "adjacency has {} entries, expected {}",
                adj.len(),
                n * n
            )));
        }
        for u in 0..n {
            for v in u + 1..n {
                if adj[u * n + v] != adj[v * n + u] {
                    return Err(Error::invalid(format!(
                        "adjacency is not symmetric at ({u}, {v})"
                    )));
                }
            }
        }
        let sums: Vec<u64> = (0..n).map(|u| adj[u * n..(u + 1) * n].iter().sum()).collect();
        let degree = sums.iter().all(|&s| s == sums[0]).then_some(sums[0]);
        Ok(RegularGraph { n, adj, degree })
    }

    /// Builds from an edge list. `(u, u)` adds one loop unit at `u`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![0u64; n * n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::OutOfRange {
                        what: "vertex",
                        index: x,
                        size: n,
                    });
                }
            }
            adj[u * n + v] += 1;
            if u != v {
                adj[v * n + u] += 1;
            }
        }
        Self::from_adjacency(n, adj)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, u: usize, v: usize) -> u64 {
        self.adj[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u64] {
        &self.adj[u * self.n..(u + 1) * self.n]
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn row_sum(&self, u: usize) -> u64 {
        self.row(u).iter().sum()
    }

    /// Common row sum, if every row sum agrees.
    pub fn degree(&self) -> Option<u64> {
        self.degree
    }

    pub fn is_regular(&self) -> bool {
        self.degree.is_some()
    }

    pub fn loop_counts(&self) -> Vec<u64> {
        (0..self.n).map(|u| self.entry(u, u)).collect()
    }

    pub fn has_loops(&self) -> bool {
        (0..self.n).any(|u| self.entry(u, u) > 0)
    }

    /// Number of non-loop edges, counting multiplicity.
    pub fn edge_count(&self) -> u64 {
        let mut total = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                total += self.entry(u, v);
            }
        }
        total
    }

    /// Canonical edge list `(u, v, multiplicity)` with `u <= v`, sorted.
    pub fn edge_multiplicities(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u..self.n {
                let m = self.entry(u, v);
                if m > 0 {
                    out.push((u, v, m));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for v in 0..self.n {
                if !seen[v] && self.entry(u, v) > 0 {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n
    }

    /// A proper 2-coloring (`true` = second class), if one exists. Loops
    /// rule out bipartiteness.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for v in 0..self.n {
                    if self.entry(u, v) == 0 {
                        continue;
                    }
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// Zeroes the diagonal. Returns the loop-free graph and the number of loop
    /// units removed at each vertex.
    pub fn strip_loops(&self) -> (RegularGraph, Vec<u64>) {
        let deficits = self.loop_counts();
        let mut adj = self.adj.clone();
        for u in 0..self.n {
            adj[u * self.n + u] = 0;
        }
        let g = RegularGraph::from_adjacency(self.n, adj).expect("zeroing the diagonal keeps symmetry");
        (g, deficits)
    }

    /// Edge-vertex incidence graph: one left vertex per edge (parallel edges
    /// give distinct left vertices), one right vertex per graph vertex.
    ///
    /// Left vertices are numbered by `(min endpoint, max endpoint, parallel index)`.
    pub fn edge_vertex_incidence(&self) -> Result<BipartiteGraph> {
        if self.has_loops() {
            return Err(Error::LoopsPresent(self.loop_counts()));
        }
        let mut edges = Vec::new();
        let mut left = 0;
        for (u, v, m) in self.edge_multiplicities() {
            for _ in 0..m {
                edges.push((left, u));
                edges.push((left, v));
                left += 1;
            }
        }
        BipartiteGraph::new(left, self.n, &edges)
    }
}

/// A bipartite multigraph with an explicit ordering of the edge slots at
/// every right vertex.
///
/// `right_slots[v][i]` is the left endpoint of the `i`-th edge at `v`. The
/// canonical order sorts slots by left endpoint; parallel edges occupy
/// consecutive slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n_left: usize,
    n_right: usize,
    left_adj: Vec<Vec<usize>>,
    right_slots: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Edges are `(left, right)` pairs; repeating a pair adds multiplicity.
    pub fn new(n_left: usize, n_right: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut left_adj = vec![Vec::new(); n_left];
        let mut right_slots = vec![Vec::new(); n_right];
        for &(u, v) in edges {
            if u >= n_left {
                return Err(Error::OutOfRange {
                    what: "left vertex",
                    index: u,
                    size: n_left,
                });
            }
            if v >= n_right {
                return Err(Error::OutOfRange {
                    what: "right vertex",
                    index: v,
                    size: n_right,
                });
            }
            left_adj[u].push(v);
            right_slots[v].push(u);
        }
        left_adj.iter_mut().for_each(|a| a.sort_unstable());
        right_slots.iter_mut().for_each(|a| a.sort_unstable());
        Ok(BipartiteGraph {
            n_left,
            n_right,
            left_adj,
            right_slots,
        })
    }

    /// Replaces the slot order at every right vertex. Each `order[v]` must be
    /// a permutation of the left endpoints incident to `v` (with multiplicity).
    pub fn with_right_order(mut self, order: Vec<Vec<usize>>) -> Result<Self> {
        if order.len() != self.n_right {
            return Err(Error::invalid(format!(
                "right order lists {} vertices, graph has {}",
                order.len(),
                self.n_right
            )));
        }
        for (v, slots) in order.iter().enumerate() {
            let mut sorted = slots.clone();
            sorted.sort_unstable();
            if sorted != self.right_slots[v] {
                return Err(Error::invalid(format!(
                    "right order at vertex {v} is not a permutation of its incident edges"
                )));
            }
        }
        self.right_slots = order;
        Ok(self)
    }

    pub fn canonicalize_order(mut self) -> Self {
        self.right_slots.iter_mut().for_each(|a| a.sort_unstable());
        self
    }

    pub fn has_canonical_order(&self) -> bool {
        self.right_slots.iter().all(|a| a.windows(2).all(|w| w[0] <= w[1]))
    }

    pub fn n_left(&self) -> usize {
        self.n_left
    }

    pub fn n_right(&self) -> usize {
        self.n_right
    }

    pub fn left_neighbors(&self, u: usize) -> &[usize] {
        &self.left_adj[u]
    }

    /// Ordered left endpoints of the edge slots at right vertex `v`.
    pub fn right_slots(&self, v: usize) -> &[usize] {
        &self.right_slots[v]
    }

    pub fn right_order(&self) -> &[Vec<usize>] {
        &self.right_slots
    }

    pub fn left_degree(&self, u: usize) -> usize {
        self.left_adj[u].len()
    }

    pub fn right_degree(&self, v: usize) -> usize {
        self.right_slots[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.left_adj.iter().map(Vec::len).sum()
    }

    pub fn max_left_degree(&self) -> usize {
        self.left_adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_right_degree(&self) -> usize {
        self.right_slots.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_right_degree(&self) -> usize {
        self.right_slots.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn left_regular_degree(&self) -> Option<usize> {
        uniform(self.left_adj.iter().map(Vec::len))
    }

    pub fn right_regular_degree(&self) -> Option<usize> {
        uniform(self.right_slots.iter().map(Vec::len))
    }

    /// `(d1, d2)` when every left vertex has degree `d1` and every right
    /// vertex has degree `d2`.
    pub fn biregular(&self) -> Option<(usize, usize)> {
        Some((self.left_regular_degree()?, self.right_regular_degree()?))
    }

    /// No parallel edges.
    pub fn is_simple(&self) -> bool {
        self.left_adj.iter().all(|a| a.windows(2).all(|w| w[0] != w[1]))
    }

    /// `|R| / |L|`.
    pub fn imbalance(&self) -> f64 {
        self.n_right as f64 / self.n_left as f64
    }

    /// Sorted `(left, right)` edge list, one entry per unit of multiplicity.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, adj) in self.left_adj.iter().enumerate() {
            out.extend(adj.iter().map(|&v| (u, v)));
        }
        out
    }

    /// Sorted `(left, right, multiplicity)` triples.
    pub fn edge_multiplicities(&self) -> Vec<(usize, usize, usize)> {
        let mut out: Vec<(usize, usize, usize)> = Vec::new();
        for (u, v) in self.edges() {
            match out.last_mut() {
                Some(last) if last.0 == u && last.1 == v => last.2 += 1,
                _ => out.push((u, v, 1)),
            }
        }
        out
    }

    fn check_left_subset(&self, s: &VertexSubset) -> Result<()> {
        if s.side != Side::Left {
            return Err(Error::SideMismatch {
                expected: "left",
                found: s.side.name(),
            });
        }
        if let Some(&u) = s.members.iter().find(|&&u| u >= self.n_left) {
            return Err(Error::OutOfRange {
                what: "left vertex",
                index: u,
                size: self.n_left,
            });
        }
        Ok(())
    }

    /// Right vertices with at least one edge into `s`.
    pub fn neighbors(&self, s: &VertexSubset) -> Result<VertexSubset> {
        self.check_left_subset(s)?;
        let mut tally = Tally::new(self.n_right);
        tally.load(self, s.members());
        Ok(VertexSubset::right(tally.touched().to_vec()))
    }

    /// Right vertices whose total edge multiplicity into `s` is exactly one.
    pub fn unique_neighbors(&self, s: &VertexSubset) -> Result<VertexSubset> {
        self.check_left_subset(s)?;
        let mut tally = Tally::new(self.n_right);
        tally.load(self, s.members());
        Ok(VertexSubset::right(tally.unique().collect()))
    }
}

fn uniform(mut it: impl Iterator<Item = usize>) -> Option<usize> {
    let first = it.next()?;
    it.all(|x| x == first).then_some(first)
}

/// Reusable scratch buffer counting, for each right vertex, the edge
/// multiplicity into a left subset.
#[derive(Debug, Clone)]
pub struct Tally {
    counts: Vec<u32>,
    touched: Vec<usize>,
}

impl Tally {
    pub fn new(n_right: usize) -> Self {
        Tally {
            counts: vec![0; n_right],
            touched: Vec::new(),
        }
    }

    /// Clears the previous load and counts edges from `members`.
    pub fn load(&mut self, g: &BipartiteGraph, members: &[usize]) {
        for &v in &self.touched {
            self.counts[v] = 0;
        }
        self.touched.clear();
        for &u in members {
            for &v in g.left_neighbors(u) {
                if self.counts[v] == 0 {
                    self.touched.push(v);
                }
                self.counts[v] += 1;
            }
        }
        self.touched.sort_unstable();
    }

    /// Multiplicity into the loaded subset.
    pub fn count(&self, v: usize) -> u32 {
        self.counts[v]
    }

    /// Sorted neighbors of the loaded subset.
    pub fn touched(&self) -> &[usize] {
        &self.touched
    }

    pub fn unique(&self) -> impl Iterator<Item = usize> + '_ {
        self.touched.iter().copied().filter(|&v| self.counts[v] == 1)
    }

    pub fn unique_count(&self) -> usize {
        self.touched.iter().filter(|&&v| self.counts[v] == 1).count()
    }
}
