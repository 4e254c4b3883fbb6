//! Canonical text interchange for graphs.
//!
//! ```text
//! unex-graph 1
//! kind graph            | kind bipartite
//! vertices <n>          | left <nL>
//!                       | right <nR>
//! degree <d>            | left-degree <d1>     (optional tags)
//!                       | right-degree <d2>
//! edges <m>
//! <u> <v> <mult>        (m lines, sorted, u <= v for graphs; u == v is a loop)
//!                       | right-order <nR>    (optional on input)
//!                       | <v> <u_0> <u_1> ... (one line per right vertex, in order)
//! end
//! ```
//!
//! Blank lines and lines starting with `#` are ignored on input. The
//! serializer always writes the degree tags that hold and, for bipartite
//! graphs, the full right order, so its output is byte-deterministic.

use std::fmt::Write as _;

use super::{BipartiteGraph, RegularGraph};
use crate::error::{Error, Result};

const MAGIC: &str = "unex-graph 1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Graph(RegularGraph),
    Bipartite(BipartiteGraph),
}

impl RegularGraph {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let edges = self.edge_multiplicities();
        writeln!(out, "{MAGIC}").unwrap();
        writeln!(out, "kind graph").unwrap();
        writeln!(out, "vertices {}", self.n()).unwrap();
        if let Some(d) = self.degree() {
            writeln!(out, "degree {d}").unwrap();
        }
        writeln!(out, "edges {}", edges.len()).unwrap();
        for (u, v, m) in edges {
            writeln!(out, "{u} {v} {m}").unwrap();
        }
        out.push_str("end\n");
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        match parse_document(text)? {
            Document::Graph(g) => Ok(g),
            Document::Bipartite(_) => Err(Error::parse(0, "expected kind graph, found bipartite")),
        }
    }
}

impl BipartiteGraph {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let edges = self.edge_multiplicities();
        writeln!(out, "{MAGIC}").unwrap();
        writeln!(out, "kind bipartite").unwrap();
        writeln!(out, "left {}", self.n_left()).unwrap();
        writeln!(out, "right {}", self.n_right()).unwrap();
        if let Some(d) = self.left_regular_degree() {
            writeln!(out, "left-degree {d}").unwrap();
        }
        if let Some(d) = self.right_regular_degree() {
            writeln!(out, "right-degree {d}").unwrap();
        }
        writeln!(out, "edges {}", edges.len()).unwrap();
        for (u, v, m) in edges {
            writeln!(out, "{u} {v} {m}").unwrap();
        }
        writeln!(out, "right-order {}", self.n_right()).unwrap();
        for v in 0..self.n_right() {
            write!(out, "{v}").unwrap();
            for u in self.right_slots(v) {
                write!(out, " {u}").unwrap();
            }
            out.push('\n');
        }
        out.push_str("end\n");
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        match parse_document(text)? {
            Document::Bipartite(b) => Ok(b),
            Document::Graph(_) => Err(Error::parse(0, "expected kind bipartite, found graph")),
        }
    }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    /// Next meaningful line as (1-based number, whitespace tokens).
    fn next(&mut self) -> Result<(usize, Vec<&'a str>)> {
        for (i, line) in self.inner.by_ref() {
            self.last = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            return Ok((i + 1, line.split_whitespace().collect()));
        }
        Err(Error::parse(self.last + 1, "unexpected end of document"))
    }

    fn keyword(&mut self, key: &str) -> Result<usize> {
        let (line, toks) = self.next()?;
        match toks.as_slice() {
            [k, v] if *k == key => number(line, v),
            _ => Err(Error::parse(line, format!("expected `{key} <count>`"))),
        }
    }
}

fn number(line: usize, tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("`{tok}` is not a non-negative integer")))
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut lines = Lines::new(text);
    let (line, toks) = lines.next()?;
    if toks.join(" ") != MAGIC {
        return Err(Error::parse(line, format!("expected header `{MAGIC}`")));
    }
    let (line, toks) = lines.next()?;
    match toks.as_slice() {
        ["kind", "graph"] => parse_graph(&mut lines).map(Document::Graph),
        ["kind", "bipartite"] => parse_bipartite(&mut lines).map(Document::Bipartite),
        _ => Err(Error::parse(line, "expected `kind graph` or `kind bipartite`")),
    }
}

/// Optional `<tag> <value>` lines followed by the mandatory `edges <m>`.
fn tags_then_edges<'a>(lines: &mut Lines<'a>, allowed: &[&str]) -> Result<(Vec<(usize, &'a str, usize)>, usize)> {
    let mut tags = Vec::new();
    loop {
        let (line, toks) = lines.next()?;
        match toks.as_slice() {
            ["edges", m] => return Ok((tags, number(line, m)?)),
            [k, v] if allowed.contains(k) => tags.push((line, *k, number(line, v)?)),
            _ => return Err(Error::parse(line, "expected a degree tag or `edges <count>`")),
        }
    }
}

fn edge_lines(lines: &mut Lines<'_>, m: usize) -> Result<Vec<(usize, usize, usize, usize)>> {
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, toks) = lines.next()?;
        match toks.as_slice() {
            [u, v, k] => out.push((line, number(line, u)?, number(line, v)?, number(line, k)?)),
            _ => return Err(Error::parse(line, "expected `<u> <v> <multiplicity>`")),
        }
    }
    Ok(out)
}

fn expect_end(lines: &mut Lines<'_>) -> Result<()> {
    let (line, toks) = lines.next()?;
    if toks.as_slice() != ["end"] {
        return Err(Error::parse(line, "expected `end`"));
    }
    Ok(())
}

fn parse_graph(lines: &mut Lines<'_>) -> Result<RegularGraph> {
    let n = lines.keyword("vertices")?;
    if n == 0 {
        return Err(Error::parse(lines.last, "graph must have at least one vertex"));
    }
    let (tags, m) = tags_then_edges(lines, &["degree"])?;
    let mut adj = vec![0u64; n * n];
    for (line, u, v, k) in edge_lines(lines, m)? {
        if u >= n || v >= n {
            return Err(Error::parse(line, format!("vertex index out of range (n = {n})")));
        }
        if u > v {
            return Err(Error::parse(line, "edge endpoints must satisfy u <= v"));
        }
        if k == 0 {
            return Err(Error::parse(line, "multiplicity must be positive"));
        }
        if adj[u * n + v] != 0 {
            return Err(Error::parse(line, "duplicate edge line"));
        }
        adj[u * n + v] = k as u64;
        adj[v * n + u] = k as u64;
    }
    expect_end(lines)?;
    let g = RegularGraph::from_adjacency(n, adj).map_err(|e| Error::parse(lines.last, e.to_string()))?;
    for (line, _, d) in tags {
        if g.degree() != Some(d as u64) {
            return Err(Error::parse(line, format!("declared degree {d} does not match the edges")));
        }
    }
    Ok(g)
}

fn parse_bipartite(lines: &mut Lines<'_>) -> Result<BipartiteGraph> {
    let n_left = lines.keyword("left")?;
    let n_right = lines.keyword("right")?;
    let (tags, m) = tags_then_edges(lines, &["left-degree", "right-degree"])?;
    let mut edges = Vec::new();
    for (line, u, v, k) in edge_lines(lines, m)? {
        if u >= n_left {
            return Err(Error::parse(line, format!("left index {u} out of range (left = {n_left})")));
        }
        if v >= n_right {
            return Err(Error::parse(line, format!("right index {v} out of range (right = {n_right})")));
        }
        if k == 0 {
            return Err(Error::parse(line, "multiplicity must be positive"));
        }
        edges.extend(std::iter::repeat((u, v)).take(k));
    }
    let mut g = BipartiteGraph::new(n_left, n_right, &edges).map_err(|e| Error::parse(lines.last, e.to_string()))?;
    for (line, key, d) in tags {
        let actual = if key == "left-degree" {
            g.left_regular_degree()
        } else {
            g.right_regular_degree()
        };
        if actual != Some(d) {
            return Err(Error::parse(line, format!("declared {key} {d} does not match the edges")));
        }
    }
    let (line, toks) = lines.next()?;
    match toks.as_slice() {
        ["end"] => return Ok(g),
        ["right-order", c] if number(line, c)? == n_right => {}
        _ => return Err(Error::parse(line, "expected `right-order <nR>` or `end`")),
    }
    let mut order = Vec::with_capacity(n_right);
    for v in 0..n_right {
        let (line, toks) = lines.next()?;
        let idx = toks
            .first()
            .map(|t| number(line, t))
            .transpose()?
            .ok_or_else(|| Error::parse(line, "empty right-order line"))?;
        if idx != v {
            return Err(Error::parse(line, format!("expected right-order line for vertex {v}")));
        }
        let slots = toks[1..].iter().map(|t| number(line, t)).collect::<Result<Vec<_>>>()?;
        order.push((line, slots));
    }
    let last_line = order.last().map_or(lines.last, |o| o.0);
    g = g
        .with_right_order(order.into_iter().map(|(_, s)| s).collect())
        .map_err(|e| Error::parse(last_line, e.to_string()))?;
    expect_end(lines)?;
    Ok(g)
}
