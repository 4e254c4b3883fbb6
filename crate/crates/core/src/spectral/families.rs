use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::graph::RegularGraph;

/// Gabber–Galil style 8-regular multigraph on `Z_m x Z_m`.
///
/// `(x, y)` is joined to `(x+y, y)`, `(x+y+1, y)`, `(x, y+x)`, `(x, y+x+1)`
/// and to the images under the four inverse maps. Fixed points become loops
/// and coincident images become parallel edges, so every row sums to 8.
pub fn gabber_galil(m: usize) -> Result<RegularGraph> {
    if m < 2 {
        return Err(Error::invalid(format!("Gabber-Galil side length must be >= 2, got {m}")));
    }
    let n = m * m;
    let idx = |x: usize, y: usize| (x % m) * m + (y % m);
    let mut adj = vec![0u64; n * n];
    for x in 0..m {
        for y in 0..m {
            let u = idx(x, y);
            let forward = [idx(x + y, y), idx(x + y + 1, y), idx(x, y + x), idx(x, y + x + 1)];
            // each forward map f contributes P_f + P_f^T, i.e. f and its inverse
            for v in forward {
                adj[u * n + v] += 1;
                adj[v * n + u] += 1;
            }
        }
    }
    RegularGraph::from_adjacency(n, adj)
}

fn check_connection_set(n: usize, conn: &[usize]) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::invalid("circulant needs n >= 1"));
    }
    let mut set: Vec<usize> = conn.to_vec();
    set.sort_unstable();
    set.dedup();
    for &s in &set {
        if s == 0 || s % n == 0 {
            return Err(Error::invalid("connection set must not contain 0"));
        }
        if s >= n {
            return Err(Error::invalid(format!("connection {s} out of range for n = {n}")));
        }
        if set.binary_search(&(n - s)).is_err() {
            return Err(Error::invalid(format!(
                "connection set is not symmetric: {s} present but {} missing",
                n - s
            )));
        }
    }
    Ok(set)
}

/// Cayley graph of `Z_n` with the given symmetric connection set.
pub fn circulant(n: usize, conn: &[usize]) -> Result<RegularGraph> {
    let set = check_connection_set(n, conn)?;
    let mut adj = vec![0u64; n * n];
    for u in 0..n {
        for &s in &set {
            adj[u * n + (u + s) % n] = 1;
        }
    }
    RegularGraph::from_adjacency(n, adj)
}

/// Eigenvalues `sum_{s in conn} cos(2 pi j s / n)` for `j = 0..n-1`.
pub fn circulant_spectrum_analytic(n: usize, conn: &[usize]) -> Result<Vec<f64>> {
    let set = check_connection_set(n, conn)?;
    Ok((0..n)
        .map(|j| {
            set.iter()
                .map(|&s| (2.0 * PI * ((j * s) % n) as f64 / n as f64).cos())
                .sum()
        })
        .collect())
}

/// Closes `conn` under `s -> n - s`.
pub fn symmetric_closure(n: usize, conn: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = conn.iter().flat_map(|&s| [s % n, (n - s % n) % n]).collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn complete(n: usize) -> Result<RegularGraph> {
    let conn: Vec<usize> = (1..n).collect();
    circulant(n, &conn)
}

/// `K_{k,k}` as the circulant on `Z_{2k}` with all odd connections.
pub fn complete_bipartite(k: usize) -> Result<RegularGraph> {
    let conn: Vec<usize> = (1..2 * k).step_by(2).collect();
    circulant(2 * k, &conn)
}

pub fn petersen() -> RegularGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    RegularGraph::from_edges(10, &edges).expect("fixed edge list")
}
