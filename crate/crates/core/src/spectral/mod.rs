//! Spectral expander constructions, graph powers, eigenvalue measurement and
//! mixing-lemma audits.

pub mod eigen;
mod families;
mod mixing;

pub use families::{
    circulant, circulant_spectrum_analytic, complete, complete_bipartite, gabber_galil, petersen,
    symmetric_closure,
};
pub use mixing::{mixing_audit, MixingAudit, PairSelection, EXHAUSTIVE_MAX_VERTICES};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::RegularGraph;
use crate::rng::SeedStream;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 100_000;

/// Adjacency matrix power `A^k`.
pub fn power(g: &RegularGraph, k: u32) -> Result<RegularGraph> {
    if k < 1 {
        return Err(Error::invalid("power exponent must be >= 1"));
    }
    let n = g.n();
    let base = g.adjacency();
    let mut acc = base.to_vec();
    for _ in 1..k {
        let mut next = vec![0u64; n * n];
        for i in 0..n {
            for l in 0..n {
                let a = acc[i * n + l];
                if a == 0 {
                    continue;
                }
                let row = &base[l * n..(l + 1) * n];
                let out = &mut next[i * n..(i + 1) * n];
                for (o, &b) in out.iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        acc = next;
    }
    RegularGraph::from_adjacency(n, acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum SpectrumMethod {
    Exact { tol: f64 },
    PowerIteration { tol: f64, max_iter: usize, seed: u64 },
}

impl Default for SpectrumMethod {
    fn default() -> Self {
        SpectrumMethod::Exact { tol: DEFAULT_TOL }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    /// Largest absolute eigenvalue after removing one copy of `+d` and, for
    /// bipartite graphs, one copy of `-d`.
    pub lambda: f64,
    pub degree: u64,
    pub method: SpectrumMethod,
    pub certified: bool,
    pub residual: f64,
    pub bipartite: bool,
    pub iterations: usize,
    /// Full spectrum in decreasing order (exact method only).
    pub eigenvalues: Option<Vec<f64>>,
}

impl SpectrumReport {
    pub fn normalized(&self) -> f64 {
        self.lambda / self.degree as f64
    }

    /// Bound valid in the expander mixing lemma: the largest absolute
    /// eigenvalue on the complement of the all-ones vector. For a bipartite
    /// graph this is `d`, since `-d` is then an eigenvalue orthogonal to it.
    pub fn mixing_lambda(&self) -> f64 {
        if self.bipartite {
            self.degree as f64
        } else {
            self.lambda
        }
    }
}

fn check_regular_connected(g: &RegularGraph) -> Result<u64> {
    let d = g
        .degree()
        .ok_or_else(|| Error::precondition("graph is not regular"))?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(d)
}

/// Full spectrum of the adjacency matrix, decreasing.
pub fn spectrum(g: &RegularGraph, tol: f64) -> Result<eigen::Eigenvalues> {
    let a: Vec<f64> = g.adjacency().iter().map(|&x| x as f64).collect();
    eigen::symmetric_eigenvalues(a, g.n(), tol)
}

pub fn lambda_of(g: &RegularGraph, method: SpectrumMethod) -> Result<SpectrumReport> {
    let d = check_regular_connected(g)?;
    let coloring = g.two_coloring();
    let bipartite = coloring.is_some();
    match method {
        SpectrumMethod::Exact { tol } => {
            let e = spectrum(g, tol)?;
            let mut rest = e.values.clone();
            // decreasing order: the first entry is +d, the last is -d when bipartite
            rest.remove(0);
            if bipartite && !rest.is_empty() {
                rest.pop();
            }
            let lambda = rest.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            Ok(SpectrumReport {
                lambda,
                degree: d,
                method,
                certified: true,
                residual: e.residual,
                bipartite,
                iterations: e.sweeps,
                eigenvalues: Some(e.values),
            })
        }
        SpectrumMethod::PowerIteration { tol, max_iter, seed } => {
            let sign: Option<Vec<f64>> =
                coloring.map(|c| c.iter().map(|&b| if b { -1.0 } else { 1.0 }).collect());
            let (lambda, residual, iterations) = power_iteration(g, sign.as_deref(), tol, max_iter, seed)?;
            Ok(SpectrumReport {
                lambda,
                degree: d,
                method,
                certified: false,
                residual,
                bipartite,
                iterations,
                eigenvalues: None,
            })
        }
    }
}

fn matvec(g: &RegularGraph, x: &[f64], y: &mut [f64]) {
    let n = g.n();
    for (i, yi) in y.iter_mut().enumerate() {
        *yi = g.row(i).iter().zip(x).map(|(&a, &b)| a as f64 * b).sum();
    }
    debug_assert_eq!(y.len(), n);
}

fn project_out(x: &mut [f64], sign: Option<&[f64]>) {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    x.iter_mut().for_each(|v| *v -= mean);
    if let Some(s) = sign {
        let dot = x.iter().zip(s).map(|(a, b)| a * b).sum::<f64>() / n;
        x.iter_mut().zip(s).for_each(|(v, b)| *v -= dot * b);
    }
}

fn normalize(x: &mut [f64]) -> f64 {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
    norm
}

/// Power iteration on `A^2` restricted to the nontrivial subspace. Working
/// with `A^2` makes a `+-lambda` pair converge instead of oscillate; the
/// estimate `sqrt(x^T A^2 x)` never exceeds the true value.
fn power_iteration(
    g: &RegularGraph,
    sign: Option<&[f64]>,
    tol: f64,
    max_iter: usize,
    seed: u64,
) -> Result<(f64, f64, usize)> {
    let n = g.n();
    let d = g.degree().unwrap_or(1).max(1) as f64;
    let mut rng = SeedStream::new(seed).split("power-iteration").rng();
    let mut x: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
    project_out(&mut x, sign);
    if normalize(&mut x) == 0.0 {
        // nontrivial subspace is empty (n = 1, or K2)
        return Ok((0.0, 0.0, 0));
    }
    let mut y = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for it in 1..=max_iter {
        matvec(g, &x, &mut y);
        matvec(g, &y, &mut w);
        project_out(&mut w, sign);
        let mu2: f64 = x.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>().max(0.0);
        residual = x
            .iter()
            .zip(&w)
            .map(|(a, b)| (b - mu2 * a).powi(2))
            .sum::<f64>()
            .sqrt()
            / (d * d);
        if residual < tol {
            return Ok((mu2.sqrt(), residual, it));
        }
        if normalize(&mut w) == 0.0 {
            return Ok((0.0, 0.0, it));
        }
        std::mem::swap(&mut x, &mut w);
    }
    Err(Error::NotConverged {
        iterations: max_iter,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{cycle, k3};

    fn exact(g: &RegularGraph) -> SpectrumReport {
        lambda_of(g, SpectrumMethod::default()).unwrap()
    }

    #[test]
    fn power_identity_and_square_of_triangle() {
        let g = k3();
        assert_eq!(power(&g, 1).unwrap(), g);
        let p = power(&g, 2).unwrap();
        assert_eq!(p.adjacency(), &[2, 1, 1, 1, 2, 1, 1, 1, 2]);
        assert_eq!(p.degree(), Some(4));
        let (stripped, deficits) = p.strip_loops();
        assert_eq!(stripped, g);
        assert_eq!(deficits, vec![2, 2, 2]);
        assert!(power(&g, 0).is_err());
    }

    #[test]
    fn spectrum_of_squared_cycle() {
        let p = power(&cycle(6), 2).unwrap();
        let e = spectrum(&p, 1e-12).unwrap();
        let expected = [4.0, 4.0, 1.0, 1.0, 1.0, 1.0];
        for (a, b) in e.values.iter().zip(expected) {
            assert!((a - b).abs() < 1e-9, "{:?}", e.values);
        }
    }

    #[test]
    fn lambda_of_k4_c6_petersen() {
        let k4 = complete(4).unwrap();
        let r = exact(&k4);
        assert!((r.lambda - 1.0).abs() < 1e-9);
        assert!(!r.bipartite);
        assert!(r.residual <= DEFAULT_TOL);

        let r = exact(&cycle(6));
        assert!(r.bipartite);
        assert!((r.lambda - 1.0).abs() < 1e-9);
        assert_eq!(r.mixing_lambda(), 2.0);

        let r = exact(&petersen());
        assert!((r.lambda - 2.0).abs() < 1e-9);
        let ev = r.eigenvalues.unwrap();
        assert!((ev[0] - 3.0).abs() < 1e-9);
        assert_eq!(ev.iter().filter(|v| (*v - 1.0).abs() < 1e-9).count(), 5);
        assert_eq!(ev.iter().filter(|v| (*v + 2.0).abs() < 1e-9).count(), 4);
    }

    #[test]
    fn lambda_preconditions() {
        let two_triangles = RegularGraph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(lambda_of(&two_triangles, SpectrumMethod::default()), Err(Error::Disconnected));
        let path = RegularGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(lambda_of(&path, SpectrumMethod::default()), Err(Error::Precondition(_))));
    }

    #[test]
    fn power_iteration_bounded_by_exact() {
        let graphs = [
            complete(4).unwrap(),
            cycle(6),
            cycle(7),
            petersen(),
            circulant(8, &[1, 4, 7]).unwrap(),
            gabber_galil(3).unwrap(),
            gabber_galil(5).unwrap(),
        ];
        for (i, g) in graphs.iter().enumerate() {
            let ex = exact(g);
            let tol = 1e-9;
            let pi = lambda_of(
                g,
                SpectrumMethod::PowerIteration {
                    tol,
                    max_iter: DEFAULT_MAX_ITER,
                    seed: i as u64,
                },
            )
            .unwrap();
            assert!(!pi.certified);
            assert!(pi.lambda <= ex.lambda + 1e-6, "graph {i}: {} > {}", pi.lambda, ex.lambda);
        }
    }

    #[test]
    fn power_iteration_reports_non_convergence() {
        let g = gabber_galil(7).unwrap();
        let r = lambda_of(
            &g,
            SpectrumMethod::PowerIteration {
                tol: 1e-300,
                max_iter: 5,
                seed: 0,
            },
        );
        assert!(matches!(r, Err(Error::NotConverged { iterations: 5, .. })));
    }

    #[test]
    fn gabber_galil_thirteen_is_an_expander() {
        let r = exact(&gabber_galil(13).unwrap());
        assert!(r.normalized() < 1.0);
        assert!(r.normalized() > 0.0);
    }
}
