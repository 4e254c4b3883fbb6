//! Cyclic Jacobi eigenvalue solver for dense symmetric matrices.

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 4096;
const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct Eigenvalues {
    /// Sorted in decreasing order.
    pub values: Vec<f64>,
    /// Frobenius norm of the off-diagonal part at termination.
    pub residual: f64,
    pub sweeps: usize,
}

fn off_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            s += a[p * n + q] * a[p * n + q];
        }
    }
    (2.0 * s).sqrt()
}

/// Eigenvalues of the symmetric `n x n` row-major matrix `a`, iterating
/// sweeps until the off-diagonal Frobenius norm is at most `tol`.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize, tol: f64) -> Result<Eigenvalues> {
    if n > MAX_ORDER {
        return Err(Error::GuardExceeded {
            what: "exact eigensolve order",
            limit: MAX_ORDER as u64,
            actual: n as u64,
        });
    }
    assert_eq!(a.len(), n * n);
    let mut residual = off_norm(&a, n);
    let mut sweeps = 0;
    while residual > tol {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NotConverged {
                iterations: sweeps,
                residual,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.is_infinite() {
                    0.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                if t == 0.0 {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // rows p and q are contiguous; columns follow by symmetry
                let (head, tail) = a.split_at_mut(q * n);
                let row_p = &mut head[p * n..(p + 1) * n];
                let row_q = &mut tail[..n];
                for k in 0..n {
                    let x = row_p[k];
                    let y = row_q[k];
                    row_p[k] = c * x - s * y;
                    row_q[k] = s * x + c * y;
                }
                for k in 0..n {
                    if k != p && k != q {
                        a[k * n + p] = a[p * n + k];
                        a[k * n + q] = a[q * n + k];
                    }
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
        residual = off_norm(&a, n);
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(Eigenvalues {
        values,
        residual,
        sweeps,
    })
}
