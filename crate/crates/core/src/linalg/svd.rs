//! One-sided Jacobi singular value decomposition for real matrices.
//!
//! Plane rotations orthogonalize column pairs of a working copy until every
//! pair is orthogonal to relative precision; column norms are then the
//! singular values. Wide inputs are handled by decomposing the transpose.

use super::RealMatrix;
use crate::error::{Error, Result};
use crate::tol;

/// Pairs of columns whose normalized inner product is at or below this are
/// treated as already orthogonal.
const ORTHO_SKIP: f64 = 1e-14;

/// Columns with norm at or below `RANK_FLOOR * sigma_max` carry no usable
/// direction; their left vectors are filled in by basis completion.
const RANK_FLOOR: f64 = 1e-13;

/// Full decomposition `M = U diag(sigma) V^T`.
///
/// `u` is square `rows x rows`, `v` square `cols x cols`, and
/// `singular_values` holds the `min(rows, cols)` values in descending order.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: RealMatrix,
    pub singular_values: Vec<f64>,
    pub v: RealMatrix,
}

/// Singular value decomposition of an arbitrary real matrix.
///
/// Guarantees on return: `||U diag(s) V^T - M||_F <= 1e-9 ||M||_F` and both
/// factors are orthogonal to `1e-10 * dim` in Frobenius norm.
pub fn svd_real(m: &RealMatrix) -> Result<Svd> {
    if m.rows() < m.cols() {
        let t = svd_real(&m.transpose())?;
        return Ok(Svd {
            u: t.v,
            singular_values: t.singular_values,
            v: t.u,
        });
    }

    let (rows, cols) = (m.rows(), m.cols());
    let mut b = m.clone();
    let mut v = RealMatrix::identity(cols);

    let mut sweeps = 0;
    loop {
        let mut worst = 0.0f64;
        for i in 0..cols {
            for j in (i + 1)..cols {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = 0.0;
                for k in 0..rows {
                    alpha += b[(k, i)] * b[(k, i)];
                    beta += b[(k, j)] * b[(k, j)];
                    gamma += b[(k, i)] * b[(k, j)];
                }
                let scale = (alpha * beta).sqrt();
                if scale == 0.0 || gamma.abs() <= ORTHO_SKIP * scale {
                    continue;
                }
                worst = worst.max(gamma.abs() / scale);
                let zeta = (beta - alpha) / (2.0 * gamma);
                let sign = if zeta >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..rows {
                    let bki = b[(k, i)];
                    let bkj = b[(k, j)];
                    b[(k, i)] = c * bki - s * bkj;
                    b[(k, j)] = s * bki + c * bkj;
                }
                for k in 0..cols {
                    let vki = v[(k, i)];
                    let vkj = v[(k, j)];
                    v[(k, i)] = c * vki - s * vkj;
                    v[(k, j)] = s * vki + c * vkj;
                }
            }
        }
        if worst == 0.0 {
            break;
        }
        sweeps += 1;
        if sweeps == tol::MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: worst,
            });
        }
    }

    let norms: Vec<f64> = (0..cols)
        .map(|j| (0..rows).map(|k| b[(k, j)] * b[(k, j)]).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let singular_values: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let sigma_max = singular_values.first().copied().unwrap_or(0.0);

    // V needs no completion: it is a product of rotations, so every column
    // is orthonormal even where the singular value is negligible.
    let v_sorted = RealMatrix::from_fn(cols, cols, |i, j| v[(i, order[j])]);

    let mut u = RealMatrix::zeros(rows, rows);
    let mut filled = 0;
    for (rank, &j) in order.iter().enumerate() {
        if norms[j] <= RANK_FLOOR * sigma_max {
            break;
        }
        for k in 0..rows {
            u[(k, rank)] = b[(k, j)] / norms[j];
        }
        filled = rank + 1;
    }
    complete_orthonormal_columns(&mut u, filled);

    Ok(Svd {
        u,
        singular_values,
        v: v_sorted,
    })
}

/// Fills columns `filled..` of a square matrix whose first `filled` columns
/// are orthonormal, by greedily orthogonalizing the canonical basis vector
/// with the largest residual. Two projection passes keep the result
/// orthonormal to machine precision.
fn complete_orthonormal_columns(u: &mut RealMatrix, mut filled: usize) {
    let dim = u.rows();
    while filled < dim {
        let mut best: Option<(f64, Vec<f64>)> = None;
        for cand in 0..dim {
            let mut r = vec![0.0; dim];
            r[cand] = 1.0;
            for _ in 0..2 {
                for col in 0..filled {
                    let dot: f64 = (0..dim).map(|k| r[k] * u[(k, col)]).sum();
                    for k in 0..dim {
                        r[k] -= dot * u[(k, col)];
                    }
                }
            }
            let norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
            if best.as_ref().is_none_or(|(n, _)| norm > *n) {
                best = Some((norm, r));
            }
        }
        let (norm, r) = best.expect("dim > 0 when completion is needed");
        for k in 0..dim {
            u[(k, filled)] = r[k] / norm;
        }
        filled += 1;
    }
}
