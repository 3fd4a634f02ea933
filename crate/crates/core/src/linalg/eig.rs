//! Cyclic Jacobi eigensolvers for Hermitian and real symmetric matrices.
//!
//! A sweep visits every upper-triangle pivot (p, q) in row-major order and
//! applies the unitary two-sided rotation that zeroes that pivot. Off-diagonal
//! mass is strictly non-increasing, convergence is quadratic once the matrix
//! is nearly diagonal, and the fixed visiting order plus stable sorting keeps
//! the output deterministic for a given input.

use super::{Complex64, ComplexMatrix, RealMatrix};
use crate::error::{Error, Result};
use crate::tol;

/// Eigensystem of a Hermitian matrix: `vectors` holds the eigenvector
/// columns, ordered like `eigenvalues` (ascending, ties keeping their
/// pre-sort column order).
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// Real symmetric analogue of [`EigenDecomposition`].
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    pub eigenvalues: Vec<f64>,
    pub vectors: RealMatrix,
}

fn off_norm_complex(a: &ComplexMatrix) -> f64 {
    let d = a.dim();
    let mut acc = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Small-magnitude root of t^2 + 2*tau*t - 1 = 0, the rotation tangent that
/// annihilates a pivot. tau = 0 degenerates to a 45-degree rotation.
fn rotation_tangent(tau: f64) -> f64 {
    let s = if tau >= 0.0 { 1.0 } else { -1.0 };
    s / (tau.abs() + (1.0 + tau * tau).sqrt())
}

/// Eigendecomposition of a Hermitian matrix.
///
/// The input may deviate from exact Hermiticity by up to
/// `HERMITICITY_REL * ||M||_F`; it is symmetrized before iterating. The
/// result satisfies `||V L V^H - M||_F <= 1e-9 ||M||_F` and
/// `||V^H V - I||_F <= 1e-10 * dim`.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    let d = m.dim();
    let norm = m.frobenius_norm();
    let dev = m.hermitian_deviation();
    if dev > tol::HERMITICITY_REL * norm {
        return Err(Error::NonHermitianInput {
            deviation: dev,
            tolerance: tol::HERMITICITY_REL * norm,
        });
    }

    let mut a = m.hermitize();
    let mut v = ComplexMatrix::identity(d);
    let conv = tol::CONVERGENCE_REL * norm;
    // Pivots at or below conv/d can be left alone: even if all survive, the
    // total off-diagonal norm stays within conv.
    let skip = if d > 0 { conv / d as f64 } else { conv };

    let mut sweeps = 0;
    loop {
        let off = off_norm_complex(&a);
        if off <= conv {
            break;
        }
        if sweeps == tol::MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        for p in 0..d {
            for q in (p + 1)..d {
                let apq = a[(p, q)];
                let rho = apq.norm();
                if rho <= skip {
                    continue;
                }
                let u = apq / rho;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let t = rotation_tangent((aqq - app) / (2.0 * rho));
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // A <- A G, with G the identity outside the (p,q) block
                // [[u c, u s], [-s, c]].
                for k in 0..d {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = u * akp * c - akq * s;
                    a[(k, q)] = u * akp * s + akq * c;
                }
                // A <- G^H A.
                for k in 0..d {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = u.conj() * apk * c - aqk * s;
                    a[(q, k)] = u.conj() * apk * s + aqk * c;
                }
                // The pivot is zero analytically and the diagonal is real;
                // write both exactly instead of keeping the roundoff.
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(app - t * rho, 0.0);
                a[(q, q)] = Complex64::new(aqq + t * rho, 0.0);

                for k in 0..d {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = u * vkp * c - vkq * s;
                    v[(k, q)] = u * vkp * s + vkq * c;
                }
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(d, |i, j| v[(i, order[j])]);
    Ok(EigenDecomposition {
        eigenvalues,
        vectors,
    })
}

fn off_norm_real(a: &RealMatrix) -> f64 {
    let d = a.rows();
    let mut acc = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                acc += a[(i, j)] * a[(i, j)];
            }
        }
    }
    acc.sqrt()
}

/// Eigendecomposition of a real symmetric matrix; contracts mirror
/// [`hermitian_eig`] in real arithmetic.
pub fn real_symmetric_eig(m: &RealMatrix) -> Result<SymmetricEigen> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let d = m.rows();
    let norm = m.frobenius_norm();
    let mut dev = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            dev += (m[(i, j)] - m[(j, i)]).powi(2);
        }
    }
    let dev = dev.sqrt();
    if dev > tol::HERMITICITY_REL * norm {
        return Err(Error::NonSymmetricInput {
            deviation: dev,
            tolerance: tol::HERMITICITY_REL * norm,
        });
    }

    let mut a = RealMatrix::from_fn(d, d, |i, j| 0.5 * (m[(i, j)] + m[(j, i)]));
    let mut v = RealMatrix::identity(d);
    let conv = tol::CONVERGENCE_REL * norm;
    let skip = if d > 0 { conv / d as f64 } else { conv };

    let mut sweeps = 0;
    loop {
        let off = off_norm_real(&a);
        if off <= conv {
            break;
        }
        if sweeps == tol::MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        for p in 0..d {
            for q in (p + 1)..d {
                let apq = a[(p, q)];
                if apq.abs() <= skip {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                let t = rotation_tangent((aqq - app) / (2.0 * apq));
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for k in 0..d {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - akq * s;
                    a[(k, q)] = akp * s + akq * c;
                }
                for k in 0..d {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c - aqk * s;
                    a[(q, k)] = apk * s + aqk * c;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                a[(p, p)] = app - t * apq;
                a[(q, q)] = aqq + t * apq;

                for k in 0..d {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * s;
                    v[(k, q)] = vkp * s + vkq * c;
                }
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = RealMatrix::from_fn(d, d, |i, j| v[(i, order[j])]);
    Ok(SymmetricEigen {
        eigenvalues,
        vectors,
    })
}
