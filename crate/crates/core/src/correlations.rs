//! Drive-optimized correlation measures for states whose first party is a
//! qubit, plus the operator Schmidt decomposition behind the
//! classical-quantum test.
//!
//! Every measure here is an extremum of a spectral quantity over the unit
//! Bloch sphere of local drives H_A = (r . sigma) x I. Each reduces to an
//! eigenvalue problem for a 3x3 real symmetric quadratic form: writing
//! P_i for sigma_i x I in the state's eigenbasis,
//!
//!   M_ij = sum_{m,n} K(lambda_m, lambda_n) Re( P_i[m,n] conj(P_j[m,n]) )
//!
//! with the kernel K picking the measure. The Fisher kernel
//! K = 2ab/(a+b) gives the W matrix with F^2 = 1 - r^T W r, so the minimal
//! and maximal local Fisher information are Q^2 = 1 - max eig(W) and
//! P^2 = 1 - min eig(W). The kernels (a-b)^2/2 and (sqrt a - sqrt b)^2/2
//! give the Hilbert-Schmidt and Hellinger discords directly as the smallest
//! eigenvalue of their forms. The sum includes the diagonal m = n terms
//! (which only the Fisher kernel survives); dropping them breaks the
//! F^2 = 1 - r^T W r identity on rank-deficient states.

use crate::error::{Error, Result};
use crate::linalg::{commutator, kron, real_symmetric_eig, Complex64, ComplexMatrix, RealMatrix};
use crate::qfi::QfiEngine;
use crate::qstate::{pauli, DensityMatrix, PauliAxis};
use crate::tol;

/// 3x3 quadratic form of the Fisher kernel; basis order (x, y, z).
#[derive(Clone, Debug)]
pub struct WMatrix {
    entries: RealMatrix,
}

impl WMatrix {
    pub fn entries(&self) -> &RealMatrix {
        &self.entries
    }

    /// (eigenvalue, unit eigenvector) at the bottom of the spectrum.
    pub fn smallest_eigenpair(&self) -> (f64, [f64; 3]) {
        let eig = real_symmetric_eig(&self.entries).expect("W is symmetric by construction");
        let v = &eig.vectors;
        (eig.eigenvalues[0], [v[(0, 0)], v[(1, 0)], v[(2, 0)]])
    }

    /// (eigenvalue, unit eigenvector) at the top of the spectrum.
    pub fn largest_eigenpair(&self) -> (f64, [f64; 3]) {
        let eig = real_symmetric_eig(&self.entries).expect("W is symmetric by construction");
        let v = &eig.vectors;
        (eig.eigenvalues[2], [v[(0, 2)], v[(1, 2)], v[(2, 2)]])
    }
}

/// All Bloch-sphere extremes and the classicality verdict in one record.
#[derive(Clone, Debug)]
pub struct CorrelationReport {
    pub q_squared: f64,
    pub p_squared: f64,
    pub d_hs_squared: f64,
    pub d_h_squared: f64,
    pub minimizing_bloch: [f64; 3],
    pub maximizing_bloch: [f64; 3],
    pub classical_quantum: bool,
    pub classicality_tolerance: f64,
}

// A lone qubit counts: the B side is then the trivial one-dimensional
// system and the measures reduce to single-party Fisher extremes.
fn require_qubit_a(rho: &DensityMatrix) -> Result<()> {
    if rho.dims()[0] != 2 {
        return Err(Error::ANotQubit(rho.dims()[0]));
    }
    Ok(())
}

/// The three local Pauli drives, embedded on party A and rotated into the
/// state's eigenbasis.
fn local_paulis_in_basis(engine: &QfiEngine, dim: usize) -> Result<[ComplexMatrix; 3]> {
    let eye_b = ComplexMatrix::identity(dim / 2);
    let mut out = Vec::with_capacity(3);
    for axis in [PauliAxis::X, PauliAxis::Y, PauliAxis::Z] {
        out.push(engine.to_eigenbasis(&kron(&pauli(axis), &eye_b))?);
    }
    Ok(out.try_into().expect("exactly three axes"))
}

fn quadratic_form(
    eigenvalues: &[f64],
    paulis: &[ComplexMatrix; 3],
    kernel: impl Fn(f64, f64) -> f64,
) -> RealMatrix {
    let d = eigenvalues.len();
    // Eigenvalues at rounding level become exact zeros: square-root kernels
    // would otherwise amplify 1e-16 noise to 1e-8 and make the measures
    // drift under basis changes.
    let floor = |x: f64| if x <= tol::EIGEN_SUM_FLOOR { 0.0 } else { x };
    let mut w = RealMatrix::zeros(3, 3);
    for m in 0..d {
        let a = floor(eigenvalues[m]);
        for n in m..d {
            let b = floor(eigenvalues[n]);
            if a + b <= tol::EIGEN_SUM_FLOOR {
                continue;
            }
            let k = kernel(a, b);
            if k == 0.0 {
                continue;
            }
            // Unordered pairs count twice, diagonal entries once; diagonal
            // matrix elements of Hermitian operators are real.
            let weight = if m == n { k } else { 2.0 * k };
            for i in 0..3 {
                for j in i..3 {
                    let prod = (paulis[i][(m, n)] * paulis[j][(m, n)].conj()).re;
                    w[(i, j)] += weight * prod;
                }
            }
        }
    }
    for i in 0..3 {
        for j in 0..i {
            w[(i, j)] = w[(j, i)];
        }
    }
    w
}

/// W matrix of the state: F^2(rho, (r.sigma) x I) = 1 - r^T W r.
pub fn w_matrix(rho: &DensityMatrix) -> Result<WMatrix> {
    require_qubit_a(rho)?;
    let engine = QfiEngine::new(rho)?;
    let paulis = local_paulis_in_basis(&engine, rho.dim())?;
    let entries = quadratic_form(engine.eigenvalues(), &paulis, |a, b| 2.0 * a * b / (a + b));
    Ok(WMatrix { entries })
}

/// Minimal local Fisher information over unit Bloch drives, with the
/// minimizing direction. Zero exactly on the classical-quantum states.
pub fn q_measure(rho: &DensityMatrix) -> Result<(f64, [f64; 3])> {
    let w = w_matrix(rho)?;
    let (top, r) = w.largest_eigenpair();
    Ok(((1.0 - top).max(0.0), r))
}

/// Maximal local Fisher information over unit Bloch drives, with the
/// maximizing direction. Caps what any local-drive experiment can extract.
pub fn p_measure(rho: &DensityMatrix) -> Result<(f64, [f64; 3])> {
    let w = w_matrix(rho)?;
    let (bottom, r) = w.smallest_eigenpair();
    Ok(((1.0 - bottom).max(0.0), r))
}

/// Hilbert-Schmidt (geometric) discord: minimum over Bloch drives of
/// (1/2) sum (lambda_m - lambda_n)^2 |H_mn|^2.
pub fn hs_discord(rho: &DensityMatrix) -> Result<f64> {
    require_qubit_a(rho)?;
    let engine = QfiEngine::new(rho)?;
    let paulis = local_paulis_in_basis(&engine, rho.dim())?;
    let m = quadratic_form(engine.eigenvalues(), &paulis, |a, b| {
        0.5 * (a - b) * (a - b)
    });
    let eig = real_symmetric_eig(&m)?;
    Ok(eig.eigenvalues[0].max(0.0))
}

/// Hellinger discord: same minimum with the kernel
/// (1/2) (sqrt(lambda_m) - sqrt(lambda_n))^2.
pub fn hellinger_discord(rho: &DensityMatrix) -> Result<f64> {
    require_qubit_a(rho)?;
    let engine = QfiEngine::new(rho)?;
    let paulis = local_paulis_in_basis(&engine, rho.dim())?;
    let m = quadratic_form(engine.eigenvalues(), &paulis, |a, b| {
        let d = a.sqrt() - b.sqrt();
        0.5 * d * d
    });
    let eig = real_symmetric_eig(&m)?;
    Ok(eig.eigenvalues[0].max(0.0))
}

/// Operator Schmidt decomposition rho = sum_d k_d S_d x R_d across the
/// first-party/rest bipartition, with Tr(S_d S_e) = Tr(R_d R_e) = delta_de
/// and k_d >= 0 descending.
#[derive(Clone, Debug)]
pub struct OperatorSchmidt {
    pub coefficients: Vec<f64>,
    pub a_ops: Vec<ComplexMatrix>,
    pub b_ops: Vec<ComplexMatrix>,
}

/// Orthonormal Hermitian basis of d x d matrices under Tr(A B): the scaled
/// identity, the generalized Gell-Mann family (symmetric, antisymmetric,
/// diagonal), d^2 operators in total. For d = 2 this is exactly
/// {I, sigma_x, sigma_y, sigma_z} / sqrt(2).
pub fn hermitian_basis(d: usize) -> Vec<ComplexMatrix> {
    let mut basis = Vec::with_capacity(d * d);
    let inv_sqrt_d = 1.0 / (d as f64).sqrt();
    basis.push(ComplexMatrix::identity(d).scale_re(inv_sqrt_d));
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for j in 0..d {
        for k in (j + 1)..d {
            let mut sym = ComplexMatrix::zeros(d);
            sym[(j, k)] = Complex64::new(s, 0.0);
            sym[(k, j)] = Complex64::new(s, 0.0);
            basis.push(sym);
            let mut asym = ComplexMatrix::zeros(d);
            asym[(j, k)] = Complex64::new(0.0, -s);
            asym[(k, j)] = Complex64::new(0.0, s);
            basis.push(asym);
        }
    }
    for l in 1..d {
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut diag = ComplexMatrix::zeros(d);
        for j in 0..l {
            diag[(j, j)] = Complex64::new(norm, 0.0);
        }
        diag[(l, l)] = Complex64::new(-(l as f64) * norm, 0.0);
        basis.push(diag);
    }
    basis
}

pub fn operator_schmidt(rho: &DensityMatrix) -> Result<OperatorSchmidt> {
    if rho.dims().len() < 2 {
        return Err(Error::DimensionMismatch(
            "operator Schmidt decomposition needs a bipartite state".into(),
        ));
    }
    let d_a = rho.dims()[0];
    let d_b = rho.dim() / d_a;
    let basis_a = hermitian_basis(d_a);
    let basis_b = hermitian_basis(d_b);

    // Gamma_mn = Tr(rho (A_m x B_n)); real because all three factors are
    // Hermitian.
    let m = rho.matrix();
    let dim = rho.dim();
    let gamma = RealMatrix::from_fn(d_a * d_a, d_b * d_b, |p, q| {
        let op = kron(&basis_a[p], &basis_b[q]);
        let mut tr = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                tr += (m[(i, j)] * op[(j, i)]).re;
            }
        }
        tr
    });

    let svd = crate::linalg::svd_real(&gamma)?;
    let count = svd.singular_values.len();
    let mut a_ops = Vec::with_capacity(count);
    let mut b_ops = Vec::with_capacity(count);
    for d in 0..count {
        let mut s = ComplexMatrix::zeros(d_a);
        for (p, op) in basis_a.iter().enumerate() {
            s = &s + &op.scale_re(svd.u[(p, d)]);
        }
        a_ops.push(s);
        let mut r = ComplexMatrix::zeros(d_b);
        for (q, op) in basis_b.iter().enumerate() {
            r = &r + &op.scale_re(svd.v[(q, d)]);
        }
        b_ops.push(r);
    }
    Ok(OperatorSchmidt {
        coefficients: svd.singular_values,
        a_ops,
        b_ops,
    })
}

/// Theorem-level classicality test: true iff the A-side Schmidt operators
/// with non-negligible weight commute pairwise, which characterizes the
/// classical-quantum (and classical-classical) states.
pub fn classicality_check(rho: &DensityMatrix) -> Result<bool> {
    classicality_check_with_tol(rho, tol::CLASSICALITY_REL)
}

/// Classicality test at an explicit relative commutator tolerance; the
/// cutoff is `rel_tol * ||rho||_F`.
pub fn classicality_check_with_tol(rho: &DensityMatrix, rel_tol: f64) -> Result<bool> {
    let schmidt = operator_schmidt(rho)?;
    let kept: Vec<&ComplexMatrix> = schmidt
        .coefficients
        .iter()
        .zip(&schmidt.a_ops)
        .filter(|(&k, _)| k > tol::SCHMIDT_RANK_FLOOR)
        .map(|(_, op)| op)
        .collect();
    let bound = rel_tol * rho.matrix().frobenius_norm();
    for (i, a) in kept.iter().enumerate() {
        for b in kept.iter().skip(i + 1) {
            if commutator(a, b)?.frobenius_norm() > bound {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every Bloch-sphere measure plus the classicality verdict from a single
/// eigendecomposition of the state.
pub fn correlation_report(rho: &DensityMatrix) -> Result<CorrelationReport> {
    require_qubit_a(rho)?;
    let engine = QfiEngine::new(rho)?;
    let paulis = local_paulis_in_basis(&engine, rho.dim())?;
    let evals = engine.eigenvalues();

    let w = quadratic_form(evals, &paulis, |a, b| 2.0 * a * b / (a + b));
    let w_eig = real_symmetric_eig(&w)?;
    let v = &w_eig.vectors;
    let q_squared = (1.0 - w_eig.eigenvalues[2]).max(0.0);
    let p_squared = (1.0 - w_eig.eigenvalues[0]).max(0.0);
    let minimizing_bloch = [v[(0, 2)], v[(1, 2)], v[(2, 2)]];
    let maximizing_bloch = [v[(0, 0)], v[(1, 0)], v[(2, 0)]];

    let hs = quadratic_form(evals, &paulis, |a, b| 0.5 * (a - b) * (a - b));
    let d_hs_squared = real_symmetric_eig(&hs)?.eigenvalues[0].max(0.0);
    let hell = quadratic_form(evals, &paulis, |a, b| {
        let d = a.sqrt() - b.sqrt();
        0.5 * d * d
    });
    let d_h_squared = real_symmetric_eig(&hell)?.eigenvalues[0].max(0.0);

    Ok(CorrelationReport {
        q_squared,
        p_squared,
        d_hs_squared,
        d_h_squared,
        minimizing_bloch,
        maximizing_bloch,
        classical_quantum: classicality_check(rho)?,
        classicality_tolerance: tol::CLASSICALITY_REL,
    })
}
