//! Seeded random generators for states, unitaries, and channels.
//!
//! Every function takes the generator by mutable reference; callers own the
//! seeding, which keeps property tests and CLI runs reproducible. The
//! intended generator is a counter-based stream cipher (`ChaCha12Rng`
//! throughout this workspace) so parallel call sites can derive independent
//! streams from a base seed.

use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, kron, Complex64, ComplexMatrix};
use rand::Rng;
use rand_distr::StandardNormal;

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// dim x cols matrix of independent standard complex Gaussians, stored in
/// the top-left block of a square matrix.
fn ginibre_block(dim: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, j| {
        if j < cols {
            gaussian(rng)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Haar-distributed unitary: Gram-Schmidt on a complex Gaussian matrix, with
/// each column's phase fixed so the implied triangular factor has a positive
/// diagonal. Unitarity holds to 1e-10 (two orthogonalization passes).
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(dim, |_, _| gaussian(rng));
    let mut q: Vec<Vec<Complex64>> = (0..dim).map(|j| g.column(j)).collect();
    for k in 0..dim {
        let mut v = q[k].clone();
        for _ in 0..2 {
            for prev in q.iter().take(k) {
                let dot: Complex64 = (0..dim).map(|i| prev[i].conj() * v[i]).sum();
                for i in 0..dim {
                    v[i] -= dot * prev[i];
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut v {
            *z /= norm;
        }
        // Rotate so <q_k, g_k> lands on the positive real axis; this is the
        // phase convention that makes the distribution exactly Haar.
        let r: Complex64 = (0..dim).map(|i| v[i].conj() * g[(i, k)]).sum();
        let phase = r / r.norm();
        for z in &mut v {
            *z *= phase;
        }
        q[k] = v;
    }
    ComplexMatrix::from_fn(dim, |i, j| q[j][i])
}

/// Gaussian Hermitian matrix (G + G^H)/2; entries are O(1), not normalized.
pub fn random_hermitian(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(dim, |_, _| gaussian(rng));
    g.hermitize()
}

/// Random state of the requested rank on the given local dimensions, via
/// G G^H / Tr(G G^H) with G a dim x rank complex Gaussian block.
pub fn random_density(dims: &[usize], rank: usize, rng: &mut impl Rng) -> Result<DensityMatrix> {
    let dim: usize = dims.iter().product();
    if rank == 0 {
        return Err(Error::OutOfRangeParameter(
            "state rank must be positive".into(),
        ));
    }
    if rank > dim {
        return Err(Error::RankTooLarge { rank, dim });
    }
    let g = ginibre_block(dim, rank, rng);
    let gram = g.matmul(&g.adjoint())?;
    let rho = gram.scale_re(1.0 / gram.trace().re);
    DensityMatrix::new(rho, dims.to_vec())
}

/// Flat Dirichlet draw: `n` positive weights summing to one.
fn simplex_point(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    let mut w: Vec<f64> = (0..n)
        .map(|_| rng.sample::<f64, _>(rand_distr::Exp1))
        .collect();
    let total: f64 = w.iter().sum();
    for x in &mut w {
        *x /= total;
    }
    w
}

/// Classical-quantum state sum_i p_i |a_i><a_i| x sigma_i with orthonormal
/// {|a_i>} drawn as columns of a Haar unitary on A and full-rank random
/// sigma_i on B. Any local drive on A commutes with the A-side structure, so
/// the minimal local Fisher information of the output vanishes.
pub fn random_cq_state(
    d_a: usize,
    d_b: usize,
    terms: usize,
    rng: &mut impl Rng,
) -> Result<DensityMatrix> {
    if terms == 0 {
        return Err(Error::OutOfRangeParameter(
            "a classical-quantum mixture needs at least one term".into(),
        ));
    }
    if terms > d_a {
        return Err(Error::TooManyTerms { terms, dim: d_a });
    }
    let basis = random_unitary(d_a, rng);
    let weights = simplex_point(terms, rng);
    let mut rho = ComplexMatrix::zeros(d_a * d_b);
    for (i, &p) in weights.iter().enumerate() {
        let a = basis.column(i);
        let proj = ComplexMatrix::from_fn(d_a, |r, c| a[r] * a[c].conj());
        let sigma = random_density(&[d_b], d_b, rng)?;
        rho = &rho + &kron(&proj, sigma.matrix()).scale_re(p);
    }
    DensityMatrix::new(rho, vec![d_a, d_b])
}

/// Classical-classical state sum_i p_i |a_i><a_i| x |b_i><b_i| with both
/// orthonormal families drawn from Haar unitaries.
pub fn random_cc_state(
    d_a: usize,
    d_b: usize,
    terms: usize,
    rng: &mut impl Rng,
) -> Result<DensityMatrix> {
    if terms == 0 {
        return Err(Error::OutOfRangeParameter(
            "a classical-classical mixture needs at least one term".into(),
        ));
    }
    if terms > d_a.min(d_b) {
        return Err(Error::TooManyTerms {
            terms,
            dim: d_a.min(d_b),
        });
    }
    let ua = random_unitary(d_a, rng);
    let ub = random_unitary(d_b, rng);
    let weights = simplex_point(terms, rng);
    let mut rho = ComplexMatrix::zeros(d_a * d_b);
    for (i, &p) in weights.iter().enumerate() {
        let a = ua.column(i);
        let b = ub.column(i);
        let pa = ComplexMatrix::from_fn(d_a, |r, c| a[r] * a[c].conj());
        let pb = ComplexMatrix::from_fn(d_b, |r, c| b[r] * b[c].conj());
        rho = &rho + &kron(&pa, &pb).scale_re(p);
    }
    DensityMatrix::new(rho, vec![d_a, d_b])
}

/// Random completely positive trace-preserving channel as `n_ops` Kraus
/// operators: Gaussian blocks G_i whitened by the inverse square root of
/// sum_i G_i^H G_i, so completeness holds to machine precision.
pub fn random_kraus(dim: usize, n_ops: usize, rng: &mut impl Rng) -> Result<Vec<ComplexMatrix>> {
    if n_ops == 0 {
        return Err(Error::OutOfRangeParameter(
            "a channel needs at least one Kraus operator".into(),
        ));
    }
    let gs: Vec<ComplexMatrix> = (0..n_ops)
        .map(|_| ComplexMatrix::from_fn(dim, |_, _| gaussian(rng)))
        .collect();
    let mut s = ComplexMatrix::zeros(dim);
    for g in &gs {
        s = &s + &g.adjoint().matmul(g)?;
    }
    // S is positive definite almost surely; invert its square root through
    // the eigensystem.
    let eig = hermitian_eig(&s)?;
    let d = dim;
    let mut inv_root = ComplexMatrix::zeros(d);
    for k in 0..d {
        let w = 1.0 / eig.eigenvalues[k].sqrt();
        for i in 0..d {
            let vik = eig.vectors[(i, k)] * w;
            for j in 0..d {
                inv_root[(i, j)] += vik * eig.vectors[(j, k)].conj();
            }
        }
    }
    gs.iter().map(|g| g.matmul(&inv_root)).collect()
}

/// Uniform point on the unit sphere in R^3.
pub fn random_bloch(rng: &mut impl Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm > 1e-6 {
            return [v[0] / norm, v[1] / norm, v[2] / norm];
        }
    }
}
