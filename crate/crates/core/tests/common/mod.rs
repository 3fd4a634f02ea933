//! Shared fixtures, a brute-force Bloch-grid oracle, and the seeded
//! property drivers used by both the property and acceptance suites.
//!
//! The oracle deliberately avoids the 3x3 quadratic-form shortcut: it
//! evaluates the underlying eigenvalue sums direction by direction, so
//! agreement with the library is a genuine cross-check.

#![allow(dead_code)]

use qfitk_core::correlations::{
    classicality_check, hellinger_discord, hs_discord, p_measure, q_measure,
};
use qfitk_core::linalg::{kron, Complex64, ComplexMatrix};
use qfitk_core::qfi::{
    gqfi_collective, interference_term, qfi_spectral, qfi_via_sld, speed_consistency, QfiEngine,
};
use qfitk_core::qstate::{
    apply_kraus_on_b, bloch_matrix, embed_local, ghz_state, make_pure, make_werner, pauli,
    product_state, random_cc_state, random_cq_state, random_density, random_hermitian,
    random_kraus, random_unitary, Bell, DensityMatrix, PauliAxis,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn plus_state() -> DensityMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    make_pure(&[c(s, 0.0), c(s, 0.0)], &[2]).unwrap()
}

/// Classical on A, quantum on B: an even mixture of |0>|0> and |1>|+>.
pub fn asymmetric_cq() -> DensityMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let a = make_pure(
        &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        &[2, 2],
    )
    .unwrap();
    let b = make_pure(&[c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0), c(s, 0.0)], &[2, 2]).unwrap();
    let m = &a.matrix().scale_re(0.5) + &b.matrix().scale_re(0.5);
    DensityMatrix::new(m, vec![2, 2]).unwrap()
}

pub fn bloch_dir(theta: f64, phi: f64) -> [f64; 3] {
    [
        theta.cos(),
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
    ]
}

/// Random state over `dims` with a rank drawn uniformly from 1..=dim, so
/// the sweeps exercise pure, rank-deficient, and full-rank inputs alike.
pub fn random_mixed(dims: &[usize], rng: &mut ChaCha12Rng) -> DensityMatrix {
    let dim: usize = dims.iter().product();
    let rank = rng.gen_range(1..=dim);
    random_density(dims, rank, rng).unwrap()
}

fn unit_hermitian(dim: usize, rng: &mut ChaCha12Rng) -> ComplexMatrix {
    let h = random_hermitian(dim, rng);
    let n = h.frobenius_norm();
    h.scale_re(1.0 / n)
}

// ---------------------------------------------------------------------
// Brute-force direction-grid oracle
// ---------------------------------------------------------------------

/// Minima and maxima of the direction-resolved eigenvalue sums over a
/// theta x phi grid.
pub struct GridExtremes {
    pub f_min: f64,
    pub f_max: f64,
    pub hs_min: f64,
    pub hell_min: f64,
}

/// Per-state precomputation for the grid scan: Pauli matrix elements in
/// the eigenbasis plus the three kernels, packed over the m < n pairs.
pub struct GridOracle {
    pairs: Vec<(usize, usize)>,
    elems: [Vec<Complex64>; 3],
    kern_f: Vec<f64>,
    kern_hs: Vec<f64>,
    kern_hell: Vec<f64>,
}

impl GridOracle {
    pub fn new(rho: &DensityMatrix) -> Self {
        let engine = QfiEngine::new(rho).unwrap();
        let dim = rho.dim();
        let eye_b = ComplexMatrix::identity(dim / 2);
        let paulis: Vec<ComplexMatrix> = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z]
            .into_iter()
            .map(|ax| engine.to_eigenbasis(&kron(&pauli(ax), &eye_b)).unwrap())
            .collect();
        let lam = engine.eigenvalues();
        let mut pairs = Vec::new();
        let mut kern_f = Vec::new();
        let mut kern_hs = Vec::new();
        let mut kern_hell = Vec::new();
        // Same noise floor as the library's quadratic forms, so the two
        // paths disagree only through grid resolution.
        let floor = |x: f64| if x <= 1e-12 { 0.0 } else { x };
        for m in 0..dim {
            for n in (m + 1)..dim {
                let a = floor(lam[m]);
                let b = floor(lam[n]);
                pairs.push((m, n));
                // Off-diagonal pairs enter twice; the diagonal drops out of
                // every kernel because each vanishes at a = b.
                kern_f.push(if a + b > 1e-12 {
                    (a - b) * (a - b) / (a + b)
                } else {
                    0.0
                });
                kern_hs.push((a - b) * (a - b));
                let sq = a.sqrt() - b.sqrt();
                kern_hell.push(sq * sq);
            }
        }
        let elems = [0, 1, 2].map(|i| {
            pairs
                .iter()
                .map(|&(m, n)| paulis[i][(m, n)])
                .collect::<Vec<_>>()
        });
        GridOracle {
            pairs,
            elems,
            kern_f,
            kern_hs,
            kern_hell,
        }
    }

    /// (F^2, Hilbert-Schmidt sum, Hellinger sum) for the drive r.sigma on A.
    pub fn eval(&self, r: [f64; 3]) -> (f64, f64, f64) {
        let mut f = 0.0;
        let mut hs = 0.0;
        let mut hell = 0.0;
        for k in 0..self.pairs.len() {
            let h = self.elems[0][k] * r[0] + self.elems[1][k] * r[1] + self.elems[2][k] * r[2];
            let w = h.norm_sqr();
            f += self.kern_f[k] * w;
            hs += self.kern_hs[k] * w;
            hell += self.kern_hell[k] * w;
        }
        (f, hs, hell)
    }

    pub fn scan(&self, theta_steps: usize, phi_steps: usize) -> GridExtremes {
        let mut out = GridExtremes {
            f_min: f64::INFINITY,
            f_max: f64::NEG_INFINITY,
            hs_min: f64::INFINITY,
            hell_min: f64::INFINITY,
        };
        for i in 0..theta_steps {
            let theta = std::f64::consts::PI * i as f64 / (theta_steps - 1) as f64;
            for j in 0..phi_steps {
                let phi = 2.0 * std::f64::consts::PI * j as f64 / (phi_steps - 1) as f64;
                let (f, hs, hell) = self.eval(bloch_dir(theta, phi));
                out.f_min = out.f_min.min(f);
                out.f_max = out.f_max.max(f);
                out.hs_min = out.hs_min.min(hs);
                out.hell_min = out.hell_min.min(hell);
            }
        }
        out
    }
}

// ---------------------------------------------------------------------
// Property drivers (panic on violation, run by both suites)
// ---------------------------------------------------------------------

/// F^2 is blind to a simultaneous unitary rotation of state and drive.
pub fn check_unitary_invariance(samples: usize) {
    let mut rng = ChaCha12Rng::seed_from_u64(0x51a1);
    let dims_cycle: [&[usize]; 4] = [&[2], &[3], &[2, 2], &[5]];
    for s in 0..samples {
        let dims = dims_cycle[s % dims_cycle.len()];
        let dim: usize = dims.iter().product();
        let rho = random_mixed(dims, &mut rng);
        let h = random_hermitian(dim, &mut rng);
        let u = random_unitary(dim, &mut rng);
        let rho_u = DensityMatrix::new(
            u.matmul(rho.matrix())
                .unwrap()
                .matmul(&u.adjoint())
                .unwrap(),
            dims.to_vec(),
        )
        .unwrap();
        let h_u = u.matmul(&h).unwrap().matmul(&u.adjoint()).unwrap();
        let before = qfi_spectral(&rho, &h).unwrap();
        let after = qfi_spectral(&rho_u, &h_u).unwrap();
        assert!(
            (before - after).abs() <= 1e-9,
            "unitary invariance broke at sample {s}: {before} vs {after}"
        );
    }
}

/// Mixing states never increases F^2 beyond the mixture of the values.
pub fn check_qfi_convexity(samples: usize) {
    let mut rng = ChaCha12Rng::seed_from_u64(0xc02e);
    for s in 0..samples {
        let dims: &[usize] = if s % 2 == 0 { &[2, 2] } else { &[3] };
        let dim: usize = dims.iter().product();
        let rho1 = random_mixed(dims, &mut rng);
        let rho2 = random_mixed(dims, &mut rng);
        let h = random_hermitian(dim, &mut rng);
        let t = 0.1 * ((s % 9) + 1) as f64;
        let mixed = DensityMatrix::new(
            &rho1.matrix().scale_re(t) + &rho2.matrix().scale_re(1.0 - t),
            dims.to_vec(),
        )
        .unwrap();
        let lhs = qfi_spectral(&mixed, &h).unwrap();
        let rhs =
            t * qfi_spectral(&rho1, &h).unwrap() + (1.0 - t) * qfi_spectral(&rho2, &h).unwrap();
        assert!(
            lhs <= rhs + 1e-9,
            "convexity broke at sample {s}: {lhs} > {rhs}"
        );
    }
}

/// Channels on the untouched party cannot create A-side correlations.
pub fn check_cptp_monotonicity(samples: usize) {
    let mut rng = ChaCha12Rng::seed_from_u64(0xcb7b);
    for s in 0..samples {
        let d_b = if s % 2 == 0 { 2 } else { 3 };
        let rho = random_mixed(&[2, d_b], &mut rng);
        let kraus = random_kraus(d_b, (s % 3) + 1, &mut rng).unwrap();
        let mapped = apply_kraus_on_b(&rho, &kraus).unwrap();
        let before = q_measure(&rho).unwrap().0;
        let after = q_measure(&mapped).unwrap().0;
        assert!(
            after <= before + 1e-9,
            "CPTP monotonicity broke at sample {s}: {after} > {before}"
        );
    }
}

/// The interferometric measure dominates both discord-style measures.
pub fn check_hierarchy(samples: usize) {
    let mut rng = ChaCha12Rng::seed_from_u64(0x41e2);
    for s in 0..samples {
        let d_b = if s % 2 == 0 { 2 } else { 3 };
        let rho = random_mixed(&[2, d_b], &mut rng);
        let q2 = q_measure(&rho).unwrap().0;
        let hs = hs_discord(&rho).unwrap();
        let hell = hellinger_discord(&rho).unwrap();
        assert!(q2 >= hs - 1e-9, "Q^2 < D_HS^2 at sample {s}: {q2} < {hs}");
        assert!(
            q2 >= hell - 1e-9,
            "Q^2 < D_H^2 at sample {s}: {q2} < {hell}"
        );
    }
}

/// Spectral and logarithmic-derivative routes agree on full-rank states.
pub fn check_dual_formula(samples: usize) {
    let mut rng = ChaCha12Rng::seed_from_u64(0xd0a1);
    for s in 0..samples {
        let dims: &[usize] = match s % 3 {
            0 => &[2],
            1 => &[2, 2],
            _ => &[3],
        };
        let dim: usize = dims.iter().product();
        let rho = random_density(dims, dim, &mut rng).unwrap();
        let h = random_hermitian(dim, &mut rng);
        let spectral = qfi_spectral(&rho, &h).unwrap();
        let via_sld = qfi_via_sld(&rho, &h).unwrap();
        assert!(
            (spectral - via_sld).abs() <= 1e-9,
            "dual formulas disagree at sample {s}: {spectral} vs {via_sld}"
        );
    }
}

/// The finite-difference Bures rate reproduces the Fisher rate at small dt.
pub fn check_speed_consistency(samples: usize) {
    let mut rng = ChaCha12Rng::seed_from_u64(0x5bee);
    for s in 0..samples {
        let dims: &[usize] = if s % 2 == 0 { &[2] } else { &[2, 2] };
        let dim: usize = dims.iter().product();
        // Full rank keeps the fidelity expansion smooth; the drive is
        // normalized so one absolute tolerance fits every draw.
        let rho = random_density(dims, dim, &mut rng).unwrap();
        let h = unit_hermitian(dim, &mut rng);
        let check = speed_consistency(&rho, &h, 1e-4).unwrap();
        assert!(
            (check.bures_rate - check.qfi_rate).abs() <= 1e-3,
            "speeds disagree at sample {s}: {} vs {}",
            check.bures_rate,
            check.qfi_rate
        );
    }
}

/// Local unitaries relabel each party's basis; every measure must hold
/// still.
pub fn check_local_unitary_invariance(samples: usize) {
    let mut rng = ChaCha12Rng::seed_from_u64(0x10c0);
    for s in 0..samples {
        let d_b = if s % 2 == 0 { 2 } else { 3 };
        let rho = random_mixed(&[2, d_b], &mut rng);
        let u = kron(&random_unitary(2, &mut rng), &random_unitary(d_b, &mut rng));
        let rotated = DensityMatrix::new(
            u.matmul(rho.matrix())
                .unwrap()
                .matmul(&u.adjoint())
                .unwrap(),
            vec![2, d_b],
        )
        .unwrap();
        let checks = [
            (
                q_measure(&rho).unwrap().0,
                q_measure(&rotated).unwrap().0,
                "Q^2",
            ),
            (
                p_measure(&rho).unwrap().0,
                p_measure(&rotated).unwrap().0,
                "P^2",
            ),
            (
                hs_discord(&rho).unwrap(),
                hs_discord(&rotated).unwrap(),
                "D_HS^2",
            ),
            (
                hellinger_discord(&rho).unwrap(),
                hellinger_discord(&rotated).unwrap(),
                "D_H^2",
            ),
        ];
        for (before, after, name) in checks {
            assert!(
                (before - after).abs() <= 1e-9,
                "{name} moved under local unitaries at sample {s}: {before} vs {after}"
            );
        }
    }
}

/// Mixing in states whose A side is maximally mixed can only wash the
/// measure out: such states score zero in every drive direction, so
/// F^2 convexity applies uniformly over directions and survives the
/// minimum. (Arbitrary pairs do not: see the pinned counterexample in the
/// property suite.)
pub fn check_q_noise_mixing(samples: usize) {
    let mut rng = ChaCha12Rng::seed_from_u64(0x9c0e);
    for s in 0..samples {
        let d_b = if s % 2 == 0 { 2 } else { 3 };
        let rho = random_mixed(&[2, d_b], &mut rng);
        let chi_b = random_mixed(&[d_b], &mut rng);
        let noise = kron(&ComplexMatrix::identity(2).scale_re(0.5), chi_b.matrix());
        let t = 0.1 * ((s % 9) + 1) as f64;
        let mixed = DensityMatrix::new(
            &rho.matrix().scale_re(1.0 - t) + &noise.scale_re(t),
            vec![2, d_b],
        )
        .unwrap();
        let lhs = q_measure(&mixed).unwrap().0;
        let rhs = (1.0 - t) * q_measure(&rho).unwrap().0;
        assert!(
            lhs <= rhs + 1e-9,
            "noise mixing increased Q^2 at sample {s}: {lhs} > {rhs}"
        );
    }
}

/// Sandwich Q^2 <= F^2(rho, r.sigma on A) <= P^2 over random directions.
pub fn check_bound_ordering(samples: usize) {
    let mut rng = ChaCha12Rng::seed_from_u64(0xb0d0);
    for s in 0..samples {
        let d_b = if s % 2 == 0 { 2 } else { 3 };
        let rho = random_mixed(&[2, d_b], &mut rng);
        let q2 = q_measure(&rho).unwrap().0;
        let p2 = p_measure(&rho).unwrap().0;
        let r = qfitk_core::qstate::random_bloch(&mut rng);
        let h = kron(&bloch_matrix(r), &ComplexMatrix::identity(d_b));
        let f2 = qfi_spectral(&rho, &h).unwrap();
        assert!(
            q2 - 1e-9 <= f2 && f2 <= p2 + 1e-9,
            "ordering broke at sample {s}: Q^2={q2} F^2={f2} P^2={p2}"
        );
    }
}

/// Two-drive decomposition, the product bound on the cross term, and the
/// interference range of the collective value.
pub fn check_interference_family(samples: usize) {
    let mut rng = ChaCha12Rng::seed_from_u64(0x1f7e);
    for s in 0..samples {
        let d_b = if s % 2 == 0 { 2 } else { 3 };
        let rho = random_mixed(&[2, d_b], &mut rng);
        let h_a = kron(
            &random_hermitian(2, &mut rng),
            &ComplexMatrix::identity(d_b),
        );
        let h_b = kron(
            &ComplexMatrix::identity(2),
            &random_hermitian(d_b, &mut rng),
        );
        let f_a2 = qfi_spectral(&rho, &h_a).unwrap();
        let f_b2 = qfi_spectral(&rho, &h_b).unwrap();
        let cross = interference_term(&rho, &h_a, &h_b).unwrap();
        let joint = qfi_spectral(&rho, &(&h_a + &h_b)).unwrap();
        assert!(
            (joint - (f_a2 + f_b2 + 2.0 * cross)).abs() <= 1e-9,
            "decomposition broke at sample {s}"
        );
        assert!(
            cross.abs() <= (f_a2 * f_b2).sqrt() + 1e-9,
            "product bound broke at sample {s}: |{cross}| > sqrt({f_a2}*{f_b2})"
        );
        let f_a = f_a2.sqrt();
        let f_b = f_b2.sqrt();
        let lo = (f_a - f_b) * (f_a - f_b);
        let hi = (f_a + f_b) * (f_a + f_b);
        assert!(
            lo - 1e-9 <= joint && joint <= hi + 1e-9,
            "collective value out of range at sample {s}: {lo} <= {joint} <= {hi}"
        );
    }
}

/// Classical-on-A states are invisible to every A-side drive pair.
pub fn check_cq_interference_free(samples: usize) {
    let mut rng = ChaCha12Rng::seed_from_u64(0xc1f7);
    for s in 0..samples {
        let d_b = if s % 2 == 0 { 2 } else { 3 };
        let rho = random_cq_state(2, d_b, 2, &mut rng).unwrap();
        let h_a = kron(
            &random_hermitian(2, &mut rng),
            &ComplexMatrix::identity(d_b),
        );
        let h_b = kron(
            &ComplexMatrix::identity(2),
            &random_hermitian(d_b, &mut rng),
        );
        let cross = interference_term(&rho, &h_a, &h_b).unwrap();
        assert!(
            cross.abs() <= 1e-9,
            "CQ state produced interference at sample {s}: {cross}"
        );
    }
}

/// Grid oracle vs eigenvalue answers on random two-qubit and qubit-qutrit
/// states.
pub fn check_grid_oracle_agreement(samples: usize, theta_steps: usize, phi_steps: usize) {
    let mut rng = ChaCha12Rng::seed_from_u64(0x960d);
    for s in 0..samples {
        let d_b = if s % 2 == 0 { 2 } else { 3 };
        let rho = random_mixed(&[2, d_b], &mut rng);
        let ext = GridOracle::new(&rho).scan(theta_steps, phi_steps);
        let q2 = q_measure(&rho).unwrap().0;
        let p2 = p_measure(&rho).unwrap().0;
        let hs = hs_discord(&rho).unwrap();
        let hell = hellinger_discord(&rho).unwrap();
        assert!(
            (ext.f_min - q2).abs() <= 2e-4,
            "Q^2 vs grid at {s}: {q2} vs {}",
            ext.f_min
        );
        assert!(
            (ext.f_max - p2).abs() <= 2e-4,
            "P^2 vs grid at {s}: {p2} vs {}",
            ext.f_max
        );
        assert!((ext.hs_min - hs).abs() <= 2e-4, "D_HS^2 vs grid at {s}");
        assert!((ext.hell_min - hell).abs() <= 2e-4, "D_H^2 vs grid at {s}");
    }
}

/// Theorem-level split: classical states sit at zero and pass the verdict,
/// Werner states sit strictly above and fail it.
pub fn check_classical_versus_werner(classical_samples: usize, werner_points: usize) {
    let mut rng = ChaCha12Rng::seed_from_u64(0x7e01);
    for s in 0..classical_samples {
        let d_b = if s % 3 == 0 { 3 } else { 2 };
        let rho = if s % 2 == 0 {
            random_cq_state(2, d_b, 2, &mut rng).unwrap()
        } else {
            random_cc_state(2, d_b, 2, &mut rng).unwrap()
        };
        let q2 = q_measure(&rho).unwrap().0;
        assert!(q2 <= 1e-9, "classical state has Q^2 = {q2} at sample {s}");
        assert!(
            classicality_check(&rho).unwrap(),
            "classical state failed the verdict at sample {s}"
        );
    }
    for i in 0..werner_points {
        let p = 0.01 + 0.99 * i as f64 / (werner_points - 1) as f64;
        let rho = make_werner(p, Bell::PsiPlus).unwrap();
        let q2 = q_measure(&rho).unwrap().0;
        assert!(q2 > 1e-6, "Werner p={p} has Q^2 = {q2}");
        assert!(
            !classicality_check(&rho).unwrap(),
            "Werner p={p} passed the classicality verdict"
        );
    }
}

/// GHZ probes gain the N^2 factor; product probes stay additive.
pub fn check_scaling_laws() {
    let sz = pauli(PauliAxis::Z);
    for n in 2..=5usize {
        let ghz = ghz_state(n).unwrap();
        let collective = gqfi_collective(&ghz, &sz).unwrap();
        let single = qfi_spectral(&ghz, &embed_local(&sz, 0, ghz.dims()).unwrap()).unwrap();
        let ratio = collective / single;
        assert!(
            (ratio - (n * n) as f64).abs() <= 1e-6,
            "GHZ_{n} ratio = {ratio}"
        );
    }
    let mut rng = ChaCha12Rng::seed_from_u64(0x5a1);
    for n in 2..=3usize {
        let single = random_density(&[2], 2, &mut rng).unwrap();
        let one_copy = qfi_spectral(&single, &sz).unwrap();
        let mut probe = single.clone();
        for _ in 1..n {
            probe = product_state(&probe, &single).unwrap();
        }
        let collective = gqfi_collective(&probe, &sz).unwrap();
        assert!(
            (collective - n as f64 * one_copy).abs() <= 1e-9,
            "additivity broke at N={n}: {collective} vs {}",
            n as f64 * one_copy
        );
    }
}

/// Singlet-form Werner states are blind to every identical local drive:
/// the cross term exactly cancels the two local contributions.
pub fn check_singlet_blindness(samples: usize) {
    let mut rng = ChaCha12Rng::seed_from_u64(0x517e);
    for s in 0..samples {
        let p = 0.05 + 0.9 * (s as f64 / samples.max(1) as f64);
        let rho = make_werner(p, Bell::PhiMinus).unwrap();
        let h = random_hermitian(2, &mut rng);
        let h_a = kron(&h, &ComplexMatrix::identity(2));
        let h_b = kron(&ComplexMatrix::identity(2), &h);
        let joint = qfi_spectral(&rho, &(&h_a + &h_b)).unwrap();
        assert!(
            joint <= 1e-9,
            "singlet Werner reacted at sample {s}: {joint}"
        );
        let f_a2 = qfi_spectral(&rho, &h_a).unwrap();
        let cross = interference_term(&rho, &h_a, &h_b).unwrap();
        assert!(
            (cross + f_a2).abs() <= 1e-9,
            "cross term is not -F^2 at sample {s}: {cross} vs {f_a2}"
        );
    }
}
