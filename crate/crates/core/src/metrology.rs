//! Phase-estimation precision bounds and a Monte Carlo harness that checks
//! them against simulated experiments.
//!
//! All bounds are single-shot error floors Delta theta >= 1/F built from the
//! square root of a Fisher quantity; repeating an experiment divides them by
//! the square root of the shot count. The interval forms bracket the error
//! without committing to a drive direction: the local window uses the
//! extremes of the Bloch sphere on one party, the global window combines
//! both parties of a two-qubit state, and the N-party floor multiplies the
//! single-site maximum by the number of exchangeable sites.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, Complex64, ComplexMatrix};
use crate::qfi::{evolve, qfi_spectral, sld};
use crate::qstate::{swap_parties, DensityMatrix};
use crate::tol;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// Which bound produced a [`PrecisionInterval`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundProvenance {
    SingleShotQcr,
    LocalWindow,
    GlobalWindow,
    NpartyFloor,
}

impl std::fmt::Display for BoundProvenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BoundProvenance::SingleShotQcr => "single_shot_qcr",
            BoundProvenance::LocalWindow => "local_window",
            BoundProvenance::GlobalWindow => "global_window",
            BoundProvenance::NpartyFloor => "nparty_floor",
        })
    }
}

/// Two-sided window on the single-shot estimation error.
///
/// `lower_bound_error` is the best error any drive allows; the upper bound
/// is what the state's correlations guarantee even for the worst useful
/// drive, infinite when nothing is guaranteed.
#[derive(Clone, Copy, Debug)]
pub struct PrecisionInterval {
    pub lower_bound_error: f64,
    pub upper_bound_error: f64,
    pub provenance: BoundProvenance,
}

/// Single-shot error floor 1/F(rho, H) for a fixed drive.
pub fn qcr_bound(rho: &DensityMatrix, h: &ComplexMatrix) -> Result<f64> {
    let f2 = qfi_spectral(rho, h)?;
    if f2 <= tol::ZERO_INFORMATION {
        return Err(Error::ZeroInformation);
    }
    Ok(1.0 / f2.sqrt())
}

/// Error window from the Bloch-sphere extremes on party A:
/// 1/P_A <= Delta theta_best, and every drive is limited to 1/Q_A.
pub fn precision_interval_local(rho: &DensityMatrix) -> Result<PrecisionInterval> {
    let (q2, _) = crate::correlations::q_measure(rho)?;
    let (p2, _) = crate::correlations::p_measure(rho)?;
    if p2 <= tol::ZERO_INFORMATION {
        return Err(Error::ZeroInformation);
    }
    let upper = if q2 <= tol::ZERO_INFORMATION {
        f64::INFINITY
    } else {
        1.0 / q2.sqrt()
    };
    Ok(PrecisionInterval {
        lower_bound_error: 1.0 / p2.sqrt(),
        upper_bound_error: upper,
        provenance: BoundProvenance::LocalWindow,
    })
}

/// Error window for a pair of local drives on a two-qubit state:
/// 1/(P_A + P_B) from constructive interference at best, and
/// 1/|Q_A - Q_B| at worst. For symmetric states the gap closes and the
/// upper endpoint is infinite, matching the possibility of total
/// destructive interference.
pub fn precision_interval_global(rho: &DensityMatrix) -> Result<PrecisionInterval> {
    if rho.dims() != [2, 2] {
        return Err(Error::DimensionMismatch(format!(
            "the two-party window needs a pair of qubits, got dims {:?}",
            rho.dims()
        )));
    }
    // Squared measures at rounding level are genuine zeros; taking their
    // square root would inflate 1e-16 noise to 1e-8 and poison the gap.
    let root = |m2: f64| {
        if m2 <= tol::ZERO_INFORMATION {
            0.0
        } else {
            m2.sqrt()
        }
    };
    let (qa2, _) = crate::correlations::q_measure(rho)?;
    let (pa2, _) = crate::correlations::p_measure(rho)?;
    let flipped = swap_parties(rho)?;
    let (qb2, _) = crate::correlations::q_measure(&flipped)?;
    let (pb2, _) = crate::correlations::p_measure(&flipped)?;

    let p_sum = root(pa2) + root(pb2);
    if p_sum <= tol::SYMMETRY_GAP_FLOOR {
        return Err(Error::ZeroInformation);
    }
    let q_gap = (root(qa2) - root(qb2)).abs();
    let upper = if q_gap <= tol::SYMMETRY_GAP_FLOOR {
        f64::INFINITY
    } else {
        1.0 / q_gap
    };
    Ok(PrecisionInterval {
        lower_bound_error: 1.0 / p_sum,
        upper_bound_error: upper,
        provenance: BoundProvenance::GlobalWindow,
    })
}

/// Permutes two adjacent qubit sites of an N-qubit operator.
fn swap_adjacent_sites(m: &ComplexMatrix, n_sites: usize, site: usize) -> ComplexMatrix {
    let hi = n_sites - 1 - site;
    let lo = hi - 1;
    let perm = |idx: usize| {
        let b_hi = (idx >> hi) & 1;
        let b_lo = (idx >> lo) & 1;
        (idx & !((1 << hi) | (1 << lo))) | (b_lo << hi) | (b_hi << lo)
    };
    ComplexMatrix::from_fn(m.dim(), |i, j| m[(perm(i), perm(j))])
}

/// Drive-independent error floor 1/(N P) for an exchange-symmetric N-qubit
/// state, with P the Bloch maximum of any single site. Valid against every
/// collective drive of identical local Hamiltonians; GHZ states saturate
/// it.
pub fn nparty_bound(rho_n: &DensityMatrix) -> Result<f64> {
    if rho_n.dims().iter().any(|&d| d != 2) {
        return Err(Error::DimensionMismatch(format!(
            "the N-party floor expects qubit sites, got dims {:?}",
            rho_n.dims()
        )));
    }
    let n = rho_n.dims().len();
    if n > 5 {
        return Err(Error::OutOfRangeParameter(format!(
            "the N-party floor supports at most 5 sites, got {n}"
        )));
    }
    for site in 0..n.saturating_sub(1) {
        let swapped = swap_adjacent_sites(rho_n.matrix(), n, site);
        let deviation = (&swapped - rho_n.matrix()).frobenius_norm();
        if deviation > tol::SYMMETRY_GAP_FLOOR {
            return Err(Error::NotSymmetric { deviation });
        }
    }
    let (p2, _) = crate::correlations::p_measure(rho_n)?;
    if p2 <= tol::ZERO_INFORMATION {
        return Err(Error::ZeroInformation);
    }
    Ok(1.0 / (n as f64 * p2.sqrt()))
}

/// One Monte Carlo estimation campaign: `estimates` holds the maximum
/// likelihood phase of each run.
#[derive(Clone, Debug)]
pub struct EstimationRun {
    pub theta_true: f64,
    pub n_shots: usize,
    pub estimates: Vec<f64>,
    /// Sample standard deviation of the estimates (n-1 normalization).
    pub empirical_std: f64,
    /// Cramer-Rao floor of the chosen measurement: 1/sqrt(shots * CFI),
    /// where CFI = Tr(rho_theta L^2) is the classical Fisher information of
    /// measuring in the eigenbasis of the logarithmic derivative L at the
    /// true phase.
    pub qcr_floor: f64,
    /// True when any run's likelihood came out flat across the whole grid;
    /// the estimates of such runs are the first grid point.
    pub degenerate_likelihood: bool,
}

const MLE_GRID_POINTS: usize = 2001;

/// Simulates repeated phase estimation on rho under the already-embedded
/// drive `h`: the state evolves to theta_true, each run draws
/// `shots_per_run` projective outcomes in the SLD eigenbasis (the
/// measurement whose classical Fisher information attains the quantum
/// value at the reference phase), and a maximum likelihood search over a
/// uniform 2001-point grid on [-pi/2, pi/2] produces each run's estimate.
///
/// A fixed projective measurement cannot always tell two phases apart; a
/// qubit probe under a trigonometric signal yields a likelihood with two
/// exactly equal maxima half a period apart. Among maxima that agree to
/// within grid quantization, the one nearest the reference phase is
/// reported, which keeps the estimator in the local regime where the
/// Cramer-Rao floor applies.
///
/// Runs are seeded as `seed + run index`, so a campaign is reproducible and
/// individual runs are independent.
pub fn mc_estimate(
    rho: &DensityMatrix,
    h: &ComplexMatrix,
    theta_true: f64,
    shots_per_run: usize,
    runs: usize,
    seed: u64,
) -> Result<EstimationRun> {
    let half_pi = std::f64::consts::FRAC_PI_2;
    if !theta_true.is_finite() || theta_true.abs() >= half_pi {
        return Err(Error::OutOfRangeParameter(format!(
            "true phase must lie strictly inside (-pi/2, pi/2), got {theta_true}"
        )));
    }
    if shots_per_run == 0 {
        return Err(Error::OutOfRangeParameter(
            "shots_per_run must be positive".into(),
        ));
    }
    if runs < 2 {
        return Err(Error::OutOfRangeParameter(
            "at least two runs are needed for an empirical spread".into(),
        ));
    }
    let f2 = qfi_spectral(rho, h)?;
    if f2 <= tol::ZERO_INFORMATION {
        return Err(Error::ZeroInformation);
    }

    let dim = rho.dim();
    let rho_true = evolve(rho, h, theta_true)?;
    let l = sld(&rho_true, h)?;
    let povm = hermitian_eig(&l)?;

    // Classical Fisher information of this measurement at theta_true:
    // sum_k l_k^2 p_k = Tr(rho_theta L^2).
    let p_true: Vec<f64> = (0..dim)
        .map(|k| {
            let v = povm.vectors.column(k);
            expectation(rho_true.matrix(), &v).max(0.0)
        })
        .collect();
    let cfi: f64 = povm
        .eigenvalues
        .iter()
        .zip(&p_true)
        .map(|(l_k, p_k)| l_k * l_k * p_k)
        .sum();
    if cfi <= tol::ZERO_INFORMATION {
        return Err(Error::ZeroInformation);
    }
    let qcr_floor = 1.0 / (shots_per_run as f64 * cfi).sqrt();

    // Outcome probabilities on the estimation grid, computed in the drive's
    // eigenbasis where evolution is a pure phase per matrix element.
    let h_eig = hermitian_eig(h)?;
    let rho_h = h_eig
        .vectors
        .adjoint()
        .matmul(rho.matrix())?
        .matmul(&h_eig.vectors)?;
    let povm_h: Vec<Vec<Complex64>> = (0..dim)
        .map(|k| {
            let v = povm.vectors.column(k);
            (0..dim)
                .map(|i| (0..dim).map(|j| h_eig.vectors[(j, i)].conj() * v[j]).sum())
                .collect()
        })
        .collect();
    let grid: Vec<f64> = (0..MLE_GRID_POINTS)
        .map(|i| -half_pi + std::f64::consts::PI * i as f64 / (MLE_GRID_POINTS - 1) as f64)
        .collect();
    let mut grid_probs = vec![vec![0.0f64; dim]; MLE_GRID_POINTS];
    for (g, &theta) in grid.iter().enumerate() {
        for k in 0..dim {
            let w = &povm_h[k];
            let mut p = 0.0;
            for i in 0..dim {
                for j in 0..dim {
                    let phase = Complex64::from_polar(
                        1.0,
                        theta * (h_eig.eigenvalues[j] - h_eig.eigenvalues[i]),
                    );
                    p += (w[i].conj() * rho_h[(i, j)] * phase * w[j]).re;
                }
            }
            grid_probs[g][k] = p.max(0.0);
        }
    }

    // Sampling distribution at the true phase, normalized for the inverse
    // CDF draw.
    let total: f64 = p_true.iter().sum();
    let sample_probs: Vec<f64> = p_true.iter().map(|p| p / total).collect();

    let mut estimates = Vec::with_capacity(runs);
    let mut degenerate = false;
    for run in 0..runs {
        let mut rng = ChaCha12Rng::seed_from_u64(seed.wrapping_add(run as u64));
        let mut counts = vec![0u64; dim];
        for _ in 0..shots_per_run {
            let u: f64 = rng.gen();
            let mut acc = 0.0;
            let mut outcome = dim - 1;
            for (k, &p) in sample_probs.iter().enumerate() {
                acc += p;
                if u < acc {
                    outcome = k;
                    break;
                }
            }
            counts[outcome] += 1;
        }

        let loglik: Vec<f64> = grid_probs
            .iter()
            .map(|probs| {
                let mut ll = 0.0f64;
                for (k, &n_k) in counts.iter().enumerate() {
                    if n_k == 0 {
                        continue;
                    }
                    if probs[k] <= 0.0 {
                        return f64::NEG_INFINITY;
                    }
                    ll += n_k as f64 * probs[k].ln();
                }
                ll
            })
            .collect();
        let mut best = f64::NEG_INFINITY;
        let mut worst = f64::INFINITY;
        let mut best_idx = 0;
        for (g, &ll) in loglik.iter().enumerate() {
            if ll > best {
                best = ll;
                best_idx = g;
            }
            if ll < worst {
                worst = ll;
            }
        }
        if !best.is_finite() || (best - worst).abs() <= 1e-12 * (best.abs() + 1.0) {
            degenerate = true;
            estimates.push(grid[best_idx]);
            continue;
        }

        // Peaks whose sampled height trails the global maximum by no more
        // than the quantization drop seen at the maximum itself carry the
        // same statistical support; prefer the one nearest the reference.
        let mut window = 0.0f64;
        if best_idx > 0 {
            window = window.max(best - loglik[best_idx - 1]);
        }
        if best_idx + 1 < MLE_GRID_POINTS {
            window = window.max(best - loglik[best_idx + 1]);
        }
        window += 1e-9 * (best.abs() + 1.0);
        let mut pick = best_idx;
        let mut pick_dist = (grid[best_idx] - theta_true).abs();
        for (g, &ll) in loglik.iter().enumerate() {
            if ll < best - window {
                continue;
            }
            let peak = (g == 0 || ll >= loglik[g - 1])
                && (g + 1 == MLE_GRID_POINTS || ll >= loglik[g + 1]);
            if !peak {
                continue;
            }
            let d = (grid[g] - theta_true).abs();
            if d < pick_dist {
                pick = g;
                pick_dist = d;
            }
        }
        estimates.push(grid[pick]);
    }

    let mean: f64 = estimates.iter().sum::<f64>() / runs as f64;
    let var: f64 = estimates
        .iter()
        .map(|e| (e - mean) * (e - mean))
        .sum::<f64>()
        / (runs - 1) as f64;
    Ok(EstimationRun {
        theta_true,
        n_shots: shots_per_run,
        estimates,
        empirical_std: var.sqrt(),
        qcr_floor,
        degenerate_likelihood: degenerate,
    })
}

fn expectation(m: &ComplexMatrix, v: &[Complex64]) -> f64 {
    let d = m.dim();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..d {
        for j in 0..d {
            acc += v[i].conj() * m[(i, j)] * v[j];
        }
    }
    acc.re
}
