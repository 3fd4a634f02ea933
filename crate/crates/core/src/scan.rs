//! Parameter sweeps shaped for tabular output.
//!
//! Each function returns plain rows in a fixed order so that serializing
//! them twice gives identical bytes; the command line tool writes them as
//! CSV.

use crate::correlations::{hellinger_discord, hs_discord, p_measure, q_measure};
use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix};
use crate::qfi::QfiEngine;
use crate::qstate::{bloch_matrix, make_werner, Bell};

/// One Werner-family point: the interferometric measure, both discords,
/// and the guaranteed floor.
#[derive(Clone, Copy, Debug)]
pub struct WernerRow {
    pub p: f64,
    pub q2: f64,
    pub d_hs2: f64,
    pub d_h2: f64,
    pub p2: f64,
}

/// One drive-direction point on a fixed state: collective and local
/// quantum Fisher information plus the cross term between the two local
/// generators.
#[derive(Clone, Copy, Debug)]
pub struct SurfaceRow {
    pub theta: f64,
    pub phi: f64,
    pub gqfi: f64,
    pub lqfi: f64,
    pub interference: f64,
}

fn linspace(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::OutOfRangeParameter(format!(
            "a sweep needs at least 2 steps, got {steps}"
        )));
    }
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(Error::OutOfRangeParameter(format!(
            "sweep range [{lo}, {hi}] must be finite and increasing"
        )));
    }
    let d = (hi - lo) / (steps - 1) as f64;
    Ok((0..steps).map(|i| lo + d * i as f64).collect())
}

/// Correlation measures along the Werner family, inclusive of both
/// endpoints.
pub fn werner_sweep_rows(
    p_min: f64,
    p_max: f64,
    steps: usize,
    bell: Bell,
) -> Result<Vec<WernerRow>> {
    let mut rows = Vec::with_capacity(steps);
    for p in linspace(p_min, p_max, steps)? {
        let rho = make_werner(p, bell)?;
        rows.push(WernerRow {
            p,
            q2: q_measure(&rho)?.0,
            d_hs2: hs_discord(&rho)?,
            d_h2: hellinger_discord(&rho)?,
            p2: p_measure(&rho)?.0,
        });
    }
    Ok(rows)
}

/// Fisher quantities of a Werner state over the full sphere of local drive
/// directions, theta in [0, pi] outer and phi in [0, 2 pi] inner, both
/// inclusive. The drive on each party is the unit-Bloch Hamiltonian
/// cos(theta) X + sin(theta) cos(phi) Y + sin(theta) sin(phi) Z.
pub fn surface_rows(p: f64, theta_steps: usize, phi_steps: usize) -> Result<Vec<SurfaceRow>> {
    if theta_steps < 2 || phi_steps < 2 {
        return Err(Error::OutOfRangeParameter(format!(
            "surface grid needs at least 2x2 points, got {theta_steps}x{phi_steps}"
        )));
    }
    let rho = make_werner(p, Bell::PsiPlus)?;
    let engine = QfiEngine::new(&rho)?;
    let eye = ComplexMatrix::identity(2);
    let mut on_a = Vec::with_capacity(3);
    let mut on_b = Vec::with_capacity(3);
    for axis in 0..3 {
        let mut r = [0.0; 3];
        r[axis] = 1.0;
        let sigma = bloch_matrix(r);
        on_a.push(engine.to_eigenbasis(&kron(&sigma, &eye))?);
        on_b.push(engine.to_eigenbasis(&kron(&eye, &sigma))?);
    }

    let thetas = linspace(0.0, std::f64::consts::PI, theta_steps)?;
    let phis = linspace(0.0, 2.0 * std::f64::consts::PI, phi_steps)?;
    let dim = rho.dim();
    let mut rows = Vec::with_capacity(theta_steps * phi_steps);
    for &theta in &thetas {
        for &phi in &phis {
            let r = [
                theta.cos(),
                theta.sin() * phi.cos(),
                theta.sin() * phi.sin(),
            ];
            let mut h_a = ComplexMatrix::zeros(dim);
            let mut h_b = ComplexMatrix::zeros(dim);
            for axis in 0..3 {
                h_a = &h_a + &on_a[axis].scale_re(r[axis]);
                h_b = &h_b + &on_b[axis].scale_re(r[axis]);
            }
            let lqfi = engine.qfi_in_basis(&h_a);
            let interference = engine.interference_in_basis(&h_a, &h_b);
            let gqfi = engine.qfi_in_basis(&(&h_a + &h_b));
            rows.push(SurfaceRow {
                theta,
                phi,
                gqfi,
                lqfi,
                interference,
            });
        }
    }
    Ok(rows)
}
