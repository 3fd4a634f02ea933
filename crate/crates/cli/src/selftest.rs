//! Built-in golden-value checks: a fast end-to-end pass over the library's
//! headline numbers, printed one PASS/FAIL line per check.

use qfitk_core::correlations::{classicality_check, hellinger_discord, hs_discord, q_measure};
use qfitk_core::linalg::{kron, ComplexMatrix};
use qfitk_core::metrology::{precision_interval_local, qcr_bound};
use qfitk_core::qfi::{gqfi_collective, interference_term, qfi_spectral, speed_consistency};
use qfitk_core::qstate::{
    bloch_matrix, ghz_state, make_pure, make_werner, pauli, random_cq_state, random_density, Bell,
    PauliAxis,
};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

type Check = (&'static str, fn() -> Result<(), String>);

fn near(got: f64, want: f64, tol: f64, what: &str) -> Result<(), String> {
    if (got - want).abs() <= tol {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, want {want} within {tol}"))
    }
}

fn werner_quarter_measure() -> Result<(), String> {
    let rho = make_werner(0.25, Bell::PsiPlus).map_err(|e| e.to_string())?;
    near(
        q_measure(&rho).map_err(|e| e.to_string())?.0,
        0.1,
        1e-9,
        "Q^2",
    )
}

fn werner_closed_form() -> Result<(), String> {
    for p in [0.1, 0.5, 0.9] {
        let rho = make_werner(p, Bell::PsiPlus).map_err(|e| e.to_string())?;
        let q2 = q_measure(&rho).map_err(|e| e.to_string())?.0;
        near(q2, 2.0 * p * p / (1.0 + p), 1e-9, &format!("Q^2 at p={p}"))?;
    }
    Ok(())
}

fn collective_drive(rho: &qfitk_core::qstate::DensityMatrix, r: [f64; 3]) -> Result<f64, String> {
    let eye = ComplexMatrix::identity(2);
    let h = bloch_matrix(r);
    let drive = &kron(&h, &eye) + &kron(&eye, &h);
    qfi_spectral(rho, &drive).map_err(|e| e.to_string())
}

fn surface_pole() -> Result<(), String> {
    let rho = make_werner(0.25, Bell::PsiPlus).map_err(|e| e.to_string())?;
    near(
        collective_drive(&rho, [1.0, 0.0, 0.0])?,
        0.4,
        1e-9,
        "aligned collective value",
    )
}

fn surface_equator() -> Result<(), String> {
    let rho = make_werner(0.25, Bell::PsiPlus).map_err(|e| e.to_string())?;
    near(
        collective_drive(&rho, [0.0, 1.0, 0.0])?,
        0.0,
        1e-9,
        "crossed collective value",
    )
}

fn singlet_blindness() -> Result<(), String> {
    let rho = make_werner(0.8, Bell::PhiMinus).map_err(|e| e.to_string())?;
    let eye = ComplexMatrix::identity(2);
    let h = pauli(PauliAxis::X);
    let h_a = kron(&h, &eye);
    let h_b = kron(&eye, &h);
    let joint = qfi_spectral(&rho, &(&h_a + &h_b)).map_err(|e| e.to_string())?;
    near(joint, 0.0, 1e-9, "collective value")?;
    let f_a2 = qfi_spectral(&rho, &h_a).map_err(|e| e.to_string())?;
    let cross = interference_term(&rho, &h_a, &h_b).map_err(|e| e.to_string())?;
    near(cross, -f_a2, 1e-9, "cross term vs -F^2")
}

fn classical_state_vanishes() -> Result<(), String> {
    let mut rng = ChaCha12Rng::seed_from_u64(7);
    let rho = random_cq_state(2, 3, 2, &mut rng).map_err(|e| e.to_string())?;
    let q2 = q_measure(&rho).map_err(|e| e.to_string())?.0;
    if q2 > 1e-9 {
        return Err(format!("classical state has Q^2 = {q2}"));
    }
    match classicality_check(&rho) {
        Ok(true) => Ok(()),
        Ok(false) => Err("classical state failed the verdict".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn werner_is_not_classical() -> Result<(), String> {
    let rho = make_werner(0.25, Bell::PsiPlus).map_err(|e| e.to_string())?;
    match classicality_check(&rho) {
        Ok(false) => Ok(()),
        Ok(true) => Err("Werner state passed the classicality verdict".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn error_floor_value() -> Result<(), String> {
    let rho = make_werner(0.25, Bell::PsiPlus).map_err(|e| e.to_string())?;
    let h = kron(&pauli(PauliAxis::Z), &ComplexMatrix::identity(2));
    let bound = qcr_bound(&rho, &h).map_err(|e| e.to_string())?;
    near(bound, 1.0 / 0.1f64.sqrt(), 1e-9, "single-shot floor")
}

fn local_window_is_tight() -> Result<(), String> {
    let rho = make_werner(0.25, Bell::PsiPlus).map_err(|e| e.to_string())?;
    let i = precision_interval_local(&rho).map_err(|e| e.to_string())?;
    near(
        i.lower_bound_error,
        1.0 / 0.1f64.sqrt(),
        1e-9,
        "lower endpoint",
    )?;
    near(
        i.upper_bound_error,
        1.0 / 0.1f64.sqrt(),
        1e-9,
        "upper endpoint",
    )
}

fn ghz_scaling() -> Result<(), String> {
    let ghz = ghz_state(3).map_err(|e| e.to_string())?;
    let sz = pauli(PauliAxis::Z);
    let collective = gqfi_collective(&ghz, &sz).map_err(|e| e.to_string())?;
    let single = qfi_spectral(
        &ghz,
        &qfitk_core::qstate::embed_local(&sz, 0, ghz.dims()).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    near(collective / single, 9.0, 1e-6, "GHZ_3 ratio")
}

fn speed_probe() -> Result<(), String> {
    let rho = make_werner(0.25, Bell::PsiPlus).map_err(|e| e.to_string())?;
    let h = kron(&pauli(PauliAxis::Z), &ComplexMatrix::identity(2));
    let check = speed_consistency(&rho, &h, 1e-4).map_err(|e| e.to_string())?;
    near(
        check.bures_rate,
        0.1f64.sqrt(),
        1e-3,
        "distance growth rate",
    )
}

fn discord_golden_values() -> Result<(), String> {
    let rho = make_werner(0.5, Bell::PsiPlus).map_err(|e| e.to_string())?;
    near(
        hs_discord(&rho).map_err(|e| e.to_string())?,
        0.25,
        1e-9,
        "D_HS^2",
    )?;
    let want = (3.0 - 5.0f64.sqrt()) / 4.0;
    near(
        hellinger_discord(&rho).map_err(|e| e.to_string())?,
        want,
        1e-9,
        "D_H^2",
    )
}

fn hierarchy_spot_check() -> Result<(), String> {
    let mut rng = ChaCha12Rng::seed_from_u64(11);
    let rho = random_density(&[2, 3], 4, &mut rng).map_err(|e| e.to_string())?;
    let q2 = q_measure(&rho).map_err(|e| e.to_string())?.0;
    let hs = hs_discord(&rho).map_err(|e| e.to_string())?;
    let hell = hellinger_discord(&rho).map_err(|e| e.to_string())?;
    if q2 + 1e-9 < hs || q2 + 1e-9 < hell {
        return Err(format!(
            "hierarchy broke: Q^2={q2}, D_HS^2={hs}, D_H^2={hell}"
        ));
    }
    Ok(())
}

fn pure_state_variance() -> Result<(), String> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let plus = make_pure(
        &[
            qfitk_core::linalg::Complex64::new(s, 0.0),
            qfitk_core::linalg::Complex64::new(s, 0.0),
        ],
        &[2],
    )
    .map_err(|e| e.to_string())?;
    near(
        qfi_spectral(&plus, &pauli(PauliAxis::Z)).map_err(|e| e.to_string())?,
        1.0,
        1e-10,
        "pure-state value",
    )
}

pub fn run_all() -> bool {
    let checks: [Check; 14] = [
        ("werner quarter measure", werner_quarter_measure),
        ("werner closed form", werner_closed_form),
        ("surface pole value", surface_pole),
        ("surface equator value", surface_equator),
        ("singlet blindness", singlet_blindness),
        ("classical state vanishes", classical_state_vanishes),
        ("werner is not classical", werner_is_not_classical),
        ("error floor value", error_floor_value),
        ("local window is tight", local_window_is_tight),
        ("ghz scaling", ghz_scaling),
        ("speed probe", speed_probe),
        ("discord golden values", discord_golden_values),
        ("hierarchy spot check", hierarchy_spot_check),
        ("pure state variance", pure_state_variance),
    ];

    let mut first_failure: Option<&str> = None;
    for (name, check) in checks {
        match check() {
            Ok(()) => println!("check {name}: PASS"),
            Err(reason) => {
                println!("check {name}: FAIL ({reason})");
                first_failure.get_or_insert(name);
            }
        }
    }
    match first_failure {
        None => {
            println!("selftest: all checks passed");
            true
        }
        Some(name) => {
            println!("selftest: first failure: {name}");
            false
        }
    }
}
