//! Command line front end: parameter sweeps to CSV, state-file analysis,
//! Monte Carlo estimation runs, and a built-in self test.
//!
//! Numeric CSV output always carries 17 significant digits so files
//! round-trip bit-faithfully, and identical flags plus seed produce
//! byte-identical files.

use clap::{Parser, Subcommand};
use qfitk_core::correlations::correlation_report;
use qfitk_core::error::Error;
use qfitk_core::metrology::{mc_estimate, precision_interval_global, precision_interval_local};
use qfitk_core::qstate::{embed_local, load_qst_with_scale, pauli, Bell, PauliAxis};
use qfitk_core::scan::{surface_rows, werner_sweep_rows};
use std::path::PathBuf;
use std::process::ExitCode;

mod selftest;

const AFTER_HELP: &str = "\
exit codes:
    0  success
    2  bad flags or out-of-range parameters
    3  i/o failure
    4  malformed state file
    5  state validation failure
    6  zero information: the probe cannot sense the drive

state files (.qst):
    line 1 is `dims d1 d2 ...`; the rest holds dim^2 whitespace-separated
    `re,im` entries in row-major order, 17 significant digits each.

environment:
    QFI_TOL_OVERRIDE  positive factor scaling the state-validation
                      tolerances when loading files (default 1)";

#[derive(Parser)]
#[command(name = "qfitk", version, about = "Quantum Fisher information and correlation toolkit", after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the Werner family and write the correlation measures as CSV.
    WernerSweep {
        #[arg(long, default_value_t = 0.0)]
        p_min: f64,
        #[arg(long, default_value_t = 1.0)]
        p_max: f64,
        /// Number of grid points, endpoints included.
        #[arg(long, default_value_t = 101)]
        steps: usize,
        /// Bell state the family is built on: psi+, psi-, phi+ or phi-.
        #[arg(long, default_value = "psi+", value_parser = parse_bell)]
        bell: Bell,
        #[arg(long)]
        out: PathBuf,
    },
    /// Scan collective and local Fisher information over the sphere of
    /// drive directions for a Werner state, writing CSV.
    Surface {
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 181)]
        theta_steps: usize,
        #[arg(long, default_value_t = 361)]
        phi_steps: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Load a .qst state file and report its correlation measures and
    /// precision windows.
    Analyze { file: PathBuf },
    /// Monte Carlo phase estimation on a .qst state. The drive is the
    /// Pauli-Z on the first site; runs are seeded and reproducible.
    Mc {
        file: PathBuf,
        /// True phase, strictly inside (-pi/2, pi/2).
        #[arg(long)]
        theta: f64,
        #[arg(long, default_value_t = 10_000)]
        shots: usize,
        #[arg(long, default_value_t = 200)]
        runs: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Run the built-in golden-value checks and exit 0 only if all pass.
    Selftest,
}

fn parse_bell(s: &str) -> Result<Bell, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::OutOfRangeParameter(_) => 2,
        Error::Io(_) => 3,
        Error::Parse(_) => 4,
        Error::ZeroInformation => 6,
        _ => 5,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::WernerSweep {
            p_min,
            p_max,
            steps,
            bell,
            out,
        } => {
            let rows = werner_sweep_rows(p_min, p_max, steps, bell)?;
            let mut csv = String::from("p,q2,d_hs2,d_h2,p2\n");
            for r in rows {
                csv.push_str(&format!(
                    "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                    r.p, r.q2, r.d_hs2, r.d_h2, r.p2
                ));
            }
            std::fs::write(&out, csv)?;
            Ok(0)
        }
        Command::Surface {
            p,
            theta_steps,
            phi_steps,
            out,
        } => {
            let rows = surface_rows(p, theta_steps, phi_steps)?;
            let mut csv = String::from("theta,phi,gqfi,lqfi,interference\n");
            for r in rows {
                csv.push_str(&format!(
                    "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                    r.theta, r.phi, r.gqfi, r.lqfi, r.interference
                ));
            }
            std::fs::write(&out, csv)?;
            Ok(0)
        }
        Command::Analyze { file } => {
            let loaded = load_qst_with_scale(&file, tol_scale()?)?;
            let state = loaded.state;
            let dims: Vec<String> = state.dims().iter().map(|d| d.to_string()).collect();
            println!("state: {} (dims {})", file.display(), dims.join("x"));
            println!("purity: {:.16e}", state.purity());
            if loaded.adjusted {
                println!("note: input was symmetrized and renormalized within tolerance");
            }
            let report = correlation_report(&state)?;
            println!("q2:    {:.16e}", report.q_squared);
            println!("p2:    {:.16e}", report.p_squared);
            println!("d_hs2: {:.16e}", report.d_hs_squared);
            println!("d_h2:  {:.16e}", report.d_h_squared);
            println!(
                "verdict: {}",
                if report.classical_quantum {
                    "classical-quantum"
                } else {
                    "quantum-correlated"
                }
            );
            match precision_interval_local(&state) {
                Ok(i) => println!(
                    "interval {}: [{:.5}, {:.5}]",
                    i.provenance, i.lower_bound_error, i.upper_bound_error
                ),
                Err(Error::ZeroInformation) => {
                    println!("interval local_window: [inf, inf]")
                }
                Err(e) => return Err(e),
            }
            if state.dims() == [2, 2] {
                match precision_interval_global(&state) {
                    Ok(i) => println!(
                        "interval {}: [{:.5}, {:.5}]",
                        i.provenance, i.lower_bound_error, i.upper_bound_error
                    ),
                    Err(Error::ZeroInformation) => {
                        println!("interval global_window: [inf, inf]")
                    }
                    Err(e) => return Err(e),
                }
            } else {
                println!("interval global_window: n/a (needs two qubits)");
            }
            Ok(0)
        }
        Command::Mc {
            file,
            theta,
            shots,
            runs,
            seed,
        } => {
            let loaded = load_qst_with_scale(&file, tol_scale()?)?;
            let state = loaded.state;
            let h = embed_local(&pauli(PauliAxis::Z), 0, state.dims())?;
            let run = mc_estimate(&state, &h, theta, shots, runs, seed)?;
            let mean: f64 = run.estimates.iter().sum::<f64>() / run.estimates.len() as f64;
            println!("state: {}", file.display());
            println!("drive: pauli-z on the first site");
            println!("theta_true: {:.16e}", run.theta_true);
            println!("shots_per_run: {shots}");
            println!("runs: {runs}");
            println!("seed: {seed}");
            println!("mean_estimate: {mean:.16e}");
            println!("empirical_std: {:.16e}", run.empirical_std);
            println!("qcr_floor: {:.16e}", run.qcr_floor);
            println!("std_over_floor: {:.4}", run.empirical_std / run.qcr_floor);
            println!("degenerate_likelihood: {}", run.degenerate_likelihood);
            Ok(0)
        }
        Command::Selftest => Ok(if selftest::run_all() { 0 } else { 1 }),
    }
}

/// QFI_TOL_OVERRIDE widens (or tightens) the load-time validation bands;
/// unset means 1.
fn tol_scale() -> Result<f64, Error> {
    match std::env::var("QFI_TOL_OVERRIDE") {
        Err(std::env::VarError::NotPresent) => Ok(1.0),
        Err(e) => Err(Error::OutOfRangeParameter(format!(
            "QFI_TOL_OVERRIDE is not readable: {e}"
        ))),
        Ok(raw) => {
            let v: f64 = raw.trim().parse().map_err(|_| {
                Error::OutOfRangeParameter(format!(
                    "QFI_TOL_OVERRIDE must be a positive number, got {raw:?}"
                ))
            })?;
            if v.is_finite() && v > 0.0 {
                Ok(v)
            } else {
                Err(Error::OutOfRangeParameter(format!(
                    "QFI_TOL_OVERRIDE must be a positive number, got {raw:?}"
                )))
            }
        }
    }
}
