//! Plain-text state files (".qst").
//!
//! Line 1 is `dims d1 d2 ... dK`; the rest of the file is dim^2 whitespace
//! separated tokens `re,im` in row-major order. Values are printed with 17
//! significant digits, which round-trips every f64 bit-exactly and keeps the
//! format trivially parseable from any language.
//!
//! Loading applies a two-band policy to Hermiticity and trace defects:
//! within `STATE_TOL` the matrix is taken as-is, between `STATE_TOL` and
//! `LOAD_REJECT` it is symmetrized and renormalized with `adjusted = true`,
//! and beyond `LOAD_REJECT` the file is rejected.

use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix};
use crate::tol;
use std::fmt::Write as _;
use std::path::Path;

/// Outcome of [`load_qst`]: the state plus whether the loader had to repair
/// small Hermiticity or trace defects.
#[derive(Clone, Debug)]
pub struct LoadedState {
    pub state: DensityMatrix,
    pub adjusted: bool,
}

/// Renders a state in `.qst` format, one matrix row per line.
pub fn write_qst(state: &DensityMatrix) -> String {
    let d = state.dim();
    let mut out = String::from("dims");
    for dim in state.dims() {
        let _ = write!(out, " {dim}");
    }
    out.push('\n');
    for i in 0..d {
        for j in 0..d {
            if j > 0 {
                out.push(' ');
            }
            let z = state.matrix()[(i, j)];
            let _ = write!(out, "{:.16e},{:.16e}", z.re, z.im);
        }
        out.push('\n');
    }
    out
}

pub fn save_qst(state: &DensityMatrix, path: &Path) -> Result<()> {
    std::fs::write(path, write_qst(state))?;
    Ok(())
}

pub fn load_qst(path: &Path) -> Result<LoadedState> {
    load_qst_with_scale(path, 1.0)
}

/// Loads a `.qst` file with every acceptance band multiplied by `scale`.
pub fn load_qst_with_scale(path: &Path, scale: f64) -> Result<LoadedState> {
    let text = std::fs::read_to_string(path)?;
    parse_qst(&text, scale)
}

fn parse_qst(text: &str, scale: f64) -> Result<LoadedState> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty state file".into()))?;
    let mut fields = header.split_whitespace();
    if fields.next() != Some("dims") {
        return Err(Error::Parse(
            "state file must start with a 'dims d1 d2 ...' line".into(),
        ));
    }
    let dims: Vec<usize> = fields
        .map(|f| {
            f.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad dimension token {f:?}")))
                .and_then(|d| {
                    if d == 0 {
                        Err(Error::Parse("local dimension 0 is not allowed".into()))
                    } else {
                        Ok(d)
                    }
                })
        })
        .collect::<Result<_>>()?;
    if dims.is_empty() {
        return Err(Error::Parse("dims line lists no dimensions".into()));
    }
    let dim: usize = dims.iter().product();

    let body = lines.collect::<Vec<_>>().join(" ");
    let tokens: Vec<&str> = body.split_whitespace().collect();
    if tokens.len() != dim * dim {
        return Err(Error::Parse(format!(
            "expected {} matrix entries for dims {dims:?}, found {}",
            dim * dim,
            tokens.len()
        )));
    }
    let mut entries = Vec::with_capacity(dim * dim);
    for (k, token) in tokens.iter().enumerate() {
        let (re, im) = token.split_once(',').ok_or_else(|| {
            Error::Parse(format!("entry {k}: {token:?} is not of the form re,im"))
        })?;
        let re: f64 = re
            .parse()
            .map_err(|_| Error::Parse(format!("entry {k}: bad real part {re:?}")))?;
        let im: f64 = im
            .parse()
            .map_err(|_| Error::Parse(format!("entry {k}: bad imaginary part {im:?}")))?;
        entries.push(Complex64::new(re, im));
    }
    let matrix = ComplexMatrix::new(dim, entries)?;

    let herm_dev = matrix.hermitian_deviation();
    let trace_dev = (matrix.trace() - Complex64::new(1.0, 0.0)).norm();
    let reject = tol::LOAD_REJECT * scale;
    let clean = tol::STATE_TOL * scale;
    if herm_dev > reject {
        return Err(Error::NonHermitianInput {
            deviation: herm_dev,
            tolerance: reject,
        });
    }
    if trace_dev > reject {
        return Err(Error::InvalidTrace(matrix.trace().re));
    }

    let (matrix, adjusted) = if herm_dev > clean || trace_dev > clean {
        let sym = matrix.hermitize();
        (sym.scale_re(1.0 / sym.trace().re), true)
    } else {
        (matrix, false)
    };
    Ok(LoadedState {
        state: DensityMatrix::with_tolerance(matrix, dims, scale)?,
        adjusted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::random_density;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn round_trip_is_bit_exact() {
        let mut rng = ChaCha12Rng::seed_from_u64(29);
        let rho = random_density(&[2, 3], 4, &mut rng).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("state.qst");
        save_qst(&rho, &path).unwrap();
        let loaded = load_qst(&path).unwrap();
        assert!(!loaded.adjusted);
        assert_eq!(loaded.state.dims(), rho.dims());
        assert_eq!(loaded.state.matrix().entries(), rho.matrix().entries());

        // Writing the loaded state again reproduces the file byte for byte.
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(write_qst(&loaded.state), text);
    }

    #[test]
    fn small_defects_are_repaired_with_a_flag() {
        // Trace 1 + 3e-8: inside the repair band, outside the clean band.
        let eps = 3e-8;
        let text = format!(
            "dims 2\n{:.16e},0.0 0.0,0.0\n0.0,0.0 {:.16e},0.0\n",
            0.5 + eps,
            0.5
        );
        let loaded = parse_qst(&text, 1.0).unwrap();
        assert!(loaded.adjusted);
        let trace = loaded.state.matrix().trace();
        assert!((trace.re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn large_defects_are_rejected() {
        let text = "dims 2\n0.7,0.0 0.0,0.0\n0.0,0.0 0.5,0.0\n";
        assert!(matches!(parse_qst(text, 1.0), Err(Error::InvalidTrace(_))));

        let skew = "dims 2\n0.5,0.0 0.001,0.0\n0.0,0.0 0.5,0.0\n";
        assert!(matches!(
            parse_qst(skew, 1.0),
            Err(Error::NonHermitianInput { .. })
        ));

        // A negative eigenvalue is a validation failure, not a parse error.
        let neg = "dims 2\n1.2,0.0 0.0,0.0\n0.0,0.0 -0.2,0.0\n";
        assert!(matches!(parse_qst(neg, 1.0), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn malformed_files_give_parse_errors() {
        for text in [
            "",
            "2 2\n",
            "dims\n",
            "dims 0\n",
            "dims 2\n1,0 0,0 0,0\n",
            "dims 2\n0.5,0.0 0.0 0.0,0.0 0.5,0.0\n",
            "dims 2\n0.5,x 0.0,0.0 0.0,0.0 0.5,0.0\n",
        ] {
            assert!(
                matches!(parse_qst(text, 1.0), Err(Error::Parse(_))),
                "accepted: {text:?}"
            );
        }
    }

    #[test]
    fn tolerance_scale_loosens_the_bands() {
        // Trace defect 3e-6 is rejected by default and repaired at 10x.
        let text = format!("dims 2\n{:.16e},0.0 0.0,0.0\n0.0,0.0 0.5,0.0\n", 0.5 + 3e-6);
        assert!(parse_qst(&text, 1.0).is_err());
        let loaded = parse_qst(&text, 10.0).unwrap();
        assert!(loaded.adjusted);
    }
}
