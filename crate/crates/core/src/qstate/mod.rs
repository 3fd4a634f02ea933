//! Density matrices on tensor-product spaces, standard state families, and
//! local-operator plumbing.
//!
//! A [`DensityMatrix`] carries its matrix together with the ordered list of
//! local dimensions, and construction validates Hermiticity, unit trace, and
//! positivity up front so every downstream routine can assume a physical
//! state. Tolerances can be scaled as a group for experimentation; the
//! defaults live in [`crate::tol`].

mod file;
mod random;

pub use file::{load_qst, load_qst_with_scale, save_qst, write_qst, LoadedState};
pub use random::{
    random_bloch, random_cc_state, random_cq_state, random_density, random_hermitian, random_kraus,
    random_unitary,
};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, kron, Complex64, ComplexMatrix};
use crate::tol;

/// Validated quantum state: Hermitian, unit-trace, positive semidefinite
/// matrix plus the ordered local dimensions whose product is the matrix
/// dimension.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    /// Validates and wraps a matrix at the default tolerances: Hermiticity
    /// and trace within `STATE_TOL`, eigenvalues above `-PSD_FLOOR`.
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        Self::with_tolerance(matrix, dims, 1.0)
    }

    /// Same validation with every tolerance multiplied by `scale`.
    ///
    /// The stored matrix is the Hermitian part of the input, so later
    /// eigensolves never trip on the deviation this constructor accepted.
    pub fn with_tolerance(matrix: ComplexMatrix, dims: Vec<usize>, scale: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::OutOfRangeParameter(format!(
                "tolerance scale must be positive and finite, got {scale}"
            )));
        }
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::DimensionMismatch(
                "local dimensions must be a non-empty list of positive integers".into(),
            ));
        }
        let product: usize = dims.iter().product();
        if product != matrix.dim() {
            return Err(Error::DimensionMismatch(format!(
                "local dimensions {dims:?} multiply to {product}, matrix is {d}x{d}",
                d = matrix.dim(),
            )));
        }

        let herm_tol = tol::STATE_TOL * scale;
        let dev = matrix.hermitian_deviation();
        if dev > herm_tol {
            return Err(Error::NonHermitianInput {
                deviation: dev,
                tolerance: herm_tol,
            });
        }
        let trace = matrix.trace();
        if (trace - Complex64::new(1.0, 0.0)).norm() > herm_tol {
            return Err(Error::InvalidTrace(trace.re));
        }

        let matrix = matrix.hermitize();
        let eig = hermitian_eig(&matrix)?;
        let min = eig.eigenvalues[0];
        if min < -tol::PSD_FLOOR * scale {
            return Err(Error::NotPsd {
                min_eigenvalue: min,
            });
        }
        Ok(Self { matrix, dims })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Total Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Tr(rho^2); 1 exactly for pure states, 1/dim for maximally mixed.
    pub fn purity(&self) -> f64 {
        self.matrix.matmul(&self.matrix).expect("square").trace().re
    }
}

/// The four maximally entangled two-qubit states. `PsiPlus`/`PsiMinus` live
/// on the |00>, |11> pair and `PhiPlus`/`PhiMinus` on |01>, |10>; `PhiMinus`
/// is the singlet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bell {
    PsiPlus,
    PsiMinus,
    PhiPlus,
    PhiMinus,
}

impl Bell {
    pub fn amplitudes(self) -> [Complex64; 4] {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let z = Complex64::new(0.0, 0.0);
        let a = Complex64::new(s, 0.0);
        let b = match self {
            Bell::PsiPlus | Bell::PhiPlus => a,
            Bell::PsiMinus | Bell::PhiMinus => -a,
        };
        match self {
            Bell::PsiPlus | Bell::PsiMinus => [a, z, z, b],
            Bell::PhiPlus | Bell::PhiMinus => [z, a, b, z],
        }
    }

    pub fn state(self) -> DensityMatrix {
        make_pure(&self.amplitudes(), &[2, 2]).expect("Bell amplitudes are unit norm")
    }
}

impl std::fmt::Display for Bell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Bell::PsiPlus => "psi+",
            Bell::PsiMinus => "psi-",
            Bell::PhiPlus => "phi+",
            Bell::PhiMinus => "phi-",
        })
    }
}

impl std::str::FromStr for Bell {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "psi+" => Ok(Bell::PsiPlus),
            "psi-" => Ok(Bell::PsiMinus),
            "phi+" => Ok(Bell::PhiPlus),
            "phi-" => Ok(Bell::PhiMinus),
            other => Err(Error::Parse(format!(
                "unknown Bell state {other:?}, expected psi+, psi-, phi+ or phi-"
            ))),
        }
    }
}

/// Werner state p |bell><bell| + (1-p)/4 I, dims (2,2).
///
/// Eigenvalues are (1+3p)/4 on the Bell direction and (1-p)/4 with
/// multiplicity three; the state is entangled for p > 1/3 and quantum
/// correlated for every p > 0.
pub fn make_werner(p: f64, bell: Bell) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRangeParameter(format!(
            "Werner mixing parameter must lie in [0,1], got {p}"
        )));
    }
    let proj = bell.state();
    let m = &proj.matrix().scale_re(p) + &ComplexMatrix::identity(4).scale_re((1.0 - p) / 4.0);
    DensityMatrix::new(m, vec![2, 2])
}

/// Projector onto the normalization of `amplitudes`, carrying `dims`.
pub fn make_pure(amplitudes: &[Complex64], dims: &[usize]) -> Result<DensityMatrix> {
    let product: usize = dims.iter().product();
    if dims.is_empty() || amplitudes.len() != product {
        return Err(Error::DimensionMismatch(format!(
            "{} amplitudes do not fill local dimensions {dims:?}",
            amplitudes.len()
        )));
    }
    let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
    if norm_sq == 0.0 {
        return Err(Error::ZeroVector);
    }
    let inv = 1.0 / norm_sq;
    let m = ComplexMatrix::from_fn(amplitudes.len(), |i, j| {
        amplitudes[i] * amplitudes[j].conj() * inv
    });
    DensityMatrix::new(m, dims.to_vec())
}

/// N-qubit GHZ state (|0...0> + |1...1>)/sqrt(2).
pub fn ghz_state(n: usize) -> Result<DensityMatrix> {
    if n == 0 {
        return Err(Error::OutOfRangeParameter(
            "GHZ state needs at least one qubit".into(),
        ));
    }
    let dim = 1usize << n;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    amps[0] = Complex64::new(s, 0.0);
    amps[dim - 1] = Complex64::new(s, 0.0);
    make_pure(&amps, &vec![2; n])
}

/// Tensor product of two states; the factors keep their party ordering.
pub fn product_state(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    let m = kron(a.matrix(), b.matrix());
    let mut dims = a.dims().to_vec();
    dims.extend_from_slice(b.dims());
    DensityMatrix::new(m, dims)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl std::str::FromStr for PauliAxis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" | "X" => Ok(PauliAxis::X),
            "y" | "Y" => Ok(PauliAxis::Y),
            "z" | "Z" => Ok(PauliAxis::Z),
            other => Err(Error::Parse(format!(
                "unknown Pauli axis {other:?}, expected x, y or z"
            ))),
        }
    }
}

pub fn pauli(axis: PauliAxis) -> ComplexMatrix {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let entries = match axis {
        PauliAxis::X => vec![z, one, one, z],
        PauliAxis::Y => vec![z, -i, i, z],
        PauliAxis::Z => vec![one, z, z, -one],
    };
    ComplexMatrix::new(2, entries).expect("fixed 2x2 entries")
}

/// r . sigma for an arbitrary real coefficient vector, component order
/// (sigma_x, sigma_y, sigma_z). Unit r gives an involution.
pub fn bloch_matrix(r: [f64; 3]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2);
    for (coeff, axis) in r
        .into_iter()
        .zip([PauliAxis::X, PauliAxis::Y, PauliAxis::Z])
    {
        m = &m + &pauli(axis).scale_re(coeff);
    }
    m
}

/// Unit-Bloch-vector qubit Hamiltonian, parameterized as
/// r = (cos theta, sin theta cos phi, sin theta sin phi) against
/// (sigma_x, sigma_y, sigma_z). Note the polar axis is sigma_x here.
#[derive(Clone, Debug)]
pub struct BlochHamiltonian {
    theta: f64,
    phi: f64,
    matrix: ComplexMatrix,
}

impl BlochHamiltonian {
    /// theta in [0, pi], phi in [0, 2pi]; both ranges take 1e-12 of slack so
    /// inclusive sweep grids can hit the endpoints exactly. phi = 2pi wraps
    /// onto phi = 0.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        const SLACK: f64 = 1e-12;
        let pi = std::f64::consts::PI;
        if !theta.is_finite() || !(-SLACK..=pi + SLACK).contains(&theta) {
            return Err(Error::OutOfRangeParameter(format!(
                "polar angle must lie in [0, pi], got {theta}"
            )));
        }
        if !phi.is_finite() || !(-SLACK..=2.0 * pi + SLACK).contains(&phi) {
            return Err(Error::OutOfRangeParameter(format!(
                "azimuthal angle must lie in [0, 2pi], got {phi}"
            )));
        }
        let r = [
            theta.cos(),
            theta.sin() * phi.cos(),
            theta.sin() * phi.sin(),
        ];
        Ok(Self {
            theta,
            phi,
            matrix: bloch_matrix(r),
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn bloch_vector(&self) -> [f64; 3] {
        [
            self.theta.cos(),
            self.theta.sin() * self.phi.cos(),
            self.theta.sin() * self.phi.sin(),
        ]
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// I x ... x H x ... x I with `h` at zero-based position `site` of `dims`.
pub fn embed_local(h: &ComplexMatrix, site: usize, dims: &[usize]) -> Result<ComplexMatrix> {
    let Some(&local) = dims.get(site) else {
        return Err(Error::DimensionMismatch(format!(
            "site {site} does not exist in a {}-party system",
            dims.len()
        )));
    };
    if h.dim() != local {
        return Err(Error::DimensionMismatch(format!(
            "operator is {}x{0} but site {site} has dimension {local}",
            h.dim()
        )));
    }
    let mut out = ComplexMatrix::identity(1);
    for (k, &d) in dims.iter().enumerate() {
        out = if k == site {
            kron(&out, h)
        } else {
            kron(&out, &ComplexMatrix::identity(d))
        };
    }
    Ok(out)
}

/// Exchanges the two parties of a bipartite state: dims (dA,dB) -> (dB,dA)
/// with matrix entries permuted to match.
pub fn swap_parties(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let [da, db]: [usize; 2] = rho.dims().try_into().map_err(|_| {
        Error::DimensionMismatch(format!(
            "party swap needs exactly two parties, state has {}",
            rho.dims().len()
        ))
    })?;
    let m = rho.matrix();
    let swapped = ComplexMatrix::from_fn(da * db, |i, j| {
        let (bi, ai) = (i / da, i % da);
        let (bj, aj) = (j / da, j % da);
        m[(ai * db + bi, aj * db + bj)]
    });
    DensityMatrix::new(swapped, vec![db, da])
}

/// Applies a channel to the B side of a bipartite state:
/// rho -> sum_i (I x K_i) rho (I x K_i)^H.
///
/// The Kraus list must be complete on B for the result to stay a state;
/// completeness is the generator's responsibility, only dimensions are
/// checked here.
pub fn apply_kraus_on_b(rho: &DensityMatrix, kraus: &[ComplexMatrix]) -> Result<DensityMatrix> {
    let [da, db]: [usize; 2] = rho.dims().try_into().map_err(|_| {
        Error::DimensionMismatch(format!(
            "channel application needs exactly two parties, state has {}",
            rho.dims().len()
        ))
    })?;
    if kraus.is_empty() {
        return Err(Error::DimensionMismatch("empty Kraus list".into()));
    }
    let mut out = ComplexMatrix::zeros(da * db);
    for k in kraus {
        if k.dim() != db {
            return Err(Error::DimensionMismatch(format!(
                "Kraus operator is {}x{0}, B party has dimension {db}",
                k.dim()
            )));
        }
        let emb = kron(&ComplexMatrix::identity(da), k);
        let term = emb.matmul(rho.matrix())?.matmul(&emb.adjoint())?;
        out = &out + &term;
    }
    DensityMatrix::new(out, rho.dims().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, partial_trace, Party};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn validation_rejects_bad_trace_hermiticity_and_negativity() {
        let half = ComplexMatrix::identity(2).scale_re(0.5);
        assert!(DensityMatrix::new(half.scale_re(1.5), vec![2]).is_err());

        let mut skew = half.clone();
        skew[(0, 1)] = c(0.0, 1e-3);
        assert!(matches!(
            DensityMatrix::new(skew, vec![2]),
            Err(Error::NonHermitianInput { .. })
        ));

        let indefinite =
            ComplexMatrix::new(2, vec![c(1.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.5, 0.0)])
                .unwrap();
        assert!(matches!(
            DensityMatrix::new(indefinite, vec![2]),
            Err(Error::NotPsd { .. })
        ));

        assert!(matches!(
            DensityMatrix::new(half, vec![3]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn tolerance_scale_widens_the_acceptance_band() {
        let mut skew = ComplexMatrix::identity(2).scale_re(0.5);
        skew[(0, 1)] = c(0.0, 1e-8);
        assert!(DensityMatrix::new(skew.clone(), vec![2]).is_err());
        assert!(DensityMatrix::with_tolerance(skew, vec![2], 1e4).is_ok());
    }

    #[test]
    fn werner_eigenvalues_match_closed_form_across_grid() {
        for k in 0..=100 {
            let p = k as f64 / 100.0;
            let rho = make_werner(p, Bell::PsiPlus).unwrap();
            let eig = hermitian_eig(rho.matrix()).unwrap();
            let small = (1.0 - p) / 4.0;
            let large = (1.0 + 3.0 * p) / 4.0;
            for (got, want) in eig.eigenvalues.iter().zip([small, small, small, large]) {
                assert!(
                    (got - want).abs() <= 1e-12,
                    "p={p}: eigenvalue {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn werner_rejects_out_of_range_mixing() {
        assert!(matches!(
            make_werner(-0.01, Bell::PsiPlus),
            Err(Error::OutOfRangeParameter(_))
        ));
        assert!(matches!(
            make_werner(1.01, Bell::PsiPlus),
            Err(Error::OutOfRangeParameter(_))
        ));
    }

    #[test]
    fn bell_states_are_pure_with_maximally_mixed_marginals() {
        for bell in [Bell::PsiPlus, Bell::PsiMinus, Bell::PhiPlus, Bell::PhiMinus] {
            let rho = bell.state();
            assert!((rho.purity() - 1.0).abs() < 1e-12);
            for keep in [Party::A, Party::B] {
                let red = partial_trace(rho.matrix(), (2, 2), keep).unwrap();
                let diff = &red - &ComplexMatrix::identity(2).scale_re(0.5);
                assert!(diff.frobenius_norm() < 1e-12, "{bell} marginal");
            }
        }
    }

    #[test]
    fn bell_round_trips_through_strings() {
        for bell in [Bell::PsiPlus, Bell::PsiMinus, Bell::PhiPlus, Bell::PhiMinus] {
            assert_eq!(bell.to_string().parse::<Bell>().unwrap(), bell);
        }
        assert!("psi".parse::<Bell>().is_err());
    }

    #[test]
    fn make_pure_normalizes_and_rejects_zero() {
        let rho = make_pure(&[c(3.0, 0.0), c(0.0, 4.0)], &[2]).unwrap();
        assert!((rho.matrix()[(0, 0)].re - 0.36).abs() < 1e-15);
        assert!((rho.matrix()[(1, 1)].re - 0.64).abs() < 1e-15);
        // Idempotence of the projector.
        let sq = rho.matrix().matmul(rho.matrix()).unwrap();
        assert!((&sq - rho.matrix()).frobenius_norm() < 1e-12);

        assert!(matches!(
            make_pure(&[c(0.0, 0.0); 2], &[2]),
            Err(Error::ZeroVector)
        ));
        assert!(make_pure(&[c(1.0, 0.0); 3], &[2]).is_err());
    }

    #[test]
    fn ghz_state_shape() {
        let g = ghz_state(3).unwrap();
        assert_eq!(g.dims(), &[2, 2, 2]);
        assert!((g.purity() - 1.0).abs() < 1e-12);
        assert!((g.matrix()[(0, 7)].re - 0.5).abs() < 1e-15);
        assert!(ghz_state(0).is_err());
    }

    #[test]
    fn pauli_algebra() {
        let x = pauli(PauliAxis::X);
        let y = pauli(PauliAxis::Y);
        let z = pauli(PauliAxis::Z);
        for s in [&x, &y, &z] {
            let sq = s.matmul(s).unwrap();
            assert!((&sq - &ComplexMatrix::identity(2)).frobenius_norm() < 1e-15);
        }
        // [X, Y] = 2iZ.
        let comm = commutator(&x, &y).unwrap();
        assert!((&comm - &z.scale(c(0.0, 2.0))).frobenius_norm() < 1e-15);
    }

    #[test]
    fn bloch_hamiltonian_squares_to_identity_and_checks_ranges() {
        let pi = std::f64::consts::PI;
        for (theta, phi) in [(0.0, 0.0), (pi / 3.0, 1.1), (pi, 2.0 * pi), (pi / 2.0, 0.0)] {
            let h = BlochHamiltonian::new(theta, phi).unwrap();
            let sq = h.matrix().matmul(h.matrix()).unwrap();
            assert!((&sq - &ComplexMatrix::identity(2)).frobenius_norm() < 1e-12);
        }
        // theta = 0 puts the whole weight on sigma_x.
        let h = BlochHamiltonian::new(0.0, 0.7).unwrap();
        assert!((h.matrix() - &pauli(PauliAxis::X)).frobenius_norm() < 1e-12);

        assert!(BlochHamiltonian::new(-0.1, 0.0).is_err());
        assert!(BlochHamiltonian::new(0.0, 7.0).is_err());
    }

    #[test]
    fn embed_local_places_the_operator_at_the_site() {
        let z = pauli(PauliAxis::Z);
        let x = pauli(PauliAxis::X);
        let z0 = embed_local(&z, 0, &[2, 2]).unwrap();
        assert!((&z0 - &kron(&z, &ComplexMatrix::identity(2))).frobenius_norm() < 1e-15);

        let x1 = embed_local(&x, 1, &[2, 2]).unwrap();
        assert!(commutator(&x1, &z0).unwrap().frobenius_norm() < 1e-15);

        assert!(embed_local(&z, 2, &[2, 2]).is_err());
        assert!(embed_local(&ComplexMatrix::identity(3), 0, &[2, 2]).is_err());
    }

    #[test]
    fn swap_parties_transposes_a_product() {
        let a = make_pure(&[c(1.0, 0.0), c(0.0, 0.0)], &[2]).unwrap();
        let b = make_pure(&[c(0.6, 0.0), c(0.0, 0.8), c(0.0, 0.0)], &[3]).unwrap();
        let ab = product_state(&a, &b).unwrap();
        let ba = swap_parties(&ab).unwrap();
        assert_eq!(ba.dims(), &[3, 2]);
        let want = product_state(&b, &a).unwrap();
        assert!((ba.matrix() - want.matrix()).frobenius_norm() < 1e-12);
        // Swapping twice is the identity.
        let back = swap_parties(&ba).unwrap();
        assert!((back.matrix() - ab.matrix()).frobenius_norm() < 1e-12);
    }

    #[test]
    fn kraus_application_preserves_the_state_contract() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(19);
        let rho = random_density(&[2, 3], 6, &mut rng).unwrap();
        let ks = random_kraus(3, 2, &mut rng).unwrap();
        let out = apply_kraus_on_b(&rho, &ks).unwrap();
        assert_eq!(out.dims(), rho.dims());
        // Partial trace over B must be untouched by a channel on B.
        let before = partial_trace(rho.matrix(), (2, 3), Party::A).unwrap();
        let after = partial_trace(out.matrix(), (2, 3), Party::A).unwrap();
        assert!((&before - &after).frobenius_norm() < 1e-10);
    }
}
