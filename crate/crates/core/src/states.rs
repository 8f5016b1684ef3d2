//! Qubit states, density matrices and projective measurement.
//!
//! Multi-qubit kets use the leftmost-factor-first convention: `|10>` is
//! `|1> (x) |0>`. Unnormalized input is rejected rather than rescaled.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::clifford::GammaRep;
use crate::linalg::{
    c64, herm_eig, kron_vec, partial_trace, tensor, ComplexMatrix, Spectrum, C64, HERMITIAN_TOL,
};
use crate::{Error, Result};

/// Allowed `| |psi|^2 - 1 |` for a state vector.
pub const NORMALIZATION_TOL: f64 = 1e-10;
/// Allowed `|Tr rho - 1|`.
pub const TRACE_TOL: f64 = 1e-10;
/// Most negative eigenvalue tolerated in a density matrix.
pub const PSD_TOL: f64 = 1e-10;

/// `psi0 |0> + psi1 |1>` with `|psi0|^2 + |psi1|^2 = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitState {
    psi0: C64,
    psi1: C64,
}

impl QubitState {
    pub fn new(psi0: C64, psi1: C64) -> Result<Self> {
        let norm_sqr = psi0.norm_sqr() + psi1.norm_sqr();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { psi0, psi1 })
    }

    pub fn from_real(psi0: f64, psi1: f64) -> Result<Self> {
        Self::new(c64(psi0, 0.0), c64(psi1, 0.0))
    }

    /// `cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>`.
    pub fn from_bloch(theta: f64, phi: f64) -> Self {
        let (s, c) = (0.5 * theta).sin_cos();
        Self {
            psi0: c64(c, 0.0),
            psi1: C64::from_polar(s, phi),
        }
    }

    pub fn zero() -> Self {
        Self {
            psi0: c64(1.0, 0.0),
            psi1: c64(0.0, 0.0),
        }
    }

    pub fn one() -> Self {
        Self {
            psi0: c64(0.0, 0.0),
            psi1: c64(1.0, 0.0),
        }
    }

    #[inline]
    pub fn psi0(&self) -> C64 {
        self.psi0
    }

    #[inline]
    pub fn psi1(&self) -> C64 {
        self.psi1
    }

    pub fn amplitudes(&self) -> [C64; 2] {
        [self.psi0, self.psi1]
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &QubitState) -> f64 {
        (self.psi0.conj() * other.psi0 + self.psi1.conj() * other.psi1).norm_sqr()
    }

    /// Apply a 2x2 matrix; fails if the result is not normalized.
    pub fn apply(&self, op: &ComplexMatrix) -> Result<Self> {
        let out = op.mul_vec(&self.amplitudes());
        Self::new(out[0], out[1])
    }
}

/// `rho = |psi><psi|`, entrywise
/// `[[|psi0|^2, psi0 psi1*], [psi0* psi1, |psi1|^2]]`.
pub fn density_of(q: &QubitState) -> DensityMatrix {
    let (a, b) = (q.psi0, q.psi1);
    let m = ComplexMatrix::from_vec(
        2,
        2,
        vec![
            c64(a.norm_sqr(), 0.0),
            a * b.conj(),
            a.conj() * b,
            c64(b.norm_sqr(), 0.0),
        ],
    );
    DensityMatrix {
        matrix: m,
        dims: vec![2],
    }
}

/// A trace-one positive semidefinite Hermitian matrix over an ordered list of
/// subsystems.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, matrix.rows())?;
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let deviation = matrix.hermiticity_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::BadTrace { trace });
        }
        let spec = herm_eig(&matrix)?;
        if let Some(&l) = spec.eigenvalues.first() {
            if l < -PSD_TOL {
                return Err(Error::NotPsd { eigenvalue: l });
            }
        }
        Ok(Self { matrix, dims })
    }

    /// `|psi><psi|` for a normalized state vector over `dims`.
    pub fn from_pure(amplitudes: &[C64], dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, amplitudes.len())?;
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self {
            matrix: ComplexMatrix::outer(amplitudes, amplitudes),
            dims,
        })
    }

    /// `I / d` over `dims`.
    pub fn maximally_mixed(dims: Vec<usize>) -> Self {
        let d: usize = dims.iter().product();
        Self {
            matrix: ComplexMatrix::identity(d).scale_real(1.0 / d as f64),
            dims,
        }
    }

    /// Diagonal state with the given probabilities in the computational basis.
    pub fn diagonal(probabilities: &[f64], dims: Vec<usize>) -> Result<Self> {
        Self::new(ComplexMatrix::from_diag(probabilities), dims)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn num_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        herm_eig(&self.matrix)
    }

    /// Reduced state on `keep` (ascending subsystem order).
    pub fn marginal(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let m = partial_trace(&self.matrix, &self.dims, keep)?;
        let mut kept = keep.to_vec();
        kept.sort_unstable();
        let dims = kept.iter().map(|&s| self.dims[s]).collect();
        Ok(Self { matrix: m, dims })
    }

    /// `self (x) other`, subsystems concatenated.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self {
            matrix: tensor(&self.matrix, &other.matrix),
            dims,
        }
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }
}

fn check_dims(dims: &[usize], size: usize) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::InvalidSubsystems(alloc::format!(
            "bad subsystem dimensions {dims:?}"
        )));
    }
    let prod: usize = dims.iter().product();
    if prod != size {
        return Err(Error::DimensionMismatch {
            expected: size,
            got: prod,
        });
    }
    Ok(())
}

fn basis_sum(n_qubits: usize, indices: &[usize]) -> Vec<C64> {
    let amp = 1.0 / (indices.len() as f64).sqrt();
    let mut v = vec![c64(0.0, 0.0); 1 << n_qubits];
    for &i in indices {
        v[i] = c64(amp, 0.0);
    }
    v
}

/// `(|00> + |11>) / sqrt 2`, the Phi+ Bell state.
pub fn bell_state() -> DensityMatrix {
    DensityMatrix::from_pure(&basis_sum(2, &[0, 3]), vec![2, 2]).expect("Bell state is normalized")
}

/// `(|000> + |111>) / sqrt 2`.
pub fn ghz_state() -> DensityMatrix {
    DensityMatrix::from_pure(&basis_sum(3, &[0, 7]), vec![2, 2, 2])
        .expect("GHZ state is normalized")
}

/// `p |Phi+><Phi+| + (1 - p) I/4` for `p` in `[-1/3, 1]`.
pub fn werner_state(p: f64) -> Result<DensityMatrix> {
    if !(-1.0 / 3.0..=1.0).contains(&p) {
        return Err(Error::param(
            "p",
            alloc::format!("Werner parameter {p} outside [-1/3, 1]"),
        ));
    }
    let bell = bell_state();
    let m = &bell.matrix.scale_real(p) + &ComplexMatrix::identity(4).scale_real((1.0 - p) / 4.0);
    DensityMatrix::new(m, vec![2, 2])
}

/// `1/2 (|0..0><0..0| + |1..1><1..1|)` on `n` qubits.
pub fn classically_correlated(n: usize) -> DensityMatrix {
    let d = 1usize << n;
    let mut p = vec![0.0; d];
    p[0] = 0.5;
    p[d - 1] = 0.5;
    DensityMatrix {
        matrix: ComplexMatrix::from_diag(&p),
        dims: vec![2; n],
    }
}

/// Product state vector of several qubits, leftmost first.
pub fn product_ket(qubits: &[QubitState]) -> Vec<C64> {
    qubits.iter().fold(vec![c64(1.0, 0.0)], |acc, q| {
        kron_vec(&acc, &q.amplitudes())
    })
}

/// `P0 = (1 + gamma1)/2` and `P1 = (1 - gamma1)/2`.
pub fn projectors() -> (ComplexMatrix, ComplexMatrix) {
    let g1 = GammaRep::standard().gamma1;
    let id = ComplexMatrix::identity(2);
    ((&id + &g1).scale_real(0.5), (&id - &g1).scale_real(0.5))
}

/// Outcome of a computational-basis measurement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Measurement {
    pub prob0: f64,
    pub prob1: f64,
    /// `P0|psi>` renormalized; `None` when outcome 0 is impossible.
    pub collapsed0: Option<QubitState>,
    pub collapsed1: Option<QubitState>,
}

pub fn measure(q: &QubitState) -> Measurement {
    let (p0, p1) = projectors();
    let collapse = |p: &ComplexMatrix| {
        let v = p.mul_vec(&q.amplitudes());
        let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        (n > 0.0).then(|| QubitState {
            psi0: v[0] / n,
            psi1: v[1] / n,
        })
    };
    Measurement {
        prob0: q.psi0.norm_sqr(),
        prob1: q.psi1.norm_sqr(),
        collapsed0: collapse(&p0),
        collapsed1: collapse(&p1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const R: f64 = core::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn density_of_basis_state() {
        let rho = density_of(&QubitState::zero());
        assert_eq!(rho.matrix(), &ComplexMatrix::from_diag(&[1.0, 0.0]));
    }

    #[test]
    fn density_of_plus() {
        let rho = density_of(&QubitState::from_real(R, R).unwrap());
        let expected = ComplexMatrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]);
        assert!(rho.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn density_of_plus_i() {
        let rho = density_of(&QubitState::new(c64(R, 0.0), c64(0.0, R)).unwrap());
        let expected = ComplexMatrix::from_vec(
            2,
            2,
            vec![c64(0.5, 0.0), c64(0.0, -0.5), c64(0.0, 0.5), c64(0.5, 0.0)],
        );
        assert!(rho.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn unnormalized_rejected() {
        assert!(matches!(
            QubitState::from_real(1.0, 1.0),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            DensityMatrix::from_pure(&[c64(1.0, 0.0), c64(0.1, 0.0)], vec![2]),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn bell_has_four_half_entries() {
        let b = bell_state();
        let nonzero: Vec<_> = b
            .matrix()
            .as_slice()
            .iter()
            .filter(|z| z.norm() > 1e-15)
            .collect();
        assert_eq!(nonzero.len(), 4);
        assert!(nonzero.iter().all(|z| (**z - c64(0.5, 0.0)).norm() < 1e-15));
        assert_eq!(b.dims(), &[2, 2]);
    }

    #[test]
    fn density_matrix_validation() {
        let bad_trace = ComplexMatrix::from_diag(&[0.5, 0.6]);
        assert!(matches!(
            DensityMatrix::new(bad_trace, vec![2]),
            Err(Error::BadTrace { .. })
        ));
        let not_psd = ComplexMatrix::from_diag(&[1.2, -0.2]);
        assert!(matches!(
            DensityMatrix::new(not_psd, vec![2]),
            Err(Error::NotPsd { .. })
        ));
        let not_herm = ComplexMatrix::from_real(2, 2, &[0.5, 0.1, 0.0, 0.5]);
        assert!(matches!(
            DensityMatrix::new(not_herm, vec![2]),
            Err(Error::NotHermitian { .. })
        ));
        let bad_dims = ComplexMatrix::from_diag(&[0.5, 0.5]);
        assert!(matches!(
            DensityMatrix::new(bad_dims, vec![2, 2]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn projector_algebra_is_exact() {
        let (p0, p1) = projectors();
        assert_eq!(&p0 + &p1, ComplexMatrix::identity(2));
        assert_eq!(&p0 * &p1, ComplexMatrix::zeros(2, 2));
        assert_eq!(&p0 * &p0, p0);
    }

    #[test]
    fn measurement_probabilities() {
        let m = measure(&QubitState::zero());
        assert_eq!((m.prob0, m.prob1), (1.0, 0.0));
        assert!(m.collapsed1.is_none());

        let m = measure(&QubitState::from_real(R, R).unwrap());
        assert!((m.prob0 - 0.5).abs() < 1e-15 && (m.prob1 - 0.5).abs() < 1e-15);

        let m = measure(&QubitState::from_real(0.6, 0.8).unwrap());
        assert!((m.prob0 - 0.36).abs() < 1e-15 && (m.prob1 - 0.64).abs() < 1e-15);
        assert_eq!(m.collapsed0.unwrap(), QubitState::zero());
        assert_eq!(m.collapsed1.unwrap(), QubitState::one());
    }

    #[test]
    fn werner_range() {
        assert!(werner_state(1.5).is_err());
        assert!(werner_state(0.5).is_ok());
    }
}
