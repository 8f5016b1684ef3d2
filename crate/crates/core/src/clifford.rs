//! Two-dimensional Dirac/Clifford machinery: the gamma representation, the
//! Dirac-adjoint antiqubit and its density matrix, and the qubit-field
//! observable algebra `Phi_j Phi_k = delta_jk I + i eps_jkl Phi_l`.

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{c64, pauli, ComplexMatrix, C64};
use crate::states::{DensityMatrix, QubitState};

/// Gamma matrices of the 1+1 dimensional Clifford algebra with metric
/// `eta = diag(-1, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaRep {
    /// `i sigma_2 = [[0, 1], [-1, 0]]`.
    pub gamma0: ComplexMatrix,
    /// `sigma_3`.
    pub gamma1: ComplexMatrix,
    /// `gamma0 gamma1`.
    pub gamma5: ComplexMatrix,
    pub eta: [[f64; 2]; 2],
}

impl GammaRep {
    pub fn standard() -> Self {
        let gamma0 = pauli(2).scale(c64(0.0, 1.0));
        let gamma1 = pauli(3);
        let gamma5 = &gamma0 * &gamma1;
        Self {
            gamma0,
            gamma1,
            gamma5,
            eta: [[-1.0, 0.0], [0.0, 1.0]],
        }
    }

    pub fn gamma(&self, mu: usize) -> &ComplexMatrix {
        match mu {
            0 => &self.gamma0,
            1 => &self.gamma1,
            _ => panic!("gamma index must be 0 or 1"),
        }
    }
}

/// Result of an exact algebra check.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraReport {
    /// `(index pair, max entrywise deviation)` for every pair checked.
    pub entries: Vec<((usize, usize), f64)>,
    pub max_deviation: f64,
}

impl AlgebraReport {
    fn from_entries(entries: Vec<((usize, usize), f64)>) -> Self {
        let max_deviation = entries.iter().fold(0.0f64, |m, (_, d)| m.max(*d));
        Self {
            entries,
            max_deviation,
        }
    }

    /// Exact pass: every deviation is identically zero.
    pub fn is_exact(&self) -> bool {
        self.max_deviation == 0.0
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_deviation <= tol
    }
}

/// Deviation of `{gamma^mu, gamma^nu}` from `2 eta^{mu nu} I` for every pair.
pub fn check_clifford(rep: &GammaRep) -> AlgebraReport {
    let id = ComplexMatrix::identity(2);
    let mut entries = Vec::new();
    for mu in 0..2 {
        for nu in 0..2 {
            let anti = rep.gamma(mu).anticommutator(rep.gamma(nu));
            let target = id.scale_real(2.0 * rep.eta[mu][nu]);
            entries.push(((mu, nu), anti.max_abs_diff(&target)));
        }
    }
    AlgebraReport::from_entries(entries)
}

/// Levi-Civita symbol on `{0, 1, 2}`.
fn epsilon(j: usize, k: usize, l: usize) -> f64 {
    match (j, k, l) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Deviation of `Phi_j Phi_k - delta_jk I - i eps_jkl Phi_l` for all `j, k`.
pub fn check_qubit_field_algebra(phi: &[ComplexMatrix; 3]) -> AlgebraReport {
    let id = ComplexMatrix::identity(2);
    let mut entries = Vec::new();
    for j in 0..3 {
        for k in 0..3 {
            let mut rhs = if j == k {
                id.clone()
            } else {
                ComplexMatrix::zeros(2, 2)
            };
            for (l, p) in phi.iter().enumerate() {
                let e = epsilon(j, k, l);
                if e != 0.0 {
                    rhs = &rhs + &p.scale(c64(0.0, e));
                }
            }
            entries.push(((j, k), (&phi[j] * &phi[k]).max_abs_diff(&rhs)));
        }
    }
    AlgebraReport::from_entries(entries)
}

/// The Pauli triple `(sigma_1, sigma_2, sigma_3)`.
pub fn pauli_triple() -> [ComplexMatrix; 3] {
    [pauli(1), pauli(2), pauli(3)]
}

/// Antiqubit covector. `coeffs[0]` multiplies `<0|`, `coeffs[1]` multiplies `<1|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Antiqubit {
    pub coeffs: [C64; 2],
}

impl Antiqubit {
    /// Reads the covector coefficients back as ket amplitudes.
    pub fn as_ket(&self) -> QubitState {
        QubitState::new(self.coeffs[0], self.coeffs[1]).expect("Dirac adjoint preserves the norm")
    }
}

/// `psi_bar = psi^dagger gamma0 = (-psi1*, psi0*) = psi0* <1| - psi1* <0|`.
pub fn dirac_adjoint(q: &QubitState) -> Antiqubit {
    let g0 = GammaRep::standard().gamma0;
    let row = [q.psi0().conj(), q.psi1().conj()];
    let coeffs = [
        row[0] * g0[(0, 0)] + row[1] * g0[(1, 0)],
        row[0] * g0[(0, 1)] + row[1] * g0[(1, 1)],
    ];
    Antiqubit { coeffs }
}

/// `[[|psi0|^2, -psi0 psi1*], [-psi0* psi1, |psi1|^2]]`: the qubit density
/// matrix with its coherences negated (same spectrum).
pub fn antiqubit_density(q: &QubitState) -> DensityMatrix {
    let (a, b) = (q.psi0(), q.psi1());
    let m = ComplexMatrix::from_vec(
        2,
        2,
        vec![
            c64(a.norm_sqr(), 0.0),
            -(a * b.conj()),
            -(a.conj() * b),
            c64(b.norm_sqr(), 0.0),
        ],
    );
    DensityMatrix::new(m, vec![2]).expect("antiqubit density matrix is a valid state")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::density_of;

    const R: f64 = core::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn gamma_matrices_entrywise() {
        let rep = GammaRep::standard();
        assert_eq!(
            rep.gamma0,
            ComplexMatrix::from_real(2, 2, &[0.0, 1.0, -1.0, 0.0])
        );
        assert_eq!(
            rep.gamma1,
            ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0])
        );
        assert_eq!(rep.gamma5, &rep.gamma0 * &rep.gamma1);
    }

    #[test]
    fn clifford_relations_exact() {
        let rep = GammaRep::standard();
        let report = check_clifford(&rep);
        assert!(report.is_exact(), "{report:?}");
        let id = ComplexMatrix::identity(2);
        assert_eq!(&rep.gamma0 * &rep.gamma0, id.scale_real(-1.0));
        assert_eq!(&rep.gamma1 * &rep.gamma1, id);
        assert_eq!(
            rep.gamma0.anticommutator(&rep.gamma1),
            ComplexMatrix::zeros(2, 2)
        );
    }

    #[test]
    fn broken_representation_detected() {
        let mut rep = GammaRep::standard();
        rep.gamma0 = pauli(1);
        assert!(!check_clifford(&rep).is_exact());
    }

    #[test]
    fn pauli_triple_field_algebra() {
        let report = check_qubit_field_algebra(&pauli_triple());
        assert!(report.is_exact());
        let s = pauli_triple();
        assert_eq!(&s[0] * &s[0], ComplexMatrix::identity(2));
        assert_eq!(&s[0] * &s[1], s[2].scale(c64(0.0, 1.0)));
    }

    #[test]
    fn identity_is_not_a_field_component() {
        let bad = [pauli(1), pauli(2), ComplexMatrix::identity(2)];
        assert!(check_qubit_field_algebra(&bad).max_deviation > 0.5);
    }

    #[test]
    fn dirac_adjoint_of_basis_states() {
        let z = c64(0.0, 0.0);
        let o = c64(1.0, 0.0);
        assert_eq!(dirac_adjoint(&QubitState::zero()).coeffs, [z, o]);
        assert_eq!(dirac_adjoint(&QubitState::one()).coeffs, [-o, z]);
    }

    #[test]
    fn dirac_adjoint_of_complex_superposition() {
        let q = QubitState::new(c64(R, 0.0), c64(0.0, R)).unwrap();
        let bar = dirac_adjoint(&q);
        assert!((bar.coeffs[0] - c64(0.0, R)).norm() < 1e-15);
        assert!((bar.coeffs[1] - c64(R, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn double_adjoint_is_minus_identity() {
        let q = QubitState::new(c64(0.6, 0.0), c64(0.0, 0.8)).unwrap();
        let twice = dirac_adjoint(&dirac_adjoint(&q).as_ket()).as_ket();
        assert_eq!(twice.psi0(), -q.psi0());
        assert_eq!(twice.psi1(), -q.psi1());
    }

    #[test]
    fn antiqubit_density_examples() {
        assert_eq!(
            antiqubit_density(&QubitState::zero()).matrix(),
            &ComplexMatrix::from_diag(&[1.0, 0.0])
        );
        let rho = antiqubit_density(&QubitState::from_real(R, R).unwrap());
        let expected = ComplexMatrix::from_real(2, 2, &[0.5, -0.5, -0.5, 0.5]);
        assert!(rho.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn antiqubit_density_is_sigma3_conjugate() {
        let q = QubitState::from_bloch(1.1, 0.4);
        let s3 = pauli(3);
        let conj = &(&s3 * density_of(&q).matrix()) * &s3;
        assert!(antiqubit_density(&q).matrix().max_abs_diff(&conj) <= 1e-12);
    }
}
