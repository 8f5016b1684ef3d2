//! Single-qubit error processes: the exponential decoherence envelope and the
//! three Pauli errors.

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::linalg::{c64, pauli, ComplexMatrix, C64, HERMITIAN_TOL};
use crate::states::{DensityMatrix, QubitState};
use crate::{Error, Result};

/// Elapsed time `t` and decoherence time `tau`, in the same units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecoherenceParams {
    t: f64,
    tau: f64,
}

impl DecoherenceParams {
    pub fn new(t: f64, tau: f64) -> Result<Self> {
        if !tau.is_finite() || tau <= 0.0 {
            return Err(Error::param(
                "tau",
                alloc::format!("must be finite and positive, got {tau}"),
            ));
        }
        if !t.is_finite() || t < 0.0 {
            return Err(Error::param(
                "t",
                alloc::format!("must be finite and non-negative, got {t}"),
            ));
        }
        Ok(Self { t, tau })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// `exp(-t / tau)`.
    pub fn envelope(&self) -> f64 {
        (-self.t / self.tau).exp()
    }
}

/// Multiply the off-diagonal entries of a single-qubit density matrix by
/// `exp(-t/tau)`. Works the same for qubit and antiqubit matrices.
pub fn decohere(rho: &DensityMatrix, p: DecoherenceParams) -> Result<DensityMatrix> {
    if rho.dims() != [2] {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: rho.dim(),
        });
    }
    let f = p.envelope();
    let mut m = rho.matrix().clone();
    m[(0, 1)] *= f;
    m[(1, 0)] *= f;
    DensityMatrix::new(m, alloc::vec![2])
}

/// A Pauli error result `phase * state`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliOutcome {
    pub phase: C64,
    pub state: QubitState,
}

impl PauliOutcome {
    /// The full amplitude vector `phase * state`.
    pub fn amplitudes(&self) -> [C64; 2] {
        let [a, b] = self.state.amplitudes();
        [self.phase * a, self.phase * b]
    }
}

/// Apply `sigma_k`. For `k = 2` the factor `i` is split off, so the state is
/// `(-psi1, psi0)` with phase `i`; the other two have phase 1.
pub fn pauli_error(k: usize, q: &QubitState) -> Result<PauliOutcome> {
    let [a, b] = q.amplitudes();
    let (phase, pair) = match k {
        1 => (c64(1.0, 0.0), (b, a)),
        2 => (c64(0.0, 1.0), (-b, a)),
        3 => (c64(1.0, 0.0), (a, -b)),
        _ => {
            return Err(Error::param(
                "k",
                alloc::format!("Pauli index must be 1, 2 or 3, got {k}"),
            ))
        }
    };
    Ok(PauliOutcome {
        phase,
        state: QubitState::new(pair.0, pair.1)?,
    })
}

/// Real coefficients `c` with `m = c1 sigma1 + c2 sigma2 + c3 sigma3` for a
/// traceless Hermitian 2x2 operator.
pub fn pauli_decompose(m: &ComplexMatrix) -> Result<[f64; 3]> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: m.rows().max(m.cols()),
        });
    }
    let scale = m.max_abs().max(1.0);
    let dev = m.hermiticity_deviation();
    if dev > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian { deviation: dev });
    }
    if m.trace().norm() > HERMITIAN_TOL * scale {
        return Err(Error::BadTrace {
            trace: m.trace().re,
        });
    }
    let coeff = |k| (&pauli(k) * m).trace().re * 0.5;
    Ok([coeff(1), coeff(2), coeff(3)])
}

/// `c1 sigma1 + c2 sigma2 + c3 sigma3`.
pub fn pauli_combination(c: [f64; 3]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(2, 2);
    for (k, ck) in c.iter().enumerate() {
        out = &out + &pauli(k + 1).scale_real(*ck);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::antiqubit_density;
    use crate::states::density_of;
    use core::f64::consts::FRAC_1_SQRT_2;

    fn plus() -> QubitState {
        QubitState::from_real(FRAC_1_SQRT_2, FRAC_1_SQRT_2).unwrap()
    }

    #[test]
    fn zero_time_is_identity() {
        let rho = density_of(&plus());
        let out = decohere(&rho, DecoherenceParams::new(0.0, 2.0).unwrap()).unwrap();
        assert_eq!(out, rho);
    }

    #[test]
    fn one_decoherence_time() {
        let out = decohere(
            &density_of(&plus()),
            DecoherenceParams::new(1.5, 1.5).unwrap(),
        )
        .unwrap();
        let expected = 0.5 * (-1.0f64).exp();
        assert!((out.matrix()[(0, 1)].re - expected).abs() < 1e-15);
        assert!((expected - 0.18394).abs() < 1e-5);
        assert_eq!(out.matrix()[(0, 0)], density_of(&plus()).matrix()[(0, 0)]);
    }

    #[test]
    fn long_time_limit_is_diagonal() {
        let q = QubitState::from_real(0.6, 0.8).unwrap();
        let out = decohere(
            &density_of(&q),
            DecoherenceParams::new(1000.0, 1.0).unwrap(),
        )
        .unwrap();
        let diag = ComplexMatrix::from_diag(&[0.36, 0.64]);
        assert!(out.matrix().max_abs_diff(&diag) < 1e-12);
    }

    #[test]
    fn antiqubit_decoheres_the_same_way() {
        let q = QubitState::from_real(0.6, 0.8).unwrap();
        let p = DecoherenceParams::new(0.7, 0.3).unwrap();
        let a = decohere(&antiqubit_density(&q), p).unwrap();
        let b = decohere(&density_of(&q), p).unwrap();
        assert_eq!(a.matrix()[(0, 1)], -b.matrix()[(0, 1)]);
    }

    #[test]
    fn bad_params() {
        assert!(DecoherenceParams::new(1.0, 0.0).is_err());
        assert!(DecoherenceParams::new(1.0, -1.0).is_err());
        assert!(DecoherenceParams::new(-1.0, 1.0).is_err());
        assert!(DecoherenceParams::new(f64::NAN, 1.0).is_err());
        let two = DensityMatrix::maximally_mixed(alloc::vec![2, 2]);
        assert!(decohere(&two, DecoherenceParams::new(1.0, 1.0).unwrap()).is_err());
    }

    #[test]
    fn pauli_errors_on_amplitudes() {
        let (a, b) = (c64(0.6, 0.0), c64(0.0, 0.8));
        let q = QubitState::new(a, b).unwrap();
        let x = pauli_error(1, &q).unwrap();
        assert_eq!((x.phase, x.state.amplitudes()), (c64(1.0, 0.0), [b, a]));
        let y = pauli_error(2, &q).unwrap();
        assert_eq!((y.phase, y.state.amplitudes()), (c64(0.0, 1.0), [-b, a]));
        let z = pauli_error(3, &q).unwrap();
        assert_eq!((z.phase, z.state.amplitudes()), (c64(1.0, 0.0), [a, -b]));
        assert!(pauli_error(0, &q).is_err());
        assert!(pauli_error(4, &q).is_err());
    }

    #[test]
    fn pauli_error_agrees_with_matrices() {
        let q = QubitState::from_bloch(1.1, 0.4);
        for k in 1..=3 {
            let direct = pauli(k).mul_vec(&q.amplitudes());
            let out = pauli_error(k, &q).unwrap().amplitudes();
            for i in 0..2 {
                assert!((direct[i] - out[i]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn decomposition_roundtrip() {
        let m = pauli_combination([0.3, -1.2, 0.5]);
        let c = pauli_decompose(&m).unwrap();
        assert!(pauli_combination(c).max_abs_diff(&m) < 1e-12);
        assert!(pauli_decompose(&ComplexMatrix::identity(2)).is_err());
        assert!(pauli_decompose(&ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0])).is_err());
    }
}
