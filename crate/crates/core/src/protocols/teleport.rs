use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;
use rand::Rng;

use crate::linalg::{c64, kron_vec, pauli, vec_norm, C64};
use crate::sampling::seeded_rng;
use crate::states::QubitState;
use crate::{Error, Result};

/// A Bell measurement result. `x` marks a Psi state (odd parity), `z` a
/// relative minus sign: (0,0) Phi+, (0,1) Phi-, (1,0) Psi+, (1,1) Psi-.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BellOutcome {
    pub x: u8,
    pub z: u8,
}

impl BellOutcome {
    pub const ALL: [BellOutcome; 4] = [
        BellOutcome { x: 0, z: 0 },
        BellOutcome { x: 0, z: 1 },
        BellOutcome { x: 1, z: 0 },
        BellOutcome { x: 1, z: 1 },
    ];

    pub fn new(x: u8, z: u8) -> Result<Self> {
        if x > 1 || z > 1 {
            return Err(Error::param(
                "bits",
                alloc::format!("bits must be 0 or 1, got ({x}, {z})"),
            ));
        }
        Ok(Self { x, z })
    }

    pub fn bits(self) -> (u8, u8) {
        (self.x, self.z)
    }
}

/// Position of an outcome in the order Phi+, Phi-, Psi+, Psi-.
pub fn bell_index(o: BellOutcome) -> usize {
    usize::from(2 * o.x + o.z)
}

/// The four Bell states as 4-vectors, in the order Phi+, Phi-, Psi+, Psi-.
pub fn bell_basis() -> [[C64; 4]; 4] {
    let (h, z) = (c64(FRAC_1_SQRT_2, 0.0), c64(0.0, 0.0));
    [[h, z, z, h], [h, z, z, -h], [z, h, h, z], [z, h, -h, z]]
}

/// One Bell-measurement branch of teleportation, before and after the
/// correction at U.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TeleportBranch {
    pub outcome: BellOutcome,
    pub probability: f64,
    /// Receiver's qubit right after the measurement.
    pub received: [C64; 2],
    /// After applying `X^x` then `Z^z`.
    pub output: QubitState,
    /// `|<input|output>|^2`.
    pub fidelity: f64,
}

fn three_qubit_input(q: &QubitState) -> Vec<C64> {
    kron_vec(&q.amplitudes(), &bell_basis()[0])
}

/// Condition the full three-qubit state on one Bell outcome of qubits 0 and 1.
pub fn teleport_branch(q: &QubitState, outcome: BellOutcome) -> Result<TeleportBranch> {
    let psi = three_qubit_input(q);
    let beta = bell_basis()[bell_index(outcome)];
    let mut phi = [c64(0.0, 0.0); 2];
    for (ab, b) in beta.iter().enumerate() {
        for (c, slot) in phi.iter_mut().enumerate() {
            *slot += b.conj() * psi[2 * ab + c];
        }
    }
    let probability = phi[0].norm_sqr() + phi[1].norm_sqr();
    let norm = probability.sqrt();
    let received = [phi[0] / norm, phi[1] / norm];
    let mut out = received.to_vec();
    if outcome.x == 1 {
        out = pauli(1).mul_vec(&out);
    }
    if outcome.z == 1 {
        out = pauli(3).mul_vec(&out);
    }
    let n = vec_norm(&out);
    let output = QubitState::new(out[0] / n, out[1] / n)?;
    Ok(TeleportBranch {
        outcome,
        probability,
        received,
        output,
        fidelity: q.fidelity(&output),
    })
}

/// A sampled teleportation run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TeleportOutcome {
    pub output: QubitState,
    pub classical_bits: (u8, u8),
    pub probability: f64,
    pub fidelity: f64,
}

/// Teleport with the Bell outcome drawn by the Born rule from `rng`.
pub fn teleport_with_rng<R: Rng + ?Sized>(q: &QubitState, rng: &mut R) -> Result<TeleportOutcome> {
    let branches: Vec<TeleportBranch> = BellOutcome::ALL
        .iter()
        .map(|&o| teleport_branch(q, o))
        .collect::<Result<_>>()?;
    let u: f64 = rng.random();
    let mut acc = 0.0;
    let mut chosen = branches[3];
    for b in &branches {
        acc += b.probability;
        if u < acc {
            chosen = *b;
            break;
        }
    }
    Ok(TeleportOutcome {
        output: chosen.output,
        classical_bits: chosen.outcome.bits(),
        probability: chosen.probability,
        fidelity: chosen.fidelity,
    })
}

pub fn teleport(q: &QubitState, seed: u64) -> Result<TeleportOutcome> {
    teleport_with_rng(q, &mut seeded_rng(seed))
}

/// Bell-measurement probabilities at M after encoding.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuperdenseOutcome {
    pub sent: (u8, u8),
    pub recovered: (u8, u8),
    pub probabilities: [f64; 4],
}

/// Encode `(b0, b1)` as `sigma1^b0 sigma3^b1` on the first half of Phi+,
/// then Bell-measure both halves.
pub fn superdense_outcome(bits: (u8, u8)) -> Result<SuperdenseOutcome> {
    let sent = BellOutcome::new(bits.0, bits.1)?;
    let mut op = [
        [c64(1.0, 0.0), c64(0.0, 0.0)],
        [c64(0.0, 0.0), c64(1.0, 0.0)],
    ];
    let apply = |op: [[C64; 2]; 2], k: usize| {
        let p = pauli(k);
        let mut r = [[c64(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] = op[i][0] * p[(0, j)] + op[i][1] * p[(1, j)];
            }
        }
        r
    };
    if sent.x == 1 {
        op = apply(op, 1);
    }
    if sent.z == 1 {
        op = apply(op, 3);
    }
    let phi = bell_basis()[0];
    let mut encoded = [c64(0.0, 0.0); 4];
    for a in 0..2 {
        for b in 0..2 {
            encoded[2 * a + b] = op[a][0] * phi[b] + op[a][1] * phi[2 + b];
        }
    }
    let mut probabilities = [0.0; 4];
    for (p, beta) in probabilities.iter_mut().zip(bell_basis()) {
        let amp: C64 = beta.iter().zip(&encoded).map(|(x, y)| x.conj() * y).sum();
        *p = amp.norm_sqr();
    }
    let best = (0..4).fold(0, |best, k| {
        if probabilities[k] > probabilities[best] {
            k
        } else {
            best
        }
    });
    if probabilities[best] < 1.0 - 1e-12 {
        return Err(Error::param(
            "bits",
            alloc::format!("Bell measurement not deterministic: {probabilities:?}"),
        ));
    }
    let recovered = BellOutcome::ALL[best].bits();
    Ok(SuperdenseOutcome {
        sent: bits,
        recovered,
        probabilities,
    })
}

pub fn superdense(bits: (u8, u8)) -> Result<(u8, u8)> {
    Ok(superdense_outcome(bits)?.recovered)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::inner;
    use crate::sampling::random_qubit;

    #[test]
    fn bell_basis_is_orthonormal() {
        let b = bell_basis();
        for i in 0..4 {
            for j in 0..4 {
                let g = inner(&b[i], &b[j]);
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((g - c64(expected, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn basis_state_teleports() {
        for o in BellOutcome::ALL {
            let br = teleport_branch(&QubitState::zero(), o).unwrap();
            assert!((br.fidelity - 1.0).abs() < 1e-12);
            assert!((br.probability - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn every_branch_has_unit_fidelity() {
        let q = QubitState::from_real(0.6, 0.8).unwrap();
        let total: f64 = BellOutcome::ALL
            .iter()
            .map(|&o| {
                let br = teleport_branch(&q, o).unwrap();
                assert!((br.fidelity - 1.0).abs() < 1e-12, "{o:?}");
                br.probability
            })
            .sum();
        assert!((total - 1.0).abs() < 1e-14);
    }

    #[test]
    fn received_state_before_correction() {
        // Psi- branch hands U the state X Z applied to the input, up to phase
        let q = QubitState::from_real(0.6, 0.8).unwrap();
        let br = teleport_branch(&q, BellOutcome { x: 1, z: 1 }).unwrap();
        let expected = [c64(-0.8, 0.0), c64(0.6, 0.0)];
        assert!((inner(&expected, &br.received).norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn random_inputs_teleport() {
        let mut rng = seeded_rng(7);
        for _ in 0..100 {
            let q = random_qubit(&mut rng);
            for o in BellOutcome::ALL {
                assert!((teleport_branch(&q, o).unwrap().fidelity - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn outcome_frequencies_are_uniform() {
        let q = QubitState::from_real(0.6, 0.8).unwrap();
        let mut counts = [0usize; 4];
        let mut rng = seeded_rng(2024);
        for _ in 0..4000 {
            let r = teleport_with_rng(&q, &mut rng).unwrap();
            counts
                [bell_index(BellOutcome::new(r.classical_bits.0, r.classical_bits.1).unwrap())] +=
                1;
        }
        for c in counts {
            assert!((c as f64 / 4000.0 - 0.25).abs() < 0.03, "{counts:?}");
        }
    }

    #[test]
    fn seeded_teleport_is_reproducible() {
        let q = QubitState::from_bloch(0.3, 1.2);
        assert_eq!(teleport(&q, 11).unwrap(), teleport(&q, 11).unwrap());
    }

    #[test]
    fn superdense_is_identity_on_bits() {
        for b0 in 0..2 {
            for b1 in 0..2 {
                assert_eq!(superdense((b0, b1)).unwrap(), (b0, b1));
            }
        }
        assert!(superdense((2, 0)).is_err());
    }
}
