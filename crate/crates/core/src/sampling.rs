//! Seeded random states and unitaries for tests, property checks and the CLI.
//!
//! Everything draws from complex Gaussians (Ginibre ensemble), so the
//! distributions are unitarily invariant.

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{c64, vec_norm, ComplexMatrix, C64};
use crate::states::{DensityMatrix, QubitState};
use crate::Result;

/// The generator used throughout: ChaCha8 seeded from a `u64`.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    c64(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// A Haar-random unit vector in `C^dim`.
pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..dim).map(|_| gaussian(rng)).collect();
        let n = vec_norm(&v);
        if n > 1e-8 {
            return v.into_iter().map(|z| z / n).collect();
        }
    }
}

pub fn random_qubit<R: Rng + ?Sized>(rng: &mut R) -> QubitState {
    let v = random_pure_state(rng, 2);
    // renormalize against rounding so validation cannot trip
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    QubitState::new(v[0] / n, v[1] / n).expect("unit vector")
}

/// A Haar-random unitary via Gram-Schmidt on a Ginibre matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<C64> = (0..dim).map(|_| gaussian(rng)).collect();
        // two passes keep the columns orthogonal to rounding
        for _ in 0..2 {
            for c in &cols {
                let proj: C64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, a) in v.iter_mut().zip(c) {
                    *x -= proj * a;
                }
            }
        }
        let n = vec_norm(&v);
        if n > 1e-8 {
            cols.push(v.into_iter().map(|z| z / n).collect());
        }
    }
    ComplexMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}

/// `G G^dagger / Tr` for a square Ginibre `G`; full rank with probability one.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dims: Vec<usize>) -> Result<DensityMatrix> {
    let dim = dims.iter().product();
    let g = ComplexMatrix::from_fn(dim, dim, |_, _| gaussian(rng));
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    DensityMatrix::new(w.scale_real(1.0 / tr).hermitian_part(), dims)
}

/// A random pure state on `dims` as a density matrix.
pub fn random_pure_density<R: Rng + ?Sized>(
    rng: &mut R,
    dims: Vec<usize>,
) -> Result<DensityMatrix> {
    let dim = dims.iter().product();
    DensityMatrix::from_pure(&random_pure_state(rng, dim), dims)
}
