//! Numerical core for the qubit/antiqubit information calculus.
//!
//! Everything here is `no_std` + `alloc`: dense complex matrices and their
//! spectral functions, density matrices and entropies, the M/U information
//! diagram ledger, exact state-vector protocols, decoherence and Pauli
//! errors, discretized supersymmetric quantum mechanics, and a constrained
//! leapfrog integrator for the bosonic O(3) sigma model on a periodic lattice.
//!
//! File formats, the CLI and anything touching the OS live in the companion
//! `infocalc` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod channels;
pub mod clifford;
pub mod entropy;
mod error;
pub mod linalg;
pub mod protocols;
pub mod sampling;
pub mod sigma;
pub mod states;
pub mod susyqm;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, Spectrum, C64};
pub use states::{DensityMatrix, QubitState};
