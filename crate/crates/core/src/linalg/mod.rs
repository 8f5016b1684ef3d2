//! Dense complex linear algebra and the spectral primitives the rest of the
//! crate is built on.
//!
//! Storage is row-major: `data[i * cols + j]` holds `M[i, j]`. Multi-qubit
//! operators follow the convention that the leftmost tensor factor is the
//! most significant index, so `|10>` is `|1> (x) |0>` at flat index 2.

mod eigen;
mod matrix;
mod sparse;
mod tridiag;

pub(crate) use eigen::apply_on_spectrum;
pub use eigen::{
    herm_eig, matrix_func_on_support, support_threshold, ScalarFn, Spectrum, DEFAULT_SUPPORT_CUTOFF,
};
pub use matrix::{kron_vec, partial_trace, tensor, ComplexMatrix, HERMITIAN_TOL};
pub use sparse::SparseMatrix;
pub use tridiag::SymTridiagonal;

pub type C64 = num_complex::Complex<f64>;

/// Shorthand for a complex number.
#[inline]
pub const fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// The Pauli matrices `sigma_1`, `sigma_2`, `sigma_3`.
pub fn pauli(k: usize) -> ComplexMatrix {
    let (z, o, i) = (c64(0.0, 0.0), c64(1.0, 0.0), c64(0.0, 1.0));
    let data = match k {
        1 => [z, o, o, z],
        2 => [z, -i, i, z],
        3 => [o, z, z, -o],
        _ => panic!("Pauli index must be 1, 2 or 3, got {k}"),
    };
    ComplexMatrix::from_vec(2, 2, data.to_vec())
}

/// Euclidean norm of a complex vector.
pub fn vec_norm(v: &[C64]) -> f64 {
    num_traits::Float::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>())
}

/// `<a|b>`, conjugate-linear in the first argument.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    assert_eq!(
        a.len(),
        b.len(),
        "inner product of vectors with different lengths"
    );
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}
