use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use super::{c64, C64};
use crate::{Error, Result};

/// Absolute tolerance used to call a matrix Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Dense complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Like [`ComplexMatrix::new`] but panics on a length mismatch.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        assert_eq!(
            data.len(),
            rows * cols,
            "entry count does not match {rows}x{cols}"
        );
        Self { rows, cols, data }
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Self {
        Self::from_vec(rows, cols, data.iter().map(|&x| c64(x, 0.0)).collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(
            n,
            n,
            |i, j| if i == j { c64(1.0, 0.0) } else { c64(0.0, 0.0) },
        )
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                c64(diag[i], 0.0)
            } else {
                c64(0.0, 0.0)
            }
        })
    }

    /// Outer product `|a><b|`.
    pub fn outer(a: &[C64], b: &[C64]) -> Self {
        Self::from_fn(a.len(), b.len(), |i, j| a[i] * b[j].conj())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)])
            .collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        self.diagonal().into_iter().sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(c64(s, 0.0))
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(
            v.len(),
            self.cols,
            "vector length does not match column count"
        );
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// `AB + BA`.
    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`; infinite when shapes differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        num_traits::Float::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum::<f64>())
    }

    /// `max |M - M^dagger|`; infinite for non-square input.
    pub fn hermiticity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut dev = 0.0f64;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_deviation() <= HERMITIAN_TOL
    }

    /// `(M + M^dagger) / 2`, exactly Hermitian.
    pub fn hermitian_part(&self) -> Self {
        assert!(self.is_square(), "hermitian_part needs a square matrix");
        let n = self.rows;
        Self::from_fn(n, n, |i, j| {
            if i == j {
                c64(self[(i, i)].re, 0.0)
            } else {
                (self[(i, j)] + self[(j, i)].conj()).scale(0.5)
            }
        })
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    /// Panics on a shape mismatch; use [`ComplexMatrix::matmul`] for a `Result`.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "matrix sum shape mismatch"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "matrix difference shape mismatch"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| -z).collect(),
        }
    }
}

/// Kronecker product: `(a (x) b)[i*rb + k, j*cb + l] = a[i, j] * b[k, l]`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (rb, cb) = (b.rows, b.cols);
    ComplexMatrix::from_fn(a.rows * rb, a.cols * cb, |r, c| {
        a[(r / rb, c / cb)] * b[(r % rb, c % cb)]
    })
}

/// Kronecker product of two state vectors.
pub fn kron_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect()
}

/// Reduced matrix over the subsystems listed in `keep`, tracing out the rest.
///
/// `dims` lists the subsystem dimensions, leftmost factor first. `keep` may
/// name subsystems in any order; the result is laid out in ascending
/// subsystem order. An empty `keep` yields the 1x1 matrix holding the trace.
pub fn partial_trace(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    let total: usize = dims.iter().product();
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    if total != m.rows {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            got: total,
        });
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    if kept.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidSubsystems(alloc::format!(
            "duplicate subsystem in {keep:?}"
        )));
    }
    if let Some(&bad) = kept.iter().find(|&&s| s >= dims.len()) {
        return Err(Error::InvalidSubsystems(alloc::format!(
            "subsystem {bad} out of range for {} subsystems",
            dims.len()
        )));
    }

    // stride of each subsystem in the flat index
    let mut strides = vec![1usize; dims.len()];
    for s in (0..dims.len().saturating_sub(1)).rev() {
        strides[s] = strides[s + 1] * dims[s + 1];
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|s| !kept.contains(s)).collect();
    let offsets = |subs: &[usize]| -> Vec<usize> {
        let mut offs = vec![0usize];
        for &s in subs {
            let (d, stride) = (dims[s], strides[s]);
            offs = offs
                .iter()
                .flat_map(|&o| (0..d).map(move |x| o + x * stride))
                .collect();
        }
        offs
    };
    let keep_offs = offsets(&kept);
    let trace_offs = offsets(&traced);

    let out_dim = keep_offs.len();
    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    for (a, &ka) in keep_offs.iter().enumerate() {
        for (b, &kb) in keep_offs.iter().enumerate() {
            out[(a, b)] = trace_offs.iter().map(|&t| m[(ka + t, kb + t)]).sum();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli;

    fn bell() -> ComplexMatrix {
        let s = 0.5f64.sqrt();
        let v = [c64(s, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(s, 0.0)];
        ComplexMatrix::outer(&v, &v)
    }

    #[test]
    fn identity_tensor_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(tensor(&i2, &i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn bit_flip_on_first_factor() {
        let op = tensor(&pauli(1), &ComplexMatrix::identity(2));
        let ket00 = [c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)];
        let out = op.mul_vec(&ket00);
        // |10> sits at flat index 2
        assert_eq!(out[2], c64(1.0, 0.0));
        assert_eq!(out.iter().map(|z| z.norm()).sum::<f64>(), 1.0);
    }

    #[test]
    fn diagonal_kronecker() {
        let a = ComplexMatrix::from_diag(&[1.0, 2.0]);
        let b = ComplexMatrix::from_diag(&[3.0, 4.0]);
        assert_eq!(
            tensor(&a, &b),
            ComplexMatrix::from_diag(&[3.0, 4.0, 6.0, 8.0])
        );
    }

    #[test]
    fn bell_marginals_are_maximally_mixed() {
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        for keep in [0usize, 1] {
            let r = partial_trace(&bell(), &[2, 2], &[keep]).unwrap();
            assert!(r.max_abs_diff(&half) < 1e-15);
        }
    }

    #[test]
    fn product_state_marginal() {
        let ra = ComplexMatrix::from_real(2, 2, &[0.7, 0.1, 0.1, 0.3]);
        let rb = ComplexMatrix::from_real(2, 2, &[0.4, 0.0, 0.0, 0.6]);
        let r = partial_trace(&tensor(&ra, &rb), &[2, 2], &[0]).unwrap();
        assert!(r.max_abs_diff(&ra) < 1e-15);
    }

    #[test]
    fn ghz_trace_out_last() {
        let s = 0.5f64.sqrt();
        let mut v = vec![c64(0.0, 0.0); 8];
        v[0] = c64(s, 0.0);
        v[7] = c64(s, 0.0);
        let ghz = ComplexMatrix::outer(&v, &v);
        for traced in 0..3 {
            let keep: Vec<usize> = (0..3).filter(|&s| s != traced).collect();
            let r = partial_trace(&ghz, &[2, 2, 2], &keep).unwrap();
            // 1/2 (|00><00| + |11><11|)
            let expected = ComplexMatrix::from_diag(&[0.5, 0.0, 0.0, 0.5]);
            assert!(r.max_abs_diff(&expected) < 1e-15, "traced {traced}");
        }
    }

    #[test]
    fn trace_everything_gives_scalar() {
        let r = partial_trace(&bell(), &[2, 2], &[]).unwrap();
        assert_eq!((r.rows(), r.cols()), (1, 1));
        assert!((r[(0, 0)] - c64(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_bad_dims() {
        let err = partial_trace(&bell(), &[2, 3], &[0]).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                expected: 4,
                got: 6
            }
        );
        assert!(matches!(
            partial_trace(&bell(), &[2, 2], &[2]),
            Err(Error::InvalidSubsystems(_))
        ));
        assert!(matches!(
            partial_trace(&bell(), &[2, 2], &[0, 0]),
            Err(Error::InvalidSubsystems(_))
        ));
    }

    #[test]
    fn new_checks_entry_count() {
        assert!(ComplexMatrix::new(2, 2, vec![c64(0.0, 0.0); 3]).is_err());
    }
}
