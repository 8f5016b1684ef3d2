//! Compressed-row real matrices for the banded operators of the SUSY model.
//!
//! Products accumulate in ascending inner-index order, so two routes to the
//! same block product (e.g. `A+ A-` on its own and as a block of `Q^2`)
//! agree bit for bit.

use alloc::vec;
use alloc::vec::Vec;

use super::{c64, ComplexMatrix, SymTridiagonal};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl SparseMatrix {
    /// Builds from `(row, col, value)` triplets; duplicates are summed and
    /// exact zeros dropped.
    pub fn from_triplets(rows: usize, cols: usize, mut triplets: Vec<(usize, usize, f64)>) -> Self {
        triplets.sort_by_key(|a| (a.0, a.1));
        let mut row_ptr = vec![0usize; rows + 1];
        let mut col_idx = Vec::with_capacity(triplets.len());
        let mut values: Vec<f64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        let mut row_of = Vec::with_capacity(triplets.len());
        for (i, j, v) in triplets {
            assert!(
                i < rows && j < cols,
                "triplet ({i}, {j}) outside {rows}x{cols}"
            );
            if last == Some((i, j)) {
                *values.last_mut().unwrap() += v;
            } else {
                col_idx.push(j);
                values.push(v);
                row_of.push(i);
                last = Some((i, j));
            }
        }
        let mut keep_cols = Vec::with_capacity(col_idx.len());
        let mut keep_vals = Vec::with_capacity(values.len());
        for ((i, j), v) in row_of.into_iter().zip(col_idx).zip(values) {
            if v != 0.0 {
                row_ptr[i + 1] += 1;
                keep_cols.push(j);
                keep_vals.push(v);
            }
        }
        for i in 0..rows {
            row_ptr[i + 1] += row_ptr[i];
        }
        Self {
            rows,
            cols,
            row_ptr,
            col_idx: keep_cols,
            values: keep_vals,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_triplets(rows, cols, Vec::new())
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1.0; n])
    }

    pub fn diagonal(d: &[f64]) -> Self {
        Self::from_triplets(
            d.len(),
            d.len(),
            d.iter().enumerate().map(|(i, &v)| (i, i, v)).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Nonzeros of row `i` as `(col, value)`, ascending in `col`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[r.clone()]
            .iter()
            .copied()
            .zip(self.values[r].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.row(i).find(|&(c, _)| c == j).map_or(0.0, |(_, v)| v)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.rows).flat_map(move |i| self.row(i).map(move |(j, v)| (i, j, v)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.cols,
            self.rows,
            self.triplets().map(|(i, j, v)| (j, i, v)).collect(),
        )
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let mut acc = vec![0.0f64; rhs.cols];
        let mut touched = vec![false; rhs.cols];
        let mut cols_in_row = Vec::new();
        let mut triplets = Vec::new();
        for i in 0..self.rows {
            for (k, a) in self.row(i) {
                for (j, b) in rhs.row(k) {
                    if !touched[j] {
                        touched[j] = true;
                        cols_in_row.push(j);
                    }
                    acc[j] += a * b;
                }
            }
            cols_in_row.sort_unstable();
            for &j in &cols_in_row {
                triplets.push((i, j, acc[j]));
                acc[j] = 0.0;
                touched[j] = false;
            }
            cols_in_row.clear();
        }
        Ok(Self::from_triplets(self.rows, rhs.cols, triplets))
    }

    fn combine(&self, rhs: &Self, sign: f64) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: rhs.rows * rhs.cols,
            });
        }
        let mut t: Vec<_> = self.triplets().collect();
        t.extend(rhs.triplets().map(|(i, j, v)| (i, j, sign * v)));
        Ok(Self::from_triplets(self.rows, self.cols, t))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, 1.0)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, -1.0)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_triplets(
            self.rows,
            self.cols,
            self.triplets().map(|(i, j, v)| (i, j, s * v)).collect(),
        )
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    /// `AB + BA`.
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.matmul(other)?.add(&other.matmul(self)?)
    }

    /// 2x2 block matrix `[[a, b], [c, d]]`; `None` blocks are zero. Row and
    /// column splits come from the given sizes.
    pub fn block(
        top: usize,
        left: usize,
        bottom: usize,
        right: usize,
        blocks: [[Option<&Self>; 2]; 2],
    ) -> Self {
        let mut t = Vec::new();
        for (bi, row) in blocks.iter().enumerate() {
            for (bj, blk) in row.iter().enumerate() {
                if let Some(m) = blk {
                    let (r0, c0) = (
                        if bi == 0 { 0 } else { top },
                        if bj == 0 { 0 } else { left },
                    );
                    let (rs, cs) = (
                        if bi == 0 { top } else { bottom },
                        if bj == 0 { left } else { right },
                    );
                    assert!(
                        m.rows == rs && m.cols == cs,
                        "block ({bi}, {bj}) has the wrong shape"
                    );
                    t.extend(m.triplets().map(|(i, j, v)| (i + r0, j + c0, v)));
                }
            }
        }
        Self::from_triplets(top + bottom, left + right, t)
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(
            x.len(),
            self.cols,
            "vector length does not match column count"
        );
        (0..self.rows)
            .map(|i| self.row(i).map(|(j, v)| v * x[j]).sum())
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Largest entrywise `|A - B|`; infinite when shapes differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.sub(other).map_or(f64::INFINITY, |d| d.max_abs())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && self.triplets().all(|(i, j, v)| self.get(j, i) == v)
    }

    /// The symmetric tridiagonal view, if the matrix is one.
    pub fn to_sym_tridiagonal(&self) -> Option<SymTridiagonal> {
        if !self.is_symmetric() || self.triplets().any(|(i, j, _)| i.abs_diff(j) > 1) {
            return None;
        }
        let n = self.rows;
        let diag = (0..n).map(|i| self.get(i, i)).collect();
        let off = (0..n.saturating_sub(1))
            .map(|i| self.get(i, i + 1))
            .collect();
        Some(SymTridiagonal::new(diag, off))
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.rows, self.cols);
        for (i, j, v) in self.triplets() {
            m[(i, j)] = c64(v, 0.0);
        }
        m
    }
}
