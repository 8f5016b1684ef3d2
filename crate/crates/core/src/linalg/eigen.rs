//! Hermitian eigendecomposition by cyclic complex Jacobi rotations, and
//! matrix functions evaluated through the spectrum.

use alloc::vec::Vec;
use core::cmp::Ordering;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use super::{c64, ComplexMatrix, C64, HERMITIAN_TOL};
use crate::{Error, Result};

/// Default support cutoff, relative to the largest eigenvalue magnitude.
pub const DEFAULT_SUPPORT_CUTOFF: f64 = 1e-12;

/// Eigenvalues below this are a positivity violation for log-type functions.
const NEGATIVE_EIGENVALUE_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 64;

/// Ascending eigenvalues with the matching orthonormal eigenvectors stored as
/// the columns of `eigenvectors`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        self.eigenvectors.column(k)
    }

    /// `V diag(g(lambda)) V^dagger`.
    pub fn map(&self, mut g: impl FnMut(f64) -> f64) -> ComplexMatrix {
        let n = self.len();
        let v = &self.eigenvectors;
        let w: Vec<f64> = self.eigenvalues.iter().map(|&l| g(l)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .filter(|&k| w[k] != 0.0)
                .map(|k| v[(i, k)] * v[(j, k)].conj() * w[k])
                .sum()
        })
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map(|l| l)
    }

    /// Number of eigenvalues above `support_threshold(cutoff)`.
    pub fn support_rank(&self, cutoff: f64) -> usize {
        let thr = support_threshold(&self.eigenvalues, cutoff);
        self.eigenvalues.iter().filter(|&&l| l > thr).count()
    }
}

/// Absolute threshold for a relative support cutoff.
pub fn support_threshold(eigenvalues: &[f64], cutoff: f64) -> f64 {
    let scale = eigenvalues.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    cutoff * scale
}

/// Eigendecomposition of a Hermitian matrix.
///
/// The input is symmetrized before rotating, so tiny asymmetries below the
/// Hermitian tolerance do not leak into the result. Eigenvectors are phase
/// fixed (largest component real positive) and degenerate clusters are
/// ordered lexicographically on rounded components, so identical input
/// always gives identical output.
pub fn herm_eig(m: &ComplexMatrix) -> Result<Spectrum> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let deviation = m.hermiticity_deviation();
    if deviation > HERMITIAN_TOL * m.max_abs().max(1.0) {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let fro = a.frobenius_norm();

    for sweep in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum();
        if off == 0.0 || off.sqrt() <= 1e-18 * fro {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let g = 100.0 * mag;
                if mag <= 1e-19 * fro
                    || (sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs())
                {
                    a[(p, q)] = c64(0.0, 0.0);
                    a[(q, p)] = c64(0.0, 0.0);
                    continue;
                }
                rotate(&mut a, &mut v, p, q, app, aqq, apq, mag);
            }
        }
    }

    let mut order: Vec<(f64, Vec<C64>)> = (0..n)
        .map(|k| (a[(k, k)].re, fix_phase(v.column(k))))
        .collect();
    order.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(Ordering::Equal));

    // degenerate clusters: deterministic order by rounded components
    let scale = order.iter().fold(1.0f64, |s, (l, _)| s.max(l.abs()));
    let tie = 1e-10 * scale;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && order[end].0 - order[end - 1].0 <= tie {
            end += 1;
        }
        if end - start > 1 {
            order[start..end].sort_by(|x, y| lexicographic(&x.1, &y.1));
        }
        start = end;
    }

    let eigenvalues = order.iter().map(|(l, _)| *l).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, k| order[k].1[i]);
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// One unitary rotation `A <- G^dagger A G`, `V <- V G` zeroing `A[p, q]`.
///
/// `G` is the real Jacobi rotation conjugated by `diag(1, e^{-i phi})`, which
/// makes the (p, q) block real symmetric first.
#[allow(clippy::too_many_arguments)]
fn rotate(
    a: &mut ComplexMatrix,
    v: &mut ComplexMatrix,
    p: usize,
    q: usize,
    app: f64,
    aqq: f64,
    apq: C64,
    mag: f64,
) {
    let n = a.rows();
    let phase = apq / mag;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let gqp = -phase.conj() * s;
    let gqq = phase.conj() * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * gqp;
        a[(k, q)] = akp * s + akq * gqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * gqp.conj();
        a[(q, k)] = apk * s + aqk * gqq.conj();
    }
    a[(p, q)] = c64(0.0, 0.0);
    a[(q, p)] = c64(0.0, 0.0);
    a[(p, p)] = c64(app - t * mag, 0.0);
    a[(q, q)] = c64(aqq + t * mag, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * gqp;
        v[(k, q)] = vkp * s + vkq * gqq;
    }
}

fn fix_phase(mut col: Vec<C64>) -> Vec<C64> {
    let max = col.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    if max == 0.0 {
        return col;
    }
    // first component within rounding of the maximum modulus
    let pivot = col
        .iter()
        .position(|z| z.norm() >= max * (1.0 - 1e-9))
        .unwrap_or(0);
    let rot = col[pivot].conj() / col[pivot].norm();
    for z in col.iter_mut() {
        *z *= rot;
    }
    col[pivot] = c64(col[pivot].norm(), 0.0);
    col
}

fn lexicographic(x: &[C64], y: &[C64]) -> Ordering {
    let key = |v: f64| (v * 1e8).round() as i64;
    for (a, b) in x.iter().zip(y) {
        let ord = key(b.re).cmp(&key(a.re)).then(key(b.im).cmp(&key(a.im)));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

/// A real scalar function lifted to Hermitian matrices.
#[derive(Clone, Copy)]
pub enum ScalarFn<'a> {
    /// `log2`, restricted to the support.
    Log2,
    /// Natural log, restricted to the support.
    Ln,
    Exp,
    Identity,
    Custom(&'a dyn Fn(f64) -> f64),
}

impl ScalarFn<'_> {
    pub fn is_log(&self) -> bool {
        matches!(self, ScalarFn::Log2 | ScalarFn::Ln)
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            ScalarFn::Log2 => x.log2(),
            ScalarFn::Ln => x.ln(),
            ScalarFn::Exp => x.exp(),
            ScalarFn::Identity => x,
            ScalarFn::Custom(f) => f(x),
        }
    }
}

/// `f(M)` through the eigendecomposition of a Hermitian `M`.
///
/// Log-type functions are evaluated on the support only: eigenvalues at or
/// below `support_cutoff * max|lambda|` map to 0 (the `0 log 0 = 0`
/// convention), and an eigenvalue below `-1e-10` is a [`Error::NotPsd`].
/// Other functions see the whole spectrum, so `exp(0) = I`.
pub fn matrix_func_on_support(
    m: &ComplexMatrix,
    f: ScalarFn<'_>,
    support_cutoff: f64,
) -> Result<ComplexMatrix> {
    let spec = herm_eig(m)?;
    apply_on_spectrum(&spec, f, support_cutoff)
}

pub(crate) fn apply_on_spectrum(
    spec: &Spectrum,
    f: ScalarFn<'_>,
    support_cutoff: f64,
) -> Result<ComplexMatrix> {
    if f.is_log() {
        if let Some(&neg) = spec
            .eigenvalues
            .iter()
            .find(|&&l| l < -NEGATIVE_EIGENVALUE_TOL)
        {
            return Err(Error::NotPsd { eigenvalue: neg });
        }
        let thr = support_threshold(&spec.eigenvalues, support_cutoff);
        Ok(spec.map(|l| if l > thr { f.eval(l) } else { 0.0 }))
    } else {
        Ok(spec.map(|l| f.eval(l)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli;
    use alloc::vec;

    fn assert_orthonormal(v: &ComplexMatrix, tol: f64) {
        let g = &v.adjoint() * v;
        assert!(g.max_abs_diff(&ComplexMatrix::identity(v.cols())) <= tol);
    }

    #[test]
    fn pauli_spectra() {
        for k in 1..=3 {
            let s = herm_eig(&pauli(k)).unwrap();
            assert!((s.eigenvalues[0] + 1.0).abs() < 1e-14);
            assert!((s.eigenvalues[1] - 1.0).abs() < 1e-14);
            assert_orthonormal(&s.eigenvectors, 1e-14);
        }
    }

    #[test]
    fn sigma1_eigenvectors() {
        let s = herm_eig(&pauli(1)).unwrap();
        let r = 0.5f64.sqrt();
        let minus = s.eigenvector(0);
        let plus = s.eigenvector(1);
        // (1, -1)/sqrt2 up to the phase convention, (1, 1)/sqrt2
        assert!((minus[0].norm() - r).abs() < 1e-14 && (minus[0] + minus[1]).norm() < 1e-14);
        assert!((plus[0] - c64(r, 0.0)).norm() < 1e-14 && (plus[1] - c64(r, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn two_by_two_characteristic_polynomial() {
        let m = ComplexMatrix::from_real(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        let s = herm_eig(&m).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn complex_hermitian_reconstructs() {
        let m = ComplexMatrix::from_vec(
            3,
            3,
            vec![
                c64(2.0, 0.0),
                c64(1.0, -1.0),
                c64(0.0, 0.5),
                c64(1.0, 1.0),
                c64(-1.0, 0.0),
                c64(0.3, 0.0),
                c64(0.0, -0.5),
                c64(0.3, 0.0),
                c64(0.5, 0.0),
            ],
        );
        let s = herm_eig(&m).unwrap();
        assert!(s.reconstruct().max_abs_diff(&m) <= 1e-12 * m.max_abs());
        assert_orthonormal(&s.eigenvectors, 1e-12);
        assert!(s.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(herm_eig(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn deterministic_on_degenerate_input() {
        let m = ComplexMatrix::identity(4).scale_real(0.25);
        let a = herm_eig(&m).unwrap();
        let b = herm_eig(&m).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn log2_of_maximally_mixed() {
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        let l = matrix_func_on_support(&half, ScalarFn::Log2, DEFAULT_SUPPORT_CUTOFF).unwrap();
        assert!(l.max_abs_diff(&ComplexMatrix::identity(2).scale_real(-1.0)) < 1e-14);
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let e = matrix_func_on_support(
            &ComplexMatrix::zeros(3, 3),
            ScalarFn::Exp,
            DEFAULT_SUPPORT_CUTOFF,
        )
        .unwrap();
        assert!(e.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
    }

    #[test]
    fn log2_of_diagonal() {
        let m = ComplexMatrix::from_diag(&[0.25, 0.75]);
        let l = matrix_func_on_support(&m, ScalarFn::Log2, DEFAULT_SUPPORT_CUTOFF).unwrap();
        let expected = ComplexMatrix::from_diag(&[-2.0, 0.75f64.log2()]);
        assert!(l.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn log_off_support_is_zero() {
        let m = ComplexMatrix::from_diag(&[1.0, 0.0]);
        let l = matrix_func_on_support(&m, ScalarFn::Log2, DEFAULT_SUPPORT_CUTOFF).unwrap();
        assert!(l.max_abs() < 1e-15);
    }

    #[test]
    fn log_rejects_negative_eigenvalue() {
        let m = ComplexMatrix::from_diag(&[1.1, -0.1]);
        assert!(matches!(
            matrix_func_on_support(&m, ScalarFn::Ln, DEFAULT_SUPPORT_CUTOFF),
            Err(Error::NotPsd { .. })
        ));
    }

    #[test]
    fn identity_function_returns_input() {
        let m = ComplexMatrix::from_real(2, 2, &[0.7, 0.2, 0.2, 0.3]);
        let r = matrix_func_on_support(&m, ScalarFn::Identity, DEFAULT_SUPPORT_CUTOFF).unwrap();
        assert!(r.max_abs_diff(&m) < 1e-10);
    }
}
