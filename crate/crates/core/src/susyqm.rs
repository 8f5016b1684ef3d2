//! Supersymmetric quantum mechanics on a finite grid.
//!
//! The two sectors live on staggered grids. Sector 0 holds the `n` interior
//! nodes `x_j = x_min + j dx` (`j = 1..=n`, Dirichlet walls at `x_min` and
//! `x_max`, `dx = (x_max - x_min) / (n + 1)`); sector 1 holds the `n + 1`
//! cell midpoints between consecutive nodes, where the superpotential is
//! sampled. `A-` maps nodes to midpoints as `-d/dx + v`, `A+ = (A-)^T` maps
//! back as `d/dx + v`, and
//!
//! ```text
//! H0 = A+ A-   (n x n,         ~ -d^2 + v^2 + v')
//! H1 = A- A+   ((n+1) x (n+1), ~ -d^2 + v^2 - v')
//! Q  = [[0, A+], [A-, 0]],  S = diag(I_n, -I_{n+1})
//! ```
//!
//! Because `A+` has more columns than rows it always has a kernel, so `H1`
//! carries exactly one zero mode and every positive level of `H0` reappears
//! in `H1`. The Hamiltonian has no `1/L` prefactor.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::linalg::{c64, pauli, ComplexMatrix, SparseMatrix, SymTridiagonal};
use crate::{Error, Result};

/// Smallest accepted number of interior nodes.
pub const MIN_GRID_POINTS: usize = 16;
/// Default tolerance for matching partner levels.
pub const DEFAULT_PAIRING_TOL: f64 = 1e-2;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    /// Interior nodes of sector 0.
    pub n: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if n < MIN_GRID_POINTS {
            return Err(Error::param(
                "n",
                alloc::format!("need at least {MIN_GRID_POINTS} grid points, got {n}"),
            ));
        }
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(Error::param(
                "x_min",
                alloc::format!("need finite x_min < x_max, got [{x_min}, {x_max}]"),
            ));
        }
        Ok(Self { x_min, x_max, n })
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n as f64 + 1.0)
    }

    /// Sector 0 positions.
    pub fn nodes(&self) -> Vec<f64> {
        let dx = self.dx();
        (1..=self.n).map(|j| self.x_min + j as f64 * dx).collect()
    }

    /// Sector 1 positions.
    pub fn midpoints(&self) -> Vec<f64> {
        let dx = self.dx();
        (0..=self.n)
            .map(|i| self.x_min + (i as f64 + 0.5) * dx)
            .collect()
    }
}

/// Named superpotentials.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Superpotential {
    /// `v = slope * x`; harmonic partners with levels spaced `2 slope`.
    Linear {
        slope: f64,
    },
    /// `v = tanh x`.
    Tanh,
    /// `v = x^3 - c x`.
    Cubic {
        c: f64,
    },
    Zero,
}

impl Superpotential {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Superpotential::Linear { slope } => slope * x,
            Superpotential::Tanh => x.tanh(),
            Superpotential::Cubic { c } => x * x * x - c * x,
            Superpotential::Zero => 0.0,
        }
    }

    /// A domain wide enough for the low-lying states to vanish at the walls.
    pub fn default_domain(&self) -> (f64, f64) {
        match self {
            Superpotential::Linear { .. } | Superpotential::Zero => (-8.0, 8.0),
            Superpotential::Tanh => (-12.0, 12.0),
            Superpotential::Cubic { .. } => (-3.5, 3.5),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Superpotential::Linear { .. } => "linear",
            Superpotential::Tanh => "tanh",
            Superpotential::Cubic { .. } => "cubic",
            Superpotential::Zero => "zero",
        }
    }

    /// Build from a name and an optional parameter (slope for `linear`,
    /// `c` for `cubic`; both default to 1).
    pub fn from_name(name: &str, param: Option<f64>) -> Result<Self> {
        let p = param.unwrap_or(1.0);
        if !p.is_finite() {
            return Err(Error::param(
                "param",
                alloc::format!("must be finite, got {p}"),
            ));
        }
        match name {
            "linear" => Ok(Superpotential::Linear { slope: p }),
            "tanh" => Ok(Superpotential::Tanh),
            "cubic" => Ok(Superpotential::Cubic { c: p }),
            "zero" => Ok(Superpotential::Zero),
            other => Err(Error::param(
                "potential",
                alloc::format!("unknown superpotential {other:?}"),
            )),
        }
    }
}

impl fmt::Display for Superpotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Superpotential {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_name(s, None)
    }
}

/// The operators of one discretized model.
#[derive(Clone, Debug)]
pub struct SusyModel {
    grid: Grid,
    v: Vec<f64>,
    a_plus: SparseMatrix,
    a_minus: SparseMatrix,
    h0: SparseMatrix,
    h1: SparseMatrix,
    q_plus: SparseMatrix,
    q_minus: SparseMatrix,
    q: SparseMatrix,
    h: SparseMatrix,
    s: SparseMatrix,
    zero_mode_tol: f64,
    pairing_tol: f64,
}

/// Build all operators for `v` on `grid`.
pub fn build_model(v: &Superpotential, grid: Grid) -> Result<SusyModel> {
    build_model_with(|x| v.eval(x), grid)
}

/// As [`build_model`], for an arbitrary sampled superpotential.
pub fn build_model_with(v: impl Fn(f64) -> f64, grid: Grid) -> Result<SusyModel> {
    let grid = Grid::new(grid.x_min, grid.x_max, grid.n)?;
    let n = grid.n;
    let dx = grid.dx();
    let v: Vec<f64> = grid.midpoints().into_iter().map(v).collect();
    if let Some((i, bad)) = v.iter().enumerate().find(|(_, s)| !s.is_finite()) {
        return Err(Error::param("v", alloc::format!("sample {i} is {bad}")));
    }
    let inv = 1.0 / dx;
    let mut t = Vec::with_capacity(2 * n);
    for (i, &vi) in v.iter().enumerate() {
        if i >= 1 {
            t.push((i, i - 1, inv + 0.5 * vi));
        }
        if i < n {
            t.push((i, i, -inv + 0.5 * vi));
        }
    }
    let a_minus = SparseMatrix::from_triplets(n + 1, n, t);
    let a_plus = a_minus.transpose();
    let h0 = a_plus.matmul(&a_minus)?;
    let h1 = a_minus.matmul(&a_plus)?;
    let q_plus = SparseMatrix::block(n, n, n + 1, n + 1, [[None, Some(&a_plus)], [None, None]]);
    let q_minus = SparseMatrix::block(n, n, n + 1, n + 1, [[None, None], [Some(&a_minus), None]]);
    let q = SparseMatrix::block(
        n,
        n,
        n + 1,
        n + 1,
        [[None, Some(&a_plus)], [Some(&a_minus), None]],
    );
    let h = SparseMatrix::block(n, n, n + 1, n + 1, [[Some(&h0), None], [None, Some(&h1)]]);
    let mut grading = vec![1.0; n];
    grading.extend(core::iter::repeat_n(-1.0, n + 1));
    let s = SparseMatrix::diagonal(&grading);
    Ok(SusyModel {
        grid,
        v,
        a_plus,
        a_minus,
        h0,
        h1,
        q_plus,
        q_minus,
        q,
        h,
        s,
        zero_mode_tol: 10.0 * dx * dx,
        pairing_tol: DEFAULT_PAIRING_TOL,
    })
}

/// Which partner Hamiltonian.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sector {
    Zero,
    One,
}

impl Sector {
    pub fn from_index(i: usize) -> Result<Self> {
        match i {
            0 => Ok(Sector::Zero),
            1 => Ok(Sector::One),
            _ => Err(Error::param(
                "sector",
                alloc::format!("must be 0 or 1, got {i}"),
            )),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Sector::Zero => 0,
            Sector::One => 1,
        }
    }

    pub fn other(self) -> Self {
        match self {
            Sector::Zero => Sector::One,
            Sector::One => Sector::Zero,
        }
    }
}

impl SusyModel {
    pub fn grid(&self) -> Grid {
        self.grid
    }

    /// Superpotential samples at the midpoints.
    pub fn v(&self) -> &[f64] {
        &self.v
    }

    pub fn a_plus(&self) -> &SparseMatrix {
        &self.a_plus
    }

    pub fn a_minus(&self) -> &SparseMatrix {
        &self.a_minus
    }

    pub fn h0(&self) -> &SparseMatrix {
        &self.h0
    }

    pub fn h1(&self) -> &SparseMatrix {
        &self.h1
    }

    pub fn q(&self) -> &SparseMatrix {
        &self.q
    }

    pub fn q_plus(&self) -> &SparseMatrix {
        &self.q_plus
    }

    pub fn q_minus(&self) -> &SparseMatrix {
        &self.q_minus
    }

    /// Block Hamiltonian `diag(H0, H1)`.
    pub fn h(&self) -> &SparseMatrix {
        &self.h
    }

    /// Grading operator.
    pub fn s(&self) -> &SparseMatrix {
        &self.s
    }

    pub fn zero_mode_tol(&self) -> f64 {
        self.zero_mode_tol
    }

    pub fn pairing_tol(&self) -> f64 {
        self.pairing_tol
    }

    pub fn with_zero_mode_tol(mut self, tol: f64) -> Self {
        self.zero_mode_tol = tol;
        self
    }

    pub fn with_pairing_tol(mut self, tol: f64) -> Self {
        self.pairing_tol = tol;
        self
    }

    pub fn hamiltonian(&self, sector: Sector) -> &SparseMatrix {
        match sector {
            Sector::Zero => &self.h0,
            Sector::One => &self.h1,
        }
    }

    pub fn sector_dim(&self, sector: Sector) -> usize {
        self.hamiltonian(sector).rows()
    }

    fn tridiagonal(&self, sector: Sector) -> SymTridiagonal {
        self.hamiltonian(sector)
            .to_sym_tridiagonal()
            .expect("partner Hamiltonians are symmetric tridiagonal")
    }

    /// The `k` lowest eigenvalues of one sector, ascending.
    pub fn levels(&self, sector: Sector, k: usize) -> Result<Vec<f64>> {
        let dim = self.sector_dim(sector);
        if k > dim {
            return Err(Error::TooManyLevels {
                requested: k,
                available: dim,
            });
        }
        Ok(self.tridiagonal(sector).lowest(k))
    }

    /// Eigenpair `index` (0-based, ascending) of one sector; the vector is
    /// unit length with its largest component positive.
    pub fn eigenpair(&self, sector: Sector, index: usize) -> Result<(f64, Vec<f64>)> {
        let dim = self.sector_dim(sector);
        if index >= dim {
            return Err(Error::TooManyLevels {
                requested: index + 1,
                available: dim,
            });
        }
        let t = self.tridiagonal(sector);
        let e = t.eigenvalue(index);
        Ok((e, t.eigenvector(e)))
    }

    /// `A+` for sector 1 to sector 0, `A-` for sector 0 to sector 1.
    fn charge_from(&self, sector: Sector) -> &SparseMatrix {
        match sector {
            Sector::Zero => &self.a_minus,
            Sector::One => &self.a_plus,
        }
    }
}

/// Deviations of the superalgebra identities. The exact ones are absolute;
/// the intertwining ones are reported both absolute and relative to
/// `max|H| * max|A|`, the size of the products involved.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuperalgebraReport {
    pub q_plus_squared: f64,
    pub q_minus_squared: f64,
    pub q_squared_minus_h: f64,
    pub anticommutator_minus_h: f64,
    pub s_h_commutator: f64,
    pub s_q_anticommutator: f64,
    pub transpose_deviation: f64,
    /// `max|H0 A+ - A+ H1|`.
    pub intertwining_plus: f64,
    /// `max|A- H0 - H1 A-|`.
    pub intertwining_minus: f64,
    /// `max|[H, Q]|`.
    pub h_q_commutator: f64,
    pub product_scale: f64,
}

impl SuperalgebraReport {
    /// Largest deviation among the identities that hold exactly.
    pub fn max_exact(&self) -> f64 {
        [
            self.q_plus_squared,
            self.q_minus_squared,
            self.q_squared_minus_h,
            self.anticommutator_minus_h,
            self.s_h_commutator,
            self.s_q_anticommutator,
            self.transpose_deviation,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    /// Largest intertwining deviation relative to the product scale.
    pub fn max_intertwining_relative(&self) -> f64 {
        self.intertwining_plus
            .max(self.intertwining_minus)
            .max(self.h_q_commutator)
            / self.product_scale
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_exact() <= tol && self.max_intertwining_relative() <= tol
    }
}

pub fn check_superalgebra(m: &SusyModel) -> Result<SuperalgebraReport> {
    let q2 = m.q.matmul(&m.q)?;
    let anti = m.q_plus.anticommutator(&m.q_minus)?;
    let plus =
        m.h0.matmul(&m.a_plus)?
            .max_abs_diff(&m.a_plus.matmul(&m.h1)?);
    let minus = m
        .a_minus
        .matmul(&m.h0)?
        .max_abs_diff(&m.h1.matmul(&m.a_minus)?);
    Ok(SuperalgebraReport {
        q_plus_squared: m.q_plus.matmul(&m.q_plus)?.max_abs(),
        q_minus_squared: m.q_minus.matmul(&m.q_minus)?.max_abs(),
        q_squared_minus_h: q2.max_abs_diff(&m.h),
        anticommutator_minus_h: anti.max_abs_diff(&m.h),
        s_h_commutator: m.s.commutator(&m.h)?.max_abs(),
        s_q_anticommutator: m.s.anticommutator(&m.q)?.max_abs(),
        transpose_deviation: m.a_minus.transpose().max_abs_diff(&m.a_plus),
        intertwining_plus: plus,
        intertwining_minus: minus,
        h_q_commutator: m.h.commutator(&m.q)?.max_abs(),
        product_scale: (m.h.max_abs() * m.q.max_abs()).max(f64::MIN_POSITIVE),
    })
}

/// Partner levels matched across sectors.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumPairing {
    pub levels0: Vec<f64>,
    pub levels1: Vec<f64>,
    /// `(E0, E1)` in ascending `E0`.
    pub pairs: Vec<(f64, f64)>,
    /// `(sector, E)` for levels within the zero-mode tolerance.
    pub zero_modes: Vec<(usize, f64)>,
    pub zero_mode_tol: f64,
    pub pairing_tol: f64,
}

impl SpectrumPairing {
    pub fn gaps(&self) -> impl Iterator<Item = f64> + '_ {
        self.pairs.iter().map(|(a, b)| (a - b).abs())
    }

    pub fn max_gap(&self) -> f64 {
        self.gaps().fold(0.0, f64::max)
    }

    pub fn passes(&self) -> bool {
        self.max_gap() <= self.pairing_tol
    }
}

/// Match the first `k` positive levels of `H0` with their nearest `H1`
/// partners. Zero modes are listed apart.
pub fn pair_spectra(m: &SusyModel, k: usize) -> Result<SpectrumPairing> {
    let n0 = m.sector_dim(Sector::Zero);
    if k > n0 {
        return Err(Error::TooManyLevels {
            requested: k,
            available: n0,
        });
    }
    let tol = m.zero_mode_tol;
    let fetch = |s: Sector| -> Result<Vec<f64>> {
        let dim = m.sector_dim(s);
        m.levels(s, (k + 2).min(dim))
    };
    let all0 = fetch(Sector::Zero)?;
    let all1 = fetch(Sector::One)?;
    let mut zero_modes = Vec::new();
    let mut split = |sector: usize, all: &[f64]| -> Vec<f64> {
        let mut positive = Vec::new();
        for &e in all {
            if e.abs() <= tol {
                zero_modes.push((sector, e));
            } else {
                positive.push(e);
            }
        }
        positive.truncate(k);
        positive
    };
    let levels0 = split(0, &all0);
    let levels1 = split(1, &all1);
    let mut used = vec![false; levels1.len()];
    let mut pairs = Vec::with_capacity(levels0.len());
    for &e0 in &levels0 {
        let best = (0..levels1.len())
            .filter(|&j| !used[j])
            .min_by(|&a, &b| (levels1[a] - e0).abs().total_cmp(&(levels1[b] - e0).abs()));
        if let Some(j) = best {
            used[j] = true;
            pairs.push((e0, levels1[j]));
        }
    }
    Ok(SpectrumPairing {
        levels0,
        levels1,
        pairs,
        zero_modes,
        zero_mode_tol: tol,
        pairing_tol: m.pairing_tol,
    })
}

/// An eigenvector carried to the partner sector by the supercharge.
#[derive(Clone, Debug, PartialEq)]
pub struct ChargeMap {
    pub from: Sector,
    pub energy: f64,
    /// Unit-norm image in the other sector.
    pub image: Vec<f64>,
    /// `|| H_other phi - E phi ||` for the unit image `phi`.
    pub residual: f64,
    /// `|| A_back A_fwd psi - E psi ||` for the unit source `psi`.
    pub round_trip_residual: f64,
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn residual(h: &SparseMatrix, x: &[f64], e: f64) -> f64 {
    norm(
        &h.mul_vec(x)
            .iter()
            .zip(x)
            .map(|(hx, xi)| hx - e * xi)
            .collect::<Vec<_>>(),
    )
}

/// Map eigenvector `index` of `sector` to the other sector.
pub fn supercharge_map(m: &SusyModel, sector: Sector, index: usize) -> Result<ChargeMap> {
    let (energy, psi) = m.eigenpair(sector, index)?;
    if energy.abs() <= m.zero_mode_tol {
        return Err(Error::ZeroMode { energy });
    }
    let fwd = m.charge_from(sector);
    let back = m.charge_from(sector.other());
    let raw = fwd.mul_vec(&psi);
    let size = norm(&raw);
    if size <= 1e-6 * norm(&psi) {
        return Err(Error::ZeroMode { energy });
    }
    let round_trip = back.mul_vec(&raw);
    let round_trip_residual = norm(
        &round_trip
            .iter()
            .zip(&psi)
            .map(|(a, p)| a - energy * p)
            .collect::<Vec<_>>(),
    );
    let image: Vec<f64> = raw.iter().map(|v| v / size).collect();
    let residual = residual(m.hamiltonian(sector.other()), &image, energy);
    Ok(ChargeMap {
        from: sector,
        energy,
        image,
        residual,
        round_trip_residual,
    })
}

/// The square root of NOT and its checks.
#[derive(Clone, Debug, PartialEq)]
pub struct SqrtNot {
    pub u: ComplexMatrix,
    /// `max|U^dagger U - I|`.
    pub unitarity_deviation: f64,
    /// `max|U^2 - sigma1|`.
    pub square_minus_not: f64,
    pub u2_on_zero: [crate::C64; 2],
    pub u2_on_one: [crate::C64; 2],
    /// `Q^2 = H` on a small reference model, for the analogy.
    pub superalgebra: SuperalgebraReport,
}

impl SqrtNot {
    pub fn passes(&self, tol: f64) -> bool {
        self.unitarity_deviation <= tol
            && self.square_minus_not <= tol
            && self.superalgebra.passes(tol)
    }
}

/// `U = 1/2 [[1 - i, 1 + i], [1 + i, 1 - i]]`.
pub fn sqrt_not_matrix() -> ComplexMatrix {
    let (a, b) = (c64(0.5, -0.5), c64(0.5, 0.5));
    ComplexMatrix::from_vec(2, 2, vec![a, b, b, a])
}

pub fn sqrt_not() -> Result<SqrtNot> {
    let u = sqrt_not_matrix();
    let u2 = &u * &u;
    let reference = build_model(
        &Superpotential::Linear { slope: 1.0 },
        Grid::new(-5.0, 5.0, 32)?,
    )?;
    Ok(SqrtNot {
        unitarity_deviation: (&u.adjoint() * &u).max_abs_diff(&ComplexMatrix::identity(2)),
        square_minus_not: u2.max_abs_diff(&pauli(1)),
        u2_on_zero: [u2[(0, 0)], u2[(1, 0)]],
        u2_on_one: [u2[(0, 1)], u2[(1, 1)]],
        superalgebra: check_superalgebra(&reference)?,
        u,
    })
}

/// One line per pairing for tabular output: `(index, E0, E1, gap)`.
pub fn pairing_rows(p: &SpectrumPairing) -> Vec<(usize, f64, f64, f64)> {
    p.pairs
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| (i, a, b, (a - b).abs()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear(n: usize) -> SusyModel {
        build_model(
            &Superpotential::Linear { slope: 1.0 },
            Grid::new(-8.0, 8.0, n).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn shapes_and_transpose() {
        let m = linear(40);
        assert_eq!((m.a_minus().rows(), m.a_minus().cols()), (41, 40));
        assert_eq!(m.a_minus().transpose(), *m.a_plus());
        assert_eq!((m.q().rows(), m.q().cols()), (81, 81));
    }

    #[test]
    fn exact_identities() {
        for v in [
            Superpotential::Linear { slope: 1.0 },
            Superpotential::Tanh,
            Superpotential::Cubic { c: 2.0 },
            Superpotential::Zero,
        ] {
            let (a, b) = v.default_domain();
            let m = build_model(&v, Grid::new(a, b, 64).unwrap()).unwrap();
            let r = check_superalgebra(&m).unwrap();
            assert_eq!(r.max_exact(), 0.0, "{v}: {r:?}");
            assert!(r.max_intertwining_relative() < 1e-13, "{v}: {r:?}");
        }
    }

    #[test]
    fn harmonic_levels() {
        let m = linear(400);
        let h1 = m.levels(Sector::One, 3).unwrap();
        assert!(h1[0].abs() < 5e-3);
        assert!((h1[1] - 2.0).abs() < 5e-3, "{h1:?}");
        assert!((h1[2] - 4.0).abs() < 5e-3, "{h1:?}");
        let h0 = m.levels(Sector::Zero, 2).unwrap();
        assert!((h0[0] - 2.0).abs() < 5e-3);
        assert!((h0[0] - h1[1]).abs() < 1e-9);
    }

    #[test]
    fn harmonic_pairing() {
        let p = pair_spectra(&linear(400), 10).unwrap();
        assert_eq!(p.pairs.len(), 10);
        assert!(p.max_gap() <= 1e-2);
        assert_eq!(p.zero_modes.len(), 1);
        assert_eq!(p.zero_modes[0].0, 1);
        assert!(p.passes());
    }

    #[test]
    fn tanh_partners() {
        let v = Superpotential::Tanh;
        let (a, b) = v.default_domain();
        let m = build_model(&v, Grid::new(a, b, 400).unwrap()).unwrap();
        let h0 = m.levels(Sector::Zero, 1).unwrap();
        assert!(h0[0] >= 1.0 - 5e-3, "{h0:?}");
        let h1 = m.levels(Sector::One, 2).unwrap();
        assert!(h1[0].abs() < 5e-3);
        assert!(h1[1] >= 1.0 - 5e-3, "only one bound state: {h1:?}");
        let p = pair_spectra(&m, 1).unwrap();
        assert_eq!(p.zero_modes.len(), 1);
        assert!(p.passes());
    }

    #[test]
    fn free_partners() {
        // free levels sit far below the default 10 dx^2 cutoff
        let m = build_model(&Superpotential::Zero, Grid::new(-8.0, 8.0, 64).unwrap())
            .unwrap()
            .with_zero_mode_tol(1e-9);
        let p = pair_spectra(&m, 20).unwrap();
        assert!(p.max_gap() < 1e-10, "{}", p.max_gap());
        // the constant midpoint vector is annihilated by A+
        assert_eq!(p.zero_modes.len(), 1);
    }

    #[test]
    fn too_many_levels() {
        let m = linear(32);
        assert!(matches!(
            pair_spectra(&m, 33),
            Err(Error::TooManyLevels { .. })
        ));
    }

    #[test]
    fn bad_grids() {
        assert!(Grid::new(-1.0, 1.0, 15).is_err());
        assert!(Grid::new(1.0, 1.0, 32).is_err());
        let g = Grid::new(-1.0, 1.0, 32).unwrap();
        assert!(build_model_with(|x| 1.0 / x.abs().min(0.0), g).is_err());
    }

    #[test]
    fn charge_maps_between_sectors() {
        let m = linear(400);
        let c = supercharge_map(&m, Sector::One, 1).unwrap();
        let (e0, ground0) = m.eigenpair(Sector::Zero, 0).unwrap();
        assert!((c.energy - e0).abs() < 1e-9);
        assert!(c.residual <= 1e-8, "{}", c.residual);
        assert!(c.round_trip_residual <= 1e-8);
        let overlap: f64 = c.image.iter().zip(&ground0).map(|(a, b)| a * b).sum();
        assert!((overlap.abs() - 1.0).abs() < 1e-9);
        let back = supercharge_map(&m, Sector::Zero, 0).unwrap();
        assert!(back.residual <= 1e-8);
        assert!(matches!(
            supercharge_map(&m, Sector::One, 0),
            Err(Error::ZeroMode { .. })
        ));
    }

    #[test]
    fn sqrt_not_checks() {
        let s = sqrt_not().unwrap();
        assert_eq!(s.unitarity_deviation, 0.0);
        assert_eq!(s.square_minus_not, 0.0);
        assert_eq!(s.u2_on_zero, [c64(0.0, 0.0), c64(1.0, 0.0)]);
        assert_eq!(s.u2_on_one, [c64(1.0, 0.0), c64(0.0, 0.0)]);
        assert!(s.passes(1e-12));
    }

    #[test]
    fn names() {
        assert_eq!(
            "cubic".parse::<Superpotential>().unwrap(),
            Superpotential::Cubic { c: 1.0 }
        );
        assert_eq!(
            Superpotential::from_name("linear", Some(2.0))
                .unwrap()
                .eval(3.0),
            6.0
        );
        assert!("quartic".parse::<Superpotential>().is_err());
    }
}
