//! Bosonic O(3) sigma model on a periodic 1-D lattice.
//!
//! Fields are unit 3-vectors `phi_i` with velocities `phidot_i` tangent to the
//! sphere. [`LatticeField::step`] is a RATTLE step: kick with the discrete
//! Laplacian, drift, pull the positions back to the sphere along the old
//! position (the Lagrange multiplier), then kick again and project the
//! velocities onto the tangent plane. The multiplier reproduces the
//! `(d phi . d phi) phi` term of the equation of motion.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::sampling::seeded_rng;
use crate::{Error, Result};

pub type Vec3 = [f64; 3];

/// Invariant tolerance for input fields.
pub const FIELD_TOL: f64 = 1e-10;

#[inline]
fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
fn axpy(a: f64, x: Vec3, y: Vec3) -> Vec3 {
    [a * x[0] + y[0], a * x[1] + y[1], a * x[2] + y[2]]
}

#[inline]
fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn normalized(a: Vec3) -> Vec3 {
    let n = dot(a, a).sqrt();
    [a[0] / n, a[1] / n, a[2] / n]
}

fn tangent(v: Vec3, p: Vec3) -> Vec3 {
    axpy(-dot(v, p), p, v)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeField {
    dx: f64,
    dt: f64,
    /// Net steps taken; negative after running backwards.
    steps: i64,
    phi: Vec<Vec3>,
    phidot: Vec<Vec3>,
}

impl LatticeField {
    /// Checks `dt < dx`, at least 3 sites, unit fields and tangent velocities.
    pub fn new(phi: Vec<Vec3>, phidot: Vec<Vec3>, dx: f64, dt: f64) -> Result<Self> {
        if !(dx > 0.0 && dx.is_finite()) {
            return Err(Error::param(
                "dx",
                alloc::format!("must be finite and positive, got {dx}"),
            ));
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::param(
                "dt",
                alloc::format!("must be finite and positive, got {dt}"),
            ));
        }
        if dt >= dx {
            return Err(Error::param(
                "dt",
                alloc::format!("CFL violation: dt = {dt} must be below dx = {dx}"),
            ));
        }
        if phi.len() < 3 {
            return Err(Error::param(
                "sites",
                alloc::format!("need at least 3 sites, got {}", phi.len()),
            ));
        }
        if phidot.len() != phi.len() {
            return Err(Error::DimensionMismatch {
                expected: phi.len(),
                got: phidot.len(),
            });
        }
        for (i, (p, v)) in phi.iter().zip(&phidot).enumerate() {
            if p.iter().chain(v).any(|c| !c.is_finite()) {
                return Err(Error::param(
                    "phi",
                    alloc::format!("site {i} is not finite"),
                ));
            }
            if (dot(*p, *p).sqrt() - 1.0).abs() > FIELD_TOL {
                return Err(Error::param(
                    "phi",
                    alloc::format!("site {i} is off the unit sphere"),
                ));
            }
            if dot(*p, *v).abs() > FIELD_TOL {
                return Err(Error::param(
                    "phidot",
                    alloc::format!("site {i} is not tangent to the sphere"),
                ));
            }
        }
        Ok(Self {
            dx,
            dt,
            steps: 0,
            phi,
            phidot,
        })
    }

    /// `phi = (0, 0, 1)` at rest everywhere.
    pub fn uniform(sites: usize, dx: f64, dt: f64) -> Result<Self> {
        Self::new(
            alloc::vec![[0.0, 0.0, 1.0]; sites],
            alloc::vec![[0.0; 3]; sites],
            dx,
            dt,
        )
    }

    /// Small transverse wave of mode `m` (wavenumber `2 pi m / (sites dx)`)
    /// about the north pole. Standing waves start at rest with
    /// `phi_x ~ a cos(k x)`; traveling waves rotate in the x-y plane with the
    /// linearized lattice frequency.
    pub fn spin_wave(
        sites: usize,
        dx: f64,
        dt: f64,
        mode: usize,
        amplitude: f64,
        traveling: bool,
    ) -> Result<Self> {
        if !amplitude.is_finite() {
            return Err(Error::param(
                "amplitude",
                alloc::format!("must be finite, got {amplitude}"),
            ));
        }
        let k = wavenumber(sites, dx, mode);
        let w = lattice_frequency(k, dx);
        let mut phi = Vec::with_capacity(sites);
        let mut phidot = Vec::with_capacity(sites);
        for i in 0..sites {
            let (s, c) = (k * i as f64 * dx).sin_cos();
            if traveling {
                let p = normalized([amplitude * c, amplitude * s, 1.0]);
                phi.push(p);
                phidot.push(tangent([amplitude * w * s, -amplitude * w * c, 0.0], p));
            } else {
                phi.push(normalized([amplitude * c, 0.0, 1.0]));
                phidot.push([0.0; 3]);
            }
        }
        Self::new(phi, phidot, dx, dt)
    }

    /// Random unit fields with random tangent velocities of typical size
    /// `speed`, reproducible from `seed`.
    pub fn random(sites: usize, dx: f64, dt: f64, speed: f64, seed: u64) -> Result<Self> {
        let mut rng = seeded_rng(seed);
        let mut gauss3 = || -> Vec3 { [0; 3].map(|_: i32| rng.sample::<f64, _>(StandardNormal)) };
        let mut phi = Vec::with_capacity(sites);
        let mut phidot = Vec::with_capacity(sites);
        for _ in 0..sites {
            let p = loop {
                let g = gauss3();
                if dot(g, g) > 1e-12 {
                    break normalized(g);
                }
            };
            let v = gauss3().map(|c| speed * c);
            phidot.push(tangent(v, p));
            phi.push(p);
        }
        Self::new(phi, phidot, dx, dt)
    }

    pub fn sites(&self) -> usize {
        self.phi.len()
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn time(&self) -> f64 {
        self.steps as f64 * self.dt
    }

    pub fn phi(&self) -> &[Vec3] {
        &self.phi
    }

    pub fn phidot(&self) -> &[Vec3] {
        &self.phidot
    }

    fn neighbors(&self, i: usize) -> (Vec3, Vec3) {
        let l = self.sites();
        (self.phi[(i + l - 1) % l], self.phi[(i + 1) % l])
    }

    /// Discrete Laplacian of `phi` at every site.
    fn forces(&self, phi: &[Vec3]) -> Vec<Vec3> {
        let l = phi.len();
        let inv = 1.0 / (self.dx * self.dx);
        (0..l)
            .map(|i| {
                let (a, b, c) = (phi[(i + l - 1) % l], phi[i], phi[(i + 1) % l]);
                [0, 1, 2].map(|d| (a[d] - 2.0 * b[d] + c[d]) * inv)
            })
            .collect()
    }

    /// One RATTLE step of size `dt`.
    pub fn step(&mut self) {
        let dt = self.dt;
        let f = self.forces(&self.phi);
        let mut next = Vec::with_capacity(self.sites());
        for ((q, v), fi) in self.phi.iter().zip(&self.phidot).zip(&f) {
            let a = axpy(dt, axpy(0.5 * dt, *fi, *v), *q);
            let aq = dot(a, *q);
            let mu = -aq + (aq * aq - dot(a, a) + 1.0).sqrt();
            next.push(axpy(mu, *q, a));
        }
        let f_next = self.forces(&next);
        for i in 0..next.len() {
            let v_half = sub(next[i], self.phi[i]).map(|c| c / dt);
            self.phidot[i] = tangent(axpy(0.5 * dt, f_next[i], v_half), next[i]);
        }
        self.phi = next;
        self.steps += 1;
    }

    pub fn run(&mut self, steps: usize) {
        for _ in 0..steps {
            self.step();
        }
    }

    /// Flip all velocities; stepping after this runs the dynamics backwards.
    pub fn reverse(&mut self) {
        for v in &mut self.phidot {
            *v = v.map(|c| -c);
        }
    }

    /// `n` steps backwards in time.
    pub fn run_backward(&mut self, steps: usize) {
        self.reverse();
        self.run(steps);
        self.reverse();
        self.steps -= 2 * steps as i64;
    }

    /// `sum_i [ |phidot_i|^2 / 2 + |phi_{i+1} - phi_i|^2 / (2 dx^2) ] dx`.
    pub fn energy(&self) -> f64 {
        let inv = 1.0 / (self.dx * self.dx);
        (0..self.sites())
            .map(|i| {
                let d = sub(self.neighbors(i).1, self.phi[i]);
                0.5 * dot(self.phidot[i], self.phidot[i]) + 0.5 * dot(d, d) * inv
            })
            .sum::<f64>()
            * self.dx
    }

    /// `sum_i phidot_i . (phi_{i+1} - phi_{i-1}) / (2 dx)`.
    pub fn momentum(&self) -> f64 {
        (0..self.sites())
            .map(|i| {
                let (a, b) = self.neighbors(i);
                dot(self.phidot[i], sub(b, a)) / (2.0 * self.dx)
            })
            .sum()
    }

    /// `max_i | |phi_i| - 1 |`.
    pub fn constraint_residual(&self) -> f64 {
        self.phi
            .iter()
            .map(|p| (dot(*p, *p).sqrt() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// `max_i |phi_i . phidot_i|`.
    pub fn tangency_residual(&self) -> f64 {
        self.phi
            .iter()
            .zip(&self.phidot)
            .map(|(p, v)| dot(*p, *v).abs())
            .fold(0.0, f64::max)
    }

    /// Largest per-component difference of positions and velocities.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.sites() != other.sites() {
            return f64::INFINITY;
        }
        self.phi
            .iter()
            .zip(&other.phi)
            .chain(self.phidot.iter().zip(&other.phidot))
            .flat_map(|(a, b)| (0..3).map(move |d| (a[d] - b[d]).abs()))
            .fold(0.0, f64::max)
    }
}

/// `2 pi m / (L dx)`.
pub fn wavenumber(sites: usize, dx: f64, mode: usize) -> f64 {
    2.0 * PI * mode as f64 / (sites as f64 * dx)
}

/// Linearized lattice dispersion `(2/dx) sin(k dx / 2)`.
pub fn lattice_frequency(k: f64, dx: f64) -> f64 {
    2.0 / dx * (0.5 * k * dx).sin()
}

/// One row of a monitored run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesRow {
    pub step: usize,
    pub time: f64,
    pub energy: f64,
    pub momentum: f64,
    pub constraint_residual: f64,
    pub tangency_residual: f64,
}

fn row(f: &LatticeField, step: usize) -> SeriesRow {
    SeriesRow {
        step,
        time: f.time(),
        energy: f.energy(),
        momentum: f.momentum(),
        constraint_residual: f.constraint_residual(),
        tangency_residual: f.tangency_residual(),
    }
}

/// Run `steps` steps, recording step 0, every `every`-th step and the last.
pub fn evolve(f: &mut LatticeField, steps: usize, every: usize) -> Vec<SeriesRow> {
    let every = every.max(1);
    let mut out = alloc::vec![row(f, 0)];
    for s in 1..=steps {
        f.step();
        if s % every == 0 || s == steps {
            out.push(row(f, s));
        }
    }
    out
}

/// Summary of a run monitored at every step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DriftReport {
    pub initial_energy: f64,
    /// `max_t |E(t) - E(0)| / |E(0)|`.
    pub max_relative_energy_drift: f64,
    pub max_momentum_drift: f64,
    pub max_constraint_residual: f64,
    pub max_tangency_residual: f64,
}

pub fn monitor(f: &mut LatticeField, steps: usize) -> DriftReport {
    let e0 = f.energy();
    let p0 = f.momentum();
    let mut r = DriftReport {
        initial_energy: e0,
        max_relative_energy_drift: 0.0,
        max_momentum_drift: 0.0,
        max_constraint_residual: f.constraint_residual(),
        max_tangency_residual: f.tangency_residual(),
    };
    let scale = if e0 != 0.0 { e0.abs() } else { 1.0 };
    for _ in 0..steps {
        f.step();
        r.max_relative_energy_drift = r
            .max_relative_energy_drift
            .max((f.energy() - e0).abs() / scale);
        r.max_momentum_drift = r.max_momentum_drift.max((f.momentum() - p0).abs());
        r.max_constraint_residual = r.max_constraint_residual.max(f.constraint_residual());
        r.max_tangency_residual = r.max_tangency_residual.max(f.tangency_residual());
    }
    r
}

/// Angular frequency of `phi_x` at site 0 from its zero crossings over
/// `steps` steps. `None` with fewer than two crossings.
pub fn measure_frequency(f: &mut LatticeField, steps: usize) -> Option<f64> {
    let mut crossings = Vec::new();
    let mut prev = (f.time(), f.phi()[0][0]);
    for _ in 0..steps {
        f.step();
        let cur = (f.time(), f.phi()[0][0]);
        if prev.1 != cur.1 && (prev.1 <= 0.0) != (cur.1 <= 0.0) {
            crossings.push(prev.0 + (cur.0 - prev.0) * prev.1 / (prev.1 - cur.1));
        }
        prev = cur;
    }
    let (first, last) = (*crossings.first()?, *crossings.last()?);
    if crossings.len() < 2 {
        return None;
    }
    Some(PI * (crossings.len() - 1) as f64 / (last - first))
}
