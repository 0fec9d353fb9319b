//! Grid and matrix checks of the operator identities behind the radial
//! equation.
//!
//! Factors of `i` are carried symbolically: `p̂ = −iħD` is stored as the real
//! antisymmetric difference matrix `D`, so `[x̂, P̂] = iħf` becomes
//! `f^{1/2}[X, D]f^{1/2} = −F` between real matrices.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::params::{Couplings, PhysicalConstants};
use crate::radial::RadialGrid;

/// Tridiagonal matrix on the interior points of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridOperator {
    pub grid: RadialGrid,
    pub diag: Vec<f64>,
    /// `lower[i]` couples row `i + 1` to column `i`.
    pub lower: Vec<f64>,
    /// `upper[i]` couples row `i` to column `i + 1`.
    pub upper: Vec<f64>,
}

impl GridOperator {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diagonal(grid: RadialGrid, diag: Vec<f64>) -> Self {
        let n = diag.len();
        Self { grid, diag, lower: alloc::vec![0.0; n - 1], upper: alloc::vec![0.0; n - 1] }
    }

    /// Multiplication by `x`.
    pub fn position(grid: RadialGrid) -> Self {
        Self::diagonal(grid, grid.interior().collect())
    }

    /// Central difference `D`, `p̂ = −iħD`.
    pub fn derivative(grid: RadialGrid) -> Self {
        let n = grid.interior_len();
        let c = 0.5 / grid.spacing();
        Self { grid, diag: alloc::vec![0.0; n], lower: alloc::vec![-c; n - 1], upper: alloc::vec![c; n - 1] }
    }

    /// `S·A·S` for diagonal `S = diag(s)`.
    pub fn sandwich(&self, s: &[f64]) -> Self {
        let n = self.dim();
        Self {
            grid: self.grid,
            diag: (0..n).map(|i| s[i] * self.diag[i] * s[i]).collect(),
            lower: (0..n - 1).map(|i| s[i + 1] * self.lower[i] * s[i]).collect(),
            upper: (0..n - 1).map(|i| s[i] * self.upper[i] * s[i + 1]).collect(),
        }
    }

    /// `[diag(d), A]`, tridiagonal again.
    pub fn commutator_with_diagonal(&self, d: &[f64]) -> Self {
        let n = self.dim();
        Self {
            grid: self.grid,
            diag: alloc::vec![0.0; n],
            lower: (0..n - 1).map(|i| (d[i + 1] - d[i]) * self.lower[i]).collect(),
            upper: (0..n - 1).map(|i| (d[i] - d[i + 1]) * self.upper[i]).collect(),
        }
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.lower[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.upper[i] * v[i + 1];
                }
                s
            })
            .collect()
    }
}

/// `f^{1/2} D f^{1/2}` with `f = 1 + νx`, i.e. `P̂ = f^{1/2}p̂f^{1/2}` up to `−iħ`.
pub fn deformed_momentum(nu: f64, grid: RadialGrid) -> GridOperator {
    let s: Vec<f64> = grid.interior().map(|x| math::sqrt(1.0 + nu * x)).collect();
    GridOperator::derivative(grid).sandwich(&s)
}

/// Defect of `[x̂, P̂] = iħf` in units of `ħ`: the identity
/// `[X, f^{1/2}Df^{1/2}] + F = 0` applied to the constant vector, maximum
/// over interior rows with the outer 5% on each side dropped.
pub fn deformed_commutator_residual(nu: f64, grid: RadialGrid) -> f64 {
    let x: Vec<f64> = grid.interior().collect();
    let comm = deformed_momentum(nu, grid).commutator_with_diagonal(&x);
    let n = comm.dim();
    let ones = alloc::vec![1.0; n];
    let applied = comm.apply(&ones);
    let skip = (n * 5).div_ceil(100);
    (skip.max(1)..n - skip.max(1))
        .map(|i| math::abs(applied[i] + (1.0 + nu * x[i])))
        .fold(0.0, f64::max)
}

/// `[[k, C₁/ħc + mcC₂/ħ], [−C₁/ħc + mcC₂/ħ, −k]]`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaMatrix(pub [[f64; 2]; 2]);

impl LambdaMatrix {
    pub fn new(consts: &PhysicalConstants, c1: f64, c2: f64, k: i32) -> Self {
        let kf = f64::from(k);
        let charge = c1 / (consts.hbar * consts.c);
        let mass = consts.mass * consts.c * c2 / consts.hbar;
        Self([[kf, charge + mass], [-charge + mass, -kf]])
    }

    /// `kβ̂ + (i/ħc)α̂_r C₁ − i(mc/ħ)α̂_r β̂ C₂` with `β̂ = diag(1, −1)`,
    /// `α̂_r = [[0, −i], [i, 0]]`; `iα̂_r` and `−iα̂_rβ̂` are real.
    pub fn from_representation(consts: &PhysicalConstants, c1: f64, c2: f64, k: i32) -> Self {
        const BETA: [[f64; 2]; 2] = [[1.0, 0.0], [0.0, -1.0]];
        const I_ALPHA: [[f64; 2]; 2] = [[0.0, 1.0], [-1.0, 0.0]];
        const MINUS_I_ALPHA_BETA: [[f64; 2]; 2] = [[0.0, 1.0], [1.0, 0.0]];
        let kf = f64::from(k);
        let charge = c1 / (consts.hbar * consts.c);
        let mass = consts.mass * consts.c * c2 / consts.hbar;
        let mut m = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = kf * BETA[i][j] + charge * I_ALPHA[i][j] + mass * MINUS_I_ALPHA_BETA[i][j];
            }
        }
        Self(m)
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn determinant(&self) -> f64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Roots of `λ² − tr·λ + det`, ascending.
    pub fn eigenvalues(&self) -> Result<[f64; 2]> {
        let half_tr = 0.5 * self.trace();
        let disc = half_tr * half_tr - self.determinant();
        if disc < 0.0 {
            return Err(Error::ComplexRoots { discriminant: disc });
        }
        let s = math::sqrt(disc);
        Ok([half_tr - s, half_tr + s])
    }
}

/// `Λ` for separation constants `C₁`, `C₂` and its eigenvalues.
pub fn lambda_matrix_numeric(
    consts: &PhysicalConstants,
    c1: f64,
    c2: f64,
    k: i32,
) -> Result<(LambdaMatrix, [f64; 2])> {
    if k == 0 {
        return Err(Error::InvalidQuantumNumber { k });
    }
    let m = LambdaMatrix::new(consts, c1, c2, k);
    let ev = m.eigenvalues()?;
    Ok((m, ev))
}

/// Separation constants of the Coulomb problem, `C₁ = −e²`, `C₂ = a`.
pub fn coulomb_separation_constants(consts: &PhysicalConstants, a: f64) -> (f64, f64) {
    (-consts.e2, a)
}

/// `±sqrt(k² − ᾱ²)` from the couplings, for comparison with [`LambdaMatrix::eigenvalues`].
pub fn lambda_pair(coup: &Couplings, k: i32) -> Option<[f64; 2]> {
    let sq = f64::from(k) * f64::from(k) - coup.alpha_bar_sq;
    (sq >= 0.0).then(|| [-math::sqrt(sq), math::sqrt(sq)])
}

/// Uniform grid in `r` on `[r_min, r_max]`, `r_min > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RGrid {
    r_min: f64,
    r_max: f64,
    n_points: usize,
}

impl RGrid {
    pub fn new(r_min: f64, r_max: f64, n_points: usize) -> Result<Self> {
        if !(r_min > 0.0) || !(r_max > r_min) || !r_max.is_finite() {
            return Err(Error::InvalidGrid("r grid must satisfy 0 < r_min < r_max"));
        }
        if n_points < 3 {
            return Err(Error::InvalidGrid("need at least 3 grid points"));
        }
        Ok(Self { r_min, r_max, n_points })
    }

    pub fn spacing(&self) -> f64 {
        (self.r_max - self.r_min) / (self.n_points - 1) as f64
    }

    pub fn r(&self, i: usize) -> f64 {
        self.r_min + i as f64 * self.spacing()
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }
}

/// Maximum defects of `C₁·d/dr(f/r) = dU/dr` and `C₂·d/dr(f/r) = df₁/dr`
/// (`f = 1 + νr`, `f₁ = 1 + a/r`, `U = −e²/r`, `C₁ = −e²`, `C₂ = a`). The left
/// sides use central differences of `f/r`, the right sides are exact. Every
/// grid point with `r − h > 0` is included.
pub fn separability_residual(consts: &PhysicalConstants, nu: f64, a: f64, grid: &RGrid) -> (f64, f64) {
    let (c1, c2) = coulomb_separation_constants(consts, a);
    let h = grid.spacing();
    let g = |r: f64| (1.0 + nu * r) / r;
    let mut res = (0.0f64, 0.0f64);
    for i in 0..grid.n_points() {
        let r = grid.r(i);
        if !(r - h > 0.0) {
            continue;
        }
        let d = (g(r + h) - g(r - h)) / (2.0 * h);
        let du = consts.e2 / (r * r);
        let df1 = -a / (r * r);
        res.0 = res.0.max(math::abs(c1 * d - du));
        res.1 = res.1.max(math::abs(c2 * d - df1));
    }
    res
}

/// Same defects with every derivative exact; zero up to rounding.
pub fn separability_residual_analytic(consts: &PhysicalConstants, nu: f64, a: f64, grid: &RGrid) -> (f64, f64) {
    let _ = nu; // d/dr(f/r) = −1/r² for any ν
    let (c1, c2) = coulomb_separation_constants(consts, a);
    let mut res = (0.0f64, 0.0f64);
    for i in 0..grid.n_points() {
        let inv_r2 = 1.0 / (grid.r(i) * grid.r(i));
        let d = -inv_r2;
        res.0 = res.0.max(math::abs(c1 * d - consts.e2 * inv_r2));
        res.1 = res.1.max(math::abs(c2 * d + a * inv_r2));
    }
    res
}
