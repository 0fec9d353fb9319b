use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// Uniform grid on `[0, x_max]`. Both endpoints carry Dirichlet conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    x_max: f64,
    n_points: usize,
}

impl RadialGrid {
    pub fn new(x_max: f64, n_points: usize) -> Result<Self> {
        if n_points < 3 {
            return Err(Error::InvalidGrid("need at least 3 grid points"));
        }
        if !(x_max > 0.0) || !x_max.is_finite() {
            return Err(Error::InvalidGrid("x_max must be positive and finite"));
        }
        Ok(Self { x_max, n_points })
    }

    #[inline]
    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    #[inline]
    pub fn n_points(&self) -> usize {
        self.n_points
    }

    #[inline]
    pub fn spacing(&self) -> f64 {
        self.x_max / (self.n_points - 1) as f64
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.x_max
        } else {
            i as f64 * self.spacing()
        }
    }

    /// All `n_points` abscissae.
    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.x(i)).collect()
    }

    /// Abscissae strictly inside `(0, x_max)`.
    pub fn interior(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (1..self.n_points - 1).map(move |i| self.x(i))
    }

    #[inline]
    pub fn interior_len(&self) -> usize {
        self.n_points - 2
    }

    /// Same interval with `n_points` replaced.
    pub fn with_points(&self, n_points: usize) -> Result<Self> {
        Self::new(self.x_max, n_points)
    }
}

/// Floor on the decay rate used by [`XMaxPolicy::Auto`].
pub const KAPPA_MIN: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum XMaxPolicy {
    /// `x_max` with `exp(−κ x_max) < 1e−12`, `κ ≥ kappa_min`.
    Auto { kappa_min: f64 },
    Fixed(f64),
}

impl Default for XMaxPolicy {
    fn default() -> Self {
        Self::Auto { kappa_min: KAPPA_MIN }
    }
}

/// Grid sized for a state bound by `epsilon_scale` (measured from the
/// potential's asymptote; its square root is the decay rate).
pub fn build_grid(
    epsilon_scale: f64,
    nu: f64,
    n_points: usize,
    policy: XMaxPolicy,
) -> Result<RadialGrid> {
    let x_max = match policy {
        XMaxPolicy::Fixed(x) => x,
        XMaxPolicy::Auto { kappa_min } => {
            let kappa = math::sqrt(math::abs(epsilon_scale).max(kappa_min * kappa_min));
            let x = 12.0 * core::f64::consts::LN_10 / kappa;
            let nu_eff = nu.max(kappa);
            x.clamp(10.0 / nu_eff, 200.0 / nu_eff)
        }
    };
    RadialGrid::new(x_max, n_points)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    RToX,
    XToR,
}

/// `xν = ln(1 + νr)` and its inverse.
pub fn coordinate_map(value: f64, nu: f64, direction: Direction) -> f64 {
    if nu == 0.0 {
        return value;
    }
    let t = nu * value;
    let small = math::abs(t) < 1e-8;
    match direction {
        Direction::RToX if small => value * (1.0 - t / 2.0 + t * t / 3.0),
        Direction::RToX => math::ln_1p(t) / nu,
        Direction::XToR if small => value * (1.0 + t / 2.0 + t * t / 6.0),
        Direction::XToR => math::exp_m1(t) / nu,
    }
}
