use alloc::vec::Vec;

use super::grid::RadialGrid;
use crate::closed_form::EckartParams;
use crate::math;

/// A potential on the half line with at most `L/x² + Z/x` behaviour at the
/// origin.
pub trait Potential {
    fn value(&self, x: f64) -> f64;

    /// `(L, Z)` of the leading `L/x² + Z/x` terms as `x → 0`.
    fn singular_coefficients(&self) -> (f64, f64) {
        (0.0, 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EckartPotential(pub EckartParams);

impl Potential for EckartPotential {
    fn value(&self, x: f64) -> f64 {
        let p = &self.0;
        let t = 0.5 * p.nu * x;
        let s = math::sinh(t);
        p.centrifugal() / (s * s) - 2.0 * p.b_param * math::coth(t)
    }

    fn singular_coefficients(&self) -> (f64, f64) {
        let p = &self.0;
        (4.0 * p.centrifugal() / (p.nu * p.nu), -4.0 * p.b_param / p.nu)
    }
}

/// `V = x²` on the half line; levels `3, 7, 11, …` with `χ(0) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HalfOscillator;

impl Potential for HalfOscillator {
    fn value(&self, x: f64) -> f64 {
        x * x
    }
}

/// A potential evaluated at the interior points of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialSamples {
    pub grid: RadialGrid,
    pub values: Vec<f64>,
}

impl PotentialSamples {
    pub fn sample<P: Potential + ?Sized>(pot: &P, grid: RadialGrid) -> Self {
        Self { grid, values: grid.interior().map(|x| pot.value(x)).collect() }
    }
}

pub fn eckart_potential(p: &EckartParams, grid: RadialGrid) -> PotentialSamples {
    PotentialSamples::sample(&EckartPotential(*p), grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eckart_examples() {
        let p = EckartParams { a_param: 1.0, b_param: 3.0, nu: 2.0 };
        let v = EckartPotential(p);
        assert!((v.value(1.0) + 7.878_211_712_995_987_821_8).abs() < 1e-14);
        assert_eq!(v.singular_coefficients(), (0.0, -6.0));

        let grid = RadialGrid::new(40.0, 4001).unwrap();
        let s = eckart_potential(&p, grid);
        assert_eq!(s.values.len(), 3999);
        assert!(s.values.iter().all(|v| v.is_finite()));
        assert!((s.values.last().unwrap() + 6.0).abs() <= 1e-10);
    }

    #[test]
    fn eckart_singular_expansion() {
        let p = EckartParams { a_param: 0.004, b_param: 0.002, nu: 0.01 };
        let v = EckartPotential(p);
        let (l, z) = v.singular_coefficients();
        let x = 1e-3;
        let lead = l / (x * x) + z / x;
        assert!((v.value(x) - lead).abs() < 1e-6 * lead.abs());
    }
}
