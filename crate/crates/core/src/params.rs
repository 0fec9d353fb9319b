//! Physical constants, deformation parameters and the quantum numbers
//! derived from them.
//!
//! All formulas keep `ħ`, `m`, `c` explicit. [`PhysicalConstants::natural`]
//! gives the `ħ = m = c = 1` system used throughout the tests.

use crate::error::{Error, Result};
use crate::math;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub mass: f64,
    pub c: f64,
    /// Charge squared `e²` (energy × length).
    pub e2: f64,
}

impl PhysicalConstants {
    pub fn new(hbar: f64, mass: f64, c: f64, e2: f64) -> Result<Self> {
        for (name, value) in [("hbar", hbar), ("mass", mass), ("c", c)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter { name, value });
            }
        }
        if !(e2.is_finite() && e2 >= 0.0) {
            return Err(Error::InvalidParameter { name: "e2", value: e2 });
        }
        Ok(Self { hbar, mass, c, e2 })
    }

    /// `ħ = m = c = 1` with the given charge squared.
    pub fn natural(e2: f64) -> Result<Self> {
        Self::new(1.0, 1.0, 1.0, e2)
    }

    /// `mc²`.
    #[inline]
    pub fn rest_energy(&self) -> f64 {
        self.mass * self.c * self.c
    }

    /// `α = e²/ħc`.
    #[inline]
    pub fn fine_structure(&self) -> f64 {
        self.e2 / (self.hbar * self.c)
    }

    /// `e²/mc²`, the length that converts `ā` into `a`.
    #[inline]
    pub fn charge_radius(&self) -> f64 {
        self.e2 / self.rest_energy()
    }
}

/// Deforming function `f = 1 + νr` and mass function `f₁ = 1 + a/r`.
///
/// Only `ν` and `a` are stored; the dimensionless `ā` is derived through
/// `a = (e²/mc²)·ā`, so whichever of the two was given remains the primary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformationParams {
    /// Inverse length, `ν ≥ 0`.
    pub nu: f64,
    /// Length.
    pub a: f64,
}

impl DeformationParams {
    /// Negative `ν` is rejected: the coordinate map `x = ln(1 + νr)/ν`
    /// breaks down at `r = −1/ν`.
    pub fn new(nu: f64, a: f64) -> Result<Self> {
        if !(nu.is_finite() && nu >= 0.0) {
            return Err(Error::InvalidParameter { name: "nu", value: nu });
        }
        if !a.is_finite() {
            return Err(Error::InvalidParameter { name: "a", value: a });
        }
        Ok(Self { nu, a })
    }

    /// Build from the dimensionless mass parameter `ā`.
    pub fn from_abar(consts: &PhysicalConstants, nu: f64, abar: f64) -> Result<Self> {
        if !abar.is_finite() {
            return Err(Error::InvalidParameter { name: "abar", value: abar });
        }
        Self::new(nu, consts.charge_radius() * abar)
    }

    pub fn undeformed() -> Self {
        Self { nu: 0.0, a: 0.0 }
    }

    /// `ā = a·mc²/e²`; `None` when `e² = 0`.
    pub fn abar(&self, consts: &PhysicalConstants) -> Option<f64> {
        (consts.e2 > 0.0).then(|| self.a / consts.charge_radius())
    }
}

/// Dimensionless couplings entering every formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Couplings {
    /// `α = e²/ħc`
    pub alpha: f64,
    /// `ᾱ² = α² − (mca/ħ)²`; negative for large `a`.
    pub alpha_bar_sq: f64,
    /// `mca/ħ`
    pub mca_over_hbar: f64,
}

pub fn derive_couplings(consts: &PhysicalConstants, deform: &DeformationParams) -> Couplings {
    let alpha = consts.fine_structure();
    let mca_over_hbar = consts.mass * consts.c * deform.a / consts.hbar;
    Couplings {
        alpha,
        alpha_bar_sq: alpha * alpha - mca_over_hbar * mca_over_hbar,
        mca_over_hbar,
    }
}

/// Sign of the `Λ` eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        }
    }
}

impl core::fmt::Display for Branch {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `sqrt(k² − ᾱ²)`, the common magnitude of both `Λ` eigenvalues.
fn lambda_magnitude(coup: &Couplings, k: i32) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidQuantumNumber { k });
    }
    let k2 = f64::from(k) * f64::from(k);
    let radicand = k2 + coup.mca_over_hbar * coup.mca_over_hbar - coup.alpha * coup.alpha;
    if !(radicand > 0.0) {
        return Err(Error::SupercriticalCoupling { k, alpha_bar_sq: coup.alpha_bar_sq });
    }
    Ok(math::sqrt(radicand))
}

/// `λ = ±sqrt(k² + (mca/ħ)² − (e²/ħc)²)`.
///
/// Depends on `k` only through `k²`; `k` and `−k` are still distinct states.
pub fn lambda_eigenvalue(coup: &Couplings, k: i32, branch: Branch) -> Result<f64> {
    Ok(branch.sign() * lambda_magnitude(coup, k)?)
}

/// Effective orbital number `l*`, chosen so that `l*(l*+1) = λ(λ−1)`:
/// `sqrt(k² − ᾱ²) − 1` on the upper branch and `sqrt(k² − ᾱ²)` on the lower.
pub fn effective_orbital(coup: &Couplings, k: i32, branch: Branch) -> Result<f64> {
    let s = lambda_magnitude(coup, k)?;
    Ok(match branch {
        Branch::Plus => s - 1.0,
        Branch::Minus => s,
    })
}

/// `n = n_r + l* + 1`.
pub fn principal_quantum_number(n_r: u32, l_star: f64) -> Result<f64> {
    let n = f64::from(n_r) + l_star + 1.0;
    if !(n > 0.0) {
        return Err(Error::NonPositivePrincipal { n });
    }
    Ok(n)
}

/// Bound-state condition `(E/mc²)·e² > (ħ²ν/m)·k² + mc²·a`.
pub fn bound_state_condition(
    energy: f64,
    consts: &PhysicalConstants,
    deform: &DeformationParams,
    k: i32,
) -> bool {
    let k2 = f64::from(k) * f64::from(k);
    let lhs = energy / consts.rest_energy() * consts.e2;
    let rhs = consts.hbar * consts.hbar * deform.nu / consts.mass * k2
        + consts.rest_energy() * deform.a;
    lhs > rhs
}

/// A fully resolved `(k, n_r, branch)` state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumState {
    pub k: i32,
    pub n_r: u32,
    pub branch: Branch,
    pub lambda: f64,
    pub l_star: f64,
    pub n: f64,
}

impl QuantumState {
    pub fn new(coup: &Couplings, k: i32, n_r: u32, branch: Branch) -> Result<Self> {
        let lambda = lambda_eigenvalue(coup, k, branch)?;
        let l_star = effective_orbital(coup, k, branch)?;
        let n = principal_quantum_number(n_r, l_star)?;
        Ok(Self { k, n_r, branch, lambda, l_star, n })
    }

    /// Convenience constructor going through [`derive_couplings`].
    pub fn resolve(
        consts: &PhysicalConstants,
        deform: &DeformationParams,
        k: i32,
        n_r: u32,
        branch: Branch,
    ) -> Result<Self> {
        Self::new(&derive_couplings(consts, deform), k, n_r, branch)
    }

    #[inline]
    pub fn k_sq(&self) -> f64 {
        f64::from(self.k) * f64::from(self.k)
    }
}
