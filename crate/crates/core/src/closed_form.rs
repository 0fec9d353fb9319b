//! Analytic spectrum and its limits.
//!
//! The energy levels solve a quadratic in `E` obtained by matching the
//! Eckart-type levels `ε = −(A + νn_r/2)² − B²/(A + νn_r/2)²` to the
//! energy-dependent parameters of the mapped radial equation. The quadratic
//! is the defining relation; [`energy_closed`] is its physical root written
//! in closed form. [`energy_printed`] keeps the historical closed-form
//! expression, which carries the `aν` term inside the wrong factor. The two
//! agree whenever `a·ν = 0`. Every [`SpectrumRecord`] carries both together
//! with their residuals so the discrepancy stays visible.

use crate::error::{Error, Result};
use crate::math;
use crate::params::{
    bound_state_condition, derive_couplings, Branch, Couplings, DeformationParams,
    PhysicalConstants, QuantumState,
};

/// Parameters of `V(x) = A(A − ν/2)/sinh²(xν/2) − 2B/tanh(xν/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EckartParams {
    /// `A`, inverse length.
    pub a_param: f64,
    /// `B`, inverse length squared.
    pub b_param: f64,
    pub nu: f64,
}

impl EckartParams {
    /// `A + νn_r/2`
    #[inline]
    pub fn level_scale(&self, n_r: u32) -> f64 {
        self.a_param + 0.5 * self.nu * f64::from(n_r)
    }

    /// Coefficient of the `1/sinh²` term, `A(A − ν/2)`.
    #[inline]
    pub fn centrifugal(&self) -> f64 {
        self.a_param * (self.a_param - 0.5 * self.nu)
    }
}

/// One Eckart level with both existence criteria.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EckartLevel {
    pub epsilon: f64,
    /// `B > A², A ≥ 0, B ≥ 0`.
    pub eckart_condition: bool,
    /// `B > (A + νn_r/2)²`: the level's wavefunction decays.
    pub level_guard: bool,
}

impl EckartLevel {
    pub fn exists(&self) -> bool {
        self.eckart_condition && self.level_guard
    }
}

pub fn eckart_level(p: &EckartParams, n_r: u32) -> EckartLevel {
    let scale = p.level_scale(n_r);
    let scale_sq = scale * scale;
    let (a, b) = (p.a_param, p.b_param);
    EckartLevel {
        epsilon: -scale_sq - b * b / scale_sq,
        eckart_condition: b > a * a && a >= 0.0 && b >= 0.0,
        level_guard: b > scale_sq,
    }
}

/// Starred quantities of the Coulomb-like radial equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveParams {
    /// `l*(l* + 1)`
    pub lstar_product: f64,
    /// `e*²`
    pub e_star_sq: f64,
    /// `E*`
    pub e_star: f64,
}

pub fn effective_params(
    energy: f64,
    state: &QuantumState,
    consts: &PhysicalConstants,
    deform: &DeformationParams,
) -> EffectiveParams {
    let PhysicalConstants { hbar, mass, e2, .. } = *consts;
    let coup = derive_couplings(consts, deform);
    let mc2 = consts.rest_energy();
    let k2 = state.k_sq();
    let nu = deform.nu;
    let hb2 = hbar * hbar;

    let lstar_product = k2 + coup.mca_over_hbar * coup.mca_over_hbar
        - state.lambda
        - coup.alpha * coup.alpha;
    let e_star_sq = energy / mc2 * e2 - hb2 * k2 * nu / mass + hb2 * nu / (2.0 * mass) * state.lambda
        - mc2 * deform.a;
    let e_star = (energy * energy - mc2 * mc2) / (2.0 * mc2) - hb2 * k2 * nu * nu / (2.0 * mass);
    EffectiveParams { lstar_product, e_star_sq, e_star }
}

/// Eckart parameters and the target eigenvalue `ε(E)` for trial energy `E`.
pub fn eckart_mapping(
    state: &QuantumState,
    consts: &PhysicalConstants,
    deform: &DeformationParams,
    energy: f64,
) -> Result<(EckartParams, f64)> {
    let nu = deform.nu;
    if !(nu > 0.0) {
        return Err(Error::DeformationRequired);
    }
    let eff = effective_params(energy, state, consts, deform);
    let (hbar, mass) = (consts.hbar, consts.mass);
    let hb2 = hbar * hbar;
    let params = EckartParams {
        a_param: 0.5 * nu * (state.l_star + 1.0),
        b_param: mass * eff.e_star_sq * nu / (2.0 * hb2) + nu * nu * eff.lstar_product / 4.0,
        nu,
    };
    let epsilon = 2.0 * mass / hb2
        * (eff.e_star - hb2 * nu * nu * eff.lstar_product / (4.0 * mass) - 0.5 * eff.e_star_sq * nu);
    Ok((params, epsilon))
}

/// Both roots of the energy quadratic, ascending.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticRoots {
    pub low: f64,
    pub high: f64,
}

/// Which quadratic root a closed-form value sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootChoice {
    Low,
    High,
}

/// The `P` and `Q` groupings shared by the quadratic and its residual.
fn quadratic_groupings(
    state: &QuantumState,
    consts: &PhysicalConstants,
    deform: &DeformationParams,
    coup: &Couplings,
) -> (f64, f64) {
    let (hbar, mass, nu) = (consts.hbar, consts.mass, deform.nu);
    let hb2 = hbar * hbar;
    let k2 = state.k_sq();
    let abar2 = coup.alpha_bar_sq;
    let n2 = state.n * state.n;
    let p = hb2 * nu * nu / (2.0 * mass) * (k2 - abar2) - hb2 * nu * nu / (4.0 * mass) * n2;
    let q = consts.rest_energy() * deform.a + hb2 * nu / (2.0 * mass) * (k2 + abar2);
    (p, q)
}

/// Coefficients `[c0, c1, c2]` of `c2·E² + c1·E + c0 = 0`.
pub fn quadratic_coefficients(
    state: &QuantumState,
    consts: &PhysicalConstants,
    deform: &DeformationParams,
) -> [f64; 3] {
    let coup = derive_couplings(consts, deform);
    let (p, q) = quadratic_groupings(state, consts, deform, &coup);
    let PhysicalConstants { hbar, mass, c, e2 } = *consts;
    let mc2 = consts.rest_energy();
    let n2 = state.n * state.n;
    let nu = deform.nu;

    let c2 = 1.0 + coup.alpha * coup.alpha / n2;
    let c1 = -nu * e2 - 2.0 * mass * e2 * q / (hbar * hbar * n2);
    let c0 = -mc2 * mc2 - mc2 * p + nu * deform.a * mc2 * mc2
        + mass * mass * c * c * q * q / (hbar * hbar * n2);
    [c0, c1, c2]
}

/// `LHS − RHS` of the defining energy relation, evaluated term by term.
pub fn quadratic_residual(
    energy: f64,
    state: &QuantumState,
    consts: &PhysicalConstants,
    deform: &DeformationParams,
) -> f64 {
    let coup = derive_couplings(consts, deform);
    let PhysicalConstants { hbar, mass, e2, .. } = *consts;
    let mc2 = consts.rest_energy();
    let nu = deform.nu;
    let hb2 = hbar * hbar;
    let k2 = state.k_sq();
    let abar2 = coup.alpha_bar_sq;
    let n2 = state.n * state.n;

    let lhs = (energy * energy - mc2 * mc2) / mc2;
    let bracket = e2 * energy / mc2 - mc2 * deform.a - hb2 * nu / (2.0 * mass) * (k2 + abar2);
    let rhs = hb2 * nu * nu / (2.0 * mass) * (k2 - abar2) - hb2 * nu * nu / (4.0 * mass) * n2
        + nu * e2 * energy / mc2
        - nu * deform.a * mc2
        - mass / (hb2 * n2) * bracket * bracket;
    lhs - rhs
}

pub fn energy_quadratic_roots(
    state: &QuantumState,
    consts: &PhysicalConstants,
    deform: &DeformationParams,
) -> Result<QuadraticRoots> {
    let [c0, c1, c2] = quadratic_coefficients(state, consts, deform);
    let disc = c1 * c1 - 4.0 * c2 * c0;
    if disc < 0.0 {
        return Err(Error::ComplexRoots { discriminant: disc });
    }
    let sq = math::sqrt(disc);
    let q = -0.5 * (c1 + if c1 >= 0.0 { sq } else { -sq });
    let (r1, r2) = if q == 0.0 { (0.0, 0.0) } else { (q / c2, c0 / q) };
    Ok(QuadraticRoots { low: r1.min(r2), high: r1.max(r2) })
}

/// Terms of the closed form shared by the exact and printed variants:
/// the part linear in the couplings, the prefactor `mc²/(1 + α²/n²)`,
/// and the radicand pieces that both variants agree on.
struct ClosedFormParts {
    linear: f64,
    prefactor: f64,
    base: f64,
    charge_factor: f64,
    k_sum_ratio: f64,
    a_nu: f64,
}

fn closed_form_parts(
    state: &QuantumState,
    consts: &PhysicalConstants,
    deform: &DeformationParams,
) -> ClosedFormParts {
    let coup = derive_couplings(consts, deform);
    let PhysicalConstants { hbar, mass, c, e2 } = *consts;
    let mc2 = consts.rest_energy();
    let nu = deform.nu;
    let a = deform.a;
    let k2 = state.k_sq();
    let n2 = state.n * state.n;
    let alpha2 = coup.alpha * coup.alpha;
    let abar2 = coup.alpha_bar_sq;
    let k_sum = k2 + abar2;

    let mc_hbar = mass * c / hbar;
    let linear = nu * e2 * (n2 + k_sum) / (2.0 * (n2 + alpha2)) + mc_hbar * mc_hbar * e2 * a / (n2 + alpha2);
    let prefactor = mc2 / (1.0 + alpha2 / n2);

    let charge = nu * e2 / (2.0 * mc2);
    let compton = hbar * nu / (2.0 * mass * c);
    let base = 1.0
        + abar2 / n2
        + compton * compton
            * (1.0 + alpha2 / n2)
            * (2.0 * (k2 - abar2) - n2 - k_sum * k_sum / n2);
    ClosedFormParts {
        linear,
        prefactor,
        base,
        charge_factor: charge * charge,
        k_sum_ratio: 1.0 + k_sum / n2,
        a_nu: a * nu,
    }
}

fn radical(radicand: f64) -> Result<f64> {
    if radicand < 0.0 {
        return Err(Error::ComplexRoots { discriminant: radicand });
    }
    Ok(math::sqrt(radicand))
}

/// Physical (upper) root of the energy quadratic in closed form.
pub fn energy_closed(
    state: &QuantumState,
    consts: &PhysicalConstants,
    deform: &DeformationParams,
) -> Result<f64> {
    let p = closed_form_parts(state, consts, deform);
    let radicand = p.base - p.a_nu * p.k_sum_ratio + p.charge_factor * p.k_sum_ratio * p.k_sum_ratio;
    Ok(p.linear + p.prefactor * radical(radicand)?)
}

/// The closed form exactly as historically printed, with `(1 + aν + K/n²)`
/// in the charge term. Differs from [`energy_closed`] when `a·ν ≠ 0`.
pub fn energy_printed(
    state: &QuantumState,
    consts: &PhysicalConstants,
    deform: &DeformationParams,
) -> Result<f64> {
    let p = closed_form_parts(state, consts, deform);
    let radicand = p.base + p.charge_factor * p.k_sum_ratio * (p.a_nu + p.k_sum_ratio);
    Ok(p.linear + p.prefactor * radical(radicand)?)
}

/// One level of the analytic spectrum, optionally completed by a numerical
/// solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRecord {
    pub k: i32,
    pub n_r: u32,
    pub branch: Branch,
    pub lambda: f64,
    pub l_star: f64,
    pub n: f64,
    pub e_closed: f64,
    pub e_printed: f64,
    /// `|LHS − RHS|/mc²` of the energy relation at `e_closed`.
    pub quadratic_residual: f64,
    /// Same for `e_printed`.
    pub printed_residual: f64,
    pub matched_root: RootChoice,
    pub bound_ok: bool,
    /// `B > A², A ≥ 0, B ≥ 0` at `e_closed`; `None` when `ν = 0`.
    pub eckart_condition: Option<bool>,
    /// Eckart condition and per-level guard together.
    pub level_exists: bool,
    pub e_numeric: Option<f64>,
    pub node_count: Option<u32>,
}

impl SpectrumRecord {
    pub fn is_bound_level(&self) -> bool {
        self.bound_ok && self.level_exists
    }
}

/// Closed-form level with its diagnostics. A level violating the
/// bound-state condition is returned with `bound_ok = false`.
pub fn energy_exact(
    state: &QuantumState,
    consts: &PhysicalConstants,
    deform: &DeformationParams,
) -> Result<SpectrumRecord> {
    let e_closed = energy_closed(state, consts, deform)?;
    let e_printed = energy_printed(state, consts, deform)?;
    let mc2 = consts.rest_energy();
    let roots = energy_quadratic_roots(state, consts, deform)?;
    let matched_root = if (e_closed - roots.high).abs() <= (e_closed - roots.low).abs() {
        RootChoice::High
    } else {
        RootChoice::Low
    };
    let bound_ok = bound_state_condition(e_closed, consts, deform, state.k);
    let (eckart_condition, level_exists) = if deform.nu > 0.0 {
        let (p, _) = eckart_mapping(state, consts, deform, e_closed)?;
        let level = eckart_level(&p, state.n_r);
        (Some(level.eckart_condition), level.exists())
    } else {
        (None, bound_ok)
    };
    Ok(SpectrumRecord {
        k: state.k,
        n_r: state.n_r,
        branch: state.branch,
        lambda: state.lambda,
        l_star: state.l_star,
        n: state.n,
        e_closed,
        e_printed,
        quadratic_residual: math::abs(quadratic_residual(e_closed, state, consts, deform)) / mc2,
        printed_residual: math::abs(quadratic_residual(e_printed, state, consts, deform)) / mc2,
        matched_root,
        bound_ok,
        eckart_condition,
        level_exists,
        e_numeric: None,
        node_count: None,
    })
}

/// Spectrum without deformation (`ν = 0`), position-dependent mass only.
pub fn energy_nu_zero(
    consts: &PhysicalConstants,
    a: f64,
    k: i32,
    branch: Branch,
    n_r: u32,
) -> Result<f64> {
    let limit = consts.charge_radius();
    if !(a < limit) {
        return Err(Error::MassParameterTooLarge { a, limit });
    }
    let deform = DeformationParams::new(0.0, a)?;
    let coup = derive_couplings(consts, &deform);
    let state = QuantumState::new(&coup, k, n_r, branch)?;
    let n2 = state.n * state.n;
    let PhysicalConstants { hbar, mass, e2, .. } = *consts;
    let mass_term = mass * e2 * a / (hbar * hbar * n2);
    Ok(consts.rest_energy() / (1.0 + coup.alpha * coup.alpha / n2)
        * (mass_term + math::sqrt(1.0 + coup.alpha_bar_sq / n2)))
}

/// `c → ∞` limit of `n = n_r + l* + 1` at fixed `ā`: `n_r + |k|` on the
/// upper branch, one more on the lower.
pub fn nonrelativistic_principal(k: i32, n_r: u32, branch: Branch) -> f64 {
    let base = f64::from(n_r) + f64::from(k.unsigned_abs());
    match branch {
        Branch::Plus => base,
        Branch::Minus => base + 1.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonRelativisticLevel {
    /// `E' = E − mc²`
    pub energy: f64,
    /// `e² > (ħ²ν/m)k² + e²ā`
    pub bounded: bool,
}

/// Nonrelativistic energy `E'` with `a = (e²/mc²)ā`.
pub fn energy_nonrelativistic(
    consts: &PhysicalConstants,
    nu: f64,
    abar: f64,
    k: i32,
    n: f64,
) -> NonRelativisticLevel {
    let PhysicalConstants { hbar, mass, e2, .. } = *consts;
    let hb2 = hbar * hbar;
    let k2 = f64::from(k) * f64::from(k);
    let n2 = n * n;
    let shift = hb2 * nu / (2.0 * mass) * k2;
    let screened = e2 - shift;
    let energy = -mass / (2.0 * hb2 * n2) * screened * screened - hb2 * nu * nu / (8.0 * mass) * n2
        + 0.5 * nu * (e2 + shift)
        + mass * e2 * e2 / (2.0 * hb2 * n2) * abar * (2.0 - abar);
    NonRelativisticLevel {
        energy,
        bounded: e2 > hb2 * nu / mass * k2 + e2 * abar,
    }
}

/// Nonrelativistic Coulomb levels with the same deformation but without
/// the spin-orbit deformation term (orbital number `l`).
pub fn energy_qt(consts: &PhysicalConstants, nu: f64, l: u32, n: f64) -> f64 {
    let PhysicalConstants { hbar, mass, e2, .. } = *consts;
    let hb2 = hbar * hbar;
    let lf = f64::from(l);
    let orbital = hb2 * nu / (2.0 * mass) * (lf * (lf + 1.0) + 1.0);
    let screened = e2 - orbital;
    let n2 = n * n;
    -mass / (2.0 * hb2 * n2) * screened * screened - hb2 * nu * nu / (8.0 * mass) * n2 + 0.5 * nu * (e2 + orbital)
}

/// Existence condition accompanying [`energy_qt`].
pub fn qt_bound(consts: &PhysicalConstants, nu: f64, l: u32) -> bool {
    let lf = f64::from(l);
    consts.e2
        > consts.hbar * consts.hbar * nu / (2.0 * consts.mass)
            * ((lf + 1.0) * (2.0 * lf + 1.0) + 1.0)
}

/// Remove the spin-orbit deformation interaction from [`energy_nonrelativistic`]
/// (`ā = 0`, `k² = (l + 1)²`): fold its `1/r` part into `e²` and subtract its
/// constant part. Reproduces [`energy_qt`].
pub fn qt_reconciliation(consts: &PhysicalConstants, nu: f64, l: u32, n: f64) -> f64 {
    let k = l as i32 + 1;
    let shift = spin_orbit_shift(consts, nu, k, l);
    // coulomb_like_coeff = ν(ŜL̂)/m, and the Coulomb charge absorbs exactly that.
    let shifted = PhysicalConstants { e2: consts.e2 + shift.coulomb_like_coeff, ..*consts };
    energy_nonrelativistic(&shifted, nu, 0.0, k, n).energy - shift.const_coeff
}

/// Coefficients of `ΔU = const + coulomb_like/r` with `(ŜL̂)` replaced by its
/// eigenvalue `ħ²[k² − l(l+1) − 1]/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinOrbitShift {
    pub const_coeff: f64,
    pub coulomb_like_coeff: f64,
}

pub fn spin_orbit_shift(consts: &PhysicalConstants, nu: f64, k: i32, l: u32) -> SpinOrbitShift {
    let lf = f64::from(l);
    let k2 = f64::from(k) * f64::from(k);
    let spin_orbit = consts.hbar * consts.hbar * (k2 - lf * (lf + 1.0) - 1.0) / 2.0;
    SpinOrbitShift {
        const_coeff: nu * nu / consts.mass * spin_orbit,
        coulomb_like_coeff: nu / consts.mass * spin_orbit,
    }
}

/// First-order `1/c²` correction split into its three parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectionBreakdown {
    /// Independent of `ν`; the Sommerfeld term at `ā = 0`.
    pub delta1: f64,
    /// Pure deformation term.
    pub delta2: f64,
    /// Cross term.
    pub delta3: f64,
    pub total: f64,
}

pub fn relativistic_correction(
    consts: &PhysicalConstants,
    nu: f64,
    abar: f64,
    k: i32,
    n: f64,
) -> CorrectionBreakdown {
    let PhysicalConstants { hbar, mass, c, e2 } = *consts;
    let alpha2 = consts.fine_structure() * consts.fine_structure();
    let hb2 = hbar * hbar;
    let k_abs = f64::from(k.unsigned_abs());
    let k2 = k_abs * k_abs;
    let n2 = n * n;
    let n4 = n2 * n2;

    let one_minus = 1.0 - abar;
    let delta1 = -mass * e2 * e2 * alpha2 / (2.0 * hb2 * n4)
        * one_minus
        * one_minus
        * one_minus
        * (n / k_abs * (1.0 + abar) - 0.75 * (1.0 + abar / 3.0));

    let compton = hbar * nu / (8.0 * mass * c);
    let delta2 = -compton * compton * hb2 * nu * nu * math::powi(n2 - k2, 4) / (2.0 * mass * n4);

    let abar2 = abar * abar;
    let nk = n2 + k2;
    let delta3 = nu * e2 * alpha2 / (2.0 * n4) * ((1.0 - abar2) * n * k_abs - k2 - n2 * abar2)
        + hb2 * nu * nu * alpha2 / (8.0 * mass * n4)
            * (nk * nk
                + (1.0 - abar2) * (2.0 * k2 * k2 - 1.5 * nk * nk + n / k_abs * (n4 - k2 * k2)));

    CorrectionBreakdown { delta1, delta2, delta3, total: delta1 + delta2 + delta3 }
}

/// Sommerfeld fine-structure term `−(me⁴α²/2ħ²n⁴)(n/|k| − 3/4)`.
pub fn sommerfeld_correction(consts: &PhysicalConstants, k: i32, n: f64) -> f64 {
    let alpha2 = consts.fine_structure() * consts.fine_structure();
    let n4 = n * n * n * n;
    -consts.mass * consts.e2 * consts.e2 * alpha2 / (2.0 * consts.hbar * consts.hbar * n4)
        * (n / f64::from(k.unsigned_abs()) - 0.75)
}

/// Mass potential `U₁(r) = mc²(f₁² − 1)/2` with `f₁ = 1 + a/r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassPotential {
    rest_energy: f64,
    a: f64,
}

pub fn mass_potential_u1(consts: &PhysicalConstants, deform: &DeformationParams) -> MassPotential {
    MassPotential { rest_energy: consts.rest_energy(), a: deform.a }
}

impl MassPotential {
    pub fn eval(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::DomainError { r });
        }
        // f₁² − 1 = (f₁ − 1)(f₁ + 1), without the cancellation
        let q = self.a / r;
        Ok(0.5 * self.rest_energy * q * (q + 2.0))
    }

    /// `mc²(2a/r + a²/r²)/2`
    pub fn eval_expanded(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::DomainError { r });
        }
        let q = self.a / r;
        Ok(0.5 * self.rest_energy * (2.0 * q + q * q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    fn setup(e2: f64, nu: f64, a: f64) -> (PhysicalConstants, DeformationParams) {
        (PhysicalConstants::natural(e2).unwrap(), DeformationParams::new(nu, a).unwrap())
    }

    fn state(c: &PhysicalConstants, d: &DeformationParams, k: i32, n_r: u32, b: Branch) -> QuantumState {
        QuantumState::resolve(c, d, k, n_r, b).unwrap()
    }

    #[test]
    fn eckart_level_examples() {
        let p = EckartParams { a_param: 1.0, b_param: 3.0, nu: 2.0 };
        let l0 = eckart_level(&p, 0);
        assert_eq!(l0.epsilon, -10.0);
        assert!(l0.exists());
        let l1 = eckart_level(&p, 1);
        assert_eq!(l1.epsilon, -6.25);
        // B = 3 ≤ (A + ν/2)² = 4: the formula value exists but the level does not.
        assert!(l1.eckart_condition);
        assert!(!l1.level_guard);
    }

    #[test]
    fn eckart_condition_requires_nonnegative_a() {
        let p = EckartParams { a_param: -0.1, b_param: 3.0, nu: 2.0 };
        assert!(!eckart_level(&p, 0).eckart_condition);
    }

    #[test]
    fn effective_params_undeformed_reduction() {
        let (c, d) = setup(0.5, 0.0, 0.0);
        let s = state(&c, &d, 2, 0, Branch::Plus);
        let e = 0.97;
        let eff = effective_params(e, &s, &c, &d);
        let alpha2 = 0.25;
        assert!(close(eff.lstar_product, 4.0 - s.lambda - alpha2, 1e-15));
        assert!(close(eff.e_star_sq, e * 0.5, 1e-15));
        assert!(close(eff.e_star, (e * e - 1.0) / 2.0, 1e-15));
    }

    #[test]
    fn effective_params_pinned() {
        // Independent high-precision evaluation of the starred quantities.
        let (c, d) = setup(0.5, 0.01, 0.02);
        let s = state(&c, &d, 1, 0, Branch::Plus);
        let eff = effective_params(0.9, &s, &c, &d);
        assert!(close(eff.lstar_product, -0.115_856_313_108_308_608_07, 1e-14));
        assert!(close(eff.e_star_sq, 0.424_331_281_565_541_543_04, 1e-14));
        assert!(close(eff.e_star, -0.095_05, 1e-14));
        let l = s.l_star;
        assert!((eff.lstar_product - l * (l + 1.0)).abs() < 1e-15);
    }

    #[test]
    fn eckart_mapping_pinned() {
        let (c, d) = setup(0.5, 0.01, 0.02);
        let s = state(&c, &d, 1, 0, Branch::Plus);
        let (p, eps) = eckart_mapping(&s, &c, &d, 0.9).unwrap();
        assert!(close(p.a_param, 0.004_331_281_565_541_543_040_4, 1e-14));
        assert!(close(p.b_param, 0.002_118_76, 1e-13));
        assert!(close(eps, -0.194_337_52, 1e-14));
        let eff = effective_params(0.9, &s, &c, &d);
        let lhs = p.a_param * (p.a_param - p.nu / 2.0);
        assert!((lhs - p.nu * p.nu * eff.lstar_product / 4.0).abs() < 1e-18);
    }

    #[test]
    fn eckart_mapping_ground_orbital() {
        let (c, d) = setup(0.0, 0.3, 0.0);
        let s = state(&c, &d, 1, 0, Branch::Plus);
        assert_eq!(s.l_star, 0.0);
        let (p, _) = eckart_mapping(&s, &c, &d, 1.0).unwrap();
        assert_eq!(p.a_param, 0.15);
    }

    #[test]
    fn eckart_mapping_needs_deformation() {
        let (c, d) = setup(0.5, 0.0, 0.0);
        let s = state(&c, &d, 1, 0, Branch::Plus);
        assert_eq!(eckart_mapping(&s, &c, &d, 0.9), Err(Error::DeformationRequired));
    }

    #[test]
    fn quadratic_free_particle_limit() {
        let (c, d) = setup(1e-12, 1e-12, 0.0);
        let s = state(&c, &d, 1, 0, Branch::Plus);
        let r = energy_quadratic_roots(&s, &c, &d).unwrap();
        assert!((r.low + 1.0).abs() < 1e-9 && (r.high - 1.0).abs() < 1e-9);
    }

    #[test]
    fn quadratic_dirac_coulomb_ground() {
        let (c, d) = setup(0.5, 0.0, 0.0);
        let s = state(&c, &d, 1, 0, Branch::Plus);
        let r = energy_quadratic_roots(&s, &c, &d).unwrap();
        assert!(close(r.high, 0.75f64.sqrt(), 1e-15));
        for e in [r.low, r.high] {
            assert!(quadratic_residual(e, &s, &c, &d).abs() <= 1e-10);
        }
    }

    #[test]
    fn exact_matches_nu_zero_for_tiny_nu() {
        let (c, d) = setup(0.5, 1e-8, 0.1);
        let s = state(&c, &d, 1, 0, Branch::Plus);
        let rec = energy_exact(&s, &c, &d).unwrap();
        let e0 = energy_nu_zero(&c, 0.1, 1, Branch::Plus, 0).unwrap();
        assert!((rec.e_closed - e0).abs() < 1e-6);
        assert!(close(e0, 0.912_653_256_146_668_03, 1e-14));
    }

    #[test]
    fn exact_pinned_and_consistent() {
        let (c, d) = setup(0.5, 0.01, 0.02);
        let s = state(&c, &d, 1, 0, Branch::Plus);
        let rec = energy_exact(&s, &c, &d).unwrap();
        // 40-digit root of the energy quadratic.
        assert!(close(rec.e_closed, 0.880_730_769_537_871_797_63, 1e-14));
        assert!(rec.quadratic_residual < 1e-12);
        assert_eq!(rec.matched_root, RootChoice::High);
        assert!(rec.bound_ok && rec.level_exists);
        // The printed variant misses the aν term and fails the relation.
        assert!(close(rec.e_printed, 0.880_903_969_928_283_752_54, 1e-13));
        assert!(rec.printed_residual > 1e-4);
    }

    #[test]
    fn exact_weak_coupling() {
        let (c, d) = setup(1e-6, 0.0, 0.0);
        let s = state(&c, &d, 1, 0, Branch::Plus);
        let rec = energy_exact(&s, &c, &d).unwrap();
        assert!((rec.e_closed - (1.0 - 5e-13)).abs() <= 1e-15);
        assert_eq!(rec.eckart_condition, None);
    }

    #[test]
    fn exact_reports_unbound_levels() {
        let (c, d) = setup(0.1, 0.05, 0.0);
        let s = state(&c, &d, 2, 0, Branch::Plus);
        let rec = energy_exact(&s, &c, &d).unwrap();
        assert!(!rec.bound_ok);
    }

    #[test]
    fn nu_zero_examples() {
        let c = PhysicalConstants::natural(0.5).unwrap();
        let e = energy_nu_zero(&c, 0.0, 1, Branch::Plus, 0).unwrap();
        assert!(close(e, (1.0f64 - 0.25).sqrt(), 1e-15));
        let c = PhysicalConstants::natural(1e-12).unwrap();
        assert!((energy_nu_zero(&c, 0.0, 1, Branch::Plus, 0).unwrap() - 1.0).abs() < 1e-15);
        let c = PhysicalConstants::natural(0.5).unwrap();
        assert!(matches!(
            energy_nu_zero(&c, 0.5, 1, Branch::Plus, 0),
            Err(Error::MassParameterTooLarge { .. })
        ));
    }

    #[test]
    fn nonrelativistic_examples() {
        let c = PhysicalConstants::natural(1.0).unwrap();
        assert_eq!(energy_nonrelativistic(&c, 0.0, 0.0, 1, 1.0).energy, -0.5);
        let lvl = energy_nonrelativistic(&c, 0.1, 0.0, 1, 1.0);
        assert!((lvl.energy + 0.4).abs() < 1e-15);
        assert!(lvl.bounded);
        let a2 = energy_nonrelativistic(&c, 0.1, 2.0, 1, 1.0);
        assert!((a2.energy - lvl.energy).abs() < 1e-15);
        assert!(!a2.bounded);
    }

    #[test]
    fn qt_examples() {
        let c = PhysicalConstants::natural(1.0).unwrap();
        assert_eq!(energy_qt(&c, 0.0, 2, 3.0), -1.0 / 18.0);
        assert!((energy_qt(&c, 0.1, 0, 1.0) + 0.4).abs() < 1e-15);
        assert!(qt_bound(&c, 0.1, 0));
        assert!(!qt_bound(&c, 0.9, 1));
        assert!((energy_qt(&c, 0.05, 1, 2.0) + 0.081_328_125).abs() < 1e-15);
    }

    #[test]
    fn qt_reconciliation_examples() {
        let c = PhysicalConstants::natural(1.0).unwrap();
        assert_eq!(qt_reconciliation(&c, 0.07, 0, 1.0), energy_nonrelativistic(&c, 0.07, 0.0, 1, 1.0).energy);
        let r = qt_reconciliation(&c, 0.05, 1, 2.0);
        let q = energy_qt(&c, 0.05, 1, 2.0);
        assert!((r - q).abs() <= 1e-12 * q.abs());
    }

    #[test]
    fn spin_orbit_examples() {
        let c = PhysicalConstants::natural(1.0).unwrap();
        let s = spin_orbit_shift(&c, 0.1, 1, 0);
        assert_eq!((s.const_coeff, s.coulomb_like_coeff), (0.0, 0.0));
        let s = spin_orbit_shift(&c, 0.1, 2, 1);
        assert!((s.const_coeff - 0.005).abs() < 1e-17);
        assert!((s.coulomb_like_coeff - 0.05).abs() < 1e-16);
    }

    #[test]
    fn correction_examples() {
        let c = PhysicalConstants::natural(0.1).unwrap();
        let corr = relativistic_correction(&c, 0.0, 0.0, 1, 1.0);
        assert_eq!(corr.delta2, 0.0);
        assert_eq!(corr.delta3, 0.0);
        assert!(close(corr.delta1, -1.25e-5, 1e-13));
        assert!(close(corr.delta1, sommerfeld_correction(&c, 1, 1.0), 1e-15));
        assert_eq!(corr.total, corr.delta1 + corr.delta2 + corr.delta3);

        let corr = relativistic_correction(&c, 0.0, 0.3, 2, 3.0);
        assert_eq!((corr.delta2, corr.delta3), (0.0, 0.0));
        let corr = relativistic_correction(&c, 0.2, 0.0, -3, 3.0);
        assert_eq!(corr.delta2, 0.0);
    }

    #[test]
    fn mass_potential_examples() {
        let c = PhysicalConstants::natural(0.5).unwrap();
        let u = mass_potential_u1(&c, &DeformationParams::undeformed());
        assert_eq!(u.eval(2.0).unwrap(), 0.0);
        assert_eq!(u.eval(0.0), Err(Error::DomainError { r: 0.0 }));

        let u = mass_potential_u1(&c, &DeformationParams::new(0.0, 0.37).unwrap());
        let mut r = 1e-3;
        while r < 1e3 {
            let (x, y) = (u.eval(r).unwrap(), u.eval_expanded(r).unwrap());
            assert!((x - y).abs() <= 1e-14 * y.abs());
            r *= 1.7;
        }
    }

    #[test]
    fn mass_potential_coulomb_limit() {
        // a = ā e²/mc²: U₁ → ā e²/r with an O(1/c²) residual.
        let (abar, e2, r) = (0.3, 1.0, 2.0);
        let resid = |c: f64| {
            let consts = PhysicalConstants::new(1.0, 1.0, c, e2).unwrap();
            let d = DeformationParams::from_abar(&consts, 0.0, abar).unwrap();
            mass_potential_u1(&consts, &d).eval(r).unwrap() - abar * e2 / r
        };
        let cs = [10.0, 100.0, 1000.0];
        let xs: std::vec::Vec<f64> = cs.iter().map(|c: &f64| c.ln()).collect();
        let ys: std::vec::Vec<f64> = cs.iter().map(|&c| resid(c).abs().ln()).collect();
        let slope = crate::fit::linear_slope(&xs, &ys);
        assert!((slope + 2.0).abs() < 1e-6, "slope {slope}");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn closed_form_solves_quadratic(
            e2 in 0.01f64..0.8, nu in 0.0f64..0.1, a in 0.0f64..0.05,
            k in 1i32..4, n_r in 0u32..4, minus in any::<bool>(),
        ) {
            let (c, d) = setup(e2, nu, a);
            let branch = if minus { Branch::Minus } else { Branch::Plus };
            let s = state(&c, &d, k, n_r, branch);
            let rec = energy_exact(&s, &c, &d).unwrap();
            prop_assert!(rec.quadratic_residual <= 1e-10);
            prop_assert_eq!(rec.matched_root, RootChoice::High);
            let roots = energy_quadratic_roots(&s, &c, &d).unwrap();
            prop_assert!((roots.high - rec.e_closed).abs() <= 1e-12);
        }

        #[test]
        fn printed_agrees_without_a_nu(
            e2 in 0.01f64..0.8, x in 0.0f64..0.1, k in 1i32..4, n_r in 0u32..4, deform_nu in any::<bool>(),
        ) {
            let (nu, a) = if deform_nu { (x, 0.0) } else { (0.0, x * 0.5) };
            let (c, d) = setup(e2, nu, a);
            let s = state(&c, &d, k, n_r, Branch::Plus);
            let rec = energy_exact(&s, &c, &d).unwrap();
            prop_assert!((rec.e_printed - rec.e_closed).abs() <= 1e-14);
        }

        #[test]
        fn lower_branch_shifts_radial_number(
            e2 in 0.01f64..0.8, nu in 0.0f64..0.1, a in 0.0f64..0.05, k in 1i32..4, n_r in 0u32..4,
        ) {
            let (c, d) = setup(e2, nu, a);
            let minus = energy_exact(&state(&c, &d, k, n_r, Branch::Minus), &c, &d).unwrap();
            let plus = energy_exact(&state(&c, &d, k, n_r + 1, Branch::Plus), &c, &d).unwrap();
            prop_assert!((minus.e_closed - plus.e_closed).abs() <= 1e-12 * plus.e_closed.abs());
        }

        #[test]
        fn reconciliation_matches_qt(nu in 0.0f64..0.1, l in 0u32..5, extra in 1u32..3) {
            let c = PhysicalConstants::natural(1.0).unwrap();
            let n = f64::from(l + extra);
            let q = energy_qt(&c, nu, l, n);
            // the three terms can nearly cancel; measure against the largest one's size
            let scale = q.abs().max(0.5 * nu * c.e2);
            prop_assert!((qt_reconciliation(&c, nu, l, n) - q).abs() <= 1e-12 * scale);
            if l == 0 {
                prop_assert_eq!(qt_reconciliation(&c, nu, 0, n), q);
            }
        }

        #[test]
        fn spin_orbit_ratio(nu in 1e-3f64..0.5, k in 1i32..5, l in 0u32..5) {
            let c = PhysicalConstants::natural(1.0).unwrap();
            let s = spin_orbit_shift(&c, nu, k, l);
            let lf = f64::from(l);
            let expect = f64::from(k * k) - lf * (lf + 1.0) - 1.0;
            prop_assert!((s.coulomb_like_coeff * 2.0 / nu - expect).abs() <= 1e-12 * (1.0 + expect.abs()));
        }
    }
}
