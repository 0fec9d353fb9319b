//! Energy root search `ε_numeric(E) = ε_target(E)`.
//!
//! `A` does not depend on `E`, so for a fixed grid the discrete operator is
//! affine in `B`: it is assembled once and only the eigenvalue is recomputed
//! per trial energy.
//!
//! With `l* < 0` the wavefunction behaves like `x^γ`, `γ = 2A/ν < 1`, and the
//! plain three-point scheme converges at order `2γ − 1` only. The default
//! [`Discretization::Regularized`] factors `χ = sinh(νx/2)^γ · u`, which
//! removes the `1/sinh²` term exactly and leaves
//! `−(pu')'/p + W u = εu` with `p = sinh^{2γ}(νx/2)`,
//! `W = −2B coth(νx/2) − (νγ/2)²`. Linear finite elements on the same uniform
//! grid then converge at order `h²` for every `γ > 0`.

use alloc::vec;
use alloc::vec::Vec;

use super::fd::fd_pencil;
use super::grid::{build_grid, coordinate_map, Direction, RadialGrid, XMaxPolicy};
use super::potential::PotentialSamples;
use super::tridiag::SymTridiagPencil;
use super::{count_nodes, EckartPotential, WavefunctionSamples};
use crate::closed_form::{eckart_level, eckart_mapping, energy_quadratic_roots, EckartParams};
use crate::error::{Error, Result};
use crate::math;
use crate::params::{Branch, DeformationParams, PhysicalConstants, QuantumState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Discretization {
    /// Factored weighted problem, linear finite elements.
    #[default]
    Regularized,
    /// Three-point second difference of `−χ'' + Vχ`.
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub grid_points: usize,
    pub x_max: XMaxPolicy,
    /// Relative width of the final energy bracket.
    pub outer_rtol: f64,
    /// Relative width of each eigenvalue bisection.
    pub eigen_tol: f64,
    /// One Richardson step against the grid with every other point.
    pub extrapolate: bool,
    pub scan_steps: usize,
    pub discretization: Discretization,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            grid_points: 4001,
            x_max: XMaxPolicy::default(),
            outer_rtol: 1e-10,
            eigen_tol: 1e-12,
            extrapolate: true,
            scan_steps: 64,
            discretization: Discretization::Regularized,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelfConsistentDiagnostics {
    /// `|g(E)|` at the returned energy.
    pub residual: f64,
    pub epsilon_numeric: f64,
    pub epsilon_target: f64,
    pub eckart: EckartParams,
    pub grid: RadialGrid,
    pub node_count: usize,
    pub bracket: (f64, f64),
    pub evaluations: usize,
    /// Per-level guard `B > (A + νn_r/2)²` at the returned energy.
    pub level_exists: bool,
}

/// Decay rate `B/N − N` of level `n_r`, `N = A + νn_r/2`. Nonpositive when
/// the level does not exist.
pub fn eckart_decay_rate(p: &EckartParams, n_r: u32) -> f64 {
    let scale = p.level_scale(n_r);
    p.b_param / scale - scale
}

const GAUSS_NODES: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329_0,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GAUSS_WEIGHTS: [f64; 4] = [
    0.362_683_783_378_362_0,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];
/// Geometric refinement of the first element towards the singular end.
const FIRST_ELEMENT_LEVELS: i32 = 40;

/// Tridiagonal pieces `(diag, off)`.
type Tri = (Vec<f64>, Vec<f64>);

/// Discrete operator `K0 + B·K1` with mass matrix `M`.
#[derive(Debug, Clone)]
struct AffineOperator {
    grid: RadialGrid,
    base: Tri,
    coulomb: Tri,
    mass: Option<Tri>,
    discretization: Discretization,
}

impl AffineOperator {
    fn new(a_param: f64, nu: f64, grid: RadialGrid, discretization: Discretization) -> Self {
        match discretization {
            Discretization::Plain => Self::plain(a_param, nu, grid),
            Discretization::Regularized => Self::regularized(a_param, nu, grid),
        }
    }

    fn plain(a_param: f64, nu: f64, grid: RadialGrid) -> Self {
        let with = |b: f64| {
            let p = EckartParams { a_param, b_param: b, nu };
            fd_pencil(&PotentialSamples::sample(&EckartPotential(p), grid))
        };
        let zero = with(0.0);
        let one = with(1.0);
        let coulomb = (
            one.k_diag.iter().zip(&zero.k_diag).map(|(x, y)| x - y).collect(),
            vec![0.0; zero.k_off.len()],
        );
        Self { grid, base: (zero.k_diag, zero.k_off), coulomb, mass: None, discretization: Discretization::Plain }
    }

    fn regularized(a_param: f64, nu: f64, grid: RadialGrid) -> Self {
        let gamma = 2.0 * a_param / nu;
        let half_nu = 0.5 * nu;
        let shift = (half_nu * gamma) * (half_nu * gamma);
        let log_weight = |t: f64| 2.0 * gamma * math::ln_sinh(half_nu * t);
        let n = grid.n_points();
        let unknowns = n - 1;
        let h = grid.spacing();

        // Symmetric diagonal scaling by sqrt(p(x_i)) keeps entries O(1).
        let mut log_scale: Vec<f64> = (0..unknowns).map(|i| log_weight(grid.x(i.max(1)))).collect();
        if unknowns > 1 {
            log_scale[0] = log_scale[1];
        }

        let mut base = (vec![0.0; unknowns], vec![0.0; unknowns - 1]);
        let mut coulomb = (vec![0.0; unknowns], vec![0.0; unknowns - 1]);
        let mut mass = (vec![0.0; unknowns], vec![0.0; unknowns - 1]);
        let inv_h2 = 1.0 / (h * h);

        let mut accumulate = |e: usize, lo: f64, hi: f64| {
            let (a, b) = (grid.x(e), grid.x(e + 1));
            let half = 0.5 * (hi - lo);
            let mid = 0.5 * (hi + lo);
            let right_free = e + 1 < unknowns;
            let ls_l = log_scale[e];
            let ls_r = if right_free { log_scale[e + 1] } else { 0.0 };
            for (node, weight) in GAUSS_NODES.iter().zip(GAUSS_WEIGHTS) {
                for t in [mid - half * node, mid + half * node] {
                    if !(t > 0.0) {
                        continue;
                    }
                    let w = weight * half;
                    let lp = log_weight(t);
                    let coth = math::coth(half_nu * t);
                    let (pl, pr) = ((b - t) / h, (t - a) / h);
                    let q_ll = w * math::exp(lp - ls_l);
                    base.0[e] += q_ll * (inv_h2 - shift * pl * pl);
                    coulomb.0[e] += q_ll * (-2.0 * coth * pl * pl);
                    mass.0[e] += q_ll * pl * pl;
                    if right_free {
                        let q_lr = w * math::exp(lp - 0.5 * (ls_l + ls_r));
                        let q_rr = w * math::exp(lp - ls_r);
                        base.1[e] += q_lr * (-inv_h2 - shift * pl * pr);
                        coulomb.1[e] += q_lr * (-2.0 * coth * pl * pr);
                        mass.1[e] += q_lr * pl * pr;
                        base.0[e + 1] += q_rr * (inv_h2 - shift * pr * pr);
                        coulomb.0[e + 1] += q_rr * (-2.0 * coth * pr * pr);
                        mass.0[e + 1] += q_rr * pr * pr;
                    }
                }
            }
        };

        let mut lo = 0.0;
        for j in (0..=FIRST_ELEMENT_LEVELS).rev() {
            let hi = h * math::powi(2.0, -j);
            accumulate(0, lo, hi);
            lo = hi;
        }
        for e in 1..n - 1 {
            accumulate(e, grid.x(e), grid.x(e + 1));
        }
        Self { grid, base, coulomb, mass: Some(mass), discretization: Discretization::Regularized }
    }

    fn pencil(&self, b_param: f64) -> SymTridiagPencil {
        let combine = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(u, v)| u + b_param * v).collect();
        SymTridiagPencil {
            k_diag: combine(&self.base.0, &self.coulomb.0),
            k_off: combine(&self.base.1, &self.coulomb.1),
            mass: self.mass.clone(),
        }
    }

    /// `χ` on the full grid from an eigenvector of [`Self::pencil`].
    fn chi(&self, vector: Vec<f64>) -> Vec<f64> {
        let mut chi = Vec::with_capacity(self.grid.n_points());
        match self.discretization {
            Discretization::Plain => {
                chi.push(0.0);
                chi.extend(vector);
            }
            Discretization::Regularized => {
                // scaled unknowns equal χ at every node but the first
                chi.push(0.0);
                chi.extend(vector.into_iter().skip(1));
            }
        }
        chi.push(0.0);
        chi
    }
}

/// Fine and (optionally) coarse operators for one state.
struct LevelSolver {
    fine: AffineOperator,
    coarse: Option<AffineOperator>,
    n_r: usize,
    eigen_tol: f64,
}

impl LevelSolver {
    fn new(a_param: f64, nu: f64, grid: RadialGrid, n_r: u32, opts: &SolverOptions) -> Result<Self> {
        let fine = AffineOperator::new(a_param, nu, grid, opts.discretization);
        let coarse = if opts.extrapolate {
            let n = grid.n_points();
            let coarse_points = (n - 1) / 2 + 1;
            if coarse_points < 3 + n_r as usize {
                return Err(Error::InvalidGrid("grid too small for extrapolation"));
            }
            Some(AffineOperator::new(a_param, nu, grid.with_points(coarse_points)?, opts.discretization))
        } else {
            None
        };
        if n_r as usize >= fine.base.0.len() {
            return Err(Error::InvalidGrid("grid too small for the requested level"));
        }
        Ok(Self { fine, coarse, n_r: n_r as usize, eigen_tol: opts.eigen_tol })
    }

    fn eigenvalue(&self, b_param: f64) -> Result<f64> {
        let fine = self.fine.pencil(b_param).eigenvalue(self.n_r, self.eigen_tol)?;
        match &self.coarse {
            None => Ok(fine),
            Some(op) => {
                let coarse = op.pencil(b_param).eigenvalue(self.n_r, self.eigen_tol)?;
                let ratio = op.grid.spacing() / self.fine.grid.spacing();
                Ok(fine + (fine - coarse) / (ratio * ratio - 1.0))
            }
        }
    }

    fn wavefunction(&self, b_param: f64) -> Result<WavefunctionSamples> {
        let pencil = self.fine.pencil(b_param);
        let value = pencil.eigenvalue(self.n_r, self.eigen_tol.min(1e-14))?;
        let vector = pencil.eigenvector(value)?;
        Ok(WavefunctionSamples::from_raw(&self.fine.grid, self.fine.chi(vector)))
    }
}

/// Level `n_r` of the Eckart potential on `grid` with the chosen
/// discretization (and Richardson step if enabled).
pub fn eigenvalue_at(p: &EckartParams, grid: RadialGrid, n_r: u32, opts: &SolverOptions) -> Result<f64> {
    if !(p.nu > 0.0) {
        return Err(Error::DeformationRequired);
    }
    LevelSolver::new(p.a_param, p.nu, grid, n_r, opts)?.eigenvalue(p.b_param)
}

/// Grid for `state` sized from the decay rate at the analytic energy.
fn solver_grid(
    state: &QuantumState,
    consts: &PhysicalConstants,
    deform: &DeformationParams,
    opts: &SolverOptions,
    e_ref: f64,
) -> Result<RadialGrid> {
    let (p, _) = eckart_mapping(state, consts, deform, e_ref)?;
    let kappa = eckart_decay_rate(&p, state.n_r);
    let scale = if kappa > 0.0 { -kappa * kappa } else { 0.0 };
    build_grid(scale, deform.nu, opts.grid_points, opts.x_max)
}

struct Solved {
    energy: f64,
    solver: LevelSolver,
    diagnostics: SelfConsistentDiagnostics,
}

fn solve(
    state: &QuantumState,
    consts: &PhysicalConstants,
    deform: &DeformationParams,
    opts: &SolverOptions,
) -> Result<Solved> {
    if !(deform.nu > 0.0) {
        return Err(Error::DeformationRequired);
    }
    if opts.scan_steps < 1 {
        return Err(Error::InvalidParameter { name: "scan_steps", value: 0.0 });
    }
    let e_high = energy_quadratic_roots(state, consts, deform)?.high;
    if !(e_high > 0.0) {
        return Err(Error::BracketingFailure("analytic energy is not positive"));
    }
    let grid = solver_grid(state, consts, deform, opts, e_high)?;
    let (p_ref, _) = eckart_mapping(state, consts, deform, e_high)?;
    let solver = LevelSolver::new(p_ref.a_param, deform.nu, grid, state.n_r, opts)?;

    let mut evaluations = 0;
    let mut g = |e: f64| -> Result<(f64, EckartParams, f64, f64)> {
        evaluations += 1;
        let (p, target) = eckart_mapping(state, consts, deform, e)?;
        let numeric = solver.eigenvalue(p.b_param)?;
        Ok((numeric - target, p, numeric, target))
    };

    // Scan (0, 1.5·E] for sign changes of g.
    let top = 1.5 * e_high;
    let steps = opts.scan_steps;
    let mut brackets: Vec<(f64, f64)> = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for j in 1..=steps {
        let e = top * j as f64 / steps as f64;
        let (value, ..) = g(e)?;
        if let Some((pe, pv)) = prev {
            if (pv <= 0.0) != (value <= 0.0) {
                brackets.push((pe, e));
            }
        }
        prev = Some((e, value));
    }
    let exists_at = |e: f64| -> bool {
        eckart_mapping(state, consts, deform, e)
            .map(|(p, _)| eckart_level(&p, state.n_r).level_guard)
            .unwrap_or(false)
    };
    let (mut lo, mut hi) = brackets
        .iter()
        .copied()
        .min_by(|a, b| {
            let key = |&(l, h): &(f64, f64)| {
                let mid = 0.5 * (l + h);
                (!exists_at(mid), math::abs(mid - e_high))
            };
            let (ka, kb) = (key(a), key(b));
            ka.0.cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
        })
        .ok_or(Error::BracketingFailure("g(E) has no sign change in (0, 1.5·E)"))?;
    let bracket = (lo, hi);

    let (mut g_lo, ..) = g(lo)?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= opts.outer_rtol * math::abs(mid) || mid <= lo || mid >= hi {
            break;
        }
        let (g_mid, ..) = g(mid)?;
        if (g_mid <= 0.0) == (g_lo <= 0.0) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    let energy = 0.5 * (lo + hi);
    let (residual, eckart, epsilon_numeric, epsilon_target) = g(energy)?;
    let wave = solver.wavefunction(eckart.b_param)?;
    let diagnostics = SelfConsistentDiagnostics {
        residual: math::abs(residual),
        epsilon_numeric,
        epsilon_target,
        eckart,
        grid,
        node_count: count_nodes(&wave.chi),
        bracket,
        evaluations,
        level_exists: eckart_level(&eckart, state.n_r).exists(),
    };
    Ok(Solved { energy, solver, diagnostics })
}

/// Energy at which the numerical level `n_r` of the mapped potential meets
/// its target `ε(E)`.
pub fn self_consistent_energy(
    state: &QuantumState,
    consts: &PhysicalConstants,
    deform: &DeformationParams,
    opts: &SolverOptions,
) -> Result<(f64, SelfConsistentDiagnostics)> {
    let solved = solve(state, consts, deform, opts)?;
    Ok((solved.energy, solved.diagnostics))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExportedWavefunction {
    pub energy: f64,
    pub k: i32,
    pub n_r: u32,
    pub branch: Branch,
    pub nu: f64,
    pub a: f64,
    pub samples: WavefunctionSamples,
    /// `r = (e^{νx} − 1)/ν` at every sample.
    pub r: Vec<f64>,
    pub diagnostics: SelfConsistentDiagnostics,
}

/// Self-consistent level together with its `χ` on the fine grid.
pub fn export_wavefunction(
    state: &QuantumState,
    consts: &PhysicalConstants,
    deform: &DeformationParams,
    opts: &SolverOptions,
) -> Result<ExportedWavefunction> {
    let solved = solve(state, consts, deform, opts)?;
    let samples = solved.solver.wavefunction(solved.diagnostics.eckart.b_param)?;
    let r = samples.x.iter().map(|&x| coordinate_map(x, deform.nu, Direction::XToR)).collect();
    Ok(ExportedWavefunction {
        energy: solved.energy,
        k: state.k,
        n_r: state.n_r,
        branch: state.branch,
        nu: deform.nu,
        a: deform.a,
        samples,
        r,
        diagnostics: solved.diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::energy_exact;
    use crate::radial::{fd_eigen, eckart_potential};

    fn opts() -> SolverOptions {
        SolverOptions::default()
    }

    fn eckart_exact(p: &EckartParams, n_r: u32) -> f64 {
        eckart_level(p, n_r).epsilon
    }

    #[test]
    fn plain_operator_matches_fd() {
        let p = EckartParams { a_param: 1.0, b_param: 3.0, nu: 2.0 };
        let grid = RadialGrid::new(20.0, 1001).unwrap();
        let o = SolverOptions { discretization: Discretization::Plain, extrapolate: false, ..opts() };
        let direct = fd_eigen(&eckart_potential(&p, grid), 1).unwrap()[0].value;
        let affine = eigenvalue_at(&p, grid, 0, &o).unwrap();
        assert!((direct - affine).abs() < 1e-10);
    }

    #[test]
    fn regularized_second_order_for_attractive_core() {
        let nu = 0.01;
        let ls: f64 = -0.134;
        let p = EckartParams { a_param: nu * (ls + 1.0) / 2.0, b_param: 0.25 * nu + nu * nu * ls * (ls + 1.0) / 4.0, nu };
        let exact = eckart_exact(&p, 0);
        let raw = SolverOptions { extrapolate: false, ..opts() };
        let ns = [501usize, 1001, 2001];
        let errs: Vec<f64> = ns
            .iter()
            .map(|&n| eigenvalue_at(&p, RadialGrid::new(60.0, n).unwrap(), 0, &raw).unwrap() - exact)
            .collect();
        let hs: Vec<f64> = ns.iter().map(|&n| 60.0 / (n - 1) as f64).collect();
        let slope = crate::fit::log_log_slope(&hs, &errs);
        assert!((slope - 2.0).abs() < 0.1, "slope {slope}, errs {errs:?}");

        let extrapolated = eigenvalue_at(&p, RadialGrid::new(60.0, 2001).unwrap(), 0, &opts()).unwrap();
        assert!((extrapolated - exact).abs() < 1e-7 * exact.abs(), "{extrapolated} vs {exact}, raw {errs:?}");
    }

    #[test]
    fn regularized_excited_level() {
        let nu = 0.01;
        let ls: f64 = 0.866;
        let p = EckartParams { a_param: nu * (ls + 1.0) / 2.0, b_param: 0.25 * nu + nu * nu * ls * (ls + 1.0) / 4.0, nu };
        let exact = eckart_exact(&p, 1);
        let v = eigenvalue_at(&p, RadialGrid::new(120.0, 4001).unwrap(), 1, &opts()).unwrap();
        assert!((v - exact).abs() < 1e-8 * exact.abs(), "{v} vs {exact}");
    }

    #[test]
    fn large_weight_exponent_does_not_overflow() {
        // νx_max/2 = 100 with γ ≈ 4: p spans e^800.
        let p = EckartParams { a_param: 4.0, b_param: 40.0, nu: 2.0 };
        let v = eigenvalue_at(&p, RadialGrid::new(100.0, 20001).unwrap(), 0, &opts()).unwrap();
        assert!((v - eckart_exact(&p, 0)).abs() < 1e-6 * v.abs(), "{v}");
    }

    #[test]
    fn self_consistent_matches_closed_form() {
        let consts = PhysicalConstants::natural(0.5).unwrap();
        let deform = DeformationParams::new(0.01, 0.02).unwrap();
        let state = QuantumState::resolve(&consts, &deform, 1, 0, Branch::Plus).unwrap();
        let (e, diag) = self_consistent_energy(&state, &consts, &deform, &opts()).unwrap();
        let exact = energy_exact(&state, &consts, &deform).unwrap().e_closed;
        assert!((e - exact).abs() < 1e-6 * exact, "{e} vs {exact}");
        assert_eq!(diag.node_count, 0);
        assert!(diag.level_exists);
        assert_eq!(diag.grid.n_points(), 4001);
    }

    #[test]
    fn self_consistent_residual_refines_at_h2() {
        let consts = PhysicalConstants::natural(0.5).unwrap();
        let deform = DeformationParams::new(0.01, 0.02).unwrap();
        let state = QuantumState::resolve(&consts, &deform, 1, 0, Branch::Plus).unwrap();
        let exact = energy_exact(&state, &consts, &deform).unwrap().e_closed;
        let (p, target) = eckart_mapping(&state, &consts, &deform, exact).unwrap();
        let base = solver_grid(&state, &consts, &deform, &opts(), exact).unwrap();
        let raw = SolverOptions { extrapolate: false, ..opts() };
        let ns = [1001usize, 2001, 4001];
        let gs: Vec<f64> = ns
            .iter()
            .map(|&n| eigenvalue_at(&p, base.with_points(n).unwrap(), 0, &raw).unwrap() - target)
            .collect();
        let hs: Vec<f64> = ns.iter().map(|&n| base.x_max() / (n - 1) as f64).collect();
        let slope = crate::fit::log_log_slope(&hs, &gs);
        assert!((slope - 2.0).abs() < 0.1, "{slope} {gs:?}");
    }

    #[test]
    fn exported_wavefunction() {
        let consts = PhysicalConstants::natural(0.5).unwrap();
        let deform = DeformationParams::new(0.02, 0.0).unwrap();
        let state = QuantumState::resolve(&consts, &deform, 1, 1, Branch::Plus).unwrap();
        let w = export_wavefunction(&state, &consts, &deform, &opts()).unwrap();
        assert_eq!(w.samples.node_count(), 1);
        assert!((w.samples.norm_sq() - 1.0).abs() < 1e-10);
        let peak = w.samples.chi.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let n = w.samples.chi.len();
        assert!(w.samples.chi[n - 1].abs() <= 1e-8 * peak);
        assert!(w.samples.chi[n - 2].abs() <= 1e-8 * peak);
        assert_eq!(w.samples.x[0], 0.0);
        for (x, r) in w.samples.x.iter().zip(&w.r) {
            let back = coordinate_map(*r, deform.nu, Direction::RToX);
            assert!((back - x).abs() <= 1e-12 * x.max(1.0));
        }
    }

    #[test]
    fn requires_deformation() {
        let consts = PhysicalConstants::natural(0.5).unwrap();
        let deform = DeformationParams::new(0.0, 0.0).unwrap();
        let state = QuantumState::resolve(&consts, &deform, 1, 0, Branch::Plus).unwrap();
        assert_eq!(
            self_consistent_energy(&state, &consts, &deform, &opts()).map(|r| r.0),
            Err(Error::DeformationRequired)
        );
    }
}
