//! Exact levels against their limiting formulas.

use clap::ValueEnum;
use defdirac_core::closed_form::{
    energy_exact, energy_nonrelativistic, energy_nu_zero, energy_qt, nonrelativistic_principal, qt_bound,
    qt_reconciliation, relativistic_correction, sommerfeld_correction, CorrectionBreakdown,
};
use defdirac_core::fit::log_log_slope;
use defdirac_core::{Branch, DeformationParams, PhysicalConstants, QuantumState};

use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::output::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LimitMode {
    /// ν → 0 at fixed a
    Nu0,
    /// c → ∞ at fixed ā
    Nonrel,
    /// first-order corrections against the Sommerfeld term
    Sommerfeld,
    /// spin-orbit-free nonrelativistic levels
    Qt,
}

pub const DEFAULT_NU_SEQUENCE: [f64; 3] = [1e-4, 1e-5, 1e-6];
pub const DEFAULT_C_SEQUENCE: [f64; 4] = [10.0, 20.0, 40.0, 80.0];
pub const QT_MAX_L: u32 = 4;
pub const QT_MAX_N: u32 = 6;

#[derive(Debug, Clone, PartialEq)]
pub struct NuZeroStudy {
    pub nus: Vec<f64>,
    pub exact: Vec<f64>,
    pub limit: f64,
    /// `|E(ν) − E(0)|/mc²`
    pub residuals: Vec<f64>,
    pub slope: f64,
    /// Linear extrapolation to `ν = 0` from the two smallest `ν`.
    pub extrapolated: f64,
    pub extrapolated_residual: f64,
}

pub fn nu_zero_study(
    consts: &PhysicalConstants,
    a: f64,
    k: i32,
    branch: Branch,
    n_r: u32,
    nus: &[f64],
) -> defdirac_core::Result<NuZeroStudy> {
    let mc2 = consts.rest_energy();
    let limit = energy_nu_zero(consts, a, k, branch, n_r)?;
    let mut exact = Vec::with_capacity(nus.len());
    for &nu in nus {
        let deform = DeformationParams::new(nu, a)?;
        let state = QuantumState::resolve(consts, &deform, k, n_r, branch)?;
        exact.push(energy_exact(&state, consts, &deform)?.e_closed);
    }
    let residuals: Vec<f64> = exact.iter().map(|e| (e - limit).abs() / mc2).collect();
    let slope = log_log_slope(nus, &residuals);

    let mut order: Vec<usize> = (0..nus.len()).collect();
    order.sort_by(|&i, &j| nus[i].total_cmp(&nus[j]));
    let extrapolated = match order[..] {
        [i, j, ..] => (nus[j] * exact[i] - nus[i] * exact[j]) / (nus[j] - nus[i]),
        [i] => exact[i],
        [] => f64::NAN,
    };
    Ok(NuZeroStudy {
        nus: nus.to_vec(),
        exact,
        limit,
        residuals,
        slope,
        extrapolated,
        extrapolated_residual: (extrapolated - limit).abs() / mc2,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonRelStudy {
    pub cs: Vec<f64>,
    /// `E − mc²` of the exact level.
    pub binding: Vec<f64>,
    pub nonrel: Vec<f64>,
    pub corrections: Vec<CorrectionBreakdown>,
    pub residuals: Vec<f64>,
    pub residuals_corrected: Vec<f64>,
    pub slope: f64,
    pub slope_corrected: f64,
    /// Existence condition of the nonrelativistic level.
    pub bounded: bool,
    /// `c²·(E − mc² − E')` extrapolated to `c → ∞` from the two largest `c`.
    pub coefficient_extracted: f64,
    /// `c²·Δ` of the first-order correction at the largest `c`.
    pub coefficient_formula: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingCase {
    pub hbar: f64,
    pub mass: f64,
    pub e2: f64,
    pub nu: f64,
    pub abar: f64,
    pub k: i32,
    pub branch: Branch,
    pub n_r: u32,
}

/// Exact levels at increasing `c` with `ā` held fixed, so `a = ā e²/mc²` shrinks.
pub fn nonrel_study(case: &ScalingCase, cs: &[f64]) -> defdirac_core::Result<NonRelStudy> {
    let n0 = nonrelativistic_principal(case.k, case.n_r, case.branch);
    let mut out = NonRelStudy {
        cs: cs.to_vec(),
        binding: Vec::new(),
        nonrel: Vec::new(),
        corrections: Vec::new(),
        residuals: Vec::new(),
        residuals_corrected: Vec::new(),
        slope: f64::NAN,
        slope_corrected: f64::NAN,
        bounded: true,
        coefficient_extracted: f64::NAN,
        coefficient_formula: f64::NAN,
    };
    for &c in cs {
        let consts = PhysicalConstants::new(case.hbar, case.mass, c, case.e2)?;
        let deform = DeformationParams::from_abar(&consts, case.nu, case.abar)?;
        let state = QuantumState::resolve(&consts, &deform, case.k, case.n_r, case.branch)?;
        let binding = energy_exact(&state, &consts, &deform)?.e_closed - consts.rest_energy();
        let nr = energy_nonrelativistic(&consts, case.nu, case.abar, case.k, n0);
        let corr = relativistic_correction(&consts, case.nu, case.abar, case.k, n0);
        out.bounded &= nr.bounded;
        out.residuals.push((binding - nr.energy).abs());
        out.residuals_corrected.push((binding - nr.energy - corr.total).abs());
        out.binding.push(binding);
        out.nonrel.push(nr.energy);
        out.corrections.push(corr);
    }
    out.slope = log_log_slope(cs, &out.residuals);
    out.slope_corrected = log_log_slope(cs, &out.residuals_corrected);

    let mut order: Vec<usize> = (0..cs.len()).collect();
    order.sort_by(|&i, &j| cs[i].total_cmp(&cs[j]));
    if let [.., i, j] = order[..] {
        let scaled = |m: usize| cs[m] * cs[m] * (out.binding[m] - out.nonrel[m]);
        let (ci2, cj2) = (cs[i] * cs[i], cs[j] * cs[j]);
        out.coefficient_extracted = (cj2 * scaled(j) - ci2 * scaled(i)) / (cj2 - ci2);
        out.coefficient_formula = cj2 * out.corrections[j].total;
    }
    Ok(out)
}

fn parse_sequence(values: &Option<Vec<f64>>, default: &[f64], name: &str) -> Result<Vec<f64>> {
    let seq = values.clone().unwrap_or_else(|| default.to_vec());
    if seq.len() < 2 || seq.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(CliError::config(format!("{name} needs at least two positive values")));
    }
    Ok(seq)
}

fn state_cells(k: i32, n_r: u32, branch: Branch) -> [Cell; 3] {
    [k.into(), n_r.into(), branch.as_str().into()]
}

fn nu0_table(cfg: &RunConfig, nus: &[f64]) -> Result<Table> {
    let a = cfg.deformation()?.a;
    let mut t = Table::new([
        "k",
        "n_r",
        "branch",
        "nu",
        "e_exact",
        "e_nu_zero",
        "residual",
        "slope",
        "e_extrapolated",
        "extrapolated_residual",
    ]);
    for (k, branch, n_r) in cfg.states() {
        let s = nu_zero_study(&cfg.constants, a, k, branch, n_r, nus)?;
        for i in 0..nus.len() {
            let mut row = state_cells(k, n_r, branch).to_vec();
            row.extend([
                s.nus[i].into(),
                s.exact[i].into(),
                s.limit.into(),
                s.residuals[i].into(),
                s.slope.into(),
                s.extrapolated.into(),
                s.extrapolated_residual.into(),
            ]);
            t.push(row);
        }
    }
    Ok(t)
}

fn scaling_case(cfg: &RunConfig, k: i32, branch: Branch, n_r: u32) -> Result<ScalingCase> {
    if !(cfg.constants.e2 > 0.0) {
        return Err(CliError::config("c-scaling studies hold ā fixed and need e2 > 0"));
    }
    Ok(ScalingCase {
        hbar: cfg.constants.hbar,
        mass: cfg.constants.mass,
        e2: cfg.constants.e2,
        nu: cfg.nu,
        abar: cfg.mass_parameter.abar(&cfg.constants),
        k,
        branch,
        n_r,
    })
}

fn nonrel_table(cfg: &RunConfig, cs: &[f64]) -> Result<Table> {
    let mut t = Table::new([
        "k",
        "n_r",
        "branch",
        "c",
        "abar",
        "e_exact_minus_rest",
        "e_nonrel",
        "correction",
        "residual",
        "residual_corrected",
        "slope",
        "slope_corrected",
        "nonrel_bounded",
    ]);
    for (k, branch, n_r) in cfg.states() {
        let case = scaling_case(cfg, k, branch, n_r)?;
        let s = nonrel_study(&case, cs)?;
        for (i, &c) in cs.iter().enumerate() {
            let mut row = state_cells(k, n_r, branch).to_vec();
            row.extend([
                c.into(),
                case.abar.into(),
                s.binding[i].into(),
                s.nonrel[i].into(),
                s.corrections[i].total.into(),
                s.residuals[i].into(),
                s.residuals_corrected[i].into(),
                s.slope.into(),
                s.slope_corrected.into(),
                s.bounded.into(),
            ]);
            t.push(row);
        }
    }
    Ok(t)
}

fn sommerfeld_table(cfg: &RunConfig, cs: &[f64]) -> Result<Table> {
    let mut t = Table::new([
        "k",
        "n_r",
        "branch",
        "n",
        "delta1",
        "delta2",
        "delta3",
        "total",
        "sommerfeld",
        "delta1_equals_sommerfeld",
        "coefficient_extracted",
        "coefficient_formula",
        "relative_difference",
    ]);
    let abar = cfg.mass_parameter.abar(&cfg.constants);
    for (k, branch, n_r) in cfg.states() {
        let n = nonrelativistic_principal(k, n_r, branch);
        let corr = relativistic_correction(&cfg.constants, cfg.nu, abar, k, n);
        let sommerfeld = sommerfeld_correction(&cfg.constants, k, n);
        let s = nonrel_study(&scaling_case(cfg, k, branch, n_r)?, cs)?;
        let rel = (s.coefficient_extracted - s.coefficient_formula).abs() / s.coefficient_formula.abs();
        let mut row = state_cells(k, n_r, branch).to_vec();
        row.extend([
            n.into(),
            corr.delta1.into(),
            corr.delta2.into(),
            corr.delta3.into(),
            corr.total.into(),
            sommerfeld.into(),
            (corr.delta1 == sommerfeld).into(),
            s.coefficient_extracted.into(),
            s.coefficient_formula.into(),
            rel.into(),
        ]);
        t.push(row);
    }
    Ok(t)
}

fn qt_table(cfg: &RunConfig) -> Table {
    let mut t = Table::new(["l", "n", "nu", "e_qt", "e_reconciled", "relative_difference", "identical", "qt_bound"]);
    for l in 0..=QT_MAX_L {
        for n in l + 1..=QT_MAX_N {
            let nf = f64::from(n);
            let qt = energy_qt(&cfg.constants, cfg.nu, l, nf);
            let rec = qt_reconciliation(&cfg.constants, cfg.nu, l, nf);
            t.push(vec![
                l.into(),
                n.into(),
                cfg.nu.into(),
                qt.into(),
                rec.into(),
                ((rec - qt).abs() / qt.abs()).into(),
                (rec == qt).into(),
                qt_bound(&cfg.constants, cfg.nu, l).into(),
            ]);
        }
    }
    t
}

pub fn limits_table(
    cfg: &RunConfig,
    mode: LimitMode,
    nu_list: &Option<Vec<f64>>,
    c_list: &Option<Vec<f64>>,
) -> Result<Table> {
    match mode {
        LimitMode::Nu0 => nu0_table(cfg, &parse_sequence(nu_list, &DEFAULT_NU_SEQUENCE, "--nu-list")?),
        LimitMode::Nonrel => nonrel_table(cfg, &parse_sequence(c_list, &DEFAULT_C_SEQUENCE, "--c-list")?),
        LimitMode::Sommerfeld => sommerfeld_table(cfg, &parse_sequence(c_list, &DEFAULT_C_SEQUENCE, "--c-list")?),
        LimitMode::Qt => Ok(qt_table(cfg)),
    }
}
