use defdirac_core::closed_form::{energy_exact, SpectrumRecord};
use defdirac_core::radial::{self_consistent_energy, SolverOptions};
use defdirac_core::{Branch, DeformationParams, PhysicalConstants, QuantumState};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::Result;
use crate::output::{Cell, Table};

pub const SPECTRUM_COLUMNS: [&str; 15] = [
    "k",
    "n_r",
    "branch",
    "lambda",
    "l_star",
    "n",
    "e_closed",
    "e_printed",
    "e_numeric",
    "quadratic_residual",
    "printed_residual",
    "bound_ok",
    "eckart_condition",
    "level_exists",
    "node_count",
];

pub fn record_cells(rec: &SpectrumRecord) -> Vec<Cell> {
    vec![
        rec.k.into(),
        rec.n_r.into(),
        rec.branch.as_str().into(),
        rec.lambda.into(),
        rec.l_star.into(),
        rec.n.into(),
        rec.e_closed.into(),
        rec.e_printed.into(),
        Cell::opt_float(rec.e_numeric),
        rec.quadratic_residual.into(),
        rec.printed_residual.into(),
        rec.bound_ok.into(),
        Cell::opt_bool(rec.eckart_condition),
        rec.level_exists.into(),
        Cell::opt_int(rec.node_count.map(i64::from)),
    ]
}

/// Closed-form record of one state; admissibility errors propagate.
pub fn closed_record(
    consts: &PhysicalConstants,
    deform: &DeformationParams,
    k: i32,
    branch: Branch,
    n_r: u32,
) -> defdirac_core::Result<SpectrumRecord> {
    let state = QuantumState::resolve(consts, deform, k, n_r, branch)?;
    energy_exact(&state, consts, deform)
}

/// Fill `e_numeric` and `node_count` when the level exists and `ν > 0`.
pub fn attach_numeric(
    rec: &mut SpectrumRecord,
    consts: &PhysicalConstants,
    deform: &DeformationParams,
    opts: &SolverOptions,
) -> Result<()> {
    if !(deform.nu > 0.0 && rec.is_bound_level()) {
        return Ok(());
    }
    let state = QuantumState::resolve(consts, deform, rec.k, rec.n_r, rec.branch)?;
    let (energy, diag) = self_consistent_energy(&state, consts, deform, opts)?;
    rec.e_numeric = Some(energy);
    rec.node_count = Some(diag.node_count as u32);
    Ok(())
}

/// Records in output order. Every state is resolved before any numerical
/// solve, so an inadmissible state fails fast.
pub fn spectrum_records(cfg: &RunConfig, pool: &rayon::ThreadPool) -> Result<Vec<SpectrumRecord>> {
    let consts = cfg.constants;
    let deform = cfg.deformation()?;
    let mut records = cfg
        .states()
        .into_iter()
        .map(|(k, branch, n_r)| closed_record(&consts, &deform, k, branch, n_r))
        .collect::<defdirac_core::Result<Vec<_>>>()?;
    if cfg.numeric {
        let results: Vec<Result<()>> = pool.install(|| {
            records.par_iter_mut().map(|rec| attach_numeric(rec, &consts, &deform, &cfg.solver)).collect()
        });
        results.into_iter().collect::<Result<()>>()?;
    }
    Ok(records)
}

pub fn spectrum_table(records: &[SpectrumRecord]) -> Table {
    let mut table = Table::new(SPECTRUM_COLUMNS);
    for rec in records {
        table.push(record_cells(rec));
    }
    table
}

pub fn run(cfg: &RunConfig, pool: &rayon::ThreadPool) -> Result<Vec<u8>> {
    spectrum_table(&spectrum_records(cfg, pool)?).render(cfg.format)
}
