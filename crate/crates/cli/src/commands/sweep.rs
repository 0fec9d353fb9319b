use clap::ValueEnum;
use defdirac_core::closed_form::SpectrumRecord;
use defdirac_core::{Branch, DeformationParams, Error as CoreError, PhysicalConstants};
use rayon::prelude::*;

use super::spectrum::{attach_numeric, closed_record, record_cells, SPECTRUM_COLUMNS};
use crate::config::{MassParameter, RunConfig};
use crate::error::{CliError, Result};
use crate::output::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    Nu,
    A,
    E2,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Nu => "nu",
            SweepParam::A => "a",
            SweepParam::E2 => "e2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub from: f64,
    pub to: f64,
    /// Number of sweep points, endpoints included.
    pub steps: usize,
}

impl SweepSpec {
    pub fn values(&self) -> Result<Vec<f64>> {
        if !(self.from.is_finite() && self.to.is_finite()) || self.from > self.to {
            return Err(CliError::config(format!("sweep needs finite from ≤ to, got {} > {}", self.from, self.to)));
        }
        if self.steps == 0 {
            return Err(CliError::config("sweep needs steps ≥ 1"));
        }
        if self.steps == 1 {
            return Ok(vec![self.from]);
        }
        let last = (self.steps - 1) as f64;
        Ok((0..self.steps)
            .map(|j| if j + 1 == self.steps { self.to } else { self.from + (self.to - self.from) * (j as f64 / last) })
            .collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointStatus {
    Bound,
    /// The bound-state condition fails.
    Unbound,
    /// Bound-state condition holds but the level is above the existence guard.
    NoLevel,
    Supercritical,
    /// Any other admissibility failure (complex roots, `n ≤ 0`, `a ≥ e²/mc²`).
    Inadmissible,
}

impl PointStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            PointStatus::Bound => "bound",
            PointStatus::Unbound => "unbound",
            PointStatus::NoLevel => "no_level",
            PointStatus::Supercritical => "supercritical",
            PointStatus::Inadmissible => "inadmissible",
        }
    }
}

struct Row {
    value: f64,
    k: i32,
    branch: Branch,
    n_r: u32,
    status: PointStatus,
    record: Option<SpectrumRecord>,
    consts: PhysicalConstants,
    deform: DeformationParams,
}

fn point_params(cfg: &RunConfig, param: SweepParam, value: f64) -> Result<(PhysicalConstants, DeformationParams)> {
    let mut consts = cfg.constants;
    let mut nu = cfg.nu;
    let mut mass = cfg.mass_parameter;
    match param {
        SweepParam::Nu => nu = value,
        SweepParam::A => mass = MassParameter::A(value),
        SweepParam::E2 => {
            consts = PhysicalConstants::new(consts.hbar, consts.mass, consts.c, value)?;
        }
    }
    Ok((consts, mass.deformation(&consts, nu)?))
}

pub fn sweep_table(cfg: &RunConfig, spec: &SweepSpec, pool: &rayon::ThreadPool) -> Result<Table> {
    let mut rows = Vec::new();
    for value in spec.values()? {
        let (consts, deform) = point_params(cfg, spec.param, value)?;
        for (k, branch, n_r) in cfg.states() {
            let (status, record) = match closed_record(&consts, &deform, k, branch, n_r) {
                Ok(rec) if !rec.bound_ok => (PointStatus::Unbound, Some(rec)),
                Ok(rec) if !rec.level_exists => (PointStatus::NoLevel, Some(rec)),
                Ok(rec) => (PointStatus::Bound, Some(rec)),
                Err(CoreError::SupercriticalCoupling { .. }) => (PointStatus::Supercritical, None),
                Err(e) => match CliError::from(e) {
                    CliError::Admissibility(_) => (PointStatus::Inadmissible, None),
                    other => return Err(other),
                },
            };
            rows.push(Row { value, k, branch, n_r, status, record, consts, deform });
        }
    }
    if cfg.numeric {
        let results: Vec<Result<()>> = pool.install(|| {
            rows.par_iter_mut()
                .filter_map(|row| {
                    let (consts, deform) = (row.consts, row.deform);
                    row.record.as_mut().map(|rec| attach_numeric(rec, &consts, &deform, &cfg.solver))
                })
                .collect()
        });
        results.into_iter().collect::<Result<()>>()?;
    }

    let mut table = Table::new([spec.param.name(), "status"].into_iter().chain(SPECTRUM_COLUMNS));
    for row in rows {
        let mut cells = vec![Cell::Float(row.value), row.status.as_str().into()];
        match &row.record {
            Some(rec) => cells.extend(record_cells(rec)),
            None => {
                cells.extend([row.k.into(), row.n_r.into(), row.branch.as_str().into()]);
                cells.extend(std::iter::repeat(Cell::Empty).take(SPECTRUM_COLUMNS.len() - 3));
            }
        }
        table.push(cells);
    }
    Ok(table)
}

pub fn run(cfg: &RunConfig, spec: &SweepSpec, pool: &rayon::ThreadPool) -> Result<Vec<u8>> {
    sweep_table(cfg, spec, pool)?.render(cfg.format)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_values_include_endpoints() {
        let spec = SweepSpec { param: SweepParam::Nu, from: 0.0, to: 0.1, steps: 3 };
        assert_eq!(spec.values().unwrap(), vec![0.0, 0.05, 0.1]);
        let single = SweepSpec { steps: 1, ..spec };
        assert_eq!(single.values().unwrap(), vec![0.0]);
        assert!(SweepSpec { steps: 0, ..spec }.values().is_err());
        assert!(SweepSpec { from: 1.0, ..spec }.values().is_err());
    }
}
