use defdirac_core::radial::{export_wavefunction, ExportedWavefunction};
use defdirac_core::QuantumState;
use serde_json::json;

use super::spectrum::closed_record;
use crate::config::{Format, RunConfig};
use crate::error::{CliError, Result};
use crate::output::{format_float, json_bytes, Cell, Table};

/// First `k`, first branch and lowest `n_r` of the configured ranges.
pub fn selected_state(cfg: &RunConfig) -> Result<(i32, defdirac_core::Branch, u32)> {
    cfg.states()
        .into_iter()
        .next()
        .ok_or_else(|| CliError::config("wavefn needs a nonempty state selection (k list and n_r range)"))
}

pub fn export(cfg: &RunConfig) -> Result<ExportedWavefunction> {
    let consts = cfg.constants;
    let deform = cfg.deformation()?;
    let (k, branch, n_r) = selected_state(cfg)?;
    if !(deform.nu > 0.0) {
        return Err(CliError::config("wavefn solves the deformed problem and needs nu > 0"));
    }
    let rec = closed_record(&consts, &deform, k, branch, n_r)?;
    if !rec.is_bound_level() {
        return Err(CliError::Solver(format!(
            "no bound level for k = {k}, n_r = {n_r}, branch {branch} (bound_ok = {}, level_exists = {})",
            rec.bound_ok, rec.level_exists
        )));
    }
    let state = QuantumState::resolve(&consts, &deform, k, n_r, branch)?;
    Ok(export_wavefunction(&state, &consts, &deform, &cfg.solver)?)
}

pub fn render(wf: &ExportedWavefunction, format: Format) -> Result<Vec<u8>> {
    let s = &wf.samples;
    match format {
        Format::Csv => {
            let comments = vec![
                format!("energy={}", format_float(wf.energy)),
                format!("k={}", wf.k),
                format!("n_r={}", wf.n_r),
                format!("branch={}", wf.branch),
                format!("nu={}", format_float(wf.nu)),
                format!("a={}", format_float(wf.a)),
                format!("spacing={}", format_float(s.spacing)),
                format!("node_count={}", s.node_count()),
            ];
            let mut t = Table::new(["x", "r", "chi"]);
            for i in 0..s.x.len() {
                t.push(vec![Cell::Float(s.x[i]), Cell::Float(wf.r[i]), Cell::Float(s.chi[i])]);
            }
            t.to_csv(&comments)
        }
        Format::Json => {
            let mut t = Table::new(["x", "r", "chi"]);
            for i in 0..s.x.len() {
                t.push(vec![Cell::Float(s.x[i]), Cell::Float(wf.r[i]), Cell::Float(s.chi[i])]);
            }
            json_bytes(&json!({
                "energy": wf.energy,
                "k": wf.k,
                "n_r": wf.n_r,
                "branch": wf.branch.as_str(),
                "nu": wf.nu,
                "a": wf.a,
                "spacing": s.spacing,
                "node_count": s.node_count(),
                "samples": t.to_json_value(),
            }))
        }
    }
}

pub fn run(cfg: &RunConfig) -> Result<Vec<u8>> {
    render(&export(cfg)?, cfg.format)
}
