//! Run configuration: an optional JSON document overlaid by command-line flags.
//!
//! ```json
//! {
//!   "constants":   { "hbar": 1, "mass": 1, "c": 1, "e2": 0.5 },
//!   "deformation": { "nu": 0.02, "a": 0.01 },
//!   "quantum":     { "k": [1, -1, 2], "n_r": "0..3", "branch": "both" },
//!   "solver":      { "grid_points": 4001, "x_max": "auto", "tol": 1e-10, "numeric": true },
//!   "output":      { "format": "csv", "path": "spectrum.csv" }
//! }
//! ```
//!
//! `deformation` takes either `a` or `abar` (`a = ā e²/mc²`), not both.

use std::ops::Range;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use defdirac_core::radial::{SolverOptions, XMaxPolicy, KAPPA_MIN};
use defdirac_core::{Branch, DeformationParams, PhysicalConstants};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum BranchSelection {
    Plus,
    Minus,
    Both,
}

impl BranchSelection {
    /// Branches in output order, `+` before `−`.
    pub fn branches(self) -> &'static [Branch] {
        match self {
            BranchSelection::Plus => &[Branch::Plus],
            BranchSelection::Minus => &[Branch::Minus],
            BranchSelection::Both => &[Branch::Plus, Branch::Minus],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Flags shared by every command. Each one overrides the matching config field.
#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// JSON run configuration
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub e2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub nu: Option<f64>,
    /// Mass parameter a (length)
    #[arg(long, conflicts_with = "abar", allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Dimensionless mass parameter, a = abar e²/mc²
    #[arg(long, allow_negative_numbers = true)]
    pub abar: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub hbar: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mass: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
    /// Comma-separated Dirac quantum numbers
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub k: Option<Vec<i32>>,
    /// Radial quantum numbers: `a..b`, `a..=b` or a single integer
    #[arg(long, value_name = "RANGE")]
    pub nr: Option<String>,
    #[arg(long, value_enum)]
    pub branch: Option<BranchSelection>,
    #[arg(long)]
    pub grid_points: Option<usize>,
    /// `auto` or a fixed outer boundary in x
    #[arg(long, value_name = "auto|VALUE")]
    pub x_max: Option<String>,
    /// Relative tolerance of the self-consistent energy
    #[arg(long, allow_negative_numbers = true)]
    pub tol: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Also solve each bound level numerically
    #[arg(long)]
    pub numeric: bool,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub constants: FileConstants,
    #[serde(default)]
    pub deformation: FileDeformation,
    #[serde(default)]
    pub quantum: FileQuantum,
    #[serde(default)]
    pub solver: FileSolver,
    #[serde(default)]
    pub output: FileOutput,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConstants {
    pub hbar: Option<f64>,
    pub mass: Option<f64>,
    pub c: Option<f64>,
    pub e2: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileDeformation {
    pub nu: Option<f64>,
    pub a: Option<f64>,
    pub abar: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum RadialRange {
    Single(u32),
    Text(String),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileQuantum {
    pub k: Option<Vec<i32>>,
    pub n_r: Option<RadialRange>,
    pub branch: Option<BranchSelection>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum XMaxSetting {
    Value(f64),
    Text(String),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileSolver {
    pub grid_points: Option<usize>,
    pub x_max: Option<XMaxSetting>,
    pub tol: Option<f64>,
    pub numeric: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileOutput {
    pub format: Option<Format>,
    pub path: Option<PathBuf>,
}

/// How the position-dependent mass is specified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MassParameter {
    A(f64),
    Abar(f64),
}

impl MassParameter {
    pub fn deformation(self, consts: &PhysicalConstants, nu: f64) -> Result<DeformationParams> {
        Ok(match self {
            MassParameter::A(a) => DeformationParams::new(nu, a)?,
            MassParameter::Abar(abar) => DeformationParams::from_abar(consts, nu, abar)?,
        })
    }

    /// `ā` at the given constants.
    pub fn abar(self, consts: &PhysicalConstants) -> f64 {
        match self {
            MassParameter::A(a) => a / consts.charge_radius(),
            MassParameter::Abar(abar) => abar,
        }
    }
}

/// Validated configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub constants: PhysicalConstants,
    pub nu: f64,
    pub mass_parameter: MassParameter,
    /// Sorted ascending, without duplicates.
    pub k_values: Vec<i32>,
    pub n_r: Range<u32>,
    pub branch: BranchSelection,
    pub solver: SolverOptions,
    pub numeric: bool,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    /// Read `--config` if given, then apply flag overrides and validate.
    pub fn load(args: &ConfigArgs) -> Result<Self> {
        let file = match &args.config {
            Some(path) => read_config_file(path)?,
            None => FileConfig::default(),
        };
        Self::merge(file, args)
    }

    pub fn merge(file: FileConfig, args: &ConfigArgs) -> Result<Self> {
        let hbar = args.hbar.or(file.constants.hbar).unwrap_or(1.0);
        let mass = args.mass.or(file.constants.mass).unwrap_or(1.0);
        let c = args.c.or(file.constants.c).unwrap_or(1.0);
        let e2 = args
            .e2
            .or(file.constants.e2)
            .ok_or_else(|| CliError::config("e2 is required (flag --e2 or constants.e2)"))?;
        let constants = PhysicalConstants::new(hbar, mass, c, e2)?;

        let nu = args.nu.or(file.deformation.nu).unwrap_or(0.0);
        let mass_parameter = match (args.a, args.abar) {
            (Some(a), _) => MassParameter::A(a),
            (None, Some(abar)) => MassParameter::Abar(abar),
            (None, None) => match (file.deformation.a, file.deformation.abar) {
                (Some(_), Some(_)) => {
                    return Err(CliError::config("deformation: give either a or abar, not both"))
                }
                (Some(a), None) => MassParameter::A(a),
                (None, Some(abar)) => MassParameter::Abar(abar),
                (None, None) => MassParameter::A(0.0),
            },
        };
        mass_parameter.deformation(&constants, nu)?;

        let mut k_values = args.k.clone().or(file.quantum.k).unwrap_or_else(|| vec![1]);
        if let Some(&k) = k_values.iter().find(|&&k| k == 0) {
            return Err(CliError::config(format!("k = {k} is not a nonzero integer")));
        }
        k_values.sort_unstable();
        k_values.dedup();

        let n_r = match (&args.nr, file.quantum.n_r) {
            (Some(text), _) => parse_radial_range(text)?,
            (None, Some(RadialRange::Single(n))) => n..n + 1,
            (None, Some(RadialRange::Text(text))) => parse_radial_range(&text)?,
            (None, None) => 0..1,
        };
        let branch = args.branch.or(file.quantum.branch).unwrap_or(BranchSelection::Plus);

        let mut solver = SolverOptions::default();
        if let Some(n) = args.grid_points.or(file.solver.grid_points) {
            if n < 11 {
                return Err(CliError::config(format!("grid_points = {n} must be at least 11")));
            }
            solver.grid_points = n;
        }
        let x_max = match (&args.x_max, file.solver.x_max) {
            (Some(text), _) => Some(parse_x_max(text)?),
            (None, Some(XMaxSetting::Text(text))) => Some(parse_x_max(&text)?),
            (None, Some(XMaxSetting::Value(v))) => Some(fixed_x_max(v)?),
            (None, None) => None,
        };
        if let Some(policy) = x_max {
            solver.x_max = policy;
        }
        if let Some(tol) = args.tol.or(file.solver.tol) {
            if !(tol > 0.0 && tol < 1.0) {
                return Err(CliError::config(format!("tol = {tol} must lie in (0, 1)")));
            }
            solver.outer_rtol = tol;
        }
        let numeric = args.numeric || file.solver.numeric.unwrap_or(false);

        Ok(Self {
            constants,
            nu,
            mass_parameter,
            k_values,
            n_r,
            branch,
            solver,
            numeric,
            format: args.format.or(file.output.format).unwrap_or(Format::Csv),
            out: args.out.clone().or(file.output.path),
        })
    }

    pub fn deformation(&self) -> Result<DeformationParams> {
        self.mass_parameter.deformation(&self.constants, self.nu)
    }

    /// `(k, branch, n_r)` in output order: `k` ascending, `+` before `−`, `n_r` ascending.
    pub fn states(&self) -> Vec<(i32, Branch, u32)> {
        let mut out = Vec::new();
        for &k in &self.k_values {
            for &branch in self.branch.branches() {
                for n_r in self.n_r.clone() {
                    out.push((k, branch, n_r));
                }
            }
        }
        out
    }
}

pub fn read_config_file(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("reading config {}", path.display()), e))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::config(format!("config {}: {e}", path.display())))
}

/// `a..b` (half-open), `a..=b` (inclusive) or a single `n`.
pub fn parse_radial_range(text: &str) -> Result<Range<u32>> {
    let bad = || CliError::config(format!("n_r range `{text}` is not `a..b`, `a..=b` or an integer"));
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
    if let Some((lo, hi)) = text.split_once("..=") {
        let (lo, hi) = (num(lo)?, num(hi)?);
        return Ok(lo..hi.checked_add(1).ok_or_else(bad)?);
    }
    if let Some((lo, hi)) = text.split_once("..") {
        return Ok(num(lo)?..num(hi)?);
    }
    let n = num(text)?;
    Ok(n..n.checked_add(1).ok_or_else(bad)?)
}

pub fn parse_x_max(text: &str) -> Result<XMaxPolicy> {
    if text.trim().eq_ignore_ascii_case("auto") {
        return Ok(XMaxPolicy::Auto { kappa_min: KAPPA_MIN });
    }
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| CliError::config(format!("x_max `{text}` is neither `auto` nor a number")))?;
    fixed_x_max(v)
}

fn fixed_x_max(v: f64) -> Result<XMaxPolicy> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(CliError::config(format!("x_max = {v} must be positive")));
    }
    Ok(XMaxPolicy::Fixed(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args() -> ConfigArgs {
        ConfigArgs { e2: Some(0.5), ..Default::default() }
    }

    #[test]
    fn radial_ranges() {
        assert_eq!(parse_radial_range("0..3").unwrap(), 0..3);
        assert_eq!(parse_radial_range("1..=2").unwrap(), 1..3);
        assert_eq!(parse_radial_range("4").unwrap(), 4..5);
        assert!(parse_radial_range("0..0").unwrap().is_empty());
        assert!(parse_radial_range("a..b").is_err());
        assert!(parse_radial_range("-1").is_err());
    }

    #[test]
    fn x_max_policy() {
        assert!(matches!(parse_x_max("auto").unwrap(), XMaxPolicy::Auto { .. }));
        assert_eq!(parse_x_max("35").unwrap(), XMaxPolicy::Fixed(35.0));
        assert!(parse_x_max("-1").is_err());
        assert!(parse_x_max("far").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file: FileConfig = serde_json::from_str(
            r#"{"constants":{"e2":0.1},"deformation":{"nu":0.01,"abar":0.2},
                "quantum":{"k":[2,-1,2],"n_r":"0..=1","branch":"both"},
                "solver":{"x_max":40,"numeric":true},"output":{"format":"json"}}"#,
        )
        .unwrap();
        let cfg = RunConfig::merge(file, &ConfigArgs { nu: Some(0.03), ..args() }).unwrap();
        assert_eq!(cfg.constants.e2, 0.5);
        assert_eq!(cfg.nu, 0.03);
        assert_eq!(cfg.mass_parameter, MassParameter::Abar(0.2));
        assert_eq!(cfg.k_values, vec![-1, 2]);
        assert_eq!(cfg.n_r, 0..2);
        assert_eq!(cfg.solver.x_max, XMaxPolicy::Fixed(40.0));
        assert!(cfg.numeric);
        assert_eq!(cfg.format, Format::Json);
    }

    #[test]
    fn state_order() {
        let cfg = RunConfig::merge(
            FileConfig::default(),
            &ConfigArgs { k: Some(vec![2, 1]), nr: Some("0..2".into()), branch: Some(BranchSelection::Both), ..args() },
        )
        .unwrap();
        let s = cfg.states();
        assert_eq!(s[0], (1, Branch::Plus, 0));
        assert_eq!(s[1], (1, Branch::Plus, 1));
        assert_eq!(s[2], (1, Branch::Minus, 0));
        assert_eq!(s[4], (2, Branch::Plus, 0));
        assert_eq!(s.len(), 8);
    }

    #[test]
    fn validation_errors() {
        let none = FileConfig::default();
        assert!(RunConfig::merge(FileConfig::default(), &ConfigArgs::default()).is_err());
        assert!(RunConfig::merge(none, &ConfigArgs { k: Some(vec![0]), ..args() }).is_err());
        assert!(RunConfig::merge(FileConfig::default(), &ConfigArgs { nu: Some(-1.0), ..args() }).is_err());
        assert!(RunConfig::merge(FileConfig::default(), &ConfigArgs { grid_points: Some(3), ..args() }).is_err());
        let both: FileConfig = serde_json::from_str(r#"{"deformation":{"a":0.1,"abar":0.1}}"#).unwrap();
        assert!(RunConfig::merge(both, &args()).is_err());
        assert!(serde_json::from_str::<FileConfig>(r#"{"constant":{}}"#).is_err());
    }
}
