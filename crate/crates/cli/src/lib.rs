//! Command-line front end for `defdirac-core`: spectrum tables, verification
//! suites, limit studies, wavefunction export and parameter sweeps.
//!
//! Exit codes: 0 success, 1 configuration or usage error, 2 inadmissible
//! parameters in the requested range, 3 solver failure, 4 a verification
//! check failed.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod verify;

use std::ffi::OsString;

use clap::{CommandFactory, Parser, Subcommand};

use crate::commands::limits::LimitMode;
use crate::commands::sweep::{SweepParam, SweepSpec};
use crate::config::{ConfigArgs, RunConfig};
pub use crate::error::{CliError, Result};
use crate::verify::Suite;

#[derive(Debug, Parser)]
#[command(name = "defdirac", version, about = "Dirac-Kepler spectra with deformed algebra and position-dependent mass")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form (and optionally numerical) levels for every configured state
    Spectrum {
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Run a verification suite and report every check
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Compare exact levels with a limiting formula
    Limits {
        #[arg(long, value_enum)]
        mode: LimitMode,
        /// Comma-separated ν values for `nu0`
        #[arg(long, value_delimiter = ',')]
        nu_list: Option<Vec<f64>>,
        /// Comma-separated c values for `nonrel` and `sommerfeld`
        #[arg(long, value_delimiter = ',')]
        c_list: Option<Vec<f64>>,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Export the normalized radial function of the first selected state
    Wavefn {
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Spectrum over a range of one parameter
    Sweep {
        #[arg(long, value_enum)]
        param: SweepParam,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[command(flatten)]
        config: ConfigArgs,
    },
}

/// The verify command reads no physics input; `--e2` only has to parse.
fn verify_config(args: &ConfigArgs) -> Result<RunConfig> {
    let mut args = args.clone();
    if args.e2.is_none() && args.config.is_none() {
        args.e2 = Some(1.0);
    }
    RunConfig::load(&args)
}

pub fn execute(cli: &Cli) -> Result<()> {
    let pool = commands::thread_pool()?;
    match &cli.command {
        Command::Spectrum { config } => {
            let cfg = RunConfig::load(config)?;
            output::emit(&commands::spectrum::run(&cfg, &pool)?, cfg.out.as_deref())
        }
        Command::Verify { suite, config } => {
            let cfg = verify_config(config)?;
            let verifier = verify::Verifier::new(&pool);
            let checks = verifier.run(*suite);
            output::emit(&verify::report_table(&checks).render(cfg.format)?, cfg.out.as_deref())?;
            match verify::failures(&checks) {
                0 => Ok(()),
                failed => Err(CliError::Verification { failed, total: checks.len() }),
            }
        }
        Command::Limits { mode, nu_list, c_list, config } => {
            let cfg = RunConfig::load(config)?;
            let table = commands::limits::limits_table(&cfg, *mode, nu_list, c_list)?;
            output::emit(&table.render(cfg.format)?, cfg.out.as_deref())
        }
        Command::Wavefn { config } => {
            let cfg = RunConfig::load(config)?;
            output::emit(&commands::wavefn::run(&cfg)?, cfg.out.as_deref())
        }
        Command::Sweep { param, from, to, steps, config } => {
            let mut config = config.clone();
            if *param == SweepParam::E2 && config.e2.is_none() {
                config.e2 = Some(*from);
            }
            let cfg = RunConfig::load(&config)?;
            let spec = SweepSpec { param: *param, from: *from, to: *to, steps: *steps };
            output::emit(&commands::sweep::run(&cfg, &spec, &pool)?, cfg.out.as_deref())
        }
    }
}

/// Parse `args`, run, and return the process exit code. Diagnostics go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            if !e.use_stderr() {
                return 0;
            }
            if !e.to_string().contains("Usage:") {
                eprintln!("\n{}", Cli::command().render_usage());
            }
            return 1;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("defdirac: {e}");
            e.exit_code()
        }
    }
}
