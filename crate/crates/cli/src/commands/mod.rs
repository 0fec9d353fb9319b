pub mod limits;
pub mod spectrum;
pub mod sweep;
pub mod wavefn;

use crate::error::{CliError, Result};

pub const THREADS_ENV: &str = "DEFDIRAC_THREADS";

/// Local worker pool sized by `DEFDIRAC_THREADS` (unset or 0: one per core).
pub fn thread_pool() -> Result<rayon::ThreadPool> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(s) if s.trim().is_empty() => 0,
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::config(format!("{THREADS_ENV}=`{s}` is not a thread count")))?,
        Err(std::env::VarError::NotPresent) => 0,
        Err(e) => return Err(CliError::config(format!("{THREADS_ENV}: {e}"))),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::config(format!("thread pool: {e}")))
}
