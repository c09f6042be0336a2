//! Scenario runner for the `nlqsl` command: builds the figure data sets as
//! CSV curves plus a JSON manifest.

pub mod config;
pub mod error;
pub mod output;
pub mod scenario;

pub use config::{Scenario, ScenarioConfig};
pub use error::{CliError, Result};
pub use scenario::{run_scenario, RunOutput};

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "NLQSL_THREADS";

/// Parses a thread cap; `None` means "use the default pool".
pub fn thread_cap(value: Option<&str>) -> Result<Option<usize>> {
    match value.map(str::trim) {
        None | Some("") => Ok(None),
        Some(v) => match v.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::field(THREADS_ENV, format!("expected a positive integer, got {v:?}"))),
        },
    }
}

/// Runs `f` with at most `threads` workers.
#[cfg(feature = "parallel")]
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool =
                rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| CliError::field(THREADS_ENV, e))?;
            Ok(pool.install(f))
        }
    }
}

#[cfg(not(feature = "parallel"))]
pub fn with_threads<T: Send>(_threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    Ok(f())
}
