//! Configuration, scenario runners and output formatting behind the
//! `emergent` command.

// Range checks are written as `!(x <= tol)` so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod output;
pub mod params;
pub mod run;

pub use config::{Format, RunConfig, Scenario};
pub use error::{CliError, CliResult};
pub use run::{run, RunOutput};

/// Run a configured scenario and write its output. Property-suite
/// violations are reported as an error only after the report is written.
pub fn execute(cfg: &RunConfig) -> CliResult<()> {
    let out = run(cfg)?;
    output::write_output(&out.table.render(cfg.format), cfg.out.as_deref())?;
    if !out.failures.is_empty() {
        return Err(CliError::Invariant(format!("failed checks: {}", out.failures.join(", "))));
    }
    Ok(())
}
