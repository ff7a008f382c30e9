use std::path::PathBuf;

use super::config::ExperimentConfig;
use super::report::{emit_csv, SuiteReport};
use super::suites::run_suite;
use crate::error::Result;

/// Exit status for a run that produced reports.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Runs the selected suites in canonical order. Each suite depends only on
/// the config, so a suite's report does not change with the selection.
pub fn run(cfg: &ExperimentConfig) -> Result<Vec<SuiteReport>> {
    cfg.suites.iter().map(|&k| run_suite(k, cfg)).collect()
}

/// [`run`], then write every artifact into the configured directory.
pub fn run_and_emit(cfg: &ExperimentConfig) -> Result<(Vec<SuiteReport>, Vec<PathBuf>)> {
    let reports = run(cfg)?;
    let files = emit_csv(&reports, &cfg.out_dir)?;
    Ok((reports, files))
}

pub fn exit_code(reports: &[SuiteReport]) -> i32 {
    if reports.iter().any(SuiteReport::failed) {
        EXIT_FAIL
    } else {
        EXIT_PASS
    }
}
