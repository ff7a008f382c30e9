//! Config-driven experiment runner: wires symbols into sections, spectra and
//! cluster verdicts, runs the verification suites, and writes CSV reports.

mod config;
mod report;
mod runner;
mod suites;

pub use config::{ConfigMap, ExperimentConfig, SuiteKind, CONFIG_KEYS, DEFAULT_EPSILONS, DEFAULT_NS, DEFAULT_SEED, DEFAULT_TRIALS};
pub use report::{
    emit_csv, fmt_float, render, CaseResult, Measured, Outcome, SuiteReport, Table, Tolerance, MANIFEST_FILE, PROVENANCE_FILE, SUMMARY_FILE,
};
pub use runner::{exit_code, run, run_and_emit, EXIT_CONFIG, EXIT_FAIL, EXIT_PASS};
pub use suites::{
    cell_rng, k_for, random_unit_vector, run_suite, semicommutator_section, suite_cluster, suite_compactness, suite_compactness_probe,
    suite_flip, suite_mo_profile, suite_positivity, suite_product, suite_uchiyama, suite_vmo, suite_widom, uchiyama_check, verdict_case,
    vmo_membership, Expectation, Membership, UchiyamaOutcome, FLIP_SINGULAR_TOL, FLIP_TOEPLITZ_TOL, POSITIVITY_FLOOR, UCHIYAMA_SLACK,
};
