use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::config::SuiteKind;
use crate::error::{Error, Result};

/// Formats a float with 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// Finite evidence neither confirms nor contradicts the expectation.
    Inconclusive,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Inconclusive => "inconclusive",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Measured {
    Real(f64),
    Count(usize),
    Label(String),
}

impl fmt::Display for Measured {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measured::Real(x) => f.write_str(&fmt_float(*x)),
            Measured::Count(c) => write!(f, "{c}"),
            Measured::Label(s) => f.write_str(s),
        }
    }
}

/// What the measured value is compared against.
#[derive(Debug, Clone, PartialEq)]
pub enum Tolerance {
    AtMost(f64),
    CountAtMost(usize),
    AtLeast(f64),
    Equals(String),
    NotEquals(String),
    /// No bound is known; the case is reported as inconclusive.
    Unbounded,
}

impl fmt::Display for Tolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tolerance::AtMost(x) => write!(f, "<={}", fmt_float(*x)),
            Tolerance::CountAtMost(c) => write!(f, "<={c}"),
            Tolerance::AtLeast(x) => write!(f, ">={}", fmt_float(*x)),
            Tolerance::Equals(s) => write!(f, "=={s}"),
            Tolerance::NotEquals(s) => write!(f, "!={s}"),
            Tolerance::Unbounded => f.write_str("unbounded"),
        }
    }
}

/// One measured case of a suite.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseResult {
    pub case: String,
    pub measured: Measured,
    pub tolerance: Tolerance,
    pub outcome: Outcome,
}

impl CaseResult {
    /// Compares a real measurement against a numeric bound.
    pub fn real(case: impl Into<String>, measured: f64, tolerance: Tolerance) -> Self {
        let outcome = match &tolerance {
            Tolerance::AtMost(b) => Outcome::from_bool(measured <= *b),
            Tolerance::CountAtMost(b) => Outcome::from_bool(measured <= *b as f64),
            Tolerance::AtLeast(b) => Outcome::from_bool(measured >= *b),
            Tolerance::Unbounded => Outcome::Inconclusive,
            Tolerance::Equals(_) | Tolerance::NotEquals(_) => Outcome::Fail,
        };
        Self { case: case.into(), measured: Measured::Real(measured), tolerance, outcome }
    }

    pub fn count_at_most(case: impl Into<String>, measured: usize, bound: usize) -> Self {
        Self {
            case: case.into(),
            measured: Measured::Count(measured),
            tolerance: Tolerance::CountAtMost(bound),
            outcome: Outcome::from_bool(measured <= bound),
        }
    }

    pub fn labelled(case: impl Into<String>, measured: impl Into<String>, tolerance: Tolerance, outcome: Outcome) -> Self {
        Self { case: case.into(), measured: Measured::Label(measured.into()), tolerance, outcome }
    }
}

/// A CSV artifact: header, rows, and optional trailing `#` comment lines.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub file: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub trailer: Vec<String>,
}

impl Table {
    pub fn new(file: impl Into<String>, header: &[&str]) -> Self {
        Self { file: file.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new(), trailer: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let mut bytes = w.into_inner().map_err(|e| Error::InvalidArgument(e.to_string()))?;
        for line in &self.trailer {
            bytes.extend_from_slice(format!("# {line}\n").as_bytes());
        }
        Ok(bytes)
    }
}

/// Everything one suite produced.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: SuiteKind,
    pub cases: Vec<CaseResult>,
    /// Ordered key/value metadata: truncation orders, grid sizes, flags.
    pub provenance: Vec<(String, String)>,
    /// Extra artifacts (counts, spectra, profiles).
    pub tables: Vec<Table>,
    /// Free-form diagnostics, e.g. why a precondition refused the suite.
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: SuiteKind) -> Self {
        Self { suite, cases: Vec::new(), provenance: Vec::new(), tables: Vec::new(), notes: Vec::new() }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.provenance.push((key.to_string(), value.to_string()));
    }

    pub fn count(&self, outcome: Outcome) -> usize {
        self.cases.iter().filter(|c| c.outcome == outcome).count()
    }

    pub fn failed(&self) -> bool {
        self.count(Outcome::Fail) > 0
    }

    /// `<suite>_cases.csv` with columns suite, case, measured, tolerance, pass.
    pub fn case_table(&self) -> Table {
        let mut t = Table::new(format!("{}_cases.csv", self.suite), &["suite", "case", "measured", "tolerance", "pass"]);
        for c in &self.cases {
            t.push(vec![self.suite.to_string(), c.case.clone(), c.measured.to_string(), c.tolerance.to_string(), c.outcome.to_string()]);
        }
        t
    }
}

pub const MANIFEST_FILE: &str = "manifest.csv";
pub const SUMMARY_FILE: &str = "summary.csv";
pub const PROVENANCE_FILE: &str = "provenance.csv";

/// Renders every artifact of a run, in a fixed order, without touching disk.
/// The manifest is last and lists the others with their SHA-256.
pub fn render(reports: &[SuiteReport]) -> Result<Vec<(String, Vec<u8>)>> {
    let mut files = Vec::new();
    if !reports.is_empty() {
        let mut summary = Table::new(SUMMARY_FILE, &["suite", "cases", "passed", "failed", "inconclusive"]);
        let mut provenance = Table::new(PROVENANCE_FILE, &["suite", "key", "value"]);
        for r in reports {
            summary.push(vec![
                r.suite.to_string(),
                r.cases.len().to_string(),
                r.count(Outcome::Pass).to_string(),
                r.count(Outcome::Fail).to_string(),
                r.count(Outcome::Inconclusive).to_string(),
            ]);
            for (k, v) in &r.provenance {
                provenance.push(vec![r.suite.to_string(), k.clone(), v.clone()]);
            }
            for note in &r.notes {
                provenance.push(vec![r.suite.to_string(), "note".into(), note.clone()]);
            }
            let cases = r.case_table();
            files.push((cases.file.clone(), cases.to_bytes()?));
            for t in &r.tables {
                files.push((t.file.clone(), t.to_bytes()?));
            }
        }
        files.push((summary.file.clone(), summary.to_bytes()?));
        files.push((provenance.file.clone(), provenance.to_bytes()?));
    }
    files.sort_by(|a, b| a.0.cmp(&b.0));
    let mut manifest = Table::new(MANIFEST_FILE, &["file", "sha256"]);
    for (name, bytes) in &files {
        manifest.push(vec![name.clone(), hex::encode(Sha256::digest(bytes))]);
    }
    files.push((manifest.file.clone(), manifest.to_bytes()?));
    Ok(files)
}

/// Writes all artifacts into `dir`: each goes to a temporary file first and
/// is renamed into place once every file has been written.
pub fn emit_csv(reports: &[SuiteReport], dir: &Path) -> Result<Vec<PathBuf>> {
    let files = render(reports)?;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut staged = Vec::with_capacity(files.len());
    for (name, bytes) in &files {
        let tmp = dir.join(format!(".{name}.tmp"));
        let mut fh = fs::File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
        fh.write_all(bytes).and_then(|_| fh.sync_all()).map_err(|e| Error::io(&tmp, e))?;
        staged.push((tmp, dir.join(name)));
    }
    for (tmp, path) in &staged {
        fs::rename(tmp, path).map_err(|e| Error::io(path, e))?;
    }
    Ok(staged.into_iter().map(|(_, p)| p).collect())
}
