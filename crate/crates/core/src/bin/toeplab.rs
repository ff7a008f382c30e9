use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use toeplab::lab::{
    exit_code, fmt_float, k_for, run, run_and_emit, semicommutator_section, ConfigMap, ExperimentConfig, SuiteReport, Table, EXIT_CONFIG,
    EXIT_FAIL,
};
use toeplab::symbols::{sample_coeffs, symbol_coeffs, SymbolSpec, SymbolTerm};
use toeplab::{cluster_of_sections, hankel_section, reflect_coeffs, singular_values, toeplitz, widom_rhs, ComplexMatrix, Error, Result};

#[derive(Parser)]
#[command(name = "toeplab", version, about = "Toeplitz and Hankel sections, semicommutators, and their singular value clusters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fourier coefficients of a symbol as CSV (k, re, im).
    Coeffs {
        symbol: String,
        #[arg(long, default_value_t = 16)]
        k: usize,
        /// Use the FFT of an M-point sample instead of the closed form.
        #[arg(long)]
        sampled: bool,
        #[arg(long, default_value_t = 4096)]
        m: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// One section as CSV (i, j, re, im).
    Matrix {
        kind: Section,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Singular values of a section for every size in the grid, as CSV (n, index, sigma).
    Spectrum {
        kind: Section,
        #[command(flatten)]
        common: Common,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Outlier counts as CSV (n, epsilon, count) followed by the verdict.
    Cluster {
        kind: Section,
        #[command(flatten)]
        common: Common,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Runs suites and prints their cases without writing files.
    Verify {
        /// Suites to run (default: compactness, vmo, product).
        #[arg(value_delimiter = ',')]
        suites: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Runs the configured suites and writes CSV reports plus a manifest.
    Run {
        #[command(flatten)]
        common: Common,
        /// Comma-separated suite list or "all": widom, positivity, uchiyama, cluster, flip,
        /// mo-profile, compactness-probe, compactness, vmo, product.
        #[arg(long)]
        suites: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Section {
    /// T_n(f)
    Toeplitz,
    /// H_n(f), entries f_{i+j+1}
    Hankel,
    /// H_n of the reflected symbol
    HankelReflected,
    /// T_n(fg) − T_n(f)T_n(g)
    Semicommutator,
    /// first Hankel-product term of the semicommutator
    WidomP,
    /// second (flipped) Hankel-product term of the semicommutator
    WidomQ,
}

/// Settings shared by the commands that read an experiment config. Flags
/// override values from `--config`.
#[derive(Args)]
struct Common {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Symbol label for f.
    #[arg(short = 'f', long = "f")]
    f: Option<String>,
    /// Symbol label for g (default: conjugate of f).
    #[arg(short = 'g', long = "g")]
    g: Option<String>,
    /// Comma-separated section sizes.
    #[arg(long)]
    ns: Option<String>,
    /// Comma-separated thresholds, strictly decreasing.
    #[arg(long)]
    epsilons: Option<String>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    inner: Option<usize>,
    /// Sampling grid size for oscillation profiles.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Extra overrides as key=value.
    #[arg(long = "set")]
    set: Vec<String>,
}

impl Common {
    fn map(&self) -> Result<ConfigMap> {
        let mut map = match &self.config {
            Some(p) => ConfigMap::from_file(p)?,
            None => ConfigMap::default(),
        };
        let flags = [
            ("symbols.f", self.f.clone()),
            ("symbols.g", self.g.clone()),
            ("grid.ns", self.ns.clone()),
            ("grid.epsilons", self.epsilons.clone()),
            ("trunc.K", self.k.map(|v| v.to_string())),
            ("trunc.inner", self.inner.map(|v| v.to_string())),
            ("sample.M", self.m.map(|v| v.to_string())),
            ("seed", self.seed.map(|v| v.to_string())),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                map.set(key, &v)?;
            }
        }
        for pair in &self.set {
            map.set_pair(pair)?;
        }
        Ok(map)
    }

    fn config(&self) -> Result<ExperimentConfig> {
        self.map()?.build()
    }
}

fn write_out(table: &Table, output: &Option<PathBuf>) -> Result<()> {
    let bytes = table.to_bytes()?;
    match output {
        Some(p) => std::fs::write(p, bytes).map_err(|e| Error::Io { path: p.clone(), source: e }),
        None => std::io::stdout().write_all(&bytes).map_err(|e| Error::Io { path: "<stdout>".into(), source: e }),
    }
}

fn build_section(kind: Section, cfg: &ExperimentConfig, n: usize) -> Result<ComplexMatrix> {
    let f = SymbolTerm::plain(cfg.f.clone());
    let g = cfg.g.clone().map(SymbolTerm::plain).unwrap_or_else(|| f.conjugate());
    let k = k_for(cfg, n, &[&f, &g]);
    Ok(match kind {
        Section::Toeplitz => toeplitz(&f.coeffs(k)?, n),
        Section::Hankel => hankel_section(&f.coeffs(k)?, n),
        Section::HankelReflected => hankel_section(&reflect_coeffs(&f.coeffs(k)?), n),
        Section::Semicommutator => semicommutator_section(cfg, &f, &g, n)?,
        Section::WidomP => widom_rhs(&f.coeffs(k)?, &g.coeffs(k)?, n, cfg.inner).0,
        Section::WidomQ => widom_rhs(&f.coeffs(k)?, &g.coeffs(k)?, n, cfg.inner).1,
    })
}

fn print_reports(reports: &[SuiteReport]) {
    for r in reports {
        for c in &r.cases {
            println!("{:<18} {:<9} {} | measured {} | tolerance {}", r.suite.name(), c.outcome.as_str(), c.case, c.measured, c.tolerance);
        }
        for note in &r.notes {
            println!("{:<18} note      {note}", r.suite.name());
        }
    }
}

fn execute(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Coeffs { symbol, k, sampled, m, output } => {
            let spec = SymbolSpec::parse(&symbol)?;
            let c = if sampled { sample_coeffs(&spec.sample(m)?, k)? } else { symbol_coeffs(&spec, k)? };
            let mut t = Table::new("coeffs.csv", &["k", "re", "im"]);
            for (j, v) in c.iter() {
                t.push(vec![j.to_string(), fmt_float(v.re), fmt_float(v.im)]);
            }
            write_out(&t, &output)?;
        }
        Command::Matrix { kind, n, common, output } => {
            let cfg = common.config()?;
            let m = build_section(kind, &cfg, n)?;
            let mut t = Table::new("matrix.csv", &["i", "j", "re", "im"]);
            for i in 0..n {
                for (j, v) in m.row(i).iter().enumerate() {
                    t.push(vec![i.to_string(), j.to_string(), fmt_float(v.re), fmt_float(v.im)]);
                }
            }
            write_out(&t, &output)?;
        }
        Command::Spectrum { kind, common, output } => {
            let cfg = common.config()?;
            let mut t = Table::new("spectrum.csv", &["n", "index", "sigma"]);
            for &n in &cfg.ns {
                let s = singular_values(&build_section(kind, &cfg, n)?)?;
                for (i, v) in s.values().iter().enumerate() {
                    t.push(vec![n.to_string(), i.to_string(), fmt_float(*v)]);
                }
            }
            write_out(&t, &output)?;
        }
        Command::Cluster { kind, common, output } => {
            let cfg = common.config()?;
            let report = cluster_of_sections(|n| build_section(kind, &cfg, n), &cfg.ns, &cfg.epsilons, &cfg.cluster)?;
            let mut t = Table::new("cluster.csv", &["n", "epsilon", "count"]);
            for (i, &n) in report.ns.iter().enumerate() {
                for (j, &eps) in report.epsilons.iter().enumerate() {
                    t.push(vec![n.to_string(), fmt_float(eps), report.counts[i][j].to_string()]);
                }
            }
            t.trailer.push(format!("verdict,{}", report.overall));
            write_out(&t, &output)?;
        }
        Command::Verify { suites, common } => {
            let mut map = common.map()?;
            let list = if suites.is_empty() { "compactness,vmo,product".to_string() } else { suites.join(",") };
            map.set("suites", &list)?;
            let cfg = map.build()?;
            let reports = run(&cfg)?;
            print_reports(&reports);
            return Ok(exit_code(&reports));
        }
        Command::Run { common, suites, out } => {
            let mut map = common.map()?;
            if let Some(s) = suites {
                map.set("suites", &s)?;
            }
            if let Some(o) = out {
                map.set("out.dir", &o.to_string_lossy())?;
            }
            let cfg = map.build()?;
            let (reports, files) = run_and_emit(&cfg)?;
            print_reports(&reports);
            for f in files {
                println!("wrote {}", f.display());
            }
            return Ok(exit_code(&reports));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("toeplab: {e}");
            let code = if e.is_configuration() || matches!(e, Error::Io { .. }) { EXIT_CONFIG } else { EXIT_FAIL };
            ExitCode::from(code as u8)
        }
    }
}
