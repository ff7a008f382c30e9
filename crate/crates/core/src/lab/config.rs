use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::spectral::ClusterThresholds;
use crate::symbols::{SymbolSpec, VmoThresholds, DEFAULT_GRID_POINTS, DEFAULT_K};

/// The verification suites the runner knows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuiteKind {
    Widom,
    Positivity,
    Uchiyama,
    Cluster,
    Flip,
    MoProfile,
    CompactnessProbe,
    /// Semicommutator clustering vs. Hankel-product clustering vs. symbol class.
    Compactness,
    /// Both orderings of the self semicommutator vs. the oscillation profile.
    Vmo,
    /// Clustering of the mixed semicommutator of two VMO symbols.
    Product,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 10] = [
        SuiteKind::Widom,
        SuiteKind::Positivity,
        SuiteKind::Uchiyama,
        SuiteKind::Cluster,
        SuiteKind::Flip,
        SuiteKind::MoProfile,
        SuiteKind::CompactnessProbe,
        SuiteKind::Compactness,
        SuiteKind::Vmo,
        SuiteKind::Product,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::Widom => "widom",
            SuiteKind::Positivity => "positivity",
            SuiteKind::Uchiyama => "uchiyama",
            SuiteKind::Cluster => "cluster",
            SuiteKind::Flip => "flip",
            SuiteKind::MoProfile => "mo-profile",
            SuiteKind::CompactnessProbe => "compactness-probe",
            SuiteKind::Compactness => "compactness",
            SuiteKind::Vmo => "vmo",
            SuiteKind::Product => "product",
        }
    }
}

impl fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteKind::ALL.into_iter().find(|k| k.name() == s.trim()).ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

/// Everything a run needs.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub f: SymbolSpec,
    /// Second symbol; `None` pairs `f` with its conjugate.
    pub g: Option<SymbolSpec>,
    pub ns: Vec<usize>,
    pub epsilons: Vec<f64>,
    /// Minimum coefficient truncation; sections of order `n` use `max(K, 2n)`.
    pub k: usize,
    /// Inner truncation of the Hankel products.
    pub inner: usize,
    /// Sampling grid size for oscillation profiles.
    pub grid_points: usize,
    /// Selected suites in canonical order.
    pub suites: Vec<SuiteKind>,
    pub out_dir: PathBuf,
    pub seed: u64,
    pub cluster: ClusterThresholds,
    pub vmo: VmoThresholds,
    pub uchiyama_trials: usize,
}

/// Recognised keys of the flat `key = value` config format.
pub const CONFIG_KEYS: &[&str] = &[
    "symbols.f",
    "symbols.g",
    "grid.ns",
    "grid.epsilons",
    "trunc.K",
    "trunc.inner",
    "sample.M",
    "suites",
    "out.dir",
    "seed",
    "cluster.constancy",
    "cluster.weak_decay",
    "cluster.spread",
    "vmo.delta",
    "vmo.low",
    "vmo.high",
    "uchiyama.trials",
];

pub const DEFAULT_NS: [usize; 5] = [64, 128, 256, 512, 1024];
pub const DEFAULT_EPSILONS: [f64; 4] = [0.2, 0.1, 0.05, 0.01];
pub const DEFAULT_SEED: u64 = 20_240_229;
pub const DEFAULT_TRIALS: usize = 1000;

/// Raw key/value settings, before validation. Later insertions win, so CLI
/// overrides are applied after the file is read.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigMap {
    entries: BTreeMap<String, String>,
}

impl ConfigMap {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) =
                line.split_once('=').ok_or_else(|| Error::Config(format!("line {}: expected key = value, got {raw:?}", lineno + 1)))?;
            map.set(k.trim(), v.trim())?;
        }
        Ok(map)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        if !CONFIG_KEYS.contains(&key) {
            return Err(Error::Config(format!("unknown key {key:?}")));
        }
        self.entries.insert(key.to_string(), value.to_string());
        Ok(())
    }

    /// Applies a `key=value` override.
    pub fn set_pair(&mut self, pair: &str) -> Result<()> {
        let (k, v) = pair.split_once('=').ok_or_else(|| Error::Config(format!("override must be key=value, got {pair:?}")))?;
        self.set(k.trim(), v.trim())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.get(key).map(|v| v.parse::<T>().map_err(|_| Error::Config(format!("{key}: cannot parse {v:?}")))).transpose()
    }

    fn list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>> {
        self.get(key)
            .map(|v| {
                v.trim_matches(|c| c == '[' || c == ']' || c == '{' || c == '}')
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<T>().map_err(|_| Error::Config(format!("{key}: cannot parse {s:?}"))))
                    .collect()
            })
            .transpose()
    }

    /// Validates and fills in defaults.
    pub fn build(&self) -> Result<ExperimentConfig> {
        let f_label = self.get("symbols.f").ok_or_else(|| Error::Config("symbols.f is required".into()))?;
        let f = SymbolSpec::parse(f_label)?;
        let g = self.get("symbols.g").map(SymbolSpec::parse).transpose()?;

        let ns = self.list::<usize>("grid.ns")?.unwrap_or_else(|| DEFAULT_NS.to_vec());
        if ns.is_empty() || ns[0] == 0 || ns.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config(format!("grid.ns must be positive and strictly increasing, got {ns:?}")));
        }
        let epsilons = self.list::<f64>("grid.epsilons")?.unwrap_or_else(|| DEFAULT_EPSILONS.to_vec());
        if epsilons.is_empty() || epsilons.iter().any(|&e| !(e > 0.0 && e.is_finite())) || epsilons.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Config(format!("grid.epsilons must be positive and strictly decreasing, got {epsilons:?}")));
        }

        let k = self.parsed::<usize>("trunc.K")?.unwrap_or(DEFAULT_K);
        let inner = self.parsed::<usize>("trunc.inner")?.unwrap_or(4 * k);
        let grid_points = self.parsed::<usize>("sample.M")?.unwrap_or(DEFAULT_GRID_POINTS);
        if k == 0 || inner == 0 || grid_points == 0 {
            return Err(Error::Config("trunc.K, trunc.inner and sample.M must be positive".into()));
        }
        if !grid_points.is_power_of_two() || grid_points < 8 {
            return Err(Error::Config(format!("sample.M must be a power of two ≥ 8, got {grid_points}")));
        }

        let suites = match self.get("suites") {
            None => SuiteKind::ALL.to_vec(),
            Some(s) if s.trim() == "all" => SuiteKind::ALL.to_vec(),
            Some(_) => {
                let mut v =
                    self.list::<String>("suites")?.unwrap_or_default().iter().map(|s| s.parse()).collect::<Result<Vec<SuiteKind>>>()?;
                v.sort();
                v.dedup();
                v
            }
        };

        let mut cluster = ClusterThresholds::default();
        if let Some(x) = self.parsed("cluster.constancy")? {
            cluster.constancy_fraction = x;
        }
        if let Some(x) = self.parsed("cluster.weak_decay")? {
            cluster.weak_decay = x;
        }
        if let Some(x) = self.parsed("cluster.spread")? {
            cluster.proportional_spread = x;
        }
        let mut vmo = VmoThresholds::default();
        if let Some(x) = self.parsed("vmo.delta")? {
            vmo.probe_delta = x;
        }
        if let Some(x) = self.parsed("vmo.low")? {
            vmo.vmo_below = x;
        }
        if let Some(x) = self.parsed("vmo.high")? {
            vmo.not_vmo_above = x;
        }

        Ok(ExperimentConfig {
            f,
            g,
            ns,
            epsilons,
            k,
            inner,
            grid_points,
            suites,
            out_dir: PathBuf::from(self.get("out.dir").unwrap_or("out")),
            seed: self.parsed("seed")?.unwrap_or(DEFAULT_SEED),
            cluster,
            vmo,
            uchiyama_trials: self.parsed("uchiyama.trials")?.unwrap_or(DEFAULT_TRIALS),
        })
    }
}

impl ExperimentConfig {
    /// Defaults for a single symbol.
    pub fn for_symbol(f: &str) -> Result<Self> {
        let mut map = ConfigMap::default();
        map.set("symbols.f", f)?;
        map.build()
    }

    /// Coefficient truncation used for sections of order `n`.
    pub fn k_for(&self, n: usize) -> usize {
        self.k.max(2 * n)
    }
}
