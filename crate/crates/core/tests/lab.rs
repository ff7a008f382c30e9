use std::collections::BTreeMap;
use std::path::Path;

use sha2::{Digest, Sha256};
use toeplab::lab::{
    emit_csv, exit_code, run, run_and_emit, run_suite, suite_compactness, suite_product, suite_vmo, ConfigMap, ExperimentConfig, Measured,
    Outcome, SuiteKind, SuiteReport, Tolerance, MANIFEST_FILE,
};
use toeplab::{Error, SymbolSpec};

const SMALL_NS: &str = "16,32,64,128";
const MID_NS: &str = "64,128,256,512";

fn config(pairs: &[(&str, &str)]) -> ExperimentConfig {
    let mut map = ConfigMap::default();
    map.set("symbols.f", "cos").unwrap();
    for (k, v) in pairs {
        map.set(k, v).unwrap();
    }
    map.build().unwrap()
}

fn spec(label: &str) -> SymbolSpec {
    SymbolSpec::parse(label).unwrap()
}

fn assert_all_pass(r: &SuiteReport) {
    for c in &r.cases {
        assert_eq!(c.outcome, Outcome::Pass, "{}: {} measured {} tolerance {}", r.suite, c.case, c.measured, c.tolerance);
    }
    assert!(!r.cases.is_empty());
}

fn case<'a>(r: &'a SuiteReport, prefix: &str) -> &'a toeplab::lab::CaseResult {
    r.cases.iter().find(|c| c.case.starts_with(prefix)).unwrap_or_else(|| panic!("no case {prefix} in {}", r.suite))
}

#[test]
fn positivity_of_the_shift() {
    let cfg = config(&[("symbols.f", "monomial:1"), ("grid.ns", SMALL_NS), ("suites", "positivity")]);
    let reports = run(&cfg).unwrap();
    assert_eq!(reports.len(), 1);
    let r = &reports[0];
    assert_all_pass(r);
    // one case per ordering and size
    assert_eq!(r.cases.len(), 2 * 4);
    for c in &r.cases {
        assert_eq!(c.tolerance, Tolerance::AtLeast(-1e-10));
        match c.measured {
            Measured::Real(v) => assert!(v >= -1e-10),
            ref other => panic!("{other:?}"),
        }
    }
    assert_eq!(exit_code(&reports), 0);
}

#[test]
fn widom_suite_on_a_trig_polynomial() {
    let p = "trigpoly:[1@-1,1@1]";
    let cfg = config(&[("symbols.f", p), ("symbols.g", p), ("grid.ns", SMALL_NS), ("suites", "widom")]);
    let r = &run(&cfg).unwrap()[0];
    assert_all_pass(r);
    for c in &r.cases {
        match c.measured {
            Measured::Real(v) => assert!(v <= 1e-10, "{v}"),
            ref other => panic!("{other:?}"),
        }
    }
}

#[test]
fn cluster_suite_on_the_sawtooth() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(&[("symbols.f", "sawtooth"), ("grid.ns", SMALL_NS), ("suites", "cluster"), ("out.dir", dir.path().to_str().unwrap())]);
    let (reports, files) = run_and_emit(&cfg).unwrap();
    let c = case(&reports[0], "overall");
    assert_eq!(c.outcome, Outcome::Pass);
    assert_ne!(c.measured.to_string(), "strong");
    assert_eq!(c.tolerance, Tolerance::NotEquals("strong".into()));

    let text = std::fs::read_to_string(dir.path().join("cluster.csv")).unwrap();
    assert!(text.starts_with("n,epsilon,count\n"));
    assert!(text.lines().any(|l| l.starts_with("# verdict,")));
    assert!(files.iter().any(|f| f.ends_with("cluster_spectra.csv")));
}

#[test]
fn compactness_suite_smooth_symbol() {
    let cfg = config(&[("grid.ns", SMALL_NS)]);
    let r = suite_compactness(&spec("smoothexp"), &cfg).unwrap();
    assert_all_pass(&r);
    for name in ["semicommutator", "hankel product smoothexp", "hankel product reflect"] {
        assert_eq!(case(&r, name).measured.to_string(), "strong");
    }
    assert_eq!(case(&r, "consistency").measured.to_string(), "strong/strong/strong");
}

#[test]
fn compactness_suite_constant_symbol() {
    let cfg = config(&[("grid.ns", SMALL_NS)]);
    let r = suite_compactness(&spec("constant:2"), &cfg).unwrap();
    assert_all_pass(&r);
    let counts = r.tables.iter().find(|t| t.file.ends_with("_counts.csv")).unwrap();
    assert!(counts.rows.iter().all(|row| row[3] == "0"));
}

#[test]
fn compactness_suite_sawtooth() {
    // Frozen observation. The semicommutator is not strong, but each Hankel
    // product has eigenvalues σ², so the ε grid probes the Hankel singular
    // values at √ε where their logarithmic growth has not shown up yet. The
    // products read strong and the consistency check reports the mismatch.
    let cfg = config(&[("grid.ns", MID_NS)]);
    let r = suite_compactness(&SymbolSpec::sawtooth(), &cfg).unwrap();
    let observed: Vec<(String, Outcome)> = r.cases.iter().map(|c| (c.measured.to_string(), c.outcome)).collect();
    let frozen = [("weak", Outcome::Pass), ("strong", Outcome::Fail), ("strong", Outcome::Fail), ("weak/strong/strong", Outcome::Fail)];
    assert_eq!(observed.len(), frozen.len());
    for ((m, o), (fm, fo)) in observed.iter().zip(frozen) {
        assert_eq!((m.as_str(), *o), (fm, fo));
    }
    assert!(case(&r, "semicommutator").measured.to_string() != "strong");
}

#[test]
fn vmo_suite_cosine() {
    let cfg = config(&[("grid.ns", SMALL_NS)]);
    let r = suite_vmo(&spec("cos"), &cfg).unwrap();
    assert_all_pass(&r);
    assert!(case(&r, "biconditional").measured.to_string().starts_with("holds: both-strong=true oscillation=vmo-like"));
    // decaying profile
    let t = r.tables.iter().find(|t| t.file == "vmo_f.csv").unwrap();
    let values: Vec<f64> = t.rows.iter().map(|row| row[1].parse().unwrap()).collect();
    assert!(values.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn vmo_suite_constant() {
    let cfg = config(&[("grid.ns", SMALL_NS)]);
    let r = suite_vmo(&spec("constant:1"), &cfg).unwrap();
    assert_all_pass(&r);
    match case(&r, "oscillation").measured {
        Measured::Real(v) => assert_eq!(v, 0.0),
        ref other => panic!("{other:?}"),
    }
}

#[test]
fn vmo_suite_sawtooth() {
    let cfg = config(&[("grid.ns", SMALL_NS)]);
    let r = suite_vmo(&SymbolSpec::sawtooth(), &cfg).unwrap();
    assert_all_pass(&r);
    assert!(case(&r, "biconditional").measured.to_string().starts_with("holds: both-strong=false oscillation=not-vmo-like"));
}

#[test]
fn product_suite_cosine_pair() {
    let cfg = config(&[("grid.ns", SMALL_NS), ("uchiyama.trials", "200")]);
    let r = suite_product(&spec("cos"), &spec("cos"), &cfg).unwrap();
    assert_all_pass(&r);
    for c in r.cases.iter().filter(|c| c.case.starts_with("violations")) {
        assert_eq!(c.measured.to_string(), "0");
    }
    assert_eq!(r.cases.iter().filter(|c| c.case.starts_with("violations")).count(), 4);
}

#[test]
fn product_suite_analytic_monomials_vanish() {
    let cfg = config(&[("grid.ns", SMALL_NS), ("uchiyama.trials", "50")]);
    let r = suite_product(&spec("monomial:1"), &spec("monomial:2"), &cfg).unwrap();
    assert_all_pass(&r);
    let counts = r.tables.iter().find(|t| t.file == "product_counts.csv").unwrap();
    assert!(counts.rows.iter().all(|row| row[3] == "0"));
}

#[test]
fn product_suite_refuses_a_jump_symbol() {
    let cfg = config(&[("grid.ns", SMALL_NS)]);
    match suite_product(&spec("cos"), &SymbolSpec::sawtooth(), &cfg) {
        Err(Error::Precondition(msg)) => {
            assert!(msg.contains("g = sawtooth"), "{msg}");
            assert!(msg.contains("jump-discontinuous"), "{msg}");
        }
        other => panic!("{other:?}"),
    }
    let cfg = config(&[("symbols.f", "cos"), ("symbols.g", "sawtooth"), ("grid.ns", SMALL_NS), ("suites", "product")]);
    let reports = run(&cfg).unwrap();
    assert_eq!(reports[0].cases[0].outcome, Outcome::Fail);
    assert!(reports[0].notes[0].contains("jump-discontinuous"));
    assert_eq!(exit_code(&reports), 1);
}

#[test]
fn every_case_carries_value_and_tolerance() {
    let cfg = config(&[("symbols.f", "cos"), ("grid.ns", "8,16,24,32"), ("suites", "all"), ("uchiyama.trials", "20")]);
    for r in run(&cfg).unwrap() {
        let table = r.case_table();
        assert_eq!(table.header, vec!["suite", "case", "measured", "tolerance", "pass"]);
        for row in &table.rows {
            assert!(!row[2].is_empty() && !row[3].is_empty(), "{row:?}");
        }
    }
}

#[test]
fn empty_suite_set_writes_only_a_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let files = emit_csv(&[], dir.path()).unwrap();
    assert_eq!(files.len(), 1);
    assert!(files[0].ends_with(MANIFEST_FILE));
    let listing: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(listing, vec![std::ffi::OsString::from(MANIFEST_FILE)]);

    let cfg = config(&[("suites", ""), ("out.dir", dir.path().join("sub").to_str().unwrap())]);
    let (reports, files) = run_and_emit(&cfg).unwrap();
    assert!(reports.is_empty());
    assert_eq!(files.len(), 1);
}

fn manifest_hashes(dir: &Path) -> BTreeMap<String, String> {
    let text = std::fs::read_to_string(dir.join(MANIFEST_FILE)).unwrap();
    let mut out = BTreeMap::new();
    for line in text.lines().skip(1) {
        let (file, hash) = line.split_once(',').unwrap();
        out.insert(file.to_string(), hash.to_string());
    }
    out
}

#[test]
fn manifest_hashes_match_file_contents() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(&[
        ("symbols.f", "cos"),
        ("grid.ns", "8,16,24,32"),
        ("suites", "widom,uchiyama,flip"),
        ("uchiyama.trials", "20"),
        ("out.dir", dir.path().to_str().unwrap()),
    ]);
    run_and_emit(&cfg).unwrap();
    let hashes = manifest_hashes(dir.path());
    assert!(hashes.len() >= 5);
    for (file, hash) in hashes {
        let bytes = std::fs::read(dir.path().join(&file)).unwrap();
        assert_eq!(hex::encode(Sha256::digest(&bytes)), hash, "{file}");
    }
}

#[test]
fn identical_runs_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let base = [("symbols.f", "smoothexp:0.5"), ("grid.ns", "8,16,24,32"), ("suites", "all"), ("uchiyama.trials", "25")];
    for dir in [&a, &b] {
        let mut pairs = base.to_vec();
        pairs.push(("out.dir", dir.path().to_str().unwrap()));
        run_and_emit(&config(&pairs)).unwrap();
    }
    assert_eq!(std::fs::read(a.path().join(MANIFEST_FILE)).unwrap(), std::fs::read(b.path().join(MANIFEST_FILE)).unwrap());
}

#[test]
fn seed_changes_only_random_outputs() {
    let run_with = |seed: &str| {
        let cfg = config(&[
            ("symbols.f", "cos"),
            ("grid.ns", "8,16,24,32"),
            ("suites", "uchiyama,widom"),
            ("uchiyama.trials", "30"),
            ("seed", seed),
        ]);
        run(&cfg).unwrap()
    };
    let (x, y) = (run_with("1"), run_with("2"));
    let pick = |v: &[SuiteReport], k: SuiteKind| v.iter().find(|r| r.suite == k).unwrap().clone();
    let (wx, wy) = (pick(&x, SuiteKind::Widom), pick(&y, SuiteKind::Widom));
    assert_eq!(wx.cases, wy.cases);
    assert_eq!(wx.provenance, wy.provenance);
    let (ux, uy) = (pick(&x, SuiteKind::Uchiyama), pick(&y, SuiteKind::Uchiyama));
    // the verdicts agree, the sampled extremes do not
    assert_eq!(ux.cases, uy.cases);
    assert_ne!(ux.provenance, uy.provenance);
    assert_eq!(run_with("1")[0].provenance, x[0].provenance);
}

#[test]
fn suites_compose() {
    let base = [("symbols.f", "sin"), ("grid.ns", "8,16,24,32"), ("uchiyama.trials", "30")];
    let mut together = base.to_vec();
    together.push(("suites", "widom,positivity,uchiyama,flip,mo-profile"));
    let joint = run(&config(&together)).unwrap();
    for r in &joint {
        let mut alone = base.to_vec();
        alone.push(("suites", r.suite.name()));
        let single = run(&config(&alone)).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].cases, r.cases, "{}", r.suite);
        assert_eq!(single[0].tables, r.tables, "{}", r.suite);
    }
}

#[test]
fn run_suite_covers_every_kind() {
    let cfg = config(&[("symbols.f", "z"), ("grid.ns", "8,16,24,32"), ("uchiyama.trials", "10")]);
    for kind in SuiteKind::ALL {
        let r = run_suite(kind, &cfg).unwrap();
        assert_eq!(r.suite, kind);
        assert!(!r.failed(), "{kind}: {:?}", r.cases);
    }
}

#[test]
fn configuration_errors_are_distinct() {
    let bad: &[(&str, &str)] = &[
        ("symbols.f", "nonsense"),
        ("grid.ns", "64,32,128,256"),
        ("grid.ns", "0,1,2,3"),
        ("grid.epsilons", "0.1,0.2"),
        ("grid.epsilons", "-1"),
        ("trunc.K", "0"),
        ("trunc.inner", "x"),
        ("sample.M", "1000"),
        ("suites", "widom,unknown"),
        ("seed", "-3"),
    ];
    for (key, value) in bad {
        let mut map = ConfigMap::default();
        let err = map.set(key, value).and_then(|_| map.build().map(|_| ())).unwrap_err();
        assert!(err.is_configuration(), "{key}={value}: {err}");
    }
    let mut map = ConfigMap::default();
    assert!(map.set("no.such.key", "1").unwrap_err().is_configuration());
    assert!(map.set_pair("missing-equals").unwrap_err().is_configuration());
}

#[test]
fn config_file_round_trip() {
    let text =
        "# comment\nsymbols.f = cos\nsymbols.g = sin\ngrid.ns = 8, 16, 32, 64\ngrid.epsilons = 0.5,0.05\nsuites = widom,flip\nseed = 7\n";
    let cfg = ConfigMap::parse(text).unwrap().build().unwrap();
    assert_eq!(cfg.f.label, "cos");
    assert_eq!(cfg.g.as_ref().unwrap().label, "sin");
    assert_eq!(cfg.ns, vec![8, 16, 32, 64]);
    assert_eq!(cfg.epsilons, vec![0.5, 0.05]);
    assert_eq!(cfg.suites, vec![SuiteKind::Widom, SuiteKind::Flip]);
    assert_eq!(cfg.seed, 7);
    assert!(ConfigMap::parse("symbols.f cos").is_err());
}

#[test]
fn unwritable_output_is_an_io_error_with_path() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, b"x").unwrap();
    let target = blocker.join("out");
    let cfg = config(&[("suites", "widom"), ("grid.ns", "4,8,12,16"), ("out.dir", target.to_str().unwrap())]);
    match run_and_emit(&cfg) {
        Err(e @ Error::Io { .. }) => assert!(e.to_string().contains("file"), "{e}"),
        other => panic!("{other:?}"),
    }
}
