use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use sha2::{Digest, Sha256};

use super::config::{ExperimentConfig, SuiteKind};
use super::report::{fmt_float, CaseResult, Outcome, SuiteReport, Table, Tolerance};
use crate::error::{Error, Result};
use crate::spectral::{cluster_of_sections, hermitian_eigenvalues, singular_values, ClusterReport, Verdict};
use crate::structured::{flip_matrix, hankel_section, semicommutator, toeplitz, widom_check, widom_rhs, ComplexMatrix};
use crate::symbols::{
    default_deltas, oscillation_profile, reflect_coeffs, term_product, vmo_verdict, FourierCoeffs, SampledGrid, SymbolClass, SymbolKind,
    SymbolSpec, SymbolTerm, VmoVerdict,
};

/// Lower bound for eigenvalues of positive semidefinite sections.
pub const POSITIVITY_FLOOR: f64 = -1e-10;
/// Slack allowed in `|⟨Zx,x⟩| ≤ √(⟨Xx,x⟩⟨Yx,x⟩)`.
pub const UCHIYAMA_SLACK: f64 = 1e-10;
/// `J T_n(f) J` against `T_n(f̃)`, entrywise.
pub const FLIP_TOEPLITZ_TOL: f64 = 1e-14;
/// Singular values of the flipped Hankel-product term against the unflipped one.
pub const FLIP_SINGULAR_TOL: f64 = 1e-12;

/// Whether a symbol is (numerically) in VMO, and on what grounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Vmo,
    NotVmo,
    Unknown,
}

/// Catalog class when known, otherwise the oscillation verdict on the
/// symbol's own grid.
pub fn vmo_membership(spec: &SymbolSpec, cfg: &ExperimentConfig) -> Result<(Membership, String)> {
    Ok(match spec.class() {
        SymbolClass::Continuous => (Membership::Vmo, spec.class().to_string()),
        SymbolClass::JumpDiscontinuous => (Membership::NotVmo, spec.class().to_string()),
        SymbolClass::Unknown => {
            let (mo, v) = vmo_verdict(&grid_of(spec, cfg)?, &cfg.vmo)?;
            let m = match v {
                VmoVerdict::VmoLike => Membership::Vmo,
                VmoVerdict::NotVmoLike => Membership::NotVmo,
                VmoVerdict::Inconclusive => Membership::Unknown,
            };
            (m, format!("{} with oscillation {} ({v})", spec.class(), fmt_float(mo)))
        }
    })
}

fn grid_of(spec: &SymbolSpec, cfg: &ExperimentConfig) -> Result<SampledGrid> {
    match &spec.kind {
        SymbolKind::SampledGrid(g) => Ok(g.clone()),
        _ => spec.sample(cfg.grid_points),
    }
}

/// Coefficient truncation for sections of order `n`: `max(K, 2n)`, capped
/// by what a sampled grid can resolve.
pub fn k_for(cfg: &ExperimentConfig, n: usize, terms: &[&SymbolTerm]) -> usize {
    terms.iter().fold(cfg.k_for(n), |k, t| match &t.spec.kind {
        SymbolKind::SampledGrid(g) => k.min((g.points() - 4) / 4),
        _ => k,
    })
}

/// `T_n(ab) − T_n(a)T_n(b)`.
pub fn semicommutator_section(cfg: &ExperimentConfig, a: &SymbolTerm, b: &SymbolTerm, n: usize) -> Result<ComplexMatrix> {
    let k = k_for(cfg, n, &[a, b]);
    Ok(semicommutator(&a.coeffs(k)?, &b.coeffs(k)?, &term_product(a, b, k)?, n))
}

fn pair_terms(cfg: &ExperimentConfig) -> (SymbolTerm, SymbolTerm) {
    let f = SymbolTerm::plain(cfg.f.clone());
    let g = cfg.g.clone().map(SymbolTerm::plain).unwrap_or_else(|| SymbolTerm::conj(cfg.f.clone()));
    (f, g)
}

fn pair_label(a: &SymbolTerm, b: &SymbolTerm) -> String {
    format!("({};{})", a.label(), b.label())
}

/// Cluster report of a section sequence plus whether any section was built
/// from truncated coefficients.
fn cluster_sequence(cfg: &ExperimentConfig, mut build: impl FnMut(usize) -> Result<ComplexMatrix>) -> Result<(ClusterReport, bool)> {
    let mut truncated = false;
    let report = cluster_of_sections(
        |n| {
            let m = build(n)?;
            truncated |= m.truncated();
            Ok(m)
        },
        &cfg.ns,
        &cfg.epsilons,
        &cfg.cluster,
    )?;
    Ok((report, truncated))
}

/// Expected cluster verdict of a section sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    Strong,
    NotStrong,
    Unknown,
}

impl Expectation {
    /// For a self-paired semicommutator or a Hankel pair: strong iff VMO.
    fn iff(m: Membership) -> Self {
        match m {
            Membership::Vmo => Expectation::Strong,
            Membership::NotVmo => Expectation::NotStrong,
            Membership::Unknown => Expectation::Unknown,
        }
    }
}

/// Compares a cluster verdict with its expectation. An inconclusive verdict
/// or an unknown expectation is reported as inconclusive.
pub fn verdict_case(case: impl Into<String>, verdict: Verdict, expect: Expectation) -> CaseResult {
    let tolerance = match expect {
        Expectation::Strong => Tolerance::Equals("strong".into()),
        Expectation::NotStrong => Tolerance::NotEquals("strong".into()),
        Expectation::Unknown => Tolerance::Unbounded,
    };
    let outcome = match (verdict, expect) {
        (Verdict::Inconclusive, _) | (_, Expectation::Unknown) => Outcome::Inconclusive,
        (v, Expectation::Strong) => Outcome::from_bool(v == Verdict::Strong),
        (v, Expectation::NotStrong) => Outcome::from_bool(v != Verdict::Strong),
    };
    CaseResult::labelled(case, verdict.as_str(), tolerance, outcome)
}

/// Appends the rows of `report` to a `sequence,n,epsilon,count` table.
fn push_counts(table: &mut Table, sequence: &str, report: &ClusterReport) {
    for (i, &n) in report.ns.iter().enumerate() {
        for (j, &eps) in report.epsilons.iter().enumerate() {
            table.push(vec![sequence.to_string(), n.to_string(), fmt_float(eps), report.counts[i][j].to_string()]);
        }
    }
    table.trailer.push(format!("verdict,{sequence},{}", report.overall));
}

fn counts_table(suite: SuiteKind) -> Table {
    Table::new(format!("{suite}_counts.csv"), &["sequence", "n", "epsilon", "count"])
}

fn common_meta(r: &mut SuiteReport, cfg: &ExperimentConfig) {
    r.meta("f", &cfg.f.label);
    r.meta("g", cfg.g.as_ref().map_or_else(|| format!("conj({})", cfg.f.label), |g| g.label.clone()));
    r.meta("ns", cfg.ns.iter().map(usize::to_string).collect::<Vec<_>>().join(" "));
    r.meta("K", cfg.k);
    r.meta("K_effective", "max(K, 2n)");
    r.meta("inner", cfg.inner);
    r.meta("M", cfg.grid_points);
}

/// `Σ_{k<inner}` Hankel-product decomposition residual for the configured pair.
pub fn suite_widom(cfg: &ExperimentConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(SuiteKind::Widom);
    common_meta(&mut r, cfg);
    let (a, b) = pair_terms(cfg);
    for &n in &cfg.ns {
        let k = k_for(cfg, n, &[&a, &b]);
        let (ca, cb, cab) = (a.coeffs(k)?, b.coeffs(k)?, term_product(&a, &b, k)?);
        let w = widom_check(&ca, &cb, &cab, n, cfg.inner);
        let tol = w.tolerance().map_or(Tolerance::Unbounded, Tolerance::AtMost);
        r.cases.push(CaseResult::real(format!("n={n}"), w.residual_fro, tol));
        r.meta(&format!("n={n}.exact"), w.exact);
        r.meta(&format!("n={n}.truncated"), w.p_term.truncated() || w.lhs.truncated());
    }
    Ok(r)
}

/// Smallest eigenvalue of both orderings of every self-paired semicommutator.
pub fn suite_positivity(cfg: &ExperimentConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(SuiteKind::Positivity);
    common_meta(&mut r, cfg);
    let mut symbols = vec![&cfg.f];
    symbols.extend(cfg.g.as_ref());
    for spec in symbols {
        let plain = SymbolTerm::plain(spec.clone());
        let conj = plain.conjugate();
        for (a, b) in [(&plain, &conj), (&conj, &plain)] {
            for &n in &cfg.ns {
                let m = semicommutator_section(cfg, a, b, n)?;
                let min = hermitian_eigenvalues(&m)?.last().copied().unwrap_or(0.0);
                r.cases.push(CaseResult::real(format!("{} n={n}", pair_label(a, b)), min, Tolerance::AtLeast(POSITIVITY_FLOOR)));
            }
        }
    }
    Ok(r)
}

/// Random-state check of `|⟨Zx,x⟩| ≤ √(⟨Xx,x⟩⟨Yx,x⟩)` with
/// `X = T(|a|²) − T(ā)T(a)`, `Y = T(|b|²) − T(b̄)T(b)`, `Z = T(āb) − T(ā)T(b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UchiyamaOutcome {
    pub trials: usize,
    pub violations: usize,
    /// Largest `|⟨Zx,x⟩| − √(⟨Xx,x⟩⟨Yx,x⟩)` seen (negative when all hold).
    pub max_excess: f64,
}

/// Deterministic generator for one `(tag, n)` cell, independent of which
/// other cells run.
pub fn cell_rng(seed: u64, tag: &str, n: usize) -> ChaCha8Rng {
    let digest = Sha256::digest(tag.as_bytes());
    let salt = u64::from_le_bytes(digest[..8].try_into().expect("8 bytes"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt);
    rng.set_stream(n as u64);
    rng
}

/// Unit vector with i.i.d. standard complex Gaussian entries, normalized.
pub fn random_unit_vector(rng: &mut impl Rng, n: usize) -> Vec<Complex64> {
    let mut x: Vec<Complex64> = (0..n).map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
    let norm = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    for v in &mut x {
        *v /= norm;
    }
    x
}

pub fn uchiyama_check(
    cfg: &ExperimentConfig,
    a: &SymbolTerm,
    b: &SymbolTerm,
    n: usize,
    trials: usize,
    rng: &mut impl Rng,
) -> Result<UchiyamaOutcome> {
    let (ac, bc) = (a.conjugate(), b.conjugate());
    let x = semicommutator_section(cfg, &ac, a, n)?;
    let y = semicommutator_section(cfg, &bc, b, n)?;
    let z = semicommutator_section(cfg, &ac, b, n)?;
    let mut out = UchiyamaOutcome { trials, violations: 0, max_excess: f64::NEG_INFINITY };
    for _ in 0..trials {
        let v = random_unit_vector(rng, n);
        let xv = x.quadratic_form(&v).re.max(0.0);
        let yv = y.quadratic_form(&v).re.max(0.0);
        let excess = z.quadratic_form(&v).norm() - (xv * yv).sqrt();
        out.max_excess = out.max_excess.max(excess);
        if excess > UCHIYAMA_SLACK {
            out.violations += 1;
        }
    }
    Ok(out)
}

fn push_uchiyama(r: &mut SuiteReport, cfg: &ExperimentConfig, a: &SymbolTerm, b: &SymbolTerm) -> Result<()> {
    for &n in &cfg.ns {
        let mut rng = cell_rng(cfg.seed, &format!("{}:{}", r.suite, pair_label(a, b)), n);
        let o = uchiyama_check(cfg, a, b, n, cfg.uchiyama_trials, &mut rng)?;
        r.cases.push(CaseResult::count_at_most(format!("violations {} n={n}", pair_label(a, b)), o.violations, 0));
        r.meta(&format!("n={n}.max_excess"), fmt_float(o.max_excess));
    }
    Ok(())
}

/// Cauchy–Schwarz inequality for the configured pair on random states.
pub fn suite_uchiyama(cfg: &ExperimentConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(SuiteKind::Uchiyama);
    common_meta(&mut r, cfg);
    r.meta("trials", cfg.uchiyama_trials);
    r.meta("seed", cfg.seed);
    let (a, b) = pair_terms(cfg);
    push_uchiyama(&mut r, cfg, &a, &b)?;
    Ok(r)
}

/// Cluster verdict of the configured semicommutator sequence. Writes
/// `cluster.csv` (`n,epsilon,count`) and `cluster_spectra.csv`.
pub fn suite_cluster(cfg: &ExperimentConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(SuiteKind::Cluster);
    common_meta(&mut r, cfg);
    let (a, b) = pair_terms(cfg);
    let (report, truncated) = cluster_sequence(cfg, |n| semicommutator_section(cfg, &a, &b, n))?;
    r.meta("truncated", truncated);

    let (fm, basis) = vmo_membership(&cfg.f, cfg)?;
    r.meta("f.class", basis);
    let expect = match &cfg.g {
        None => Expectation::iff(fm),
        Some(g) => {
            let (gm, basis) = vmo_membership(g, cfg)?;
            r.meta("g.class", basis);
            // a non-VMO factor in a mixed pair does not force growth
            if fm == Membership::Vmo && gm == Membership::Vmo {
                Expectation::Strong
            } else {
                Expectation::Unknown
            }
        }
    };
    r.cases.push(verdict_case(format!("overall {}", pair_label(&a, &b)), report.overall, expect));

    let mut counts = Table::new("cluster.csv", &["n", "epsilon", "count"]);
    for (i, &n) in report.ns.iter().enumerate() {
        for (j, &eps) in report.epsilons.iter().enumerate() {
            counts.push(vec![n.to_string(), fmt_float(eps), report.counts[i][j].to_string()]);
        }
    }
    for (eps, v) in report.epsilons.iter().zip(&report.per_eps) {
        counts.trailer.push(format!("verdict epsilon={},{v}", fmt_float(*eps)));
    }
    counts.trailer.push(format!("verdict,{}", report.overall));
    let mut spectra = Table::new("cluster_spectra.csv", &["n", "index", "sigma"]);
    for s in &report.spectra {
        for (i, v) in s.values().iter().enumerate() {
            spectra.push(vec![s.order().to_string(), i.to_string(), fmt_float(*v)]);
        }
    }
    r.tables.push(counts);
    r.tables.push(spectra);
    Ok(r)
}

/// `J T_n(f) J = T_n(f̃)` and equality of singular values of the flipped
/// Hankel-product term with those of its unflipped form.
pub fn suite_flip(cfg: &ExperimentConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(SuiteKind::Flip);
    common_meta(&mut r, cfg);
    let (a, b) = pair_terms(cfg);
    for &n in &cfg.ns {
        let k = k_for(cfg, n, &[&a, &b]);
        let (ca, cb) = (a.coeffs(k)?, b.coeffs(k)?);
        let j = flip_matrix(n);
        let flipped = j.matmul(&toeplitz(&ca, n)).matmul(&j);
        let diff = flipped.max_abs_diff(&toeplitz(&reflect_coeffs(&ca), n));
        r.cases.push(CaseResult::real(format!("JT(f)J vs T(reflect f) n={n}"), diff, Tolerance::AtMost(FLIP_TOEPLITZ_TOL)));

        let (_, q) = widom_rhs(&ca, &cb, n, cfg.inner);
        let sq = singular_values(&q)?;
        let sm = singular_values(&q.flip_conjugate())?;
        let diff = sq.values().iter().zip(sm.values()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        r.cases.push(CaseResult::real(format!("sigma(q) vs sigma(JqJ) n={n}"), diff, Tolerance::AtMost(FLIP_SINGULAR_TOL)));
    }
    Ok(r)
}

fn mo_case(r: &mut SuiteReport, cfg: &ExperimentConfig, name: &str, spec: &SymbolSpec) -> Result<VmoVerdict> {
    let grid = grid_of(spec, cfg)?;
    let deltas: Vec<f64> = default_deltas().into_iter().filter(|&d| d > grid.spacing()).collect();
    let profile = oscillation_profile(&grid, &deltas)?;
    let mut t = Table::new(format!("{}_{name}.csv", r.suite), &["delta", "value"]);
    for (d, v) in profile.deltas.iter().zip(&profile.values) {
        t.push(vec![fmt_float(*d), fmt_float(*v)]);
    }
    r.tables.push(t);

    let (mo, verdict) = vmo_verdict(&grid, &cfg.vmo)?;
    grid_meta(r, name, spec, &grid);
    let tol = match (spec.class(), verdict) {
        (SymbolClass::Continuous, _) | (SymbolClass::Unknown, VmoVerdict::VmoLike) => Tolerance::AtMost(cfg.vmo.vmo_below),
        (SymbolClass::JumpDiscontinuous, _) | (SymbolClass::Unknown, VmoVerdict::NotVmoLike) => Tolerance::AtLeast(cfg.vmo.not_vmo_above),
        (SymbolClass::Unknown, VmoVerdict::Inconclusive) => Tolerance::Unbounded,
    };
    let mut case = CaseResult::real(format!("oscillation {name}={} delta={}", spec.label, fmt_float(cfg.vmo.probe_delta)), mo, tol);
    if verdict == VmoVerdict::Inconclusive && case.outcome == Outcome::Fail {
        case.outcome = Outcome::Inconclusive;
    }
    r.cases.push(case);
    Ok(verdict)
}

fn grid_meta(r: &mut SuiteReport, name: &str, spec: &SymbolSpec, grid: &SampledGrid) {
    r.meta(&format!("{name}.grid_points"), grid.points());
    r.meta(&format!("{name}.class"), spec.class());
}

/// Oscillation profiles `δ ↦ MO(f, δ)` and the VMO-likeness verdict.
pub fn suite_mo_profile(cfg: &ExperimentConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(SuiteKind::MoProfile);
    common_meta(&mut r, cfg);
    mo_case(&mut r, cfg, "f", &cfg.f)?;
    if let Some(g) = &cfg.g {
        mo_case(&mut r, cfg, "g", g)?;
    }
    Ok(r)
}

fn hankel_sequences(cfg: &ExperimentConfig, spec: &SymbolSpec) -> Result<((ClusterReport, bool), (ClusterReport, bool))> {
    let term = SymbolTerm::plain(spec.clone());
    let coeffs = |n: usize| -> Result<FourierCoeffs> { term.coeffs(k_for(cfg, n, &[&term])) };
    let h = cluster_sequence(cfg, |n| Ok(hankel_section(&coeffs(n)?, n)))?;
    let hr = cluster_sequence(cfg, |n| Ok(hankel_section(&reflect_coeffs(&coeffs(n)?), n)))?;
    Ok((h, hr))
}

/// Both strong iff both verdicts are strong; inconclusive if either is.
fn both_strong_case(case: String, a: Verdict, b: Verdict, expect: Expectation) -> CaseResult {
    let label = format!("{a}/{b}");
    let both = a == Verdict::Strong && b == Verdict::Strong;
    let (tol, outcome) = match expect {
        _ if a == Verdict::Inconclusive || b == Verdict::Inconclusive => (Tolerance::Unbounded, Outcome::Inconclusive),
        Expectation::Strong => (Tolerance::Equals("strong/strong".into()), Outcome::from_bool(both)),
        Expectation::NotStrong => (Tolerance::NotEquals("strong/strong".into()), Outcome::from_bool(!both)),
        Expectation::Unknown => (Tolerance::Unbounded, Outcome::Inconclusive),
    };
    CaseResult::labelled(case, label, tol, outcome)
}

/// Cluster verdicts of the Hankel sections of `f` and of its reflection.
pub fn suite_compactness_probe(cfg: &ExperimentConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(SuiteKind::CompactnessProbe);
    common_meta(&mut r, cfg);
    let mut counts = counts_table(r.suite);
    let mut symbols = vec![("f", &cfg.f)];
    symbols.extend(cfg.g.as_ref().map(|g| ("g", g)));
    for (name, spec) in symbols {
        let ((h, t1), (hr, t2)) = hankel_sequences(cfg, spec)?;
        let (m, basis) = vmo_membership(spec, cfg)?;
        r.meta(&format!("{name}.class"), basis);
        r.meta(&format!("{name}.truncated"), t1 || t2);
        // for real symbols the two Hankel matrices share singular values
        let single = if spec.is_real() || m == Membership::Vmo { Expectation::iff(m) } else { Expectation::Unknown };
        r.cases.push(verdict_case(format!("H({})", spec.label), h.overall, single));
        r.cases.push(verdict_case(format!("H(reflect {})", spec.label), hr.overall, single));
        r.cases.push(both_strong_case(format!("both {}", spec.label), h.overall, hr.overall, Expectation::iff(m)));
        push_counts(&mut counts, &format!("H({})", spec.label), &h);
        push_counts(&mut counts, &format!("H(reflect {})", spec.label), &hr);
    }
    r.tables.push(counts);
    Ok(r)
}

/// Self semicommutator `T(|f|²) − T(f)T(f̄)` against the two Hankel-product
/// sequences it splits into, and both against the symbol's class.
pub fn suite_compactness(f: &SymbolSpec, cfg: &ExperimentConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(SuiteKind::Compactness);
    common_meta(&mut r, cfg);
    let a = SymbolTerm::plain(f.clone());
    let b = a.conjugate();
    let (m, basis) = vmo_membership(f, cfg)?;
    r.meta("f.class", basis);
    let expect = Expectation::iff(m);

    let (semi, t0) = cluster_sequence(cfg, |n| semicommutator_section(cfg, &a, &b, n))?;
    let terms = |n: usize| -> Result<(ComplexMatrix, ComplexMatrix)> {
        let k = k_for(cfg, n, &[&a]);
        Ok(widom_rhs(&a.coeffs(k)?, &b.coeffs(k)?, n, cfg.inner))
    };
    let (p, t1) = cluster_sequence(cfg, |n| Ok(terms(n)?.0))?;
    // J q J = P H(f̃)H(f̃)* P, the Hankel product of the reflected symbol
    let (q, t2) = cluster_sequence(cfg, |n| Ok(terms(n)?.1.flip_conjugate()))?;
    r.meta("truncated", t0 || t1 || t2);

    r.cases.push(verdict_case(format!("semicommutator {}", pair_label(&a, &b)), semi.overall, expect));
    r.cases.push(verdict_case(format!("hankel product {}", f.label), p.overall, expect));
    r.cases.push(verdict_case(format!("hankel product reflect {}", f.label), q.overall, expect));

    let determinate = [semi.overall, p.overall, q.overall].iter().all(|&v| v != Verdict::Inconclusive);
    let semi_strong = semi.overall == Verdict::Strong;
    let hankel_strong = p.overall == Verdict::Strong && q.overall == Verdict::Strong;
    let outcome = if !determinate { Outcome::Inconclusive } else { Outcome::from_bool(semi_strong == hankel_strong) };
    r.cases.push(CaseResult::labelled(
        "consistency",
        format!("{}/{}/{}", semi.overall, p.overall, q.overall),
        Tolerance::Equals("semicommutator strong iff both hankel products strong".into()),
        outcome,
    ));

    let mut counts = counts_table(r.suite);
    push_counts(&mut counts, "semicommutator", &semi);
    push_counts(&mut counts, "hankel", &p);
    push_counts(&mut counts, "hankel-reflected", &q);
    r.tables.push(counts);
    Ok(r)
}

/// Both orderings of the self semicommutator against the oscillation verdict.
pub fn suite_vmo(f: &SymbolSpec, cfg: &ExperimentConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(SuiteKind::Vmo);
    common_meta(&mut r, cfg);
    let a = SymbolTerm::plain(f.clone());
    let b = a.conjugate();
    let (m, basis) = vmo_membership(f, cfg)?;
    r.meta("f.class", basis);

    let (fwd, t1) = cluster_sequence(cfg, |n| semicommutator_section(cfg, &a, &b, n))?;
    let (bwd, t2) = cluster_sequence(cfg, |n| semicommutator_section(cfg, &b, &a, n))?;
    r.meta("truncated", t1 || t2);
    r.cases.push(verdict_case(format!("ordering {}", pair_label(&a, &b)), fwd.overall, Expectation::iff(m)));
    r.cases.push(verdict_case(format!("ordering {}", pair_label(&b, &a)), bwd.overall, Expectation::iff(m)));

    let mo = mo_case(&mut r, cfg, "f", f)?;
    let both = fwd.overall == Verdict::Strong && bwd.overall == Verdict::Strong;
    let determinate = fwd.overall != Verdict::Inconclusive && bwd.overall != Verdict::Inconclusive && mo != VmoVerdict::Inconclusive;
    // a finite-n disagreement is evidence of nothing, so it is never a failure
    let (label, outcome) = if !determinate {
        ("inconclusive", Outcome::Inconclusive)
    } else if both == (mo == VmoVerdict::VmoLike) {
        ("holds", Outcome::Pass)
    } else {
        ("disagrees", Outcome::Inconclusive)
    };
    r.cases.push(CaseResult::labelled(
        "biconditional",
        format!("{label}: both-strong={both} oscillation={mo}"),
        Tolerance::Equals("both orderings strong iff vmo-like".into()),
        outcome,
    ));

    let mut counts = counts_table(r.suite);
    push_counts(&mut counts, &pair_label(&a, &b), &fwd);
    push_counts(&mut counts, &pair_label(&b, &a), &bwd);
    r.tables.push(counts);
    Ok(r)
}

/// Mixed semicommutator `T(fg) − T(f)T(g)` of two VMO symbols: its cluster
/// verdict, the verdicts of its Hermitian and skew-Hermitian parts, and the
/// random-state Cauchy–Schwarz check. Refuses symbols outside VMO.
pub fn suite_product(f: &SymbolSpec, g: &SymbolSpec, cfg: &ExperimentConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(SuiteKind::Product);
    common_meta(&mut r, cfg);
    for (name, spec) in [("f", f), ("g", g)] {
        let (m, basis) = vmo_membership(spec, cfg)?;
        if m != Membership::Vmo {
            return Err(Error::Precondition(format!(
                "{name} = {} is {basis}; the mixed-product suite needs both symbols in VMO ∩ L∞",
                spec.label
            )));
        }
        r.meta(&format!("{name}.class"), basis);
    }
    let a = SymbolTerm::plain(f.clone());
    let b = SymbolTerm::plain(g.clone());

    let mut spectra_z = Vec::new();
    let mut parts = Vec::new();
    let mut truncated = false;
    for &n in &cfg.ns {
        let z = semicommutator_section(cfg, &a, &b, n)?;
        truncated |= z.truncated();
        parts.push((z.hermitian_part(), z.skew_hermitian_part()));
        spectra_z.push(z);
    }
    r.meta("truncated", truncated);
    let mut iter = spectra_z.into_iter();
    let (zr, _) = cluster_sequence(cfg, |_| Ok(iter.next().expect("one section per size")))?;
    let mut iter = parts.iter().map(|p| p.0.clone());
    let (br, _) = cluster_sequence(cfg, |_| Ok(iter.next().expect("one section per size")))?;
    let mut iter = parts.into_iter().map(|p| p.1);
    let (cr, _) = cluster_sequence(cfg, |_| Ok(iter.next().expect("one section per size")))?;

    r.cases.push(verdict_case(format!("semicommutator {}", pair_label(&a, &b)), zr.overall, Expectation::Strong));
    r.cases.push(verdict_case("hermitian part", br.overall, Expectation::Strong));
    r.cases.push(verdict_case("skew-hermitian part", cr.overall, Expectation::Strong));
    // T(fg) − T(f)T(g) is the Z-form of the pair (f̄, g)
    push_uchiyama(&mut r, cfg, &a.conjugate(), &b)?;
    r.meta("trials", cfg.uchiyama_trials);
    r.meta("seed", cfg.seed);

    let mut counts = counts_table(r.suite);
    push_counts(&mut counts, "semicommutator", &zr);
    push_counts(&mut counts, "hermitian", &br);
    push_counts(&mut counts, "skew-hermitian", &cr);
    r.tables.push(counts);
    Ok(r)
}

/// Runs one suite. A refused precondition becomes a failed case carrying
/// the diagnostic; every other error is propagated.
pub fn run_suite(kind: SuiteKind, cfg: &ExperimentConfig) -> Result<SuiteReport> {
    let result = match kind {
        SuiteKind::Widom => suite_widom(cfg),
        SuiteKind::Positivity => suite_positivity(cfg),
        SuiteKind::Uchiyama => suite_uchiyama(cfg),
        SuiteKind::Cluster => suite_cluster(cfg),
        SuiteKind::Flip => suite_flip(cfg),
        SuiteKind::MoProfile => suite_mo_profile(cfg),
        SuiteKind::CompactnessProbe => suite_compactness_probe(cfg),
        SuiteKind::Compactness => suite_compactness(&cfg.f, cfg),
        SuiteKind::Vmo => suite_vmo(&cfg.f, cfg),
        SuiteKind::Product => {
            let g = cfg.g.clone().unwrap_or_else(|| conjugate_spec(&cfg.f));
            suite_product(&cfg.f, &g, cfg)
        }
    };
    match result {
        Err(Error::Precondition(msg)) => {
            let mut r = SuiteReport::new(kind);
            common_meta(&mut r, cfg);
            r.cases.push(CaseResult::labelled("precondition", "refused", Tolerance::Equals("vmo symbols".into()), Outcome::Fail));
            r.notes.push(msg);
            Ok(r)
        }
        other => other,
    }
}

/// The conjugate symbol as a spec of its own (conjugated coefficients
/// where there is no conjugate catalog kind).
fn conjugate_spec(f: &SymbolSpec) -> SymbolSpec {
    let label = format!("conj({})", f.label);
    let kind = match &f.kind {
        SymbolKind::Constant(c) => SymbolKind::Constant(c.conj()),
        SymbolKind::Monomial(m) => SymbolKind::Monomial(-m),
        SymbolKind::TrigPolynomial(t) => SymbolKind::TrigPolynomial(t.iter().map(|(k, c)| (-k, c.conj())).collect()),
        SymbolKind::SampledGrid(g) => {
            SymbolKind::SampledGrid(SampledGrid::new(g.values().iter().map(|v| v.conj()).collect()).expect("same grid shape"))
        }
        real => real.clone(),
    };
    SymbolSpec { kind, label }
}
