use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::coeffs::{conjugate_coeffs, product_coeffs, FourierCoeffs};
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Values of a symbol at `M` uniform points `θ_j = 2πj/M`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledGrid {
    values: Vec<Complex64>,
}

impl SampledGrid {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        let m = values.len();
        if m < 8 || !m.is_power_of_two() {
            return Err(Error::InvalidGrid(format!("need a power of two with at least 8 points, got {m}")));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidGrid("non-finite sample".into()));
        }
        Ok(Self { values })
    }

    /// Samples `f` at `θ_j = 2πj/M`.
    pub fn from_fn(points: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let h = 2.0 * PI / points as f64;
        Self::new((0..points).map(|j| f(h * j as f64)).collect())
    }

    /// Reads one sample per line, either `re` or `re,im`. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut values = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::InvalidGrid(format!("{}:{}: cannot parse {line:?}", path.display(), lineno + 1));
            let mut parts = line.split(',').map(str::trim);
            let re: f64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let im: f64 = match parts.next() {
                Some(s) => s.parse().map_err(|_| bad())?,
                None => 0.0,
            };
            values.push(Complex64::new(re, im));
        }
        Self::new(values)
    }

    pub fn points(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Grid spacing `2π/M`.
    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.values.len() as f64
    }
}

/// The kinds of symbol the catalog knows about.
#[derive(Debug, Clone, PartialEq)]
pub enum SymbolKind {
    Constant(Complex64),
    /// `z^m = e^{imθ}`.
    Monomial(i64),
    /// `Σ c e^{ikθ}` over `(k, c)` pairs; repeated `k` accumulate.
    TrigPolynomial(Vec<(i64, Complex64)>),
    /// `(π − θ)/π` on `(0, 2π)`: bounded with a single jump, so in L∞ but not VMO.
    Sawtooth,
    /// Poisson-kernel type symbol with coefficients `e^{−a|k|}`, `a > 0`.
    SmoothExp(f64),
    SampledGrid(SampledGrid),
}

/// Function-space class of a symbol, as far as the catalog can tell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolClass {
    /// Continuous on the circle, hence in VMO ∩ L∞.
    Continuous,
    /// Bounded with a jump discontinuity: in L∞ but not in VMO.
    JumpDiscontinuous,
    /// Raw samples; class must be judged from the oscillation profile.
    Unknown,
}

impl fmt::Display for SymbolClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymbolClass::Continuous => "continuous (VMO ∩ L∞)",
            SymbolClass::JumpDiscontinuous => "jump-discontinuous (L∞ \\ VMO)",
            SymbolClass::Unknown => "unknown (sampled)",
        })
    }
}

/// A catalog entry or sampled grid together with the label it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolSpec {
    pub kind: SymbolKind,
    pub label: String,
}

impl SymbolSpec {
    pub fn new(kind: SymbolKind, label: impl Into<String>) -> Result<Self> {
        match &kind {
            SymbolKind::TrigPolynomial(terms) if terms.is_empty() => {
                return Err(Error::InvalidArgument("trig polynomial needs at least one term".into()))
            }
            SymbolKind::TrigPolynomial(terms) if terms.iter().any(|(_, c)| !c.re.is_finite() || !c.im.is_finite()) => {
                return Err(Error::InvalidArgument("non-finite trig polynomial coefficient".into()))
            }
            SymbolKind::Constant(c) if !c.re.is_finite() || !c.im.is_finite() => {
                return Err(Error::InvalidArgument("non-finite constant".into()))
            }
            SymbolKind::SmoothExp(a) if !(a.is_finite() && *a > 0.0) => {
                return Err(Error::InvalidArgument(format!("decay rate must be positive, got {a}")))
            }
            _ => {}
        }
        Ok(Self { kind, label: label.into() })
    }

    pub fn constant(c: Complex64) -> Self {
        Self { kind: SymbolKind::Constant(c), label: format!("constant:{}", format_complex(c)) }
    }

    pub fn monomial(m: i64) -> Self {
        Self { kind: SymbolKind::Monomial(m), label: format!("monomial:{m}") }
    }

    pub fn trig_polynomial(terms: Vec<(i64, Complex64)>) -> Result<Self> {
        let label =
            format!("trigpoly:[{}]", terms.iter().map(|(k, c)| format!("{}@{k}", format_complex(*c))).collect::<Vec<_>>().join(","));
        Self::new(SymbolKind::TrigPolynomial(terms), label)
    }

    pub fn sawtooth() -> Self {
        Self { kind: SymbolKind::Sawtooth, label: "sawtooth".into() }
    }

    pub fn smooth_exp(a: f64) -> Result<Self> {
        Self::new(SymbolKind::SmoothExp(a), format!("smoothexp:{a}"))
    }

    pub fn sampled(grid: SampledGrid, label: impl Into<String>) -> Self {
        Self { kind: SymbolKind::SampledGrid(grid), label: label.into() }
    }

    /// `cos θ = (z + z^{−1})/2`.
    pub fn cosine() -> Self {
        Self::trig_polynomial(vec![(-1, Complex64::new(0.5, 0.0)), (1, Complex64::new(0.5, 0.0))])
            .expect("static polynomial")
            .relabel("cos")
    }

    /// `sin θ = (z − z^{−1})/(2i)`.
    pub fn sine() -> Self {
        Self::trig_polynomial(vec![(-1, Complex64::new(0.0, 0.5)), (1, Complex64::new(0.0, -0.5))])
            .expect("static polynomial")
            .relabel("sin")
    }

    fn relabel(mut self, label: &str) -> Self {
        self.label = label.into();
        self
    }

    /// Parses a catalog label.
    ///
    /// Accepted forms: `constant:<c>`, `monomial:<m>`, `z`, `zbar`, `cos`,
    /// `sin`, `trigpoly:[<c>@<k>,...]`, `sawtooth`, `smoothexp[:<a>]`, and
    /// `grid:<path>` for a sample file. Complex numbers are written `1`,
    /// `-2.5i`, `1+2i`, and so on.
    pub fn parse(label: &str) -> Result<Self> {
        let label = label.trim();
        let err = |reason: &str| Error::SymbolLabel { label: label.to_string(), reason: reason.to_string() };
        let (head, arg) = match label.split_once(':') {
            Some((h, a)) => (h.trim(), Some(a.trim())),
            None => (label, None),
        };
        let spec = match (head.to_ascii_lowercase().as_str(), arg) {
            ("constant" | "const", Some(a)) => {
                let c = parse_complex(a).ok_or_else(|| err("bad complex constant"))?;
                Self::new(SymbolKind::Constant(c), label)?
            }
            ("monomial", Some(a)) => {
                let m: i64 = a.parse().map_err(|_| err("monomial exponent must be an integer"))?;
                Self::new(SymbolKind::Monomial(m), label)?
            }
            ("z", None) => Self::new(SymbolKind::Monomial(1), label)?,
            ("zbar", None) => Self::new(SymbolKind::Monomial(-1), label)?,
            ("cos", None) => Self::cosine(),
            ("sin", None) => Self::sine(),
            ("trigpoly", Some(a)) => {
                let inner = a.strip_prefix('[').and_then(|s| s.strip_suffix(']')).ok_or_else(|| err("expected trigpoly:[c@k,...]"))?;
                let mut terms = Vec::new();
                for term in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                    let (c, k) = term.rsplit_once('@').ok_or_else(|| err("term must be <coeff>@<index>"))?;
                    let c = parse_complex(c.trim()).ok_or_else(|| err("bad coefficient"))?;
                    let k: i64 = k.trim().parse().map_err(|_| err("bad index"))?;
                    terms.push((k, c));
                }
                if terms.is_empty() {
                    return Err(err("trig polynomial needs at least one term"));
                }
                Self::new(SymbolKind::TrigPolynomial(terms), label)?
            }
            ("sawtooth", None) => Self::sawtooth(),
            ("smoothexp", None) => Self::new(SymbolKind::SmoothExp(1.0), label)?,
            ("smoothexp", Some(a)) => {
                let rate: f64 = a.parse().map_err(|_| err("decay rate must be a number"))?;
                Self::new(SymbolKind::SmoothExp(rate), label).map_err(|e| err(&e.to_string()))?
            }
            ("grid", Some(path)) => Self::sampled(SampledGrid::from_file(Path::new(path))?, label),
            _ => return Err(err("unknown symbol")),
        };
        Ok(spec)
    }

    /// Function-space class used for theory predictions.
    pub fn class(&self) -> SymbolClass {
        match self.kind {
            SymbolKind::Sawtooth => SymbolClass::JumpDiscontinuous,
            SymbolKind::SampledGrid(_) => SymbolClass::Unknown,
            _ => SymbolClass::Continuous,
        }
    }

    /// True when the symbol is real-valued on the circle.
    pub fn is_real(&self) -> bool {
        match &self.kind {
            SymbolKind::Constant(c) => c.im == 0.0,
            SymbolKind::Monomial(m) => *m == 0,
            SymbolKind::TrigPolynomial(_) => catalog_coeffs(self, self.max_index()).is_ok_and(|c| c.is_hermitian_symmetric(0.0)),
            SymbolKind::Sawtooth | SymbolKind::SmoothExp(_) => true,
            SymbolKind::SampledGrid(g) => g.values().iter().all(|v| v.im == 0.0),
        }
    }

    /// True for kinds whose coefficient sequence is finitely supported.
    pub fn is_band_limited(&self) -> bool {
        matches!(self.kind, SymbolKind::Constant(_) | SymbolKind::Monomial(_) | SymbolKind::TrigPolynomial(_))
    }

    fn max_index(&self) -> usize {
        match &self.kind {
            SymbolKind::Monomial(m) => m.unsigned_abs() as usize,
            SymbolKind::TrigPolynomial(t) => t.iter().map(|(k, _)| k.unsigned_abs() as usize).max().unwrap_or(0),
            _ => 0,
        }
    }

    /// Closed-form `c_k`; `None` for sampled grids.
    pub fn coefficient(&self, k: i64) -> Option<Complex64> {
        Some(match &self.kind {
            SymbolKind::Constant(c) => {
                if k == 0 {
                    *c
                } else {
                    ZERO
                }
            }
            SymbolKind::Monomial(m) => {
                if k == *m {
                    Complex64::new(1.0, 0.0)
                } else {
                    ZERO
                }
            }
            SymbolKind::TrigPolynomial(terms) => terms.iter().filter(|(j, _)| *j == k).map(|(_, c)| c).sum(),
            SymbolKind::Sawtooth => {
                if k == 0 {
                    ZERO
                } else {
                    // 1/(iπk)
                    Complex64::new(0.0, -1.0 / (PI * k as f64))
                }
            }
            SymbolKind::SmoothExp(a) => Complex64::new((-a * k.unsigned_abs() as f64).exp(), 0.0),
            SymbolKind::SampledGrid(_) => return None,
        })
    }

    /// Upper bound on `(Σ_{|k|>K} |c_k|²)^{1/2}`; `None` for sampled grids.
    pub fn l2_tail(&self, k_max: usize) -> Option<f64> {
        match &self.kind {
            SymbolKind::Constant(_) => Some(0.0),
            SymbolKind::Monomial(m) => Some(if m.unsigned_abs() as usize > k_max { 1.0 } else { 0.0 }),
            SymbolKind::TrigPolynomial(_) => {
                let beyond = (k_max + 1) as i64..=self.max_index() as i64;
                let s: f64 = beyond.flat_map(|j| [j, -j]).map(|j| self.coefficient(j).unwrap_or(ZERO).norm_sqr()).sum();
                Some(s.sqrt())
            }
            // Σ_{k>K} 1/k² < 1/K, and equals π²/6 for K = 0
            SymbolKind::Sawtooth => {
                let s = if k_max == 0 { PI * PI / 6.0 } else { 1.0 / k_max as f64 };
                Some((2.0 * s / (PI * PI)).sqrt())
            }
            SymbolKind::SmoothExp(a) => {
                let r2 = (-2.0 * a).exp();
                Some((2.0 * r2.powi(k_max as i32 + 1) / (1.0 - r2)).sqrt())
            }
            SymbolKind::SampledGrid(_) => None,
        }
    }

    /// Value at angle `θ`; `None` for sampled grids off the grid.
    pub fn evaluate(&self, theta: f64) -> Option<Complex64> {
        Some(match &self.kind {
            SymbolKind::Constant(c) => *c,
            SymbolKind::Monomial(m) => Complex64::from_polar(1.0, *m as f64 * theta),
            SymbolKind::TrigPolynomial(terms) => terms.iter().map(|(k, c)| c * Complex64::from_polar(1.0, *k as f64 * theta)).sum(),
            SymbolKind::Sawtooth => {
                let t = theta.rem_euclid(2.0 * PI);
                // the Fourier series converges to the jump midpoint at θ = 0
                if t == 0.0 {
                    ZERO
                } else {
                    Complex64::new((PI - t) / PI, 0.0)
                }
            }
            SymbolKind::SmoothExp(a) => {
                let r = (-a).exp();
                Complex64::new((1.0 - r * r) / (1.0 - 2.0 * r * theta.cos() + r * r), 0.0)
            }
            SymbolKind::SampledGrid(g) => {
                let h = g.spacing();
                let j = (theta.rem_euclid(2.0 * PI) / h).round();
                if ((theta.rem_euclid(2.0 * PI) / h) - j).abs() > 1e-9 {
                    return None;
                }
                g.values()[j as usize % g.points()]
            }
        })
    }

    /// Samples onto an `M`-point grid. Sampled grids are returned as-is when
    /// `M` matches their own size.
    pub fn sample(&self, points: usize) -> Result<SampledGrid> {
        if let SymbolKind::SampledGrid(g) = &self.kind {
            if g.points() == points {
                return Ok(g.clone());
            }
            return Err(Error::InvalidGrid(format!("{} has {} samples, cannot resample to {points}", self.label, g.points())));
        }
        SampledGrid::from_fn(points, |t| self.evaluate(t).expect("closed-form symbol"))
    }
}

impl FromStr for SymbolSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for SymbolSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

fn format_complex(c: Complex64) -> String {
    let (re, im) = (c.re, c.im);
    if im == 0.0 {
        format!("{re}")
    } else if re == 0.0 {
        format!("{im}i")
    } else if im < 0.0 {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    }
}

/// Parses `a`, `bi`, `a+bi`, `a-bi` (also `i`, `-i`).
pub(crate) fn parse_complex(s: &str) -> Option<Complex64> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse().ok().map(|re| Complex64::new(re, 0.0));
    };
    // split at the last sign that is neither leading nor an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&p| (bytes[p] == b'+' || bytes[p] == b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(p) => (body[..p].parse().ok()?, &body[p..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse().ok()?,
    };
    Some(Complex64::new(re, im))
}

/// Exact coefficients of a catalog symbol truncated to `[−K, K]`.
pub fn catalog_coeffs(spec: &SymbolSpec, k_max: usize) -> Result<FourierCoeffs> {
    if matches!(spec.kind, SymbolKind::SampledGrid(_)) {
        return Err(Error::SampledGridHasNoClosedForm);
    }
    let coeffs = FourierCoeffs::from_fn(k_max, true, |k| spec.coefficient(k).expect("closed form"))?;
    Ok(coeffs.with_l2_tail(spec.l2_tail(k_max)))
}

/// Coefficients by the `M`-point rectangle rule (exact for band-limited data
/// below the Nyquist index), computed with one FFT.
pub fn sample_coeffs(grid: &SampledGrid, k_max: usize) -> Result<FourierCoeffs> {
    let m = grid.points();
    let needed = 4 * k_max + 4;
    if m < needed {
        return Err(Error::GridTooSmall { points: m, k: k_max, needed });
    }
    let mut buf = grid.values().to_vec();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let scale = 1.0 / m as f64;
    let k = k_max as i64;
    FourierCoeffs::new((-k..=k).map(|j| buf[j.rem_euclid(m as i64) as usize] * scale).collect(), false)
}

/// Coefficients of a symbol: closed form when available, quadrature on the
/// grid's own points otherwise.
pub fn symbol_coeffs(spec: &SymbolSpec, k_max: usize) -> Result<FourierCoeffs> {
    match &spec.kind {
        SymbolKind::SampledGrid(g) => sample_coeffs(g, k_max),
        _ => catalog_coeffs(spec, k_max),
    }
}

/// A symbol, optionally conjugated. Semicommutators are formed from pairs of
/// terms such as `(f, f̄)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolTerm {
    pub spec: SymbolSpec,
    pub conjugated: bool,
}

impl SymbolTerm {
    pub fn plain(spec: SymbolSpec) -> Self {
        Self { spec, conjugated: false }
    }

    pub fn conj(spec: SymbolSpec) -> Self {
        Self { spec, conjugated: true }
    }

    pub fn conjugate(&self) -> Self {
        Self { spec: self.spec.clone(), conjugated: !self.conjugated }
    }

    pub fn coeffs(&self, k_max: usize) -> Result<FourierCoeffs> {
        let c = symbol_coeffs(&self.spec, k_max)?;
        Ok(if self.conjugated { conjugate_coeffs(&c) } else { c })
    }

    pub fn label(&self) -> String {
        if self.conjugated {
            format!("conj({})", self.spec.label)
        } else {
            self.spec.label.clone()
        }
    }
}

/// Coefficients of the product `a·b` on `[−K, K]` (or wider for
/// convolutions). Uses a closed form where the catalog has one (the squared
/// sawtooth); otherwise convolves the truncations at `K`.
pub fn term_product(a: &SymbolTerm, b: &SymbolTerm, k_max: usize) -> Result<FourierCoeffs> {
    if a.spec.kind == SymbolKind::Sawtooth && b.spec.kind == SymbolKind::Sawtooth {
        // real-valued, so conjugation is irrelevant
        return Ok(sawtooth_squared(k_max));
    }
    Ok(product_coeffs(&a.coeffs(k_max)?, &b.coeffs(k_max)?))
}

/// `((π − θ)/π)² = 1/3 + Σ_{k≠0} 2/(π²k²) e^{ikθ}`.
fn sawtooth_squared(k_max: usize) -> FourierCoeffs {
    let coeffs = FourierCoeffs::from_fn(k_max, true, |k| {
        if k == 0 {
            Complex64::new(1.0 / 3.0, 0.0)
        } else {
            Complex64::new(2.0 / (PI * PI * (k * k) as f64), 0.0)
        }
    })
    .expect("finite closed form");
    // Σ_{k>K} 1/k⁴ < 1/(3K³), and equals π⁴/90 for K = 0
    let s = if k_max == 0 { PI.powi(4) / 90.0 } else { 1.0 / (3.0 * (k_max as f64).powi(3)) };
    coeffs.with_l2_tail(Some((2.0 * 4.0 * s / PI.powi(4)).sqrt()))
}
