use std::fmt;

use super::{singular_values, SingularSpectrum};
use crate::error::{Error, Result};
use crate::structured::ComplexMatrix;

/// Finite-data proxy for the cluster type of a matrix sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Outlier counts settle to a constant: `O(1)` behaviour.
    Strong,
    /// Counts grow, but markedly slower than `n`: `o(n)` behaviour.
    Weak,
    /// Counts grow proportionally to `n`.
    NoCluster,
    Inconclusive,
}

impl Verdict {
    /// Rank used to pick the weakest verdict: strong > weak > inconclusive > none.
    fn strength(self) -> u8 {
        match self {
            Verdict::Strong => 3,
            Verdict::Weak => 2,
            Verdict::Inconclusive => 1,
            Verdict::NoCluster => 0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Strong => "strong",
            Verdict::Weak => "weak",
            Verdict::NoCluster => "none",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Heuristic knobs for [`classify_cluster`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterThresholds {
    /// Fraction of the largest sizes over which counts must be constant for
    /// a strong verdict (rounded up).
    pub constancy_fraction: f64,
    /// Weak requires `N(n_max)/n_max ≤ weak_decay · N(n_min)/n_min`.
    pub weak_decay: f64,
    /// No-cluster requires the relative spread of `N(n)/n` to stay within this.
    pub proportional_spread: f64,
}

impl Default for ClusterThresholds {
    fn default() -> Self {
        Self { constancy_fraction: 0.5, weak_decay: 0.5, proportional_spread: 0.1 }
    }
}

/// Outlier counts `N(n, ε)` over a size grid and threshold grid, with the
/// verdicts derived from them.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterReport {
    pub ns: Vec<usize>,
    pub epsilons: Vec<f64>,
    /// `counts[i][j] = N(ns[i], epsilons[j])`.
    pub counts: Vec<Vec<usize>>,
    pub per_eps: Vec<Verdict>,
    pub overall: Verdict,
    /// Spectra of the sections, one per size (empty when built from a bare
    /// count table).
    pub spectra: Vec<SingularSpectrum>,
}

impl ClusterReport {
    /// `N(n, ε_j)` for every size.
    pub fn counts_for_eps(&self, j: usize) -> Vec<usize> {
        self.counts.iter().map(|row| row[j]).collect()
    }

    /// Index of `eps` in the threshold grid.
    pub fn eps_index(&self, eps: f64) -> Option<usize> {
        self.epsilons.iter().position(|&e| e == eps)
    }
}

fn validate_sizes(ns: &[usize]) -> Result<()> {
    if ns.len() < 4 || ns.windows(2).any(|w| w[0] >= w[1]) || ns[0] == 0 {
        return Err(Error::TooFewSizes(ns.to_vec()));
    }
    Ok(())
}

fn validate_epsilons(epsilons: &[f64]) -> Result<()> {
    if epsilons.is_empty() || epsilons.iter().any(|&e| !(e > 0.0 && e.is_finite())) {
        return Err(Error::InvalidArgument(format!("thresholds must be positive and finite, got {epsilons:?}")));
    }
    Ok(())
}

/// Verdict for one count column `N(n, ε)` over `ns`.
///
/// * strong: constant over the largest `⌈constancy_fraction · len⌉` sizes;
/// * weak: nondecreasing, not constant, and the outlier density drops by at
///   least the `weak_decay` factor from the smallest to the largest size;
/// * none: the density `N/n` has relative spread within `proportional_spread`;
/// * inconclusive otherwise.
fn classify_column(ns: &[usize], counts: &[usize], th: &ClusterThresholds) -> Verdict {
    let len = ns.len();
    let window = ((len as f64 * th.constancy_fraction).ceil() as usize).clamp(2, len);
    let top = &counts[len - window..];
    if top.iter().all(|&c| c == top[0]) {
        return Verdict::Strong;
    }

    let density: Vec<f64> = ns.iter().zip(counts).map(|(&n, &c)| c as f64 / n as f64).collect();
    let nondecreasing = counts.windows(2).all(|w| w[0] <= w[1]);
    let constant = counts.iter().all(|&c| c == counts[0]);
    if nondecreasing && !constant && density[len - 1] <= th.weak_decay * density[0] {
        return Verdict::Weak;
    }

    let max = density.iter().cloned().fold(f64::MIN, f64::max);
    let min = density.iter().cloned().fold(f64::MAX, f64::min);
    let mean = density.iter().sum::<f64>() / len as f64;
    if mean > 0.0 && (max - min) / mean <= th.proportional_spread {
        return Verdict::NoCluster;
    }
    Verdict::Inconclusive
}

/// Classifies a count table `counts[i][j] = N(ns[i], epsilons[j])`.
///
/// Returns the per-threshold verdicts and the overall verdict, which is
/// strong only when every threshold is strong and otherwise the weakest
/// per-threshold verdict.
pub fn classify_cluster(ns: &[usize], counts: &[Vec<usize>], th: &ClusterThresholds) -> Result<(Vec<Verdict>, Verdict)> {
    validate_sizes(ns)?;
    if counts.len() != ns.len() {
        return Err(Error::InvalidArgument(format!("{} count rows for {} sizes", counts.len(), ns.len())));
    }
    let width = counts[0].len();
    if width == 0 || counts.iter().any(|r| r.len() != width) {
        return Err(Error::InvalidArgument("count table rows must have equal, nonzero length".into()));
    }
    let per_eps: Vec<Verdict> = (0..width)
        .map(|j| {
            let column: Vec<usize> = counts.iter().map(|r| r[j]).collect();
            classify_column(ns, &column, th)
        })
        .collect();
    let overall = per_eps.iter().copied().min_by_key(|v| v.strength()).expect("nonempty");
    Ok((per_eps, overall))
}

/// Builds the section for every size, counts singular values `≥ ε`, and
/// classifies the table.
pub fn cluster_of_sections(
    mut builder: impl FnMut(usize) -> Result<ComplexMatrix>,
    ns: &[usize],
    epsilons: &[f64],
    th: &ClusterThresholds,
) -> Result<ClusterReport> {
    validate_sizes(ns)?;
    validate_epsilons(epsilons)?;
    let mut spectra = Vec::with_capacity(ns.len());
    for &n in ns {
        let section = builder(n)?;
        if section.order() != n {
            return Err(Error::InvalidArgument(format!("builder returned order {} for n = {n}", section.order())));
        }
        spectra.push(singular_values(&section)?);
    }
    report_from_spectra(ns, epsilons, spectra, th)
}

/// Same as [`cluster_of_sections`] for precomputed spectra.
pub fn report_from_spectra(
    ns: &[usize],
    epsilons: &[f64],
    spectra: Vec<SingularSpectrum>,
    th: &ClusterThresholds,
) -> Result<ClusterReport> {
    validate_sizes(ns)?;
    validate_epsilons(epsilons)?;
    let counts: Vec<Vec<usize>> =
        spectra.iter().map(|s| epsilons.iter().map(|&e| s.outlier_count(e)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    let (per_eps, overall) = classify_cluster(ns, &counts, th)?;
    Ok(ClusterReport { ns: ns.to_vec(), epsilons: epsilons.to_vec(), counts, per_eps, overall, spectra })
}

#[cfg(test)]
mod tests {
    use super::*;

    const NS: [usize; 4] = [64, 128, 256, 512];

    fn one_column(counts: &[usize]) -> Vec<Vec<usize>> {
        counts.iter().map(|&c| vec![c]).collect()
    }

    #[test]
    fn constant_counts_are_strong() {
        let (_, v) = classify_cluster(&NS, &one_column(&[1, 1, 1, 1]), &ClusterThresholds::default()).unwrap();
        assert_eq!(v, Verdict::Strong);
    }

    #[test]
    fn proportional_growth_is_none() {
        let (_, v) = classify_cluster(&NS, &one_column(&[2, 4, 8, 16]), &ClusterThresholds::default()).unwrap();
        assert_eq!(v, Verdict::NoCluster);
    }

    #[test]
    fn slow_growth_is_weak() {
        let (_, v) = classify_cluster(&NS, &one_column(&[2, 3, 4, 5]), &ClusterThresholds::default()).unwrap();
        assert_eq!(v, Verdict::Weak);
    }

    #[test]
    fn erratic_counts_are_inconclusive() {
        let (_, v) = classify_cluster(&NS, &one_column(&[5, 2, 9, 3]), &ClusterThresholds::default()).unwrap();
        assert_eq!(v, Verdict::Inconclusive);
    }

    #[test]
    fn overall_takes_weakest() {
        let counts = vec![vec![1, 2], vec![1, 4], vec![1, 8], vec![1, 16]];
        let (per, overall) = classify_cluster(&NS, &counts, &ClusterThresholds::default()).unwrap();
        assert_eq!(per, vec![Verdict::Strong, Verdict::NoCluster]);
        assert_eq!(overall, Verdict::NoCluster);
    }

    #[test]
    fn rejects_short_or_unsorted_grids() {
        let th = ClusterThresholds::default();
        assert!(matches!(classify_cluster(&[1, 2, 3], &one_column(&[0, 0, 0]), &th), Err(Error::TooFewSizes(_))));
        assert!(classify_cluster(&[4, 3, 5, 6], &one_column(&[0, 0, 0, 0]), &th).is_err());
    }

    #[test]
    fn zero_sections_are_strong() {
        let r = cluster_of_sections(|n| Ok(ComplexMatrix::zeros(n)), &[4, 8, 16, 32], &[0.1, 0.01], &ClusterThresholds::default()).unwrap();
        assert_eq!(r.overall, Verdict::Strong);
        assert!(r.counts.iter().flatten().all(|&c| c == 0));
    }
}
