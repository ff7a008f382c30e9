use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use super::spec::SampledGrid;
use crate::error::{Error, Result};

/// Mean-oscillation measurements `MO(f, δ)` at increasing window lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillationProfile {
    pub deltas: Vec<f64>,
    pub values: Vec<f64>,
}

impl OscillationProfile {
    /// The measurement at the largest listed `δ` not exceeding `delta`.
    pub fn value_at(&self, delta: f64) -> Option<f64> {
        self.deltas.iter().zip(&self.values).filter(|(d, _)| **d <= delta * (1.0 + 1e-12)).map(|(_, v)| *v).next_back()
    }
}

/// Outcome of the numeric VMO-likeness test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VmoVerdict {
    VmoLike,
    NotVmoLike,
    Inconclusive,
}

impl fmt::Display for VmoVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VmoVerdict::VmoLike => "vmo-like",
            VmoVerdict::NotVmoLike => "not-vmo-like",
            VmoVerdict::Inconclusive => "inconclusive",
        })
    }
}

/// Thresholds for [`vmo_verdict`]: below `vmo_below` at `probe_delta` is
/// VMO-like, above `not_vmo_above` is not.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VmoThresholds {
    pub probe_delta: f64,
    pub vmo_below: f64,
    pub not_vmo_above: f64,
}

impl Default for VmoThresholds {
    fn default() -> Self {
        Self { probe_delta: 2.0 * PI / 256.0, vmo_below: 0.05, not_vmo_above: 0.2 }
    }
}

/// Window lengths `2π/2^j` for `j = 10, 9, …, 2`, ascending.
pub fn default_deltas() -> Vec<f64> {
    (2..=10).rev().map(|j| 2.0 * PI / f64::from(1u32 << j)).collect()
}

fn window_points(grid: &SampledGrid, delta: f64) -> Result<usize> {
    let h = grid.spacing();
    if delta.is_nan() || delta <= h || delta > 2.0 * PI * (1.0 + 1e-12) {
        return Err(Error::WindowOutOfRange { delta, resolution: h });
    }
    Ok(((delta / h) * (1.0 + 1e-12)).floor().min(grid.points() as f64) as usize)
}

/// `best[w]` = largest RMS deviation over all windows of `w` consecutive grid
/// points (with wrap-around), made cumulative so it is nondecreasing in `w`.
fn cumulative_window_maxima(grid: &SampledGrid, max_points: usize) -> Vec<f64> {
    let vals = grid.values();
    let m = vals.len();
    // shifting by the first sample keeps constant grids exactly zero
    let shift = vals[0];
    let mut s1 = Vec::with_capacity(2 * m + 1);
    let mut s2 = Vec::with_capacity(2 * m + 1);
    s1.push(Complex64::new(0.0, 0.0));
    s2.push(0.0);
    for j in 0..2 * m {
        let d = vals[j % m] - shift;
        s1.push(s1[j] + d);
        s2.push(s2[j] + d.norm_sqr());
    }
    let mut best = vec![0.0f64; max_points + 1];
    for w in 2..=max_points {
        let wf = w as f64;
        let mut top: f64 = 0.0;
        for s in 0..m {
            let mean = (s1[s + w] - s1[s]) / wf;
            let var = (s2[s + w] - s2[s]) / wf - mean.norm_sqr();
            top = top.max(var);
        }
        best[w] = best[w - 1].max(top.max(0.0).sqrt());
    }
    best
}

/// `MO(f, δ)`: the largest root-mean-square deviation from the window mean
/// over all grid-anchored windows (wrapping around the circle) whose length
/// is at most `δ`. A window of `w` points has length `w·2π/M`.
pub fn mean_oscillation(grid: &SampledGrid, delta: f64) -> Result<f64> {
    let w = window_points(grid, delta)?;
    Ok(cumulative_window_maxima(grid, w)[w])
}

/// [`mean_oscillation`] at each of `deltas` (ascending).
pub fn oscillation_profile(grid: &SampledGrid, deltas: &[f64]) -> Result<OscillationProfile> {
    if deltas.windows(2).any(|p| p[0] > p[1]) {
        return Err(Error::InvalidArgument("window lengths must be sorted ascending".into()));
    }
    let points = deltas.iter().map(|&d| window_points(grid, d)).collect::<Result<Vec<_>>>()?;
    let best = cumulative_window_maxima(grid, points.last().copied().unwrap_or(1));
    Ok(OscillationProfile { deltas: deltas.to_vec(), values: points.iter().map(|&w| best[w]).collect() })
}

/// Classifies a grid by its mean oscillation at the probe window.
pub fn vmo_verdict(grid: &SampledGrid, thresholds: &VmoThresholds) -> Result<(f64, VmoVerdict)> {
    let mo = mean_oscillation(grid, thresholds.probe_delta)?;
    let verdict = if mo < thresholds.vmo_below {
        VmoVerdict::VmoLike
    } else if mo > thresholds.not_vmo_above {
        VmoVerdict::NotVmoLike
    } else {
        VmoVerdict::Inconclusive
    };
    Ok((mo, verdict))
}
