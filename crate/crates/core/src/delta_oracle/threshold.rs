//! Power-law fits of the rate just below the kinematic threshold.

use serde::{Deserialize, Serialize};

use super::{eval_angular, AngularBudget, ScatterSpec};
use crate::error::{Error, Result};
use crate::numeric::fit_line;

/// Least-squares exponent of `f ~ eps^p` on a window of slacks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdFit {
    pub exponent: f64,
    pub exponent_stderr: f64,
    pub epsilon_window: (f64, f64),
    pub points: usize,
    /// `(eps, f)` pairs that entered the fit.
    pub samples: Vec<(f64, f64)>,
}

const MIN_POINTS: usize = 5;

/// Evaluate the angular oracle at `g = sum(radii) - eps` for each `eps` and
/// fit `log f` against `log eps`.
pub fn threshold_scan(spec: &ScatterSpec, epsilon_grid: &[f64], budget: &AngularBudget) -> Result<ThresholdFit> {
    if let Some(e) = epsilon_grid.iter().find(|e| !(e.is_finite() && **e > 0.0)) {
        return Err(Error::Domain(format!("slacks must be positive, got {e}")));
    }
    let total: f64 = spec.radii().iter().sum();
    let mut grid = epsilon_grid.to_vec();
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup();
    let mut values = Vec::with_capacity(grid.len());
    for &eps in &grid {
        if eps >= total {
            return Err(Error::Domain(format!("slack {eps} leaves no positive g")));
        }
        values.push(eval_angular(&spec.with_g(total - eps)?, budget)?.value);
    }
    threshold_fit(&grid, &values)
}

/// Fit `log f = p log eps + b` to samples sorted by increasing slack.
///
/// Non-positive values shrink the window to the longest run of positive
/// points; fewer than five survivors is an error.
pub fn threshold_fit(epsilons: &[f64], values: &[f64]) -> Result<ThresholdFit> {
    if epsilons.len() != values.len() {
        return Err(Error::Domain("slacks and values differ in length".into()));
    }
    if epsilons.windows(2).any(|w| !(w[0] < w[1])) || epsilons.iter().any(|e| !(*e > 0.0)) {
        return Err(Error::Domain("slacks must be positive and strictly increasing".into()));
    }
    // longest contiguous run with f > 0
    let (mut best, mut start) = ((0, 0), 0);
    for i in 0..=values.len() {
        if i == values.len() || !(values[i] > 0.0 && values[i].is_finite()) {
            if i - start > best.1 - best.0 {
                best = (start, i);
            }
            start = i + 1;
        }
    }
    let (lo, hi) = best;
    if hi - lo < values.len() {
        log::warn!("threshold window shrunk to {} of {} points", hi - lo, values.len());
    }
    if hi - lo < MIN_POINTS {
        return Err(Error::Fit(format!("only {} positive points in the window (need {MIN_POINTS})", hi - lo)));
    }
    let xs: Vec<f64> = epsilons[lo..hi].iter().map(|e| e.ln()).collect();
    let ys: Vec<f64> = values[lo..hi].iter().map(|f| f.ln()).collect();
    let fit = fit_line(&xs, &ys).ok_or_else(|| Error::Fit("degenerate slack grid".into()))?;
    Ok(ThresholdFit {
        exponent: fit.slope,
        exponent_stderr: fit.slope_stderr,
        epsilon_window: (epsilons[lo], epsilons[hi - 1]),
        points: hi - lo,
        samples: epsilons[lo..hi].iter().copied().zip(values[lo..hi].iter().copied()).collect(),
    })
}

/// `count` slacks spaced evenly in `log` between `lo` and `hi`.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..count).map(|i| (a + (b - a) * i as f64 / (count.max(2) - 1) as f64).exp()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_pair_diverges_at_threshold() {
        let spec = ScatterSpec::planar(vec![1.0, 1.0], 1.0).unwrap();
        let fit = threshold_scan(&spec, &log_grid(1e-3, 1e-1, 12), &AngularBudget::default()).unwrap();
        assert!((fit.exponent + 0.5).abs() < 0.05, "{fit:?}");
    }

    #[test]
    fn too_few_points() {
        let spec = ScatterSpec::planar(vec![1.0, 1.0], 1.0).unwrap();
        assert!(matches!(
            threshold_scan(&spec, &[0.01, 0.02, 0.03], &AngularBudget::default()),
            Err(Error::Fit(_))
        ));
    }
}
