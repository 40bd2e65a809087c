use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::median;

/// A derivative discontinuity located to within `uncertainty`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Kink {
    pub location: f64,
    pub uncertainty: f64,
}

/// Flags above this many robust standard deviations count as kinks.
const THRESHOLD_SIGMAS: f64 = 8.0;
/// Candidates closer than this many grid steps are merged.
const MERGE_STEPS: f64 = 4.0;

/// Derivative discontinuities in uniformly gridded samples.
///
/// A point is a candidate when its second central difference exceeds the
/// median by `8 x 1.4826 x MAD`; a non-finite sample is a candidate itself
/// (a divergence). Nearby candidates are merged and each cluster is placed
/// at its strongest points.
pub fn kink_scan(samples: &[(f64, f64)]) -> Result<Vec<Kink>> {
    let n = samples.len();
    if n < 9 {
        return Err(Error::InsufficientData(format!("kink scan needs at least 9 samples, got {n}")));
    }
    let h = (samples[n - 1].0 - samples[0].0) / (n - 1) as f64;
    if !(h > 0.0) {
        return Err(Error::Domain("samples must be sorted by increasing abscissa".into()));
    }
    for (i, w) in samples.windows(2).enumerate() {
        if ((w[1].0 - w[0].0) - h).abs() > 1e-6 * h {
            return Err(Error::Domain(format!("grid is not uniform near sample {i}")));
        }
    }
    let f: Vec<f64> = samples.iter().map(|s| s.1).collect();
    // (index, strength); infinite strength marks a divergence
    let mut d2: Vec<(usize, f64)> = Vec::with_capacity(n);
    for i in 1..n - 1 {
        let v = f[i - 1] - 2.0 * f[i] + f[i + 1];
        if v.is_finite() {
            d2.push((i, v.abs()));
        }
    }
    let values: Vec<f64> = d2.iter().map(|x| x.1).collect();
    if values.is_empty() {
        return Err(Error::InsufficientData("no finite second differences".into()));
    }
    let med = median(&values);
    let mad = median(&values.iter().map(|v| (v - med).abs()).collect::<Vec<_>>());
    let scale = f.iter().filter(|v| v.is_finite()).fold(0.0f64, |m, v| m.max(v.abs()));
    // keeps exactly smooth input (zero MAD) from flagging rounding noise
    let floor = 1e-10 * scale.max(f64::MIN_POSITIVE);
    let threshold = med + (THRESHOLD_SIGMAS * 1.4826 * mad).max(floor);

    let mut candidates: Vec<(usize, f64)> = d2.into_iter().filter(|&(_, v)| v > threshold).collect();
    candidates.extend(f.iter().enumerate().filter(|(_, v)| !v.is_finite()).map(|(i, _)| (i, f64::INFINITY)));
    candidates.sort_by_key(|c| c.0);

    let mut kinks = Vec::new();
    let mut cluster: Vec<(usize, f64)> = Vec::new();
    let flush = |cluster: &mut Vec<(usize, f64)>, kinks: &mut Vec<Kink>| {
        if cluster.is_empty() {
            return;
        }
        let peak = cluster.iter().fold(0.0f64, |m, c| m.max(c.1));
        let top: Vec<&(usize, f64)> = cluster.iter().filter(|c| c.1 >= 0.5 * peak).collect();
        let location = if peak.is_infinite() {
            top.iter().map(|c| samples[c.0].0).sum::<f64>() / top.len() as f64
        } else {
            let w: f64 = top.iter().map(|c| c.1).sum();
            top.iter().map(|c| c.1 * samples[c.0].0).sum::<f64>() / w
        };
        kinks.push(Kink { location, uncertainty: h });
        cluster.clear();
    };
    for c in candidates {
        if let Some(last) = cluster.last() {
            if (c.0 - last.0) as f64 > MERGE_STEPS {
                flush(&mut cluster, &mut kinks);
            }
        }
        cluster.push(c);
    }
    flush(&mut cluster, &mut kinks);
    Ok(kinks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(lo: f64, hi: f64, h: f64, f: impl Fn(f64) -> f64) -> Vec<(f64, f64)> {
        let n = ((hi - lo) / h).round() as usize;
        (0..=n).map(|i| lo + i as f64 * h).map(|x| (x, f(x))).collect()
    }

    #[test]
    fn smooth_input_has_no_kinks() {
        let s = grid(-1.0, 3.0, 0.01, |x| 0.3 * x * x - x + 2.0);
        assert!(kink_scan(&s).unwrap().is_empty());
    }

    #[test]
    fn square_root_cusp() {
        let s = grid(0.0, 5.0, 0.01, |x| (4.0 - x).max(0.0).sqrt());
        let k = kink_scan(&s).unwrap();
        assert_eq!(k.len(), 1, "{k:?}");
        assert!((k[0].location - 4.0).abs() <= k[0].uncertainty);
    }

    #[test]
    fn slope_break() {
        let s = grid(0.0, 3.0, 0.01, |x| (x - 1.5).abs() + (2.0 * x).sin());
        let k = kink_scan(&s).unwrap();
        assert_eq!(k.len(), 1, "{k:?}");
        assert!((k[0].location - 1.5).abs() <= 0.01);
    }

    #[test]
    fn too_few_samples() {
        let s = grid(0.0, 0.07, 0.01, |x| x);
        assert!(matches!(kink_scan(&s), Err(Error::InsufficientData(_))));
    }
}
