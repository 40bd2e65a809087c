//! Spherical reduction: `int_0^inf r^2 prod_n j_0(c_n r) dr`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::AngularBudget;
use crate::error::{Error, Result};
use crate::estimate::{CrossCheck, Method};
use crate::numeric::CompensatedSum;

/// Smearing widths for the Monte Carlo cross-check.
pub const SMEAR_WIDTHS: [f64; 3] = [0.08, 0.04, 0.02];

/// Exact value of `int_0^inf r^2 prod_n j_0(c_n r) dr` for 3..=12 coefficients.
///
/// `r^2 prod j_0 = r^{2-K} prod sin(c_n r) / prod c_n`, and
/// `int_0^inf r^{-m} prod_{n=1}^K sin(a_n r) dr
///   = (-1)^{(K-m)/2} pi / (2^{K+1} (m-1)!) sum_gamma (prod gamma) (gamma.a)^{m-1} sgn(gamma.a)`
/// over all sign vectors gamma. A vanishing `gamma.a` contributes nothing
/// (principal value).
pub fn trig_expansion_3d(coefficients: &[f64]) -> Result<f64> {
    let k = coefficients.len();
    if !(3..=12).contains(&k) {
        return Err(Error::Domain(format!("trig_expansion_3d takes 3 to 12 coefficients, got {k}")));
    }
    if let Some(&c) = coefficients.iter().find(|c| !(c.is_finite() && **c > 0.0)) {
        return Err(Error::Domain(format!("coefficients must be positive, got {c}")));
    }
    let m = k - 2;
    let scale: f64 = coefficients.iter().sum();
    let mut acc = CompensatedSum::new();
    let mut resonant = false;
    for mask in 0..1u32 << k {
        let mut dot = 0.0;
        let mut sign = 1.0;
        for (n, &c) in coefficients.iter().enumerate() {
            if mask >> n & 1 == 1 {
                dot -= c;
                sign = -sign;
            } else {
                dot += c;
            }
        }
        if dot.abs() <= 1e-12 * scale {
            resonant = true;
            continue;
        }
        acc.add(sign * dot.abs().powi(m as i32 - 1) * dot.signum());
    }
    if resonant {
        log::info!("resonant frequency in the sine product; the integral is taken as a principal value");
    }
    let fact: f64 = (1..m).map(|j| j as f64).product();
    // (K - m)/2 = 1
    let integral = -PI / (2f64.powi(k as i32 + 1) * fact) * acc.value();
    let prod: f64 = coefficients.iter().product();
    Ok(integral / prod)
}

fn random_direction(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let z: f64 = 2.0 * rng.gen::<f64>() - 1.0;
    let phi: f64 = 2.0 * PI * rng.gen::<f64>();
    let s = (1.0 - z * z).max(0.0).sqrt();
    [s * phi.cos(), s * phi.sin(), z]
}

/// Average of a Gaussian delta of width `sigma` over a sphere of radius `c`
/// centred at distance `p`.
fn smeared_shell(p: f64, c: f64, sigma: f64) -> f64 {
    let s2 = sigma * sigma;
    let norm = (2.0 * PI * s2).powf(-1.5);
    if p < 1e-12 {
        return norm * (-c * c / (2.0 * s2)).exp();
    }
    let lo = (-(p - c) * (p - c) / (2.0 * s2)).exp();
    let hi = (-(p + c) * (p + c) / (2.0 * s2)).exp();
    norm * s2 / (2.0 * p * c) * (lo - hi)
}

/// Smeared-delta Monte Carlo on the sphere representation,
/// `f = 2 pi^2 E[delta^3(sum c_n n_n)]`, with two-step Richardson in the width.
pub(crate) fn smeared_monte_carlo(coefficients: &[f64], budget: &AngularBudget) -> CrossCheck {
    let k = coefficients.len();
    let fixed = coefficients[k - 1];
    let shell = coefficients[k - 2];
    let batches = budget.shifts.max(2);
    let per_batch = (budget.mc_samples / batches).max(1);
    // per batch: sums of the combination and its square
    let results: Vec<(f64, f64, f64)> = (0..batches)
        .into_par_iter()
        .map(|bi| {
            let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
            rng.set_stream(1_000 + bi as u64);
            let mut fine = CompensatedSum::new();
            let mut coarse = CompensatedSum::new();
            let mut sq = 0.0;
            for _ in 0..per_batch {
                let mut p = [0.0, 0.0, fixed];
                for &c in &coefficients[..k - 2] {
                    let u = random_direction(&mut rng);
                    p[0] += c * u[0];
                    p[1] += c * u[1];
                    p[2] += c * u[2];
                }
                let pn = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
                let h: Vec<f64> = SMEAR_WIDTHS.iter().map(|&s| smeared_shell(pn, shell, s)).collect();
                let r_fine = (4.0 * h[2] - h[1]) / 3.0;
                let r_coarse = (4.0 * h[1] - h[0]) / 3.0;
                fine.add(r_fine);
                coarse.add(r_coarse);
                sq += r_fine * r_fine;
            }
            (fine.value(), coarse.value(), sq)
        })
        .collect();
    let n = (per_batch * batches) as f64;
    let fine: f64 = results.iter().map(|r| r.0).sum::<f64>() / n;
    let coarse: f64 = results.iter().map(|r| r.1).sum::<f64>() / n;
    let sq: f64 = results.iter().map(|r| r.2).sum::<f64>() / n;
    let stderr = ((sq - fine * fine).max(0.0) / n).sqrt();
    let scale = 2.0 * PI * PI;
    CrossCheck {
        value: scale * fine,
        error_bound: scale * (4.0 * stderr + (fine - coarse).abs()),
        method: Method::SmearedMonteCarlo,
    }
}
