//! Analytic integration of the Hankel asymptotic expansion over [R, inf).
//!
//! Every factor is written as `Re Z(rho)` with
//! `Z(rho) = rho^{-p} e^{i w rho} sum_m g_m rho^{-m}`; the product of the
//! factors expands into sign patterns, each of which is a finite sum of
//! `rho^{-s} e^{i omega rho}` integrated exactly through `E_s`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::specfun::{digamma_positive_integer, gamma, hankel_coefficients};

/// One real factor `Re Z(rho)` of the integrand.
#[derive(Debug, Clone)]
pub(crate) struct TailFactor {
    pub power: f64,
    pub freq: f64,
    pub coeffs: Vec<Complex64>,
}

impl TailFactor {
    /// `J_nu(c rho)` through Hankel's expansion with `terms` coefficients.
    pub fn bessel(nu: f64, c: f64, terms: usize) -> Self {
        let a = hankel_coefficients(nu, terms);
        let amp = (2.0 / (PI * c)).sqrt();
        let phase = Complex64::from_polar(1.0, -(0.5 * nu + 0.25) * PI);
        let mut im = Complex64::new(1.0, 0.0);
        let mut cpow = 1.0;
        let coeffs = a
            .iter()
            .map(|&am| {
                let g = amp * phase * im * am * cpow;
                im *= Complex64::i();
                cpow /= c;
                g
            })
            .collect();
        TailFactor { power: 0.5, freq: c, coeffs }
    }

    /// `A cos(c rho) + B sin(c rho) = Re[(A - iB) e^{i c rho}]`.
    pub fn trig(a: f64, b: f64, c: f64) -> Self {
        TailFactor { power: 0.0, freq: c, coeffs: vec![Complex64::new(a, -b)] }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct TailResult {
    pub value: f64,
    pub error: f64,
    /// A non-oscillating term with too slow a decay was continued analytically.
    pub divergent: bool,
}

/// `int_R^inf rho^{alpha-1} prod_n Re Z_n(rho) d rho` truncated at degree `order`.
pub(crate) fn asymptotic_tail(alpha: f64, factors: &[TailFactor], r: f64, order: usize) -> TailResult {
    let count = factors.len();
    let scale_freq: f64 = factors.iter().map(|f| f.freq).sum::<f64>().max(1e-300);
    let power: f64 = factors.iter().map(|f| f.power).sum();
    let norm = 2f64.powi(1 - count as i32);
    let mut out = TailResult::default();
    let patterns = 1usize << (count - 1);
    for mask in 0..patterns {
        // factor 0 always takes the + sign; conjugate patterns are folded into Re
        let mut omega = factors[0].freq;
        let mut poly: Vec<Complex64> = truncate(&factors[0].coeffs, order);
        for (n, f) in factors.iter().enumerate().skip(1) {
            let plus = mask >> (n - 1) & 1 == 0;
            let g: Vec<Complex64> = if plus {
                truncate(&f.coeffs, order)
            } else {
                truncate(&f.coeffs, order).iter().map(|z| z.conj()).collect()
            };
            omega += if plus { f.freq } else { -f.freq };
            poly = multiply(&poly, &g, order);
        }
        if omega.abs() <= 1e-13 * scale_freq {
            omega = 0.0;
        }
        let last = poly.len().saturating_sub(1);
        for (k, &q) in poly.iter().enumerate() {
            if q == Complex64::new(0.0, 0.0) {
                continue;
            }
            let s = power + 1.0 - alpha + k as f64;
            let (t, div) = power_exp_tail(s, omega, r);
            let contribution = norm * (q * t).re;
            if div {
                // resonant non-decaying term: only counts if it survives Re
                if contribution.abs() > 1e-13 * norm * q.norm() * t.norm() {
                    out.divergent = true;
                }
            }
            out.value += contribution;
            if k + 1 >= last && last > 0 {
                out.error += contribution.abs();
            }
        }
    }
    out.error += 1e-15 * out.value.abs();
    out
}

fn truncate(v: &[Complex64], order: usize) -> Vec<Complex64> {
    v.iter().take(order + 1).copied().collect()
}

fn multiply(a: &[Complex64], b: &[Complex64], order: usize) -> Vec<Complex64> {
    let len = (a.len() + b.len() - 1).min(order + 1);
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            if i + j < len {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `int_R^inf rho^{-s} e^{i omega rho} d rho`; for `omega = 0, s <= 1` returns
/// the analytic continuation (finite part) with the divergence flag set.
pub(crate) fn power_exp_tail(s: f64, omega: f64, r: f64) -> (Complex64, bool) {
    if omega == 0.0 {
        if (s - 1.0).abs() < 1e-12 {
            return (Complex64::new(-r.ln(), 0.0), true);
        }
        return (Complex64::new(r.powf(1.0 - s) / (s - 1.0), 0.0), s < 1.0);
    }
    let z = Complex64::new(0.0, -omega * r);
    (r.powf(1.0 - s) * expint(s, z), false)
}

/// Generalised exponential integral `E_s(z) = int_1^inf e^{-z t} t^{-s} dt`
/// for `Re z >= 0`, `z != 0`.
pub(crate) fn expint(s: f64, z: Complex64) -> Complex64 {
    if z.norm() >= 4.0 {
        expint_continued_fraction(s, z)
    } else {
        expint_series(s, z)
    }
}

fn expint_continued_fraction(s: f64, z: Complex64) -> Complex64 {
    let tiny = 1e-300;
    let mut b = z + s;
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..100_000 {
        let an = -(i as f64) * (s - 1.0 + i as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            break;
        }
    }
    h * (-z).exp()
}

fn expint_series(s: f64, z: Complex64) -> Complex64 {
    let n = s.round();
    let integer = (s - n).abs() < 1e-9 && n >= 1.0;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut pw = Complex64::new(1.0, 0.0); // (-z)^k / k!
    let mut lead = Complex64::new(0.0, 0.0);
    for k in 0..400 {
        if k > 0 {
            pw *= -z / k as f64;
        }
        let denom = 1.0 - s + k as f64;
        if integer && k + 1 == n as usize {
            lead = pw * (digamma_positive_integer(n as u32) - z.ln());
        } else {
            let term = pw / denom;
            sum += term;
            if k > 2 && term.norm() < 1e-17 * sum.norm().max(1e-300) {
                break;
            }
        }
    }
    if integer {
        lead - sum
    } else {
        gamma(1.0 - s) * z.powf(s - 1.0) - sum
    }
}
