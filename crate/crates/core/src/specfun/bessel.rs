//! Bessel functions of the first kind for real order, and spherical j_n.
//!
//! Regimes: power series for small argument, Miller backward recurrence in
//! the transition region, Hankel's asymptotic expansion for large argument.
//! Half-integer orders use the elementary spherical forms.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::gamma::{gamma, ln_gamma, reciprocal_gamma};
use crate::error::{Error, Result};

const CLASSIFY_TOL: f64 = 1e-12;

/// A finite real Bessel order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Order(f64);

impl Order {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::Domain(format!("Bessel order must be finite, got {value}")));
        }
        Ok(Order(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        (self.0 - self.0.round()).abs() <= CLASSIFY_TOL
    }

    pub fn is_half_integer(self) -> bool {
        let shifted = self.0 - 0.5;
        (shifted - shifted.round()).abs() <= CLASSIFY_TOL
    }
}

impl TryFrom<f64> for Order {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        Order::new(v)
    }
}

impl From<Order> for f64 {
    fn from(o: Order) -> f64 {
        o.0
    }
}

/// `J_nu(x)` for `x >= 0`.
pub fn bessel_j(nu: Order, x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!("bessel_j requires finite x >= 0, got {x}")));
    }
    Ok(bessel_j_raw(nu.value(), x))
}

/// `j_n(x)` for `x >= 0`.
pub fn spherical_j(n: u32, x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!("spherical_j requires finite x >= 0, got {x}")));
    }
    Ok(spherical_j_raw(n, x))
}

/// Argument beyond which the Hankel expansion is used.
fn asymptotic_threshold(nu: f64) -> f64 {
    25.0 + 0.5 * nu * nu
}

/// Unchecked evaluation; callers guarantee finite `nu` and `x >= 0`.
pub(crate) fn bessel_j_raw(nu: f64, x: f64) -> f64 {
    let rounded = nu.round();
    if (nu - rounded).abs() <= CLASSIFY_TOL {
        let n = rounded as i64;
        if n < 0 {
            let v = bessel_j_integer(n.unsigned_abs(), x);
            return if n % 2 == 0 { v } else { -v };
        }
        return bessel_j_integer(n as u64, x);
    }
    let half = (nu - 0.5).round();
    if (nu - 0.5 - half).abs() <= CLASSIFY_TOL && half.abs() < 64.0 {
        return bessel_j_half_integer(half as i64, x);
    }
    bessel_j_fractional(nu, x)
}

fn bessel_j_integer(n: u64, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let nu = n as f64;
    if use_series(nu, x) {
        series(nu, x)
    } else if x >= asymptotic_threshold(nu) {
        hankel_asymptotic(nu, x)
    } else {
        miller(0.0, x, n as usize).0
    }
}

fn use_series(nu: f64, x: f64) -> bool {
    x <= 8.0 || 0.25 * x * x <= nu.abs() + 1.0
}

/// `J_{h + 1/2}(x)` for integer `h` (order = h + 1/2).
fn bessel_j_half_integer(h: i64, x: f64) -> f64 {
    if x == 0.0 {
        // J_{-1/2} diverges; the other negative half orders too.
        return if h >= 0 { 0.0 } else { f64::INFINITY };
    }
    let scale = (2.0 * x / PI).sqrt();
    if h >= 0 {
        scale * spherical_j_raw(h as u32, x)
    } else {
        // J_{-n-1/2} = (-1)^{n+1} sqrt(2x/pi) y_n(x)
        let n = (-h - 1) as u32;
        let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
        sign * scale * spherical_y(n, x)
    }
}

fn bessel_j_fractional(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu > 0.0 { 0.0 } else { f64::INFINITY };
    }
    if use_series(nu, x) {
        return series(nu, x);
    }
    if x >= asymptotic_threshold(nu) {
        return hankel_asymptotic(nu, x);
    }
    let base = nu.floor();
    let nu0 = nu - base;
    if base >= 0.0 {
        return miller(nu0, x, base as usize).0;
    }
    // Negative order: recur downward from J_{nu0}, J_{nu0+1}. Downward is
    // neutral for |order| < x and follows the dominant solution beyond.
    let (mut hi, mut lo) = {
        let (a, b) = miller(nu0, x, 0);
        (b, a)
    };
    let mut mu = nu0;
    for _ in 0..(-base) as usize {
        let next = 2.0 * mu / x * lo - hi;
        hi = lo;
        lo = next;
        mu -= 1.0;
    }
    lo
}

/// Power series `sum (-1)^k (x/2)^{2k+nu} / (k! Gamma(nu+k+1))`.
fn series(nu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let lead = if nu >= 0.0 && nu < 40.0 {
        half.powf(nu) * reciprocal_gamma(nu + 1.0)
    } else {
        let (lg, sign) = ln_gamma(nu + 1.0);
        sign * (nu * half.ln() - lg).exp()
    };
    if lead == 0.0 {
        return 0.0;
    }
    let q = -half * half;
    let mut term = lead;
    let mut sum = term;
    let mut k = 1.0;
    while k < 500.0 {
        term *= q / (k * (nu + k));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
        k += 1.0;
    }
    sum
}

/// Miller backward recurrence for orders `nu0 + k`, `nu0` in `[0, 1)`.
/// Returns `(J_{nu0+n}, J_{nu0+n+1})`, normalized with Neumann's series
/// `sum_k (nu0+2k) Gamma(nu0+k)/k! J_{nu0+2k}(x) = (x/2)^{nu0}`.
fn miller(nu0: f64, x: f64, n: usize) -> (f64, f64) {
    let top = (n as f64).max(x) + 20.0 + 6.0 * x.sqrt();
    let top = top.ceil() as usize + 2;
    // weights w_k for index 2k
    let half_top = top / 2 + 1;
    let mut weights = Vec::with_capacity(half_top + 1);
    weights.push(gamma(nu0 + 1.0));
    let mut g = gamma(nu0 + 1.0); // Gamma(nu0+k)/k! at k = 1
    for k in 1..=half_top {
        if k > 1 {
            g *= (nu0 + k as f64 - 1.0) / k as f64;
        }
        weights.push((nu0 + 2.0 * k as f64) * g);
    }

    let mut above = 0.0; // j_{i+1}
    let mut cur = 1e-30; // j_i
    let mut norm = 0.0;
    let mut target = (0.0, 0.0);
    if top == n {
        target.0 = cur;
    }
    if top % 2 == 0 {
        norm += weights[top / 2] * cur;
    }
    let mut i = top;
    while i > 0 {
        let mu = nu0 + i as f64;
        let below = 2.0 * mu / x * cur - above;
        above = cur;
        cur = below;
        i -= 1;
        if i == n {
            target = (cur, above);
        }
        if i % 2 == 0 {
            norm += weights[i / 2] * cur;
        }
        if cur.abs() > 1e250 {
            above *= 1e-250;
            cur *= 1e-250;
            norm *= 1e-250;
            target.0 *= 1e-250;
            target.1 *= 1e-250;
        }
    }
    let scale = (0.5 * x).powf(nu0) / norm;
    (target.0 * scale, target.1 * scale)
}

/// Hankel's expansion `sqrt(2/(pi x)) (P cos chi - Q sin chi)`.
fn hankel_asymptotic(nu: f64, x: f64) -> f64 {
    let (p, q) = hankel_pq(nu, x);
    // chi = x - (nu/2 + 1/4) pi, rotated without forming x - phase
    let phase = (0.5 * nu + 0.25) * PI;
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = phase.sin_cos();
    let cos_chi = cx * cp + sx * sp;
    let sin_chi = sx * cp - cx * sp;
    (2.0 / (PI * x)).sqrt() * (p * cos_chi - q * sin_chi)
}

/// The P and Q sums, truncated at the smallest term.
fn hankel_pq(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0f64;
    let mut prev = f64::INFINITY;
    for m in 1..200 {
        let odd = (2 * m - 1) as f64;
        let next = term * (mu - odd * odd) / (m as f64 * 8.0 * x);
        if next == 0.0 {
            break;
        }
        if next.abs() > prev && m as f64 > nu.abs() {
            break;
        }
        prev = next.abs();
        term = next;
        // i^m pattern: m=1 -> +Q, m=2 -> -P, m=3 -> -Q, m=4 -> +P
        match m % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    (p, q)
}

/// Coefficients `a_m(nu) = prod_{j=1}^m (4nu^2 - (2j-1)^2) / (m! 8^m)` of
/// Hankel's expansion, `m = 0..count`.
pub(crate) fn hankel_coefficients(nu: f64, count: usize) -> Vec<f64> {
    let mu = 4.0 * nu * nu;
    let mut out = Vec::with_capacity(count);
    let mut a = 1.0;
    for m in 0..count {
        if m > 0 {
            let odd = (2 * m - 1) as f64;
            a *= (mu - odd * odd) / (m as f64 * 8.0);
        }
        out.push(a);
    }
    out
}

pub(crate) fn spherical_j_raw(n: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let nf = n as f64;
    if x < 1.0 || x * x < 0.5 * (nf + 1.5) {
        return spherical_series(n, x);
    }
    let (s, c) = x.sin_cos();
    let j0 = s / x;
    if n == 0 {
        return j0;
    }
    let j1 = s / (x * x) - c / x;
    if n == 1 {
        return j1;
    }
    if nf <= x {
        let (mut a, mut b) = (j0, j1);
        for k in 1..n {
            let next = (2 * k + 1) as f64 / x * b - a;
            a = b;
            b = next;
        }
        return b;
    }
    // Miller, normalized against whichever of j0, j1 is larger
    let top = (nf.max(x) + 20.0 + 6.0 * x.sqrt()).ceil() as u32 + 2;
    let mut above = 0.0;
    let mut cur = 1e-30;
    let mut target = 0.0;
    let mut at_one = 0.0;
    let mut k = top;
    while k > 0 {
        let below = (2 * k + 1) as f64 / x * cur - above;
        above = cur;
        cur = below;
        k -= 1;
        if k == n {
            target = cur;
        }
        if k == 1 {
            at_one = cur;
        }
        if cur.abs() > 1e250 {
            above *= 1e-250;
            cur *= 1e-250;
            target *= 1e-250;
            at_one *= 1e-250;
        }
    }
    if j0.abs() >= j1.abs() {
        target * j0 / cur
    } else {
        target * j1 / at_one
    }
}

fn spherical_series(n: u32, x: f64) -> f64 {
    // x^n / (2n+1)!! * sum_k (-x^2/2)^k / (k! (2n+3)(2n+5)...(2n+2k+1))
    let mut lead = 1.0;
    for k in 0..n {
        lead *= x / (2 * k + 3) as f64;
    }
    let q = -0.5 * x * x;
    let mut term = lead;
    let mut sum = term;
    for k in 1..200 {
        term *= q / (k as f64 * (2 * n + 2 * k + 1) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Spherical Neumann `y_n(x)` by upward recurrence (stable for all x).
fn spherical_y(n: u32, x: f64) -> f64 {
    let (s, c) = x.sin_cos();
    let y0 = -c / x;
    if n == 0 {
        return y0;
    }
    let y1 = -c / (x * x) - s / x;
    let (mut a, mut b) = (y0, y1);
    for k in 1..n {
        let next = (2 * k + 1) as f64 / x * b - a;
        a = b;
        b = next;
    }
    b
}

/// McMahon's approximation to the k-th positive zero (k >= 1) of `J_nu`.
pub(crate) fn mcmahon_zero(nu: f64, k: usize) -> f64 {
    let beta = (k as f64 + 0.5 * nu - 0.25) * PI;
    let mu = 4.0 * nu * nu;
    let e = 8.0 * beta;
    let z = beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e.powi(3));
    z.max(1e-3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j(nu: f64, x: f64) -> f64 {
        bessel_j(Order::new(nu).unwrap(), x).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(j(0.0, 0.0), 1.0);
        assert_eq!(j(1.0, 0.0), 0.0);
        assert!(j(0.0, 2.404_825_557_695_773).abs() < 1e-12);
        assert_eq!(spherical_j(0, 0.0).unwrap(), 1.0);
        assert!(spherical_j(0, PI).unwrap().abs() < 1e-15);
        assert_eq!(spherical_j(1, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Order::new(f64::NAN).is_err());
        assert!(bessel_j(Order::new(0.0).unwrap(), -1.0).is_err());
        assert!(spherical_j(0, f64::INFINITY).is_err());
    }

    #[test]
    fn classification() {
        assert!(Order::new(3.0).unwrap().is_integer());
        assert!(!Order::new(3.0).unwrap().is_half_integer());
        assert!(Order::new(-1.5).unwrap().is_half_integer());
        assert!(!Order::new(0.3).unwrap().is_integer());
    }

    #[test]
    fn recurrence_holds() {
        for &nu in &[0.5, 1.0, 2.3, 4.0, 7.5] {
            let mut x = 0.1;
            while x <= 100.0 {
                let lhs = j(nu - 1.0, x) + j(nu + 1.0, x);
                let rhs = 2.0 * nu / x * j(nu, x);
                assert!((lhs - rhs).abs() < 1e-9, "nu={nu} x={x}: {lhs} vs {rhs}");
                x += 0.37;
            }
        }
    }

    #[test]
    fn spherical_matches_half_order() {
        for n in 0..13u32 {
            let mut x = 0.1;
            while x <= 100.0 {
                let sph = spherical_j(n, x).unwrap();
                let via = (PI / (2.0 * x)).sqrt() * bessel_j_fractional(n as f64 + 0.5, x);
                let scale = sph.abs().max(1e-300);
                assert!(
                    (sph - via).abs() <= 1e-10 * scale.max(1e-3 * (1.0 / x)),
                    "n={n} x={x}: {sph} vs {via}"
                );
                x += 0.53;
            }
        }
    }

    #[test]
    fn mcmahon_close_to_true_zero() {
        let z = mcmahon_zero(0.0, 1);
        assert!((z - 2.404_825_557_695_773).abs() < 2e-3);
        let z = mcmahon_zero(1.0, 3);
        assert!((z - 10.173_468_135_062_722).abs() < 1e-4);
    }
}
