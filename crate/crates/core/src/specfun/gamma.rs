//! Gamma-function family: reciprocal gamma, log-gamma with sign, binomials.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `sin(pi x)` with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    if x.fract() == 0.0 {
        return 0.0;
    }
    // reduce to [-1, 1]
    let r = x - 2.0 * (x / 2.0).round();
    let (r, sign) = if r < 0.0 { (-r, -1.0) } else { (r, 1.0) };
    let r = if r > 0.5 { 1.0 - r } else { r };
    sign * (PI * r).sin()
}

pub(crate) fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// `ln Gamma(x)` for `x >= 0.5` (Lanczos).
fn ln_gamma_positive(x: f64) -> f64 {
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// `Gamma(x)` for `0.5 <= x <= 20` without going through logs.
fn gamma_moderate(x: f64) -> f64 {
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
}

/// `(ln|Gamma(x)|, sign Gamma(x))`. At the poles returns `(+inf, 1.0)`.
pub fn ln_gamma(x: f64) -> (f64, f64) {
    if is_nonpositive_integer(x) {
        return (f64::INFINITY, 1.0);
    }
    if x >= 0.5 {
        (ln_gamma_positive(x), 1.0)
    } else {
        let s = sin_pi(x);
        let value = (PI / s.abs()).ln() - ln_gamma_positive(1.0 - x);
        (value, s.signum())
    }
}

/// `1/Gamma(x)`: entire, exactly zero at the non-positive integers.
pub fn reciprocal_gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x.fract() == 0.0 && x <= 24.0 {
        // exact 1/(n-1)!
        return 1.0 / (1..x as u64).map(|k| k as f64).product::<f64>();
    }
    if x >= 0.5 {
        if x <= 20.0 {
            1.0 / gamma_moderate(x)
        } else {
            (-ln_gamma_positive(x)).exp()
        }
    } else {
        // 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi
        let g = if 1.0 - x <= 20.0 {
            gamma_moderate(1.0 - x)
        } else {
            ln_gamma_positive(1.0 - x).exp()
        };
        g * sin_pi(x) / PI
    }
}

/// `Gamma(x)`; infinite at the poles.
pub fn gamma(x: f64) -> f64 {
    let r = reciprocal_gamma(x);
    if r == 0.0 {
        f64::INFINITY
    } else {
        1.0 / r
    }
}

/// Digamma at a positive integer: `psi(n) = -gamma + H_{n-1}`.
pub fn digamma_positive_integer(n: u32) -> f64 {
    -EULER_GAMMA + (1..n).map(|j| 1.0 / j as f64).sum::<f64>()
}

/// `ln|(a)_k|` and the sign of the rising factorial `(a)_k`. Returns `None`
/// when the product is exactly zero (a non-positive integer is reached).
pub fn ln_pochhammer(a: f64, k: u32) -> Option<(f64, f64)> {
    if k == 0 {
        return Some((0.0, 1.0));
    }
    let last = a + (k - 1) as f64;
    if is_nonpositive_integer(a) && last >= 0.0 {
        return None;
    }
    if a > 0.0 {
        let (la, _) = ln_gamma(a);
        let (lb, _) = ln_gamma(a + k as f64);
        return Some((lb - la, 1.0));
    }
    let mut ln = 0.0;
    let mut sign = 1.0;
    for j in 0..k {
        let f = a + j as f64;
        ln += f.abs().ln();
        if f < 0.0 {
            sign = -sign;
        }
    }
    Some((ln, sign))
}

/// Exact binomial coefficient `n! / (l! (n-l)!)`.
pub fn binomial(n: u64, l: i64) -> Result<u128> {
    if l < 0 || l as u64 > n {
        return Err(Error::Domain(format!("binomial({n}, {l}) requires 0 <= l <= n")));
    }
    let l = (l as u64).min(n - l as u64);
    let mut c: u128 = 1;
    for i in 0..l {
        // c * (n - i) is divisible by (i + 1)
        c = c
            .checked_mul((n - i) as u128)
            .ok_or_else(|| Error::Domain(format!("binomial({n}, {l}) overflows u128")))?
            / (i as u128 + 1);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn reciprocal_gamma_examples() {
        assert_eq!(reciprocal_gamma(1.0), 1.0);
        assert_eq!(reciprocal_gamma(0.0), 0.0);
        assert_eq!(reciprocal_gamma(-3.0), 0.0);
        assert!((reciprocal_gamma(0.5) - 0.564_189_6).abs() < 1e-6);
    }

    #[test]
    fn reciprocal_gamma_against_mpmath() {
        // mpmath.rgamma, 20 digits
        let cases = [
            (0.5, 0.564_189_583_547_756_286_95),
            (1.5, std::f64::consts::FRAC_2_SQRT_PI),
            (-0.5, -0.282_094_791_773_878_143_47),
            (-2.5, -1.057_855_469_152_043_038),
            (3.3, 0.372_656_357_373_679_615_86),
            (10.7, 5.556_036_835_111_480_408_8e-7),
            (0.001, 0.001_000_576_559_744_993_894_8),
        ];
        for (x, want) in cases {
            assert_relative_eq!(reciprocal_gamma(x), want, max_relative = 1e-13);
        }
    }

    #[test]
    fn ln_gamma_sign() {
        let (l, s) = ln_gamma(-0.5);
        assert_eq!(s, -1.0);
        assert_relative_eq!(l, (2.0 * PI.sqrt()).ln(), max_relative = 1e-13);
        assert_relative_eq!(ln_gamma(171.0).0, 706.573_062_245_787_4, max_relative = 1e-13);
    }

    #[test]
    fn pochhammer_zero_and_sign() {
        assert!(ln_pochhammer(-2.0, 3).is_none());
        assert!(ln_pochhammer(-2.0, 2).is_some());
        let (l, s) = ln_pochhammer(-1.5, 1).unwrap();
        assert_eq!(s, -1.0);
        assert_relative_eq!(l.exp(), 1.5, max_relative = 1e-14);
        let (l, s) = ln_pochhammer(-1.5, 2).unwrap();
        assert_eq!(s, 1.0);
        assert_relative_eq!(l.exp(), 0.75, max_relative = 1e-14);
        let (l, s) = ln_pochhammer(2.5, 3).unwrap();
        assert_eq!(s, 1.0);
        assert_relative_eq!(l.exp(), 2.5 * 3.5 * 4.5, max_relative = 1e-13);
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(0, 0).unwrap(), 1);
        assert_eq!(binomial(4, 2).unwrap(), 6);
        assert_eq!(binomial(7, 3).unwrap(), 35);
        assert_eq!(binomial(60, 30).unwrap(), 118_264_581_564_861_424);
        assert!(binomial(3, 4).is_err());
        assert!(binomial(3, -1).is_err());
    }

    #[test]
    fn sin_pi_exact_zeros() {
        for n in -5..=5 {
            assert_eq!(sin_pi(n as f64), 0.0);
        }
        assert_relative_eq!(sin_pi(0.5), 1.0);
        assert_relative_eq!(sin_pi(-1.5), 1.0);
    }

    #[test]
    fn digamma_values() {
        assert_relative_eq!(digamma_positive_integer(1), -EULER_GAMMA);
        assert_relative_eq!(digamma_positive_integer(3), 1.5 - EULER_GAMMA);
    }
}
