//! Closed form of the Bessel-product integral when the polygonal constraint
//! fails, through the type-C Lauricella series.

use serde::{Deserialize, Serialize};

use crate::constraints::{check_convergence, check_polygonal, Factor, IntegralSpec, PolygonalStatus, POLYGON_TOL};
use crate::error::{ensure_finite, Error, Result};
use crate::estimate::{Estimate, Method};
use crate::specfun::{is_nonpositive_integer, ln_gamma, ln_pochhammer, Order};

/// Hard cap on the total degree `|k|` of the series.
pub const MAX_DEGREE: usize = 400;
/// Beyond this value of `sum sqrt(x_i)` the error bound is reported as degraded.
pub const DEGRADE_RADIUS: f64 = 0.95;

/// `F_C(a, b; d_1..d_n; x_1..x_n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LauricellaParams {
    pub a: f64,
    pub b: f64,
    pub denominators: Vec<f64>,
    pub variables: Vec<f64>,
}

impl LauricellaParams {
    fn validate(&self) -> Result<f64> {
        if self.denominators.len() != self.variables.len() {
            return Err(Error::Domain("denominators and variables differ in length".into()));
        }
        ensure_finite("a", self.a)?;
        ensure_finite("b", self.b)?;
        for &d in &self.denominators {
            ensure_finite("denominator", d)?;
            if is_nonpositive_integer(d) {
                return Err(Error::Pole(format!("denominator {d} is a non-positive integer")));
            }
        }
        let mut radius = 0.0;
        for &x in &self.variables {
            if !(0.0..1.0).contains(&x) {
                return Err(Error::Domain(format!("variable {x} outside [0, 1)")));
            }
            radius += x.sqrt();
        }
        if radius >= 1.0 {
            return Err(Error::Domain(format!(
                "sum of sqrt(variables) = {radius} is outside the convergence domain (< 1)"
            )));
        }
        Ok(radius)
    }
}

/// Signed log-magnitude.
#[derive(Clone, Copy)]
struct LogVal {
    ln: f64,
    sign: f64,
}

impl LogVal {
    const ZERO: LogVal = LogVal { ln: f64::NEG_INFINITY, sign: 0.0 };
}

/// Sums the series in graded order of total degree.
///
/// With `u_i(k) = x_i^k / ((d_i)_k k!)`, the degree-K part is
/// `(a)_K (b)_K e_K` where `e_K` is the K-th coefficient of the product of the
/// single-variable series. `e_K` is accumulated as `E_K = (K!)^2 e_K`, which
/// stays of order `S^{2K}`; the binomial weights are applied in log space.
pub fn lauricella_fc(params: &LauricellaParams, tol: f64) -> Result<Estimate> {
    let radius = params.validate()?;
    if params.variables.iter().all(|&x| x == 0.0) {
        return Ok(Estimate::exact(1.0, Method::Exton));
    }
    let kmax = MAX_DEGREE;
    let ln_fact: Vec<f64> = {
        let mut v = vec![0.0; kmax + 1];
        for k in 1..=kmax {
            v[k] = v[k - 1] + (k as f64).ln();
        }
        v
    };
    let ln_binom = |n: usize, k: usize| ln_fact[n] - ln_fact[k] - ln_fact[n - k];

    // E^{(0)}_K = delta_{K0}
    let mut acc: Vec<f64> = vec![0.0; kmax + 1];
    acc[0] = 1.0;
    for (&d, &x) in params.denominators.iter().zip(&params.variables) {
        if x == 0.0 {
            continue;
        }
        // v(k) = x^k k! / (d)_k
        let v: Vec<LogVal> = (0..=kmax)
            .map(|k| match ln_pochhammer(d, k as u32) {
                Some((lp, sp)) => LogVal { ln: k as f64 * x.ln() + ln_fact[k] - lp, sign: sp },
                None => LogVal::ZERO,
            })
            .collect();
        let prev = acc.clone();
        let prev_ln: Vec<LogVal> = prev
            .iter()
            .map(|&e| if e == 0.0 { LogVal::ZERO } else { LogVal { ln: e.abs().ln(), sign: e.signum() } })
            .collect();
        for big_k in 0..=kmax {
            let mut s = 0.0;
            for k in 0..=big_k {
                let p = prev_ln[big_k - k];
                let w = v[k];
                if p.sign == 0.0 || w.sign == 0.0 {
                    continue;
                }
                s += p.sign * w.sign * (2.0 * ln_binom(big_k, k) + p.ln + w.ln).exp();
            }
            acc[big_k] = s;
        }
    }

    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut last = 0.0f64;
    let mut ratio = 0.0f64;
    let mut terms = 0;
    let mut converged = false;
    let mut tail = f64::INFINITY;
    for (big_k, &e) in acc.iter().enumerate() {
        let coef = match (ln_pochhammer(params.a, big_k as u32), ln_pochhammer(params.b, big_k as u32)) {
            (Some((la, sa)), Some((lb, sb))) => Some((la + lb - 2.0 * ln_fact[big_k], sa * sb)),
            _ => None,
        };
        let term = match coef {
            Some((lc, sc)) if e != 0.0 => sc * e.signum() * (lc + e.abs().ln()).exp(),
            Some(_) => 0.0,
            None => {
                // terminating series: every later term vanishes too
                converged = true;
                tail = 0.0;
                break;
            }
        };
        // Neumaier summation
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        terms = big_k + 1;
        if big_k > 0 && last != 0.0 {
            let r = (term / last).abs();
            ratio = if big_k > 4 { r } else { ratio.max(r) };
        }
        last = term;
        if big_k >= 4 {
            let q = ratio.max(radius * radius).min(1.0 - 1e-6);
            tail = term.abs() * q / (1.0 - q);
            let total = (sum + comp).abs();
            if tail <= tol * total.max(f64::MIN_POSITIVE) || tail == 0.0 {
                converged = true;
                break;
            }
        }
    }
    let value = sum + comp;
    let rounding = 4.0 * f64::EPSILON * value.abs() * terms as f64;
    let mut est = Estimate::new(value, tail + rounding, terms, Method::Exton);
    if !converged || radius > DEGRADE_RADIUS {
        est.flags.degraded = !converged || est.error_bound > tol * value.abs();
        est.flags.near_singularity = radius > DEGRADE_RADIUS;
    }
    Ok(est)
}

/// Closed-form value where the polygonal constraint is strictly violated.
pub fn eval_exton(spec: &IntegralSpec, tol: f64) -> Result<Estimate> {
    let spec = reflect_negative_integer_orders(spec)?;
    let (spec, sign) = spec;
    if !check_convergence(&spec) {
        return Err(Error::Domain("the integral is divergent for these parameters".into()));
    }
    match check_polygonal(&spec, POLYGON_TOL) {
        PolygonalStatus::Violated => {}
        status => {
            return Err(Error::OutOfDomain {
                method: "exton",
                reason: format!("polygonal constraint is {status:?}; the closed form needs it violated"),
            })
        }
    }
    let ties = spec.max_indices();
    if ties.len() > 1 {
        return Err(Error::IndeterminateMaximum(ties));
    }
    let top = ties[0];
    let alpha = spec.alpha();
    let mu = spec.mu();
    let f_max = spec.factors()[top];
    let nu_max = f_max.nu.value();
    let c_max = f_max.c;

    let pole_arg = nu_max - 0.5 * mu + 1.0;
    if is_nonpositive_integer(pole_arg) {
        let mut e = Estimate::exact_zero(Method::Exton);
        e.flags.zero_consistent = true;
        return Ok(e);
    }
    let (lg_half_mu, s_half_mu) = ln_gamma(0.5 * mu);
    let (lg_pole, s_pole) = ln_gamma(pole_arg);
    let mut ln_pref = (alpha - 1.0) * std::f64::consts::LN_2 + (nu_max - mu) * c_max.ln() + lg_half_mu - lg_pole;
    let mut sign = sign * s_half_mu * s_pole;
    let mut denominators = Vec::new();
    let mut variables = Vec::new();
    for (i, f) in spec.factors().iter().enumerate() {
        if i == top {
            continue;
        }
        let nu = f.nu.value();
        let (lg, s) = ln_gamma(nu + 1.0);
        ln_pref += nu * f.c.ln() - lg;
        sign *= s;
        denominators.push(nu + 1.0);
        variables.push((f.c / c_max).powi(2));
    }
    let params = LauricellaParams { a: 0.5 * mu, b: 0.5 * mu - nu_max, denominators, variables };
    let fc = lauricella_fc(&params, tol)?;
    let pref = sign * ln_pref.exp();
    let mut est = fc.scaled(pref);
    est.error_bound += 8.0 * f64::EPSILON * est.value.abs();
    Ok(est)
}

/// `J_{-n} = (-1)^n J_n`: rewrite negative integer orders so that no
/// denominator of the series sits on a pole.
fn reflect_negative_integer_orders(spec: &IntegralSpec) -> Result<(IntegralSpec, f64)> {
    let mut sign = 1.0;
    let mut factors = Vec::with_capacity(spec.len());
    for f in spec.factors() {
        let nu = f.nu.value();
        if nu < 0.0 && f.nu.is_integer() {
            let n = nu.round().abs();
            if n as i64 % 2 == 1 {
                sign = -sign;
            }
            factors.push(Factor { nu: Order::new(n)?, c: f.c });
        } else {
            factors.push(*f);
        }
    }
    Ok((IntegralSpec::from_factors(spec.alpha(), factors)?, sign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn fc(a: f64, b: f64, d: &[f64], x: &[f64]) -> Result<Estimate> {
        lauricella_fc(&LauricellaParams { a, b, denominators: d.to_vec(), variables: x.to_vec() }, 1e-14)
    }

    #[test]
    fn lauricella_examples() {
        assert_eq!(fc(1.3, 0.4, &[1.0, 2.0], &[0.0, 0.0]).unwrap().value, 1.0);
        let g = fc(1.0, 1.0, &[2.0], &[0.25]).unwrap();
        assert!((g.value - 1.150_728_3).abs() < 1e-6);
        assert!(matches!(fc(1.0, 1.0, &[1.0, 1.0], &[0.36, 0.36]), Err(Error::Domain(_))));
        assert!(matches!(fc(1.0, 1.0, &[-1.0], &[0.1]), Err(Error::Pole(_))));
    }

    #[test]
    fn lauricella_against_mpmath() {
        // single variable: 2F1(1,1;2;x) = -ln(1-x)/x
        assert_relative_eq!(fc(1.0, 1.0, &[2.0], &[0.25]).unwrap().value, 1.150_728_289_807_123_709_8, max_relative = 1e-13);
        // two variables: Appell F4
        assert_relative_eq!(
            fc(1.5, 0.5, &[1.0, 2.0], &[0.04, 0.09]).unwrap().value,
            1.073_389_206_566_883_410_4,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            fc(2.2, 1.3, &[1.5, 2.5], &[0.1, 0.16]).unwrap().value,
            1.633_209_196_091_898_890_4,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            fc(1.25, 0.75, &[1.0, 1.5, 2.0], &[0.01, 0.02, 0.04]).unwrap().value,
            1.043_948_471_773_322_614_7,
            max_relative = 1e-13
        );
    }

    #[test]
    fn degrades_near_boundary() {
        let e = fc(1.0, 1.0, &[1.0, 1.0], &[0.245, 0.245]).unwrap();
        assert!(e.flags.near_singularity);
        assert!(e.error_bound.is_finite());
    }

    fn spec(alpha: f64, nus: &[f64], cs: &[f64]) -> IntegralSpec {
        IntegralSpec::new(alpha, nus, cs).unwrap()
    }

    #[test]
    fn exton_examples() {
        let e = eval_exton(&spec(1.0, &[1.0, 0.0], &[1.0, 2.0]), 1e-12).unwrap();
        assert_eq!(e.value, 0.0);
        let e = eval_exton(&spec(1.0, &[0.0, 1.0], &[1.0, 2.0]), 1e-12).unwrap();
        assert!((e.value - 0.5).abs() < 1e-8);
        let e = eval_exton(&spec(2.0, &[0.0; 5], &[1.0, 1.0, 1.0, 1.0, 5.0]), 1e-12).unwrap();
        assert_eq!(e.value, 0.0);
    }

    #[test]
    fn exton_rejects_outside_domain() {
        let r = eval_exton(&spec(2.0, &[0.0; 5], &[1.0, 1.0, 1.0, 1.0, 3.0]), 1e-10);
        assert!(matches!(r, Err(Error::OutOfDomain { .. })));
        let r = eval_exton(&spec(4.0, &[0.0; 6], &[1.0, 1.0, 1.0, 1.0, 1.0, 9.0]), 1e-10);
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn exton_scaling_law() {
        let base = spec(1.5, &[0.5, 1.0, 0.0], &[0.7, 1.1, 2.5]);
        let v = eval_exton(&base, 1e-14).unwrap().value;
        for s in [0.5, 2.0, 10.0] {
            let w = eval_exton(&base.rescaled(s).unwrap(), 1e-14).unwrap().value;
            assert_relative_eq!(w, s.powf(-1.5) * v, max_relative = 1e-11);
        }
    }

    #[test]
    fn weber_schafheitlin_below_step() {
        // int J_1(x) J_0(c x) dx = 1 for c < 1: largest coefficient carries nu = 1
        let e = eval_exton(&spec(1.0, &[1.0, 0.0], &[1.0, 0.5]), 1e-14).unwrap();
        assert_relative_eq!(e.value, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn negative_integer_orders_reflect() {
        let pos = eval_exton(&spec(1.0, &[0.0, 1.0], &[1.0, 2.0]), 1e-14).unwrap().value;
        let neg = eval_exton(&spec(1.0, &[0.0, -1.0], &[1.0, 2.0]), 1e-14).unwrap().value;
        assert_relative_eq!(neg, -pos, max_relative = 1e-14);
    }
}
