//! Direct evaluation of Bessel-product integrals on the half-line.
//!
//! The primary method integrates `[0, R]` with Gauss-Kronrod panels laid on
//! the zeros of the fastest factor and adds the exact integral of the Hankel
//! asymptotic expansion over `[R, inf)`. Near-resonant frequency combinations
//! (the polygonal boundary) are handled by the exponential integral rather
//! than by brute force, so the tail costs the same everywhere.
//!
//! The secondary method shares nothing with the asymptotic machinery: damped
//! integrals `int e^{-eta rho} f` are extrapolated to `eta = 0`. The damped
//! value is analytic in `eta` with radius set by the slowest beat frequency of
//! the tail, so the method is general but slows down near resonances.

mod gauss;
mod tail;

use serde::{Deserialize, Serialize};

use crate::constraints::{check_convergence, predict_vanishing, Factor, IntegralSpec};
use crate::error::{ensure_finite, Error, Result};
use crate::estimate::{Estimate, Method};
use crate::specfun::{bessel_j_raw, mcmahon_zero, Order};

pub(crate) use gauss::{adaptive, tanh_sinh, tanh_sinh_nested, tanh_sinh_offsets};
use tail::{asymptotic_tail, TailFactor};

/// Values below this are read as exact zeros when the vanishing rule applies.
pub const ZERO_ATOL: f64 = 1e-9;

/// Terms kept in each factor's Hankel expansion.
const HANKEL_TERMS: usize = 20;
/// Smallest argument `c R` (plus `nu^2`) at which the expansion takes over.
const TAIL_START: f64 = 32.0;

/// `int_0^inf rho^{alpha-1} (A cos(c rho) + B sin(c rho)) prod_n J_{nu_n}(c_n rho) d rho`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigBesselSpec {
    a: f64,
    b: f64,
    c_trig: f64,
    alpha: f64,
    factors: Vec<Factor>,
}

impl TrigBesselSpec {
    pub fn new(a: f64, b: f64, c_trig: f64, alpha: f64, nus: &[f64], cs: &[f64]) -> Result<Self> {
        for (name, v) in [("A", a), ("B", b), ("trig coefficient", c_trig), ("alpha", alpha)] {
            ensure_finite(name, v)?;
        }
        if a == 0.0 && b == 0.0 {
            return Err(Error::Domain("at least one of A, B must be nonzero".into()));
        }
        if c_trig < 0.0 {
            return Err(Error::Domain(format!("trig coefficient must be >= 0, got {c_trig}")));
        }
        if nus.len() != cs.len() || nus.is_empty() {
            return Err(Error::Domain("orders and coefficients must be non-empty and equally long".into()));
        }
        let mut factors = Vec::with_capacity(nus.len());
        for (&nu, &c) in nus.iter().zip(cs) {
            if !(c.is_finite() && c > 0.0) {
                return Err(Error::Domain(format!("coefficients must be positive, got {c}")));
            }
            factors.push(Factor { nu: Order::new(nu)?, c });
        }
        Ok(TrigBesselSpec { a, b, c_trig, alpha, factors })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c_trig(&self) -> f64 {
        self.c_trig
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }
}

/// Which half-line algorithm to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadMethod {
    AsymptoticTail,
    Regularized,
}

#[derive(Debug, Clone)]
struct Integrand {
    alpha: f64,
    /// distinct (order, coefficient) pairs with multiplicity
    groups: Vec<(f64, f64, i32)>,
    trig: Option<(f64, f64, f64)>,
}

impl Integrand {
    fn new(alpha: f64, factors: &[Factor], trig: Option<(f64, f64, f64)>) -> Self {
        let mut groups: Vec<(f64, f64, i32)> = Vec::new();
        for f in factors {
            let nu = f.nu.value();
            match groups.iter_mut().find(|g| g.0 == nu && g.1 == f.c) {
                Some(g) => g.2 += 1,
                None => groups.push((nu, f.c, 1)),
            }
        }
        Integrand { alpha, groups, trig }
    }

    fn eval(&self, x: f64) -> f64 {
        let mut v = x.powf(self.alpha - 1.0);
        for &(nu, c, m) in &self.groups {
            v *= bessel_j_raw(nu, c * x).powi(m);
        }
        if let Some((a, b, c)) = self.trig {
            let (s, co) = (c * x).sin_cos();
            v *= a * co + b * s;
        }
        if v.is_finite() {
            v
        } else {
            0.0
        }
    }

    fn total_frequency(&self) -> f64 {
        let bessel: f64 = self.groups.iter().map(|g| g.1 * g.2 as f64).sum();
        bessel + self.trig.map_or(0.0, |t| t.2)
    }

    /// Order and coefficient of the fastest-oscillating Bessel factor.
    fn fastest(&self) -> (f64, f64) {
        let mut best = (self.groups[0].0, self.groups[0].1);
        for g in &self.groups {
            if g.1 > best.1 || (g.1 == best.1 && g.0.abs() > best.0.abs()) {
                best = (g.0, g.1);
            }
        }
        best
    }

    fn tail_factors(&self) -> Vec<TailFactor> {
        let mut out = Vec::new();
        for &(nu, c, m) in &self.groups {
            for _ in 0..m {
                out.push(TailFactor::bessel(nu, c, HANKEL_TERMS));
            }
        }
        if let Some((a, b, c)) = self.trig {
            out.push(TailFactor::trig(a, b, c));
        }
        out
    }

    /// Start of the asymptotic region.
    fn tail_start(&self) -> f64 {
        self.groups.iter().map(|&(nu, c, _)| (TAIL_START + nu * nu) / c).fold(0.0, f64::max)
    }

    /// Cell edges: zeros of the fastest factor up to `end`, refined so that no
    /// panel spans more than one period of the total frequency.
    fn cell_edges(&self, end: f64) -> Vec<f64> {
        let (nu, c) = self.fastest();
        let omega = self.total_frequency().max(c);
        let max_width = 2.0 * std::f64::consts::PI / omega;
        let mut zeros = vec![0.0];
        let mut k = 1;
        loop {
            let z = mcmahon_zero(nu.abs(), k) / c;
            if z >= end {
                break;
            }
            if z > *zeros.last().unwrap() {
                zeros.push(z);
            }
            k += 1;
        }
        zeros.push(end);
        let mut edges = vec![0.0];
        for w in zeros.windows(2) {
            let pieces = ((w[1] - w[0]) / max_width).ceil().max(1.0) as usize;
            for p in 1..=pieces {
                edges.push(w[0] + (w[1] - w[0]) * p as f64 / pieces as f64);
            }
        }
        edges
    }
}

/// Integral over `[0, end]`: tanh-sinh on the first cell (algebraic behaviour
/// at the origin), adaptive Gauss-Kronrod on the rest.
fn integrate_window(f: &Integrand, end: f64, tol: f64) -> gauss::Piece {
    let edges = f.cell_edges(end);
    let eval = |x: f64| f.eval(x);
    let mut total = tanh_sinh(&eval, 0.0, edges[1], 0.05 * tol);
    for w in edges[1..].windows(2) {
        let local = 0.5 * tol * (w[1] - w[0]) / end;
        total.add(adaptive(&eval, w[0], w[1], local, 12));
    }
    total
}

fn asymptotic_method(f: &Integrand, tol: f64) -> Estimate {
    let factors = f.tail_factors();
    let mut r = f.tail_start();
    let mut best: Option<Estimate> = None;
    for _attempt in 0..3 {
        let window = integrate_window(f, r, tol);
        let t = asymptotic_tail(f.alpha, &factors, r, HANKEL_TERMS);
        let rounding = 10.0 * f64::EPSILON * window.abs;
        let mut est = Estimate::new(
            window.value + t.value,
            window.error + t.error + rounding,
            window.evaluations / 21 + 1,
            Method::AsymptoticTail,
        );
        est.flags.divergent = t.divergent;
        let done = t.error <= 0.1 * tol;
        best = Some(est);
        if done {
            break;
        }
        r *= 2.0;
    }
    let mut est = best.expect("at least one attempt");
    est.flags.degraded = est.error_bound > tol;
    est
}

/// Number of damping values in the extrapolation.
const DAMPING_LEVELS: usize = 8;

fn regularized_method(f: &Integrand, tol: f64) -> Estimate {
    let freqs: Vec<f64> = f.tail_factors().iter().map(|t| t.freq).collect();
    let total: f64 = freqs.iter().sum();
    // slowest beat among the sign patterns of the tail
    let mut beat = f64::INFINITY;
    for mask in 0..1usize << (freqs.len() - 1) {
        let mut w = freqs[0];
        for (n, &q) in freqs.iter().enumerate().skip(1) {
            w += if mask >> (n - 1) & 1 == 0 { q } else { -q };
        }
        if w.abs() > 1e-13 * total {
            beat = beat.min(w.abs());
        }
    }
    let near_resonance = beat < 1e-3 * total;
    let beat = beat.max(1e-3 * total);
    let etas: Vec<f64> = (0..DAMPING_LEVELS).map(|j| 0.5 * beat * 0.5f64.powi(j as i32)).collect();
    let end = 40.0 / etas[DAMPING_LEVELS - 1] + f.tail_start();
    let edges = f.cell_edges(end);
    let mut sums = vec![0.0; DAMPING_LEVELS];
    let mut evaluations = 0;
    for (j, &eta) in etas.iter().enumerate() {
        let damped = |x: f64| f.eval(x) * (-eta * x).exp();
        let p = tanh_sinh(&damped, 0.0, edges[1], 1e-3 * tol);
        sums[j] += p.value;
        evaluations += p.evaluations;
    }
    let mut abs = 0.0;
    for w in edges[1..].windows(2) {
        let nodes = gauss::kronrod_nodes(w[0], w[1]);
        let values: Vec<f64> = nodes.iter().map(|&(x, _)| f.eval(x)).collect();
        evaluations += nodes.len();
        for (j, &eta) in etas.iter().enumerate() {
            let mut s = 0.0;
            for (&(x, wt), &v) in nodes.iter().zip(&values) {
                s += wt * v * (-eta * x).exp();
            }
            sums[j] += s;
        }
        abs += nodes.iter().zip(&values).map(|(&(_, wt), &v)| wt * v.abs()).sum::<f64>();
    }
    // Neville extrapolation to eta = 0
    let mut table = sums.clone();
    let mut last_two = (table[0], table[0]);
    for level in 1..DAMPING_LEVELS {
        for i in 0..DAMPING_LEVELS - level {
            let (a, b) = (etas[i], etas[i + level]);
            table[i] = (table[i + 1] * a - table[i] * b) / (a - b);
        }
        last_two = (last_two.1, table[0]);
    }
    let error = (last_two.1 - last_two.0).abs() + 100.0 * f64::EPSILON * abs;
    let mut est = Estimate::new(last_two.1, error, edges.len(), Method::Regularized);
    est.flags.near_singularity = near_resonance;
    est.flags.degraded = error > tol;
    est.intervals_used = est.intervals_used.max(evaluations / 21);
    est
}

fn run(f: &Integrand, tol: f64, method: QuadMethod) -> Estimate {
    match method {
        QuadMethod::AsymptoticTail => asymptotic_method(f, tol),
        QuadMethod::Regularized => regularized_method(f, tol),
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("tolerance must be positive, got {tol}")))
    }
}

/// `int_0^inf rho^{alpha-1} prod_n J_{nu_n}(c_n rho) d rho` by the primary method.
pub fn eval_bessel_product(spec: &IntegralSpec, tol: f64) -> Result<Estimate> {
    eval_bessel_product_with(spec, tol, QuadMethod::AsymptoticTail)
}

pub fn eval_bessel_product_with(spec: &IntegralSpec, tol: f64, method: QuadMethod) -> Result<Estimate> {
    check_tol(tol)?;
    if !check_convergence(spec) {
        return Err(Error::Domain(format!(
            "divergent: need -sum(nu) < alpha < M/2 + 1, got alpha = {}, sum(nu) = {}, M = {}",
            spec.alpha(),
            spec.order_sum(),
            spec.len()
        )));
    }
    let f = Integrand::new(spec.alpha(), spec.factors(), None);
    let mut est = run(&f, tol, method);
    if let Ok(report) = predict_vanishing(spec) {
        if report.predicted_zero && est.is_zero_consistent(ZERO_ATOL) {
            est.flags.zero_consistent = true;
        }
    }
    Ok(est)
}

/// `int_0^inf rho^{alpha-1} (A cos + B sin)(c rho) prod_n J_{nu_n}(c_n rho) d rho`.
pub fn eval_trig_bessel(spec: &TrigBesselSpec, tol: f64) -> Result<Estimate> {
    eval_trig_bessel_with(spec, tol, QuadMethod::AsymptoticTail)
}

pub fn eval_trig_bessel_with(spec: &TrigBesselSpec, tol: f64, method: QuadMethod) -> Result<Estimate> {
    check_tol(tol)?;
    let order_sum: f64 = spec.factors.iter().map(|f| f.nu.value()).sum();
    let origin = spec.alpha + order_sum + if spec.a == 0.0 { 1.0 } else { 0.0 };
    if origin <= 0.0 {
        return Err(Error::Domain("integrand is not integrable at the origin".into()));
    }
    let decay = 0.5 * spec.factors.len() as f64 + 1.0 - spec.alpha;
    if decay <= 0.0 {
        return Err(Error::Domain(format!(
            "tail does not decay: alpha - 1 - {}/2 must be negative",
            spec.factors.len()
        )));
    }
    let f = Integrand::new(spec.alpha, &spec.factors, Some((spec.a, spec.b, spec.c_trig)));
    Ok(run(&f, tol, method))
}
