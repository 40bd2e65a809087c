//! Planar delta-function representation.
//!
//! With `phi_{2N+1}` fixed, the Bessel product equals
//! `(2 pi)^{1-2N} int prod dphi_n delta^2(sum (-1)^{n-1} c_n u_n - g u_g)`.
//! The last two angles are removed by the two-circle intersection (density
//! `2 / sqrt((r^2 - (a-b)^2)((a+b)^2 - r^2))` per branch), and the angle
//! before them is integrated in closed form for unit weight (a complete
//! elliptic integral) or by tanh-sinh between the support edges otherwise.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{AngularBudget, ScatterSpec, Weight};
use crate::estimate::{Estimate, Method};
use crate::numeric::CompensatedSum;
use crate::quad::{tanh_sinh, tanh_sinh_nested, tanh_sinh_offsets};
use crate::specfun::elliptic_k_complementary;

type V2 = [f64; 2];

fn unit(phi: f64) -> V2 {
    let (s, c) = phi.sin_cos();
    [c, s]
}

fn norm(v: V2) -> f64 {
    v[0].hypot(v[1])
}

/// Two-circle density `2 / sqrt(...)` for `|V|^2 = r2`, zero outside the support.
fn two_circle_density(r2: f64, a: f64, b: f64) -> f64 {
    let lo = (a - b) * (a - b);
    let hi = (a + b) * (a + b);
    if r2 <= lo || r2 >= hi {
        return 0.0;
    }
    2.0 / ((r2 - lo) * (hi - r2)).sqrt()
}

/// Angles `(phi_a, phi_b)` solving `a u_a - b u_b = V` (two mirror branches).
fn branches(v: V2, a: f64, b: f64) -> Option<[(f64, f64); 2]> {
    let r = norm(v);
    if r == 0.0 {
        return None;
    }
    let cos_beta = (a * a + r * r - b * b) / (2.0 * a * r);
    // rounding can push tangent configurations just outside [-1, 1]
    if !(-1.0 - 1e-9..=1.0 + 1e-9).contains(&cos_beta) {
        return None;
    }
    let cos_beta = cos_beta.clamp(-1.0, 1.0);
    let theta = v[1].atan2(v[0]);
    let beta = cos_beta.acos();
    let solve = |pa: f64| {
        let ua = unit(pa);
        let pb = (a * ua[1] - v[1]).atan2(a * ua[0] - v[0]);
        (pa, pb)
    };
    Some([solve(theta + beta), solve(theta - beta)])
}

/// `int_{-pi}^{pi} dtheta sum_branches 2/sqrt(...)` with unit weights, where
/// `|V|^2 = q^2 + d^2 + 2 q d cos(theta)`. Closed form through `K`.
pub(crate) fn ring_unit(q: f64, d: f64, a: f64, b: f64) -> f64 {
    ring_unit_split(q, 0.0, d, a, b)
}

/// [`ring_unit`] at `q = q_base + dq`. Near a tangency the root gaps are
/// linear in `q`; building them from `dq` keeps their digits when `q_base`
/// sits on a critical norm.
fn ring_unit_split(q_base: f64, dq: f64, d: f64, a: f64, b: f64) -> f64 {
    let q = q_base + dq;
    let lo = (a - b) * (a - b);
    let hi = (a + b) * (a + b);
    let base = q * q + d * d;
    let p = 2.0 * q * d;
    if p <= 1e-14 * base.max(f64::MIN_POSITIVE) {
        // V does not depend on theta
        return TAU * 2.0 * two_circle_density(base, a, b);
    }
    // roots of (1 - x^2)(x - x_lo)(x_hi - x) in x = cos(theta)
    let x_lo = (lo - base) / p;
    let x_hi = (hi - base) / p;
    if x_lo.max(-1.0) >= x_hi.min(1.0) {
        return 0.0;
    }
    // pairwise root gaps from factored differences of squares; the naive
    // x_lo + 1 loses all digits when |q - d| is close to |a - b|
    let (s_ab, t_ab) = (a + b, (a - b).abs());
    let (s_qd, t_qd) = (q + d, (q - d).abs());
    // r - s_qd and r - t_qd for r in {t_ab, s_ab}
    let below_sum = |r: f64| (r - d - q_base) - dq;
    let below_diff = |r: f64| {
        let u = q_base - d;
        if u + dq >= 0.0 {
            (r - u) - dq
        } else {
            (r + u) + dq
        }
    };
    let gap = |i: usize, j: usize| -> f64 {
        // roots: 0 -> 1, 1 -> -1, 2 -> x_lo, 3 -> x_hi; returns y_i - y_j
        let up = |k: usize| -> f64 {
            // y_k - 1
            match k {
                0 => 0.0,
                1 => -2.0,
                2 => below_sum(t_ab) * (t_ab + s_qd) / p,
                _ => below_sum(s_ab) * (s_ab + s_qd) / p,
            }
        };
        let down = |k: usize| -> f64 {
            // y_k + 1
            match k {
                0 => 2.0,
                1 => 0.0,
                2 => below_diff(t_ab) * (t_ab + t_qd) / p,
                _ => below_diff(s_ab) * (s_ab + t_qd) / p,
            }
        };
        match (i, j) {
            (2, 3) => -4.0 * a * b / p,
            (3, 2) => 4.0 * a * b / p,
            (_, 0) => up(i),
            (0, _) => -up(j),
            (_, 1) => down(i),
            (1, _) => -down(j),
            _ => unreachable!(),
        }
    };
    // order by the accurate gaps; the naive roots can land on the wrong
    // side of +-1 next to a coincidence
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| 0.0.partial_cmp(&gap(i, j)).unwrap_or(std::cmp::Ordering::Equal));
    let [i1, i2, i3, i4] = order;
    let m13 = gap(i1, i3);
    let m24 = gap(i2, i4);
    let kp2 = (gap(i1, i2) * gap(i3, i4) / (m13 * m24)).clamp(0.0, 1.0);
    let kp = kp2.sqrt();
    if kp == 0.0 {
        return f64::INFINITY;
    }
    let k = elliptic_k_complementary(kp.min(1.0)).unwrap_or(f64::INFINITY);
    // 8 = 2 (both signs of theta) x 2 (branches) x 2 (density numerator)
    8.0 / p * 2.0 * k / (m13 * m24).sqrt()
}

/// Same ring integral with a weight depending on the ring angle and both branch angles.
fn ring_weighted<W: Fn(f64, f64, f64) -> f64>(q_vec: V2, d: f64, a: f64, b: f64, tol: f64, weight: &W) -> (f64, f64) {
    let q = norm(q_vec);
    let theta_q = q_vec[1].atan2(q_vec[0]);
    let lo = (a - b) * (a - b);
    let hi = (a + b) * (a + b);
    let base = q * q + d * d;
    let p = 2.0 * q * d;
    // sum over branches of the weight at ring angle theta, given the two
    // support factors r^2 - lo and hi - r^2
    let branch_sum = |theta: f64, above: f64, below: f64| -> f64 {
        if above <= 0.0 || below <= 0.0 {
            return 0.0;
        }
        let phi = theta_q + theta;
        let u = unit(phi);
        let v = [q_vec[0] + d * u[0], q_vec[1] + d * u[1]];
        match branches(v, a, b) {
            Some(br) => 2.0 / (above * below).sqrt() * br.iter().map(|&(pa, pb)| weight(phi, pa, pb)).sum::<f64>(),
            None => 0.0,
        }
    };
    if p <= 1e-14 * base.max(f64::MIN_POSITIVE) {
        let piece = tanh_sinh(&|t: f64| branch_sum(t, base - lo, hi - base), -PI, PI, tol);
        return (piece.value, piece.error);
    }
    // 1 + x_lo and 1 - x_hi as factored differences of squares
    let (s_ab, t_ab) = (a + b, (a - b).abs());
    let (s_qd, t_qd) = (q + d, (q - d).abs());
    let lo_gap = (t_ab - t_qd) * (t_ab + t_qd) / p;
    let hi_gap = (s_qd - s_ab) * (s_qd + s_ab) / p;
    if lo_gap >= 2.0 || hi_gap >= 2.0 {
        return (0.0, 0.0);
    }
    let lo_root = lo_gap >= 0.0;
    let hi_root = hi_gap >= 0.0;
    let t_lo = if hi_root { 2.0 * (0.5 * hi_gap).sqrt().asin() } else { 0.0 };
    let t_hi = if lo_root { PI - 2.0 * (0.5 * lo_gap).sqrt().asin() } else { PI };
    // r^2 - lo and hi - r^2, relative to the nearer root or the clipped end
    let factors = |theta: f64, da: f64, db: f64| -> (f64, f64) {
        let above = if lo_root {
            2.0 * p * (0.5 * (theta + t_hi)).sin() * (0.5 * db).sin()
        } else {
            // p (1 + cos theta) + (q - d)^2 - (a - b)^2, theta = pi - db
            2.0 * p * (0.5 * db).sin().powi(2) - p * lo_gap
        };
        let below = if hi_root {
            2.0 * p * (0.5 * (theta + t_lo)).sin() * (0.5 * da).sin()
        } else {
            // (a + b)^2 - (q + d)^2 + p (1 - cos theta), theta = da
            2.0 * p * (0.5 * da).sin().powi(2) - p * hi_gap
        };
        (above, below)
    };
    let plus = tanh_sinh_offsets(
        &|t: f64, da: f64, db: f64| {
            let (above, below) = factors(t, da, db);
            branch_sum(t, above, below)
        },
        t_lo,
        t_hi,
        0.5 * tol,
    );
    let minus = tanh_sinh_offsets(
        &|t: f64, da: f64, db: f64| {
            let (above, below) = factors(t, da, db);
            branch_sum(-t, above, below)
        },
        t_lo,
        t_hi,
        0.5 * tol,
    );
    (plus.value + minus.value, plus.error + minus.error)
}

fn weight_fn(w: Weight) -> impl Fn(&[f64; 4]) -> f64 {
    move |phi: &[f64; 4]| match w {
        Weight::Unit | Weight::R1 => 1.0,
        Weight::R2 => (phi[0] + phi[1]).cos(),
        Weight::R3 => (phi[0] + phi[1]).cos() * (phi[2] + phi[3]).cos(),
    }
}

/// N = 1: both angles are fixed by the constraint; two mirror branches.
pub(crate) fn single_pair(spec: &ScatterSpec) -> Estimate {
    let (a, b) = (spec.radii[0], spec.radii[1]);
    let value = 2.0 * two_circle_density(spec.g * spec.g, a, b) / TAU;
    Estimate::new(value, 4.0 * f64::EPSILON * value, 1, Method::AngularQuadrature)
}

/// Values of `|Q(phi_1)|` at which the ring support changes shape.
fn critical_norms(d: f64, a: f64, b: f64) -> Vec<f64> {
    let s = a + b;
    let t = (a - b).abs();
    [d + s, d + t, d - s, d - t, s - d, t - d].into_iter().filter(|&x| x > 0.0).collect()
}

/// N = 2 by nested deterministic quadrature over (phi_1, ring angle).
pub(crate) fn two_pairs(spec: &ScatterSpec, budget: &AngularBudget) -> Estimate {
    let c = &spec.radii;
    let (d, a, b) = (c[1], c[2], c[3]);
    let g = spec.g;
    let g_dir = spec.g_direction();
    let ug = unit(g_dir);
    let tol = budget.tol;
    let weight = weight_fn(spec.weight);

    // breakpoints in phi_1 - g_dir where |Q| hits a critical value
    let mut cuts = vec![0.0, PI];
    let near = (g - c[0]).abs();
    let far = g + c[0];
    for qn in critical_norms(d, a, b) {
        // half-angle forms; acos loses half the digits next to 0 and pi
        let sin2 = (qn - near) * (qn + near) / (4.0 * g * c[0]);
        let cos2 = (far - qn) * (far + qn) / (4.0 * g * c[0]);
        if sin2 > 0.0 && cos2 > 0.0 {
            cuts.push(if sin2 <= 0.5 { 2.0 * sin2.sqrt().asin() } else { PI - 2.0 * cos2.sqrt().asin() });
        }
    }
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup_by(|x, y| (*x - *y).abs() < 1e-15);

    // |Q|^2 = (g - c0)^2 + 4 g c0 sin^2(psi / 2); `from_zero` and `from_pi`
    // are psi and pi - psi, accurate near the respective ends
    let outer = |psi: f64, from_zero: f64, from_pi: f64| -> (f64, f64) {
        let phi1 = g_dir + psi;
        let u1 = unit(phi1);
        let q_vec = [g * ug[0] - c[0] * u1[0], g * ug[1] - c[0] * u1[1]];
        match spec.weight {
            Weight::Unit | Weight::R1 => {
                let q = norm(q_vec);
                let ring = if from_zero <= from_pi {
                    let s = (0.5 * from_zero).sin();
                    ring_unit_split(near, 4.0 * g * c[0] * s * s / (q + near), d, a, b)
                } else {
                    let s = (0.5 * from_pi).sin();
                    ring_unit_split(far, -4.0 * g * c[0] * s * s / (q + far), d, a, b)
                };
                (ring, 0.0)
            }
            _ => ring_weighted(q_vec, d, a, b, 1e-3 * tol, &|phi2, pa, pb| weight(&[phi1, phi2, pa, pb])),
        }
    };
    let mut total = 0.0;
    let mut error = 0.0;
    let mut evaluations = 0;
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        // offsets from the window ends are exact; turn them into offsets from 0 and pi
        let ends = |x: f64, da: f64, db: f64| -> (f64, f64) {
            let from_zero = if lo == 0.0 { da } else { x };
            let from_pi = if hi == PI { db } else { PI - x };
            (from_zero, from_pi)
        };
        let p = tanh_sinh_nested(
            &|x: f64, da, db| {
                let (z, q) = ends(x, da, db);
                outer(x, z, q)
            },
            lo,
            hi,
            0.1 * tol,
        );
        let m = tanh_sinh_nested(
            &|x: f64, da, db| {
                let (z, q) = ends(x, da, db);
                outer(-x, z, q)
            },
            lo,
            hi,
            0.1 * tol,
        );
        total += p.value + m.value;
        error += p.error + m.error;
        evaluations += p.evaluations + m.evaluations;
    }
    let pref = TAU.powi(-3);
    let mut est = Estimate::new(total * pref, error * pref, evaluations, Method::AngularQuadrature);
    est.flags.degraded = est.error_bound > tol.max(1e-8 * est.value.abs());
    est
}

/// Golden-ratio generalisation for a `dim`-dimensional Kronecker sequence.
fn kronecker_steps(dim: usize) -> Vec<f64> {
    let mut phi = 2.0f64;
    for _ in 0..60 {
        phi = (1.0 + phi).powf(1.0 / (dim as f64 + 1.0));
    }
    (1..=dim).map(|j| phi.powi(-(j as i32)).fract()).collect()
}

/// Arc half-widths for the outer angles; narrower than pi only when the
/// kinematic slack `eps = sum c - g` forces near-collinear configurations.
fn outer_box(spec: &ScatterSpec, dims: usize) -> Vec<(f64, f64)> {
    let eps = spec.radii.iter().sum::<f64>() - spec.g;
    (0..dims)
        .map(|n| {
            let c = spec.radii[n];
            let half = (1.0 - eps / c).max(-1.0).acos();
            // odd positions (1-based) align with g, even ones against it
            let center = if n % 2 == 0 { spec.g_direction() } else { spec.g_direction() + PI };
            (center, half)
        })
        .collect()
}

/// N >= 3: randomised quasi-Monte Carlo over the first 2N-3 angles.
pub(crate) fn many_pairs(spec: &ScatterSpec, budget: &AngularBudget) -> Estimate {
    let c = &spec.radii;
    let m = c.len();
    let dims = m - 3;
    let (d, a, b) = (c[m - 3], c[m - 2], c[m - 1]);
    let g = spec.g;
    let ug = unit(spec.g_direction());
    let boxes = outer_box(spec, dims);
    let volume: f64 = boxes.iter().map(|&(_, h)| 2.0 * h).product();
    let steps = kronecker_steps(dims);
    let n = budget.points.max(1);

    let shift_means: Vec<f64> = (0..budget.shifts.max(2))
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
            rng.set_stream(s as u64);
            let shift: Vec<f64> = (0..dims).map(|_| rng.gen::<f64>()).collect();
            let mut acc = CompensatedSum::default();
            for k in 1..=n {
                let mut q = [g * ug[0], g * ug[1]];
                for j in 0..dims {
                    let u = (shift[j] + k as f64 * steps[j]).fract();
                    let (center, half) = boxes[j];
                    let phi = center + (2.0 * u - 1.0) * half;
                    let e = unit(phi);
                    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                    q[0] -= sign * c[j] * e[0];
                    q[1] -= sign * c[j] * e[1];
                }
                let v = ring_unit(norm(q), d, a, b);
                if v.is_finite() {
                    acc.add(v);
                }
            }
            acc.value() / n as f64
        })
        .collect();

    let count = shift_means.len() as f64;
    let mean = shift_means.iter().sum::<f64>() / count;
    let var = shift_means.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (count - 1.0);
    let stderr = (var / count).sqrt();
    let pref = TAU.powi(1 - m as i32) * volume;
    let mut est = Estimate::new(mean * pref, 4.0 * stderr * pref, n * shift_means.len(), Method::AngularQmc);
    est.seed = Some(budget.seed);
    est
}
