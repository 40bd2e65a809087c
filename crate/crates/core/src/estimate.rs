use std::fmt;

use serde::{Deserialize, Serialize};

/// Which algorithm produced an [`Estimate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Gauss-Kronrod cells on a finite window plus the analytic integral of the
    /// Hankel asymptotic expansion beyond it.
    AsymptoticTail,
    /// Exponentially damped integrals extrapolated to zero damping.
    Regularized,
    /// Closed form through the Lauricella series.
    Exton,
    /// Deterministic nested quadrature of the planar delta-function representation.
    AngularQuadrature,
    /// Randomised quasi-Monte Carlo over the outer angles of the planar representation.
    AngularQmc,
    /// Exact product-to-sum expansion of spherical Bessel products.
    TrigExpansion,
    /// Smeared-delta Monte Carlo on spheres, Richardson-extrapolated in the width.
    SmearedMonteCarlo,
    /// Elementary closed-form expression.
    ClosedForm,
    /// Value fixed by a kinematic support rule (exactly zero).
    SupportRule,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::AsymptoticTail => "asymptotic-tail",
            Method::Regularized => "regularized",
            Method::Exton => "exton",
            Method::AngularQuadrature => "angular-quadrature",
            Method::AngularQmc => "angular-qmc",
            Method::TrigExpansion => "trig-expansion",
            Method::SmearedMonteCarlo => "smeared-monte-carlo",
            Method::ClosedForm => "closed-form",
            Method::SupportRule => "support-rule",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Diagnostics attached to an estimate.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    /// The integral diverges; `value` holds the finite part of the tail.
    pub divergent: bool,
    /// The requested tolerance was not reached; `error_bound` is honest but large.
    pub degraded: bool,
    /// The request lies close to a van Hove energy or a kinematic threshold.
    pub near_singularity: bool,
    /// The value was declared zero by the vanishing rule and checked numerically.
    pub zero_consistent: bool,
}

/// A second, independent evaluation recorded alongside the primary one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub value: f64,
    pub error_bound: f64,
    pub method: Method,
}

/// A numerical value together with an error bound and provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub error_bound: f64,
    pub intervals_used: usize,
    pub method: Method,
    pub flags: Flags,
    pub seed: Option<u64>,
    pub cross_check: Option<CrossCheck>,
}

impl Estimate {
    pub fn new(value: f64, error_bound: f64, intervals_used: usize, method: Method) -> Self {
        Estimate {
            value,
            error_bound,
            intervals_used: intervals_used.max(1),
            method,
            flags: Flags::default(),
            seed: None,
            cross_check: None,
        }
    }

    /// An exact zero produced by a support or vanishing rule.
    pub fn exact_zero(method: Method) -> Self {
        let mut e = Estimate::new(0.0, 0.0, 1, method);
        e.flags.zero_consistent = true;
        e
    }

    pub fn exact(value: f64, method: Method) -> Self {
        Estimate::new(value, 0.0, 1, method)
    }

    /// Multiply value and bound by a constant.
    pub fn scaled(mut self, factor: f64) -> Self {
        self.value *= factor;
        self.error_bound *= factor.abs();
        self
    }

    /// Linear combination `self + weight * other`; diagnostics are merged.
    pub fn combine(mut self, weight: f64, other: &Estimate) -> Self {
        self.value += weight * other.value;
        self.error_bound += weight.abs() * other.error_bound;
        self.intervals_used += other.intervals_used;
        self.flags.divergent |= other.flags.divergent;
        self.flags.degraded |= other.flags.degraded;
        self.flags.near_singularity |= other.flags.near_singularity;
        self.flags.zero_consistent &= other.flags.zero_consistent;
        self
    }

    /// Whether `|value|` is small enough to be read as an exact zero.
    pub fn is_zero_consistent(&self, atol: f64) -> bool {
        self.value.abs() <= atol.max(10.0 * self.error_bound)
    }

    /// Whether two estimates agree within their combined error bounds (plus a floor).
    pub fn agrees_with(&self, other: &Estimate, floor: f64) -> bool {
        (self.value - other.value).abs() <= self.error_bound + other.error_bound + floor
    }
}

impl fmt::Display for Estimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.16e}, {:.3e}, {}", self.value, self.error_bound, self.method)?;
        if self.flags.divergent {
            f.write_str(" [divergent: finite part]")?;
        }
        if self.flags.degraded {
            f.write_str(" [degraded]")?;
        }
        Ok(())
    }
}
