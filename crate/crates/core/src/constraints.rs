//! Convergence window, polygonal constraint, charge-neutrality condition and
//! the combined vanishing prediction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::Order;

/// Tolerance for the integer solve in the charge-neutrality condition.
pub const CNC_TOL: f64 = 1e-9;
/// Default tolerance for the polygonal comparison.
pub const POLYGON_TOL: f64 = 1e-12;

/// Relative gap below which two coefficients count as tied for the maximum.
const TIE_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Factor {
    pub nu: Order,
    pub c: f64,
}

/// `int_0^inf rho^{alpha-1} prod_n J_{nu_n}(c_n rho) d rho`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegralSpec {
    alpha: f64,
    factors: Vec<Factor>,
}

impl IntegralSpec {
    pub fn new(alpha: f64, nus: &[f64], cs: &[f64]) -> Result<Self> {
        if nus.len() != cs.len() {
            return Err(Error::Domain(format!(
                "{} orders but {} coefficients",
                nus.len(),
                cs.len()
            )));
        }
        let factors = nus
            .iter()
            .zip(cs)
            .map(|(&nu, &c)| Ok(Factor { nu: Order::new(nu)?, c }))
            .collect::<Result<Vec<_>>>()?;
        Self::from_factors(alpha, factors)
    }

    pub fn from_factors(alpha: f64, factors: Vec<Factor>) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::Domain(format!("alpha must be finite, got {alpha}")));
        }
        if factors.len() < 2 {
            return Err(Error::Domain("at least two Bessel factors are required".into()));
        }
        if let Some(f) = factors.iter().find(|f| !(f.c.is_finite() && f.c > 0.0)) {
            return Err(Error::Domain(format!("coefficients must be positive, got {}", f.c)));
        }
        Ok(IntegralSpec { alpha, factors })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order_sum(&self) -> f64 {
        self.factors.iter().map(|f| f.nu.value()).sum()
    }

    /// `mu = alpha + sum nu_n`.
    pub fn mu(&self) -> f64 {
        self.alpha + self.order_sum()
    }

    pub fn c_max(&self) -> f64 {
        self.factors.iter().map(|f| f.c).fold(0.0, f64::max)
    }

    /// Index of a largest coefficient (the first one on ties).
    pub fn max_index(&self) -> usize {
        let mut best = 0;
        for (i, f) in self.factors.iter().enumerate() {
            if f.c > self.factors[best].c {
                best = i;
            }
        }
        best
    }

    /// Indices of every coefficient tied with the maximum.
    pub fn max_indices(&self) -> Vec<usize> {
        let cmax = self.c_max();
        self.factors
            .iter()
            .enumerate()
            .filter(|(_, f)| cmax - f.c <= TIE_RTOL * cmax)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn max_unique(&self) -> bool {
        self.max_indices().len() == 1
    }

    /// Copy with every coefficient multiplied by `s`.
    pub fn rescaled(&self, s: f64) -> Result<Self> {
        let factors = self.factors.iter().map(|f| Factor { nu: f.nu, c: f.c * s }).collect();
        Self::from_factors(self.alpha, factors)
    }

    /// Copy with the coefficient at `index` replaced.
    pub fn with_coefficient(&self, index: usize, c: f64) -> Result<Self> {
        let mut factors = self.factors.clone();
        factors[index].c = c;
        Self::from_factors(self.alpha, factors)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PolygonalStatus {
    Satisfied,
    Violated,
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintReport {
    pub convergent: bool,
    pub polygonal: PolygonalStatus,
    pub charge_neutral_m: Option<u64>,
    pub predicted_zero: bool,
    pub max_unique: bool,
}

/// Strict window `-sum nu < alpha < M/2 + 1`.
pub fn check_convergence(spec: &IntegralSpec) -> bool {
    let upper = spec.len() as f64 / 2.0 + 1.0;
    -spec.order_sum() < spec.alpha && spec.alpha < upper
}

pub fn check_polygonal(spec: &IntegralSpec, tol: f64) -> PolygonalStatus {
    let cmax = spec.c_max();
    let i = spec.max_index();
    let others: f64 = spec
        .factors
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, f)| f.c)
        .sum();
    if cmax < others - tol {
        PolygonalStatus::Satisfied
    } else if cmax > others + tol {
        PolygonalStatus::Violated
    } else {
        PolygonalStatus::Boundary
    }
}

/// Solves `nu_M = sum_{n != M} nu_n + alpha - 2m` for a positive integer `m`,
/// with `nu_M` the order of the largest coefficient.
pub fn check_charge_neutrality(spec: &IntegralSpec, tol: f64) -> Result<Option<u64>> {
    let ties = spec.max_indices();
    if ties.len() > 1 {
        return Err(Error::IndeterminateMaximum(ties));
    }
    let i = ties[0];
    let nu_max = spec.factors[i].nu.value();
    let rest = spec.order_sum() - nu_max;
    let m = (rest + spec.alpha - nu_max) / 2.0;
    let rounded = m.round();
    if (m - rounded).abs() <= tol && rounded >= 1.0 {
        Ok(Some(rounded as u64))
    } else {
        Ok(None)
    }
}

pub fn predict_vanishing(spec: &IntegralSpec) -> Result<ConstraintReport> {
    let convergent = check_convergence(spec);
    let polygonal = check_polygonal(spec, POLYGON_TOL);
    let max_unique = spec.max_unique();
    let charge_neutral_m = check_charge_neutrality(spec, CNC_TOL)?;
    let predicted_zero =
        convergent && polygonal == PolygonalStatus::Violated && charge_neutral_m.is_some() && max_unique;
    Ok(ConstraintReport { convergent, polygonal, charge_neutral_m, predicted_zero, max_unique })
}
