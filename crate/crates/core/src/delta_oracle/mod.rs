//! Angular delta-function representations of the same integrals: planar
//! two-circle reduction, spherical shells, and threshold asymptotics.

mod planar;
mod spherical;
mod threshold;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimate::{Estimate, Method};

pub use spherical::{trig_expansion_3d, SMEAR_WIDTHS};
pub use threshold::{log_grid, threshold_fit, threshold_scan, ThresholdFit};

/// Angular weight inserted into the planar representation.
///
/// `R1` is the constant weight of the honeycomb decomposition and is the same
/// integral as `Unit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Weight {
    #[default]
    #[serde(alias = "unit")]
    Unit,
    R1,
    /// `cos(phi_1 + phi_2)`
    R2,
    /// `cos(phi_1 + phi_2) cos(phi_3 + phi_4)`
    R3,
}

impl std::str::FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "unit" => Ok(Weight::Unit),
            "r1" => Ok(Weight::R1),
            "r2" => Ok(Weight::R2),
            "r3" => Ok(Weight::R3),
            _ => Err(Error::Config(format!("unknown weight {s:?} (expected unit, R1, R2 or R3)"))),
        }
    }
}

/// Geometry of an N-particle scattering process: `2N` Fermi radii and a
/// reciprocal-lattice vector of length `g`, all in units of the first radius.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScatterSpec {
    dimension: u8,
    radii: Vec<f64>,
    g: f64,
    weight: Weight,
    phi_dk: Option<f64>,
}

impl ScatterSpec {
    pub fn new(dimension: u8, n: usize, radii: Vec<f64>, g: f64, weight: Weight, phi_dk: Option<f64>) -> Result<Self> {
        if dimension != 2 && dimension != 3 {
            return Err(Error::Domain(format!("dimension must be 2 or 3, got {dimension}")));
        }
        if n == 0 || radii.len() != 2 * n {
            return Err(Error::Domain(format!("expected {} radii for N = {n}, got {}", 2 * n, radii.len())));
        }
        if let Some(r) = radii.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
            return Err(Error::Domain(format!("radii must be positive and finite, got {r}")));
        }
        if !(g.is_finite() && g > 0.0) {
            return Err(Error::Domain(format!("g must be positive and finite, got {g}")));
        }
        if matches!(weight, Weight::R2 | Weight::R3) && (dimension != 2 || n != 2) {
            return Err(Error::Domain("weights R2 and R3 exist only for the planar two-pair process".into()));
        }
        if let Some(phi) = phi_dk {
            if !phi.is_finite() {
                return Err(Error::Domain("phi_dk must be finite".into()));
            }
        }
        Ok(ScatterSpec { dimension, radii, g, weight, phi_dk })
    }

    /// Unit-weight planar spec.
    pub fn planar(radii: Vec<f64>, g: f64) -> Result<Self> {
        let n = radii.len() / 2;
        ScatterSpec::new(2, n, radii, g, Weight::Unit, None)
    }

    /// Unit-weight spherical spec.
    pub fn spherical(radii: Vec<f64>, g: f64) -> Result<Self> {
        let n = radii.len() / 2;
        ScatterSpec::new(3, n, radii, g, Weight::Unit, None)
    }

    pub fn dimension(&self) -> u8 {
        self.dimension
    }

    /// Number of particle pairs.
    pub fn n(&self) -> usize {
        self.radii.len() / 2
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn phi_dk(&self) -> Option<f64> {
        self.phi_dk
    }

    /// Kinematic slack `sum(radii) - g`.
    pub fn slack(&self) -> f64 {
        self.radii.iter().sum::<f64>() - self.g
    }

    /// Same geometry with a different reciprocal-vector length.
    pub fn with_g(&self, g: f64) -> Result<Self> {
        ScatterSpec::new(self.dimension, self.n(), self.radii.clone(), g, self.weight, self.phi_dk)
    }

    /// Direction of the reciprocal vector. Only weighted integrals care.
    fn g_direction(&self) -> f64 {
        match self.weight {
            Weight::Unit | Weight::R1 => 0.0,
            _ => self.phi_dk.unwrap_or(0.0),
        }
    }
}

/// Sampling and accuracy knobs for the angular oracles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularBudget {
    /// Absolute target for deterministic quadrature.
    pub tol: f64,
    /// Quasi-random points per shift.
    pub points: usize,
    /// Independent random shifts (at least two, for an error estimate).
    pub shifts: usize,
    pub seed: u64,
    /// Total samples for the smeared Monte Carlo cross-check.
    pub mc_samples: usize,
}

impl Default for AngularBudget {
    fn default() -> Self {
        AngularBudget { tol: 1e-10, points: 1 << 14, shifts: 16, seed: 0x5eed, mc_samples: 1 << 18 }
    }
}

impl AngularBudget {
    fn validate(&self) -> Result<()> {
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::Config(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.points == 0 || self.shifts < 2 {
            return Err(Error::Config("angular budget needs points > 0 and at least two shifts".into()));
        }
        Ok(())
    }
}

/// Whether the kinematics forbid the process outright: the momenta cannot
/// close into a polygon when one side outgrows all the others together.
fn beyond_support(spec: &ScatterSpec) -> bool {
    let total: f64 = spec.radii.iter().sum::<f64>() + spec.g;
    let longest = spec.radii.iter().copied().fold(spec.g, f64::max);
    2.0 * longest > total * (1.0 + 1e-14)
}

/// Planar oracle: nested quadrature for one or two pairs, randomised QMC beyond.
pub fn eval_2d_angular(spec: &ScatterSpec, budget: &AngularBudget) -> Result<Estimate> {
    if spec.dimension != 2 {
        return Err(Error::Domain("eval_2d_angular needs a planar spec".into()));
    }
    budget.validate()?;
    if beyond_support(spec) {
        return Ok(Estimate::exact_zero(Method::SupportRule));
    }
    Ok(match spec.n() {
        1 => planar::single_pair(spec),
        2 => planar::two_pairs(spec, budget),
        _ => planar::many_pairs(spec, budget),
    })
}

/// Spherical oracle: exact trig expansion, smeared Monte Carlo as the cross-check.
pub fn eval_3d_angular(spec: &ScatterSpec, budget: &AngularBudget) -> Result<Estimate> {
    if spec.dimension != 3 {
        return Err(Error::Domain("eval_3d_angular needs a spherical spec".into()));
    }
    if !matches!(spec.weight, Weight::Unit | Weight::R1) {
        return Err(Error::Domain("spherical oracle takes unit weight only".into()));
    }
    if budget.mc_samples < budget.shifts.max(2) {
        return Err(Error::Config(format!(
            "{} Monte Carlo samples cannot fill {} batches",
            budget.mc_samples, budget.shifts
        )));
    }
    if beyond_support(spec) {
        return Ok(Estimate::exact_zero(Method::SupportRule));
    }
    let mut coefficients = spec.radii.clone();
    coefficients.push(spec.g);
    let value = trig_expansion_3d(&coefficients)?;
    let mut est = Estimate::exact(value, Method::TrigExpansion);
    // exact up to rounding in the alternating sum
    est.error_bound = 1e3 * f64::EPSILON * value.abs();
    est.cross_check = Some(spherical::smeared_monte_carlo(&coefficients, budget));
    est.seed = Some(budget.seed);
    Ok(est)
}

/// Angular oracle for either dimension.
pub fn eval_angular(spec: &ScatterSpec, budget: &AngularBudget) -> Result<Estimate> {
    match spec.dimension {
        2 => eval_2d_angular(spec, budget),
        _ => eval_3d_angular(spec, budget),
    }
}

/// `1 / (2 pi Area)` for a triangle with the given sides, zero if infeasible.
pub fn triangle_density(a: f64, b: f64, c: f64) -> f64 {
    let s = 0.5 * (a + b + c);
    let area2 = s * (s - a) * (s - b) * (s - c);
    if area2 <= 0.0 {
        0.0
    } else {
        1.0 / (2.0 * PI * area2.sqrt())
    }
}
