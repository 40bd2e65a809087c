use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constraints::IntegralSpec;
use crate::error::{ensure_finite, Error, Result};
use crate::estimate::Estimate;
use crate::quad::eval_bessel_product;

/// Both bands of nearest-neighbour graphene, `(+eps, -eps)`.
pub fn honeycomb_dispersion(kx: f64, ky: f64, t: f64, d: f64) -> (f64, f64) {
    let cx = (0.5 * 3f64.sqrt() * kx * d).cos();
    let cy = (1.5 * ky * d).cos();
    // rounding can leave a tiny negative radicand at the Dirac points
    let e = t * (1.0 + 4.0 * cx * (cx + cy)).max(0.0).sqrt();
    (e, -e)
}

/// A Dirac point, `(4 pi / (3 sqrt(3) d), 0)`.
pub fn k_point(d: f64) -> (f64, f64) {
    (4.0 * PI / (3.0 * 3f64.sqrt() * d), 0.0)
}

/// Slope of the Dirac cone, `3 d t / 2`.
pub fn fermi_velocity(t: f64, d: f64) -> f64 {
    1.5 * d * t
}

/// Parameters of the two-valley umklapp estimate. Units `hbar = k_B = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HoneycombModel {
    /// Valley separation over Fermi momentum.
    pub c: f64,
    pub phi_dk: f64,
    /// Dimensionless coupling `k_F u / v_F`.
    pub lambda: f64,
    pub temperature: f64,
    pub fermi_energy: f64,
    pub t: f64,
    pub d: f64,
}

/// Which of the model's assumptions hold. Violations are reported, not fatal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelValidity {
    /// `c > 2`: the two Fermi circles do not overlap.
    pub valleys_disjoint: bool,
    /// `c <= 4`: umklapp is kinematically allowed.
    pub umklapp_open: bool,
    /// `T < E_F`.
    pub degenerate: bool,
}

impl HoneycombModel {
    pub fn validate(&self) -> Result<ModelValidity> {
        for (name, v) in [
            ("c", self.c),
            ("phi_dk", self.phi_dk),
            ("lambda", self.lambda),
            ("T", self.temperature),
            ("E_F", self.fermi_energy),
            ("t", self.t),
            ("d", self.d),
        ] {
            ensure_finite(name, v)?;
        }
        if self.c <= 0.0 || self.fermi_energy <= 0.0 || self.t <= 0.0 || self.d <= 0.0 {
            return Err(Error::Domain("c, E_F, t and d must be positive".into()));
        }
        if self.temperature < 0.0 {
            return Err(Error::Domain(format!("temperature must be >= 0, got {}", self.temperature)));
        }
        Ok(ModelValidity {
            valleys_disjoint: self.c > 2.0,
            umklapp_open: self.c <= 4.0,
            degenerate: self.temperature < self.fermi_energy,
        })
    }
}

/// The three angular integrals entering the umklapp rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SFunctions {
    pub s1: Estimate,
    pub s2: Estimate,
    pub s3: Estimate,
}

fn five(nus: [f64; 5], c: f64, tol: f64) -> Result<Estimate> {
    let spec = IntegralSpec::new(2.0, &nus, &[1.0, 1.0, 1.0, 1.0, c])?;
    eval_bessel_product(&spec, tol)
}

fn check_c(c: f64) -> Result<f64> {
    ensure_finite("c", c)?;
    if c == 0.0 {
        return Err(Error::Domain("the rate diverges logarithmically at c = 0".into()));
    }
    // every integral is even in c
    Ok(c.abs())
}

/// `S_1 = int rho J_0^4(rho) J_0(c rho)`,
/// `S_2 = -cos(2 phi) int rho J_0^2 J_1^2(rho) J_2(c rho)`,
/// `S_3 = (cos(4 phi) int rho J_1^4 J_4(c rho) + int rho J_1^4 J_0(c rho)) / 2`.
///
/// Negative `c` is read as `|c|`.
pub fn s_functions(c: f64, phi_dk: f64, tol: f64) -> Result<SFunctions> {
    let c = check_c(c)?;
    ensure_finite("phi_dk", phi_dk)?;
    let s1 = five([0.0; 5], c, tol)?;
    let s2 = five([0.0, 0.0, 1.0, 1.0, 2.0], c, tol)?.scaled(-(2.0 * phi_dk).cos());
    let s3a = five([1.0, 1.0, 1.0, 1.0, 4.0], c, tol)?.scaled(0.5 * (4.0 * phi_dk).cos());
    let s3b = five([1.0, 1.0, 1.0, 1.0, 0.0], c, tol)?.scaled(0.5);
    Ok(SFunctions { s1, s2, s3: s3a.combine(1.0, &s3b) })
}

/// `f(c) = S_1 - 2 S_2 + S_3`.
pub fn umklapp_f(c: f64, phi_dk: f64, tol: f64) -> Result<Estimate> {
    let s = s_functions(c, phi_dk, tol / 4.0)?;
    Ok(s.s1.combine(-2.0, &s.s2).combine(1.0, &s.s3))
}

/// Averaged umklapp rate `(pi/2) lambda^2 (T^2 / E_F) f(c)`.
pub fn umklapp_rate(model: &HoneycombModel, tol: f64) -> Result<(Estimate, ModelValidity)> {
    let validity = model.validate()?;
    if !validity.valleys_disjoint {
        log::warn!("c = {} <= 2: the valleys overlap and the two-valley picture does not apply", model.c);
    }
    if !validity.degenerate {
        log::warn!("T >= E_F: outside the degenerate regime");
    }
    let prefactor = 0.5 * PI * model.lambda * model.lambda * model.temperature * model.temperature / model.fermi_energy;
    let f = umklapp_f(model.c, model.phi_dk, tol / prefactor.max(f64::MIN_POSITIVE))?;
    Ok((f.scaled(prefactor), validity))
}
