use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::estimate::{Estimate, Method};
use crate::quad::{eval_trig_bessel, TrigBesselSpec};
use crate::specfun::elliptic_k_complementary;

/// Relative distance (in units of the bandwidth) at which a request counts
/// as sitting on a van Hove energy.
const VAN_HOVE_WINDOW: f64 = 1e-3;

/// Nearest-neighbour hopping on an orthorhombic lattice,
/// `eps_k = sum_n t_n cos(k_n a_n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypercubicLattice {
    hoppings: Vec<f64>,
    lattice_constants: Vec<f64>,
}

impl HypercubicLattice {
    pub fn new(hoppings: Vec<f64>, lattice_constants: Vec<f64>) -> Result<Self> {
        if hoppings.is_empty() || hoppings.len() != lattice_constants.len() {
            return Err(Error::Domain(format!(
                "need equally many hoppings and lattice constants, got {} and {}",
                hoppings.len(),
                lattice_constants.len()
            )));
        }
        for &v in hoppings.iter().chain(&lattice_constants) {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!("hoppings and lattice constants must be positive, got {v}")));
            }
        }
        Ok(HypercubicLattice { hoppings, lattice_constants })
    }

    /// Unit lattice constants.
    pub fn with_hoppings(hoppings: Vec<f64>) -> Result<Self> {
        let n = hoppings.len();
        HypercubicLattice::new(hoppings, vec![1.0; n])
    }

    pub fn dimension(&self) -> usize {
        self.hoppings.len()
    }

    pub fn hoppings(&self) -> &[f64] {
        &self.hoppings
    }

    pub fn lattice_constants(&self) -> &[f64] {
        &self.lattice_constants
    }

    /// Half the bandwidth, `sum t_n`.
    pub fn band_edge(&self) -> f64 {
        self.hoppings.iter().sum()
    }

    /// `prod 1/a_n`, the total weight of the density of states.
    pub fn inverse_volume(&self) -> f64 {
        self.lattice_constants.iter().map(|a| 1.0 / a).product()
    }

    /// Critical energies `sum_n (+-t_n)`, sorted and deduplicated.
    pub fn van_hove_energies(&self) -> Vec<f64> {
        let mut out = vec![0.0];
        for &t in &self.hoppings {
            out = out.iter().flat_map(|&e| [e - t, e + t]).collect();
        }
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let scale = self.band_edge();
        out.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * scale);
        out
    }

    fn near_van_hove(&self, energy: f64) -> bool {
        let window = VAN_HOVE_WINDOW * self.band_edge();
        self.van_hove_energies().iter().any(|&e| (energy - e).abs() <= window)
    }

    fn outside_band(&self, energy: f64) -> bool {
        energy.abs() > self.band_edge() * (1.0 + 1e-14)
    }
}

/// `(1/pi) prod a_n^{-1} int_0^inf cos(E rho) J_{nu}(t_j rho) prod_{n != j} J_0(t_n rho) d rho`,
/// with `nu = 0` when `j` is `None`.
fn band_integral(lattice: &HypercubicLattice, energy: f64, tol: f64, j: Option<usize>) -> Result<Estimate> {
    let mut nus = vec![0.0; lattice.dimension()];
    if let Some(j) = j {
        nus[j] = 2.0;
    }
    let spec = TrigBesselSpec::new(1.0, 0.0, energy.abs(), 1.0, &nus, &lattice.hoppings)?;
    let scale = lattice.inverse_volume() / PI;
    Ok(eval_trig_bessel(&spec, tol / scale)?.scaled(scale))
}

/// Density of states per unit volume (spin not counted).
///
/// Requests near a van Hove energy are evaluated anyway and flagged; at a
/// logarithmic singularity the estimate carries the divergence flag and the
/// finite part.
pub fn dos_hypercubic(lattice: &HypercubicLattice, energy: f64, tol: f64) -> Result<Estimate> {
    ensure_finite("E", energy)?;
    if lattice.outside_band(energy) {
        return Ok(Estimate::exact_zero(Method::SupportRule));
    }
    let mut est = band_integral(lattice, energy, tol, None)?;
    est.flags.near_singularity = lattice.near_van_hove(energy);
    Ok(est)
}

/// Normalisation of the square-lattice closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DosConvention {
    /// `K(k) / (pi^2 t)`; integrates to one over the band.
    #[default]
    Corrected,
    /// `2 K(k) / (pi t)`, a factor `2 pi` larger.
    Printed,
}

/// Square lattice with unit spacing and `t_1 = t_2 = t`:
/// `K(sqrt(1 - (E/2t)^2)) / (pi^2 t)` inside the band.
///
/// `E = 0` returns an infinite value with the divergence flag; the band
/// edges are flagged as near-singular.
pub fn dos_square_closed(energy: f64, t: f64, convention: DosConvention) -> Result<Estimate> {
    ensure_finite("E", energy)?;
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::Domain(format!("hopping must be positive, got {t}")));
    }
    let x = energy.abs() / (2.0 * t);
    if x > 1.0 {
        return Ok(Estimate::exact_zero(Method::SupportRule));
    }
    let prefactor = match convention {
        DosConvention::Corrected => 1.0 / (PI * PI * t),
        DosConvention::Printed => 2.0 / (PI * t),
    };
    if x == 0.0 {
        let mut est = Estimate::exact(f64::INFINITY, Method::ClosedForm);
        est.flags.divergent = true;
        est.flags.near_singularity = true;
        return Ok(est);
    }
    let value = prefactor * elliptic_k_complementary(x)?;
    let mut est = Estimate::new(value, 8.0 * f64::EPSILON * value, 1, Method::ClosedForm);
    est.flags.near_singularity = x < VAN_HOVE_WINDOW || 1.0 - x < VAN_HOVE_WINDOW;
    Ok(est)
}

/// Conductivity `sigma_jj(E_F) = tau (t_j a_j)^2 [nu(E_F) + I_j(E_F)]` in
/// units `e = hbar = 1`, spin included, where `I_j` carries one `J_2(t_j rho)`.
pub fn conductivity_jj(lattice: &HypercubicLattice, j: usize, fermi_energy: f64, tau: f64, tol: f64) -> Result<Estimate> {
    ensure_finite("E_F", fermi_energy)?;
    if j >= lattice.dimension() {
        return Err(Error::Domain(format!("axis {j} out of range for dimension {}", lattice.dimension())));
    }
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::Domain(format!("relaxation time must be positive, got {tau}")));
    }
    if lattice.outside_band(fermi_energy) {
        return Ok(Estimate::exact_zero(Method::SupportRule));
    }
    let va = lattice.hoppings[j] * lattice.lattice_constants[j];
    let scale = tau * va * va;
    let nu = band_integral(lattice, fermi_energy, tol / scale, None)?;
    let extra = band_integral(lattice, fermi_energy, tol / scale, Some(j))?;
    let mut est = nu.combine(1.0, &extra).scaled(scale);
    est.flags.near_singularity = lattice.near_van_hove(fermi_energy);
    Ok(est)
}

/// `int nu(E) dE` over the band: the band is split at the van Hove energies,
/// each piece mapped by `E = mid - half cos(theta)` (which tames the edge
/// singularities) and integrated by the midpoint rule with `steps` panels.
/// The midpoint rule never touches the edges, where the mapped integrand
/// stays finite but the density does not.
pub fn dos_sum_rule(lattice: &HypercubicLattice, steps: usize, tol: f64) -> Result<f64> {
    if steps < 2 {
        return Err(Error::Config("sum rule needs at least two panels per segment".into()));
    }
    let nodes = lattice.van_hove_energies();
    let h = PI / steps as f64;
    let mut total = 0.0;
    for w in nodes.windows(2) {
        let (mid, half) = (0.5 * (w[0] + w[1]), 0.5 * (w[1] - w[0]));
        let parts: Result<Vec<f64>> = (0..steps)
            .into_par_iter()
            .map(|i| {
                let theta = (i as f64 + 0.5) * h;
                let e = mid - half * theta.cos();
                Ok(dos_hypercubic(lattice, e, tol)?.value * half * theta.sin())
            })
            .collect();
        total += parts?.iter().sum::<f64>() * h;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    const K_SQRT3_2: f64 = 2.156_515_647_499_643_2;

    #[test]
    fn one_dimensional_centre() {
        let l = HypercubicLattice::with_hoppings(vec![1.0]).unwrap();
        let e = dos_hypercubic(&l, 0.0, 1e-10).unwrap();
        assert!((e.value - 1.0 / PI).abs() < 1e-9, "{e}");
        let s = conductivity_jj(&l, 0, 0.0, 1.0, 1e-10).unwrap();
        assert!((s.value - 2.0 / PI).abs() < 1e-9, "{s}");
    }

    #[test]
    fn square_lattice() {
        let l = HypercubicLattice::with_hoppings(vec![1.0, 1.0]).unwrap();
        let e = dos_hypercubic(&l, 1.0, 1e-10).unwrap();
        assert!((e.value - K_SQRT3_2 / (PI * PI)).abs() < 1e-9, "{e}");
        assert_eq!(dos_hypercubic(&l, 3.0, 1e-10).unwrap().value, 0.0);
        assert_eq!(conductivity_jj(&l, 0, 3.0, 1.0, 1e-10).unwrap().value, 0.0);
        let c = conductivity_jj(&l, 1, 1.999, 1.0, 1e-10).unwrap();
        assert!(c.value > 0.0 && c.value < 0.01, "{c}");
        assert!(dos_hypercubic(&l, 0.0, 1e-8).unwrap().flags.near_singularity);
    }

    #[test]
    fn closed_form() {
        let e = dos_square_closed(1.0, 1.0, DosConvention::Corrected).unwrap();
        assert!((e.value - K_SQRT3_2 / (PI * PI)).abs() < 1e-15);
        assert!((e.value - 0.218_500_717_947_886).abs() < 1e-14);
        let p = dos_square_closed(1.0, 1.0, DosConvention::Printed).unwrap();
        assert!((p.value / e.value - 2.0 * PI).abs() < 1e-12);
        assert_eq!(dos_square_closed(3.0, 1.0, DosConvention::Corrected).unwrap().value, 0.0);
        assert!(dos_square_closed(0.0, 1.0, DosConvention::Corrected).unwrap().flags.divergent);
    }

    #[test]
    fn van_hove_energies() {
        let l = HypercubicLattice::with_hoppings(vec![1.0, 1.0]).unwrap();
        assert_eq!(l.van_hove_energies(), vec![-2.0, 0.0, 2.0]);
        let l = HypercubicLattice::with_hoppings(vec![1.0, 0.5, 0.25]).unwrap();
        assert_eq!(l.van_hove_energies().len(), 8);
    }

    #[test]
    fn validation() {
        assert!(HypercubicLattice::new(vec![1.0], vec![1.0, 1.0]).is_err());
        assert!(HypercubicLattice::with_hoppings(vec![1.0, -1.0]).is_err());
        let l = HypercubicLattice::with_hoppings(vec![1.0]).unwrap();
        assert!(conductivity_jj(&l, 1, 0.0, 1.0, 1e-8).is_err());
    }
}
