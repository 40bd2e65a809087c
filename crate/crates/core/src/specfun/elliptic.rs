use std::f64::consts::FRAC_PI_2;

use crate::error::{ensure_finite, Error, Result};

fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= 1e-16 * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    0.5 * (a + b)
}

/// Complete elliptic integral of the first kind, modulus convention
/// `K(k) = int_0^{pi/2} dθ / sqrt(1 - k² sin²θ)`, via the arithmetic-geometric mean.
pub fn elliptic_k(k: f64) -> Result<f64> {
    ensure_finite("k", k)?;
    let k = k.abs();
    if k >= 1.0 {
        return Err(Error::Singularity(format!(
            "K(k) diverges logarithmically as k -> 1 (k = {k})"
        )));
    }
    elliptic_k_complementary(((1.0 - k) * (1.0 + k)).sqrt())
}

/// `K` expressed through the complementary modulus `k' = sqrt(1 - k²)`;
/// avoids the cancellation in `1 - k²` near the singular end.
pub fn elliptic_k_complementary(kp: f64) -> Result<f64> {
    ensure_finite("k'", kp)?;
    if kp <= 0.0 {
        return Err(Error::Singularity("K diverges at complementary modulus 0".into()));
    }
    if kp > 1.0 {
        return Err(Error::Domain(format!("complementary modulus {kp} exceeds 1")));
    }
    Ok(FRAC_PI_2 / agm(1.0, kp))
}
