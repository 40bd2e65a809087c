//! Method selection for single integrals, shared by `eval` and `sweep`.

use std::f64::consts::FRAC_PI_2;

use bpint_core::delta_oracle::{eval_2d_angular, eval_3d_angular, AngularBudget, ScatterSpec};
use bpint_core::{eval_bessel_product_with, eval_exton, Error, Estimate, IntegralSpec, QuadMethod};

use crate::args::EvalMethod;
use crate::error::{CliError, CliResult};

impl EvalMethod {
    pub fn parse(text: &str) -> CliResult<Self> {
        <EvalMethod as clap::ValueEnum>::from_str(text, true)
            .map_err(|_| CliError::Usage(format!("unknown method {text:?} (expected quad, regularized, exton, oracle or auto)")))
    }
}

/// Evaluate with the requested method. `seed` only matters for the oracle.
pub fn eval_integral(spec: &IntegralSpec, method: EvalMethod, tol: f64, seed: u64) -> CliResult<Estimate> {
    Ok(match method {
        EvalMethod::Quad => eval_bessel_product_with(spec, tol, QuadMethod::AsymptoticTail)?,
        EvalMethod::Regularized => eval_bessel_product_with(spec, tol, QuadMethod::Regularized)?,
        EvalMethod::Exton => eval_exton(spec, tol)?,
        EvalMethod::Oracle => eval_oracle(spec, tol, seed)?,
        EvalMethod::Auto => match eval_exton(spec, tol) {
            Ok(e) if !e.flags.degraded => e,
            Ok(closed) => {
                let quad = eval_bessel_product_with(spec, tol, QuadMethod::AsymptoticTail)?;
                if quad.error_bound < closed.error_bound {
                    quad
                } else {
                    closed
                }
            }
            Err(Error::OutOfDomain { .. }) => eval_bessel_product_with(spec, tol, QuadMethod::AsymptoticTail)?,
            Err(e) => return Err(e.into()),
        },
    })
}

/// Route an integral to the angular oracle when it belongs to one of the two
/// families it represents: `alpha = 2` with zero orders (planar), or
/// `alpha = 3 - M/2` with orders one half (spherical). Either needs an odd
/// number of factors; the last coefficient plays the role of `g`.
fn eval_oracle(spec: &IntegralSpec, tol: f64, seed: u64) -> bpint_core::Result<Estimate> {
    let m = spec.len();
    let orders_all = |v: f64| spec.factors().iter().all(|f| f.nu.value() == v);
    let cs: Vec<f64> = spec.factors().iter().map(|f| f.c).collect();
    let budget = AngularBudget { tol, seed, ..AngularBudget::default() };
    let out_of_domain = |reason: &str| Error::OutOfDomain { method: "oracle", reason: reason.to_string() };
    if m < 3 || m % 2 == 0 {
        return Err(out_of_domain("needs an odd number of factors, at least three"));
    }
    let (radii, g) = (cs[..m - 1].to_vec(), cs[m - 1]);
    if spec.alpha() == 2.0 && orders_all(0.0) {
        return eval_2d_angular(&ScatterSpec::planar(radii, g)?, &budget);
    }
    if spec.alpha() == 3.0 - 0.5 * m as f64 && orders_all(0.5) {
        // j_0(x) = sqrt(pi / 2x) J_{1/2}(x)
        let scale = FRAC_PI_2.powf(0.5 * m as f64) / cs.iter().product::<f64>().sqrt();
        let mut est = eval_3d_angular(&ScatterSpec::spherical(radii, g)?, &budget)?.scaled(1.0 / scale);
        if let Some(check) = est.cross_check.as_mut() {
            check.value /= scale;
            check.error_bound /= scale;
        }
        return Ok(est);
    }
    Err(out_of_domain("needs alpha = 2 with all orders 0, or alpha = 3 - M/2 with all orders 1/2"))
}
