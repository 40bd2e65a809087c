//! One function per subcommand. Each returns the text to print on stdout.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use bpint_core::bloch::{conductivity_jj, dos_hypercubic, dos_square_closed, kink_scan, DosConvention, HypercubicLattice};
use bpint_core::delta_oracle::{eval_angular, log_grid, threshold_scan, AngularBudget, ScatterSpec, Weight};
use bpint_core::{predict_vanishing, Estimate, IntegralSpec, PolygonalStatus};

use crate::args::{BudgetArgs, ConductivityArgs, DosArgs, EvalArgs, KinksArgs, ScatterArgs, SpecArgs, SweepArgs, ThresholdArgs};
use crate::error::{CliError, CliResult};
use crate::eval::eval_integral;
use crate::sweep::{read_samples, run_sweep, Grid, Param, SweepConfig, SCHEMA_VERSION};

fn integral_spec(args: &SpecArgs) -> CliResult<IntegralSpec> {
    if args.nu.len() != args.c.len() {
        return Err(CliError::Usage(format!(
            "--nu has {} entries but --c has {}",
            args.nu.len(),
            args.c.len()
        )));
    }
    Ok(IntegralSpec::new(args.alpha, &args.nu, &args.c)?)
}

fn lattice(t: &[f64], a: &[f64]) -> CliResult<HypercubicLattice> {
    let a = if a.is_empty() { vec![1.0; t.len()] } else { a.to_vec() };
    if a.len() != t.len() {
        return Err(CliError::Usage(format!("--t has {} entries but --a has {}", t.len(), a.len())));
    }
    Ok(HypercubicLattice::new(t.to_vec(), a)?)
}

fn budget(args: &BudgetArgs) -> AngularBudget {
    AngularBudget {
        tol: args.tol,
        points: args.points,
        shifts: args.shifts,
        seed: args.seed,
        mc_samples: args.mc_samples,
    }
}

fn with_flags(est: &Estimate) -> String {
    let mut line = est.to_string();
    if est.flags.near_singularity {
        line.push_str(" [near van Hove]");
    }
    line
}

pub fn check(args: &SpecArgs) -> CliResult<String> {
    let report = predict_vanishing(&integral_spec(args)?)?;
    let polygonal = match report.polygonal {
        PolygonalStatus::Satisfied => "satisfied",
        PolygonalStatus::Violated => "violated",
        PolygonalStatus::Boundary => "boundary",
    };
    let cnc = match report.charge_neutral_m {
        Some(m) => format!("m={m}"),
        None => "none".to_string(),
    };
    Ok(format!(
        "convergent: {}\npolygonal: {polygonal}\nCNC: {cnc}\nmax_unique: {}\npredicted_zero: {}\n",
        report.convergent, report.max_unique, report.predicted_zero
    ))
}

pub fn eval(args: &EvalArgs) -> CliResult<String> {
    let spec = integral_spec(&args.spec)?;
    let est = eval_integral(&spec, args.method, args.tol, args.seed)?;
    let mut out = format!("{est}\n");
    if let Some(check) = est.cross_check {
        let _ = writeln!(out, "cross-check: {:.16e}, {:.3e}, {}", check.value, check.error_bound, check.method);
    }
    Ok(out)
}

/// Builds the configuration from `--config` or from flags, then applies overrides.
pub fn sweep_config(args: &SweepArgs) -> CliResult<SweepConfig> {
    let mut config = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
            SweepConfig::from_json(&text)?
        }
        None => {
            let missing = |name: &str| CliError::Usage(format!("--{name} is required without --config"));
            let mut parameters = BTreeMap::new();
            for item in &args.set {
                let (key, value) = item
                    .split_once('=')
                    .ok_or_else(|| CliError::Usage(format!("--set expects KEY=VALUE, got {item:?}")))?;
                parameters.insert(key.trim().to_string(), Param::parse(value));
            }
            SweepConfig {
                schema: SCHEMA_VERSION,
                subject: args.subject.as_deref().ok_or_else(|| missing("subject"))?.parse()?,
                parameters,
                grid: Grid {
                    parameter: args.param.clone().ok_or_else(|| missing("param"))?,
                    start: args.start.ok_or_else(|| missing("start"))?,
                    stop: args.stop.ok_or_else(|| missing("stop"))?,
                    step: args.step.ok_or_else(|| missing("step"))?,
                },
                tol: 1e-10,
                seed: 0,
                output_path: None,
            }
        }
    };
    if let Some(tol) = args.tol {
        config.tol = tol;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(path) = &args.output {
        config.output_path = Some(path.clone());
    }
    config.validate()?;
    Ok(config)
}

pub fn sweep(args: &SweepArgs) -> CliResult<String> {
    let config = sweep_config(args)?;
    let csv = run_sweep(&config)?;
    match &config.output_path {
        Some(path) => {
            std::fs::write(path, csv).map_err(|e| CliError::io(path.display().to_string(), e))?;
            Ok(String::new())
        }
        None => Ok(csv),
    }
}

pub fn dos(args: &DosArgs) -> CliResult<String> {
    let est = if args.closed {
        if args.t.len() != 2 || args.t[0] != args.t[1] || args.a.iter().any(|&a| a != 1.0) {
            return Err(CliError::Usage("--closed needs two equal hoppings and unit lattice constants".into()));
        }
        let convention = if args.printed { DosConvention::Printed } else { DosConvention::Corrected };
        dos_square_closed(args.energy, args.t[0], convention)?
    } else {
        dos_hypercubic(&lattice(&args.t, &args.a)?, args.energy, args.tol)?
    };
    Ok(format!("{}\n", with_flags(&est)))
}

pub fn conductivity(args: &ConductivityArgs) -> CliResult<String> {
    let est = conductivity_jj(&lattice(&args.t, &args.a)?, args.axis, args.fermi_energy, args.tau, args.tol)?;
    Ok(format!("{}\n", with_flags(&est)))
}

pub fn scatter(args: &ScatterArgs) -> CliResult<String> {
    let weight: Weight = args.weight.parse()?;
    let spec = ScatterSpec::new(args.dim, args.radii.len() / 2, args.radii.clone(), args.g, weight, args.phi_dk)?;
    let est = eval_angular(&spec, &budget(&args.budget))?;
    let mut out = format!("{est}\n");
    if let Some(check) = est.cross_check {
        let _ = writeln!(out, "cross-check: {:.16e}, {:.3e}, {}", check.value, check.error_bound, check.method);
    }
    Ok(out)
}

pub fn threshold(args: &ThresholdArgs) -> CliResult<String> {
    if !(args.eps_min > 0.0 && args.eps_min < args.eps_max) {
        return Err(CliError::Usage("need 0 < --eps-min < --eps-max".into()));
    }
    let total: f64 = args.radii.iter().sum();
    let spec = ScatterSpec::new(args.dim, args.radii.len() / 2, args.radii.clone(), total, Weight::Unit, None)?;
    let grid = log_grid(args.eps_min, args.eps_max, args.count);
    let fit = threshold_scan(&spec, &grid, &budget(&args.budget))?;
    let mut out = String::from("eps,value\n");
    for (eps, f) in &fit.samples {
        let _ = writeln!(out, "{eps:.16e},{f:.16e}");
    }
    let _ = writeln!(
        out,
        "exponent: {:.6} ± {:.6} over [{:.3e}, {:.3e}] ({} points)",
        fit.exponent, fit.exponent_stderr, fit.epsilon_window.0, fit.epsilon_window.1, fit.points
    );
    Ok(out)
}

pub fn kinks(args: &KinksArgs) -> CliResult<String> {
    let path = args.input.display().to_string();
    let text = std::fs::read_to_string(&args.input).map_err(|e| CliError::io(path, e))?;
    let samples = read_samples(&text)?;
    let mut out = String::new();
    for kink in kink_scan(&samples)? {
        let _ = writeln!(out, "kink: {:.6} ± {:.6}", kink.location, kink.uncertainty);
    }
    if out.is_empty() {
        out.push_str("no kinks\n");
    }
    Ok(out)
}
