//! Sweep configuration, per-point evaluation and CSV rendering.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::PathBuf;

use bpint_core::bloch::{conductivity_jj, dos_hypercubic, umklapp_f, HypercubicLattice};
use bpint_core::delta_oracle::{eval_2d_angular, eval_3d_angular, threshold_fit, AngularBudget, ScatterSpec, Weight};
use bpint_core::{Estimate, IntegralSpec, TrigBesselSpec};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};
use crate::args::EvalMethod;
use crate::eval::eval_integral;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    Integral,
    Trig,
    Dos,
    Conductivity,
    Scatter2d,
    Scatter3d,
    UmklappF,
    Threshold,
}

impl std::str::FromStr for Subject {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| CliError::Usage(format!("unknown subject {s:?}")))
    }
}

/// A fixed parameter: number, list of numbers, or tag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Number(f64),
    List(Vec<f64>),
    Text(String),
}

impl Param {
    /// Parses the right-hand side of `--set key=value`.
    pub fn parse(text: &str) -> Param {
        if text.contains(',') {
            if let Ok(list) = text.split(',').map(|v| v.trim().parse::<f64>()).collect::<Result<Vec<_>, _>>() {
                return Param::List(list);
            }
        }
        match text.trim().parse::<f64>() {
            Ok(v) => Param::Number(v),
            Err(_) => Param::Text(text.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub parameter: String,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    /// Grid points, snapped to 12 significant digits so that values such as
    /// `2.0` are hit exactly rather than as `1.9999999999999998`.
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step * (1.0 + 1e-12)).floor() as usize;
        (0..=n)
            .map(|i| {
                let x = self.start + i as f64 * self.step;
                format!("{x:.11e}").parse::<f64>().unwrap_or(x)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub schema: u32,
    pub subject: Subject,
    #[serde(default)]
    pub parameters: BTreeMap<String, Param>,
    pub grid: Grid,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
}

fn default_tol() -> f64 {
    1e-10
}

impl SweepConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        let config: SweepConfig =
            serde_json::from_str(text).map_err(|e| CliError::Usage(format!("invalid sweep config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.schema != SCHEMA_VERSION {
            return Err(CliError::Usage(format!("unsupported schema {} (expected {SCHEMA_VERSION})", self.schema)));
        }
        let g = &self.grid;
        if !(g.step > 0.0 && g.step.is_finite()) {
            return Err(CliError::Usage(format!("grid step must be positive, got {}", g.step)));
        }
        if !(g.start < g.stop) {
            return Err(CliError::Usage(format!("grid start {} must be below stop {}", g.start, g.stop)));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::Usage(format!("tolerance must be positive, got {}", self.tol)));
        }
        if (g.stop - g.start) / g.step > 1e7 {
            return Err(CliError::Usage("grid has more than 10^7 points".into()));
        }
        Plan::new(self).map(|_| ())
    }

    /// SHA-256 of the canonical JSON form, output path excluded.
    pub fn hash(&self) -> String {
        let canonical = SweepConfig { output_path: None, ..self.clone() };
        let bytes = serde_json::to_vec(&canonical).expect("config serialises");
        hex::encode(Sha256::digest(&bytes))
    }
}

/// Typed access to the parameter map that rejects keys nobody reads.
struct Params<'a> {
    map: &'a BTreeMap<String, Param>,
    used: BTreeSet<&'static str>,
}

impl<'a> Params<'a> {
    fn new(map: &'a BTreeMap<String, Param>) -> Self {
        Params { map, used: BTreeSet::new() }
    }

    fn number(&mut self, key: &'static str, default: Option<f64>) -> CliResult<f64> {
        self.used.insert(key);
        match (self.map.get(key), default) {
            (Some(Param::Number(v)), _) => Ok(*v),
            (Some(_), _) => Err(CliError::Usage(format!("parameter {key} must be a number"))),
            (None, Some(d)) => Ok(d),
            (None, None) => Err(CliError::Usage(format!("missing parameter {key}"))),
        }
    }

    fn list(&mut self, key: &'static str, default: Option<Vec<f64>>) -> CliResult<Vec<f64>> {
        self.used.insert(key);
        match (self.map.get(key), default) {
            (Some(Param::List(v)), _) => Ok(v.clone()),
            (Some(Param::Number(v)), _) => Ok(vec![*v]),
            (Some(_), _) => Err(CliError::Usage(format!("parameter {key} must be a list of numbers"))),
            (None, Some(d)) => Ok(d),
            (None, None) => Err(CliError::Usage(format!("missing parameter {key}"))),
        }
    }

    fn text(&mut self, key: &'static str, default: &str) -> CliResult<String> {
        self.used.insert(key);
        match self.map.get(key) {
            Some(Param::Text(v)) => Ok(v.clone()),
            Some(_) => Err(CliError::Usage(format!("parameter {key} must be text"))),
            None => Ok(default.to_string()),
        }
    }

    /// Keys nobody read are typos or belong to another subject; the swept
    /// parameter lands here too unless it names a list entry.
    fn finish(self) -> CliResult<()> {
        match self.map.keys().find(|k| !self.used.contains(k.as_str())) {
            Some(key) => Err(CliError::Usage(format!("unknown or swept parameter {key:?}"))),
            None => Ok(()),
        }
    }
}

/// Which coefficient list entry a grid over `c` replaces.
fn coefficient_slot(grid_param: &str, len: usize) -> CliResult<Option<usize>> {
    if grid_param == "c" {
        return Ok(Some(len - 1));
    }
    if let Some(index) = grid_param.strip_prefix('c').and_then(|s| s.parse::<usize>().ok()) {
        if (1..=len).contains(&index) {
            return Ok(Some(index - 1));
        }
        return Err(CliError::Usage(format!("{grid_param} is out of range for {len} coefficients")));
    }
    Ok(None)
}

fn budget(params: &mut Params, tol: f64, seed: u64) -> CliResult<AngularBudget> {
    let d = AngularBudget::default();
    Ok(AngularBudget {
        tol,
        points: params.number("points", Some(d.points as f64))? as usize,
        shifts: params.number("shifts", Some(d.shifts as f64))? as usize,
        seed,
        mc_samples: params.number("mc_samples", Some(d.mc_samples as f64))? as usize,
    })
}

/// A validated sweep, ready to evaluate at any grid value.
enum Plan {
    Integral { alpha: f64, nus: Vec<f64>, cs: Vec<f64>, slot: Option<usize>, choice: EvalMethod },
    Trig { a: f64, b: f64, c_trig: f64, alpha: f64, nus: Vec<f64>, cs: Vec<f64>, target: TrigTarget },
    Dos { t: Vec<f64>, a: Vec<f64> },
    Conductivity { t: Vec<f64>, a: Vec<f64>, axis: usize, tau: f64 },
    Scatter { dim: u8, radii: Vec<f64>, weight: Weight, phi_dk: Option<f64>, budget: AngularBudget },
    Umklapp { phi_dk: f64 },
    Threshold { dim: u8, radii: Vec<f64>, budget: AngularBudget },
}

enum TrigTarget {
    Frequency,
    Alpha,
    Coefficient(usize),
}

impl Plan {
    fn new(config: &SweepConfig) -> CliResult<Plan> {
        let mut p = Params::new(&config.parameters);
        let gp = config.grid.parameter.as_str();
        let expect = |names: &[&str]| -> CliResult<()> {
            if names.contains(&gp) {
                Ok(())
            } else {
                Err(CliError::Usage(format!("cannot sweep {gp:?} for this subject (expected one of {names:?})")))
            }
        };
        let plan = match config.subject {
            Subject::Integral => {
                let alpha = if gp == "alpha" { 0.0 } else { p.number("alpha", None)? };
                let nus = p.list("nu", None)?;
                let cs = p.list("c", None)?;
                let method = p.text("method", "quad")?;
                let choice = EvalMethod::parse(&method)?;
                if nus.len() != cs.len() {
                    return Err(CliError::Usage("nu and c differ in length".into()));
                }
                let slot = coefficient_slot(gp, cs.len())?;
                if slot.is_none() {
                    expect(&["alpha", "c"])?;
                }
                Plan::Integral { alpha, nus, cs, slot, choice }
            }
            Subject::Trig => {
                let a = p.number("a", Some(1.0))?;
                let b = p.number("b", Some(0.0))?;
                let c_trig = if gp == "c_trig" { 0.0 } else { p.number("c_trig", None)? };
                let alpha = if gp == "alpha" { 0.0 } else { p.number("alpha", None)? };
                let nus = p.list("nu", None)?;
                let cs = p.list("c", None)?;
                if nus.len() != cs.len() {
                    return Err(CliError::Usage("nu and c differ in length".into()));
                }
                let target = match (gp, coefficient_slot(gp, cs.len())?) {
                    ("c_trig", _) => TrigTarget::Frequency,
                    ("alpha", _) => TrigTarget::Alpha,
                    (_, Some(i)) => TrigTarget::Coefficient(i),
                    _ => {
                        expect(&["c_trig", "alpha", "c"])?;
                        unreachable!()
                    }
                };
                Plan::Trig { a, b, c_trig, alpha, nus, cs, target }
            }
            Subject::Dos | Subject::Conductivity => {
                let t = p.list("t", None)?;
                let a = p.list("a", Some(vec![1.0; t.len()]))?;
                HypercubicLattice::new(t.clone(), a.clone())?;
                if config.subject == Subject::Dos {
                    expect(&["E"])?;
                    Plan::Dos { t, a }
                } else {
                    expect(&["E_F"])?;
                    let axis = p.number("axis", Some(0.0))? as usize;
                    let tau = p.number("tau", Some(1.0))?;
                    Plan::Conductivity { t, a, axis, tau }
                }
            }
            Subject::Scatter2d | Subject::Scatter3d => {
                expect(&["g"])?;
                let dim = if config.subject == Subject::Scatter2d { 2 } else { 3 };
                let radii = p.list("radii", None)?;
                let weight: Weight = p.text("weight", "unit")?.parse()?;
                let phi_dk = match config.parameters.get("phi_dk") {
                    Some(_) => Some(p.number("phi_dk", None)?),
                    None => None,
                };
                let budget = budget(&mut p, config.tol, config.seed)?;
                ScatterSpec::new(dim, radii.len() / 2, radii.clone(), 1.0, weight, phi_dk)?;
                Plan::Scatter { dim, radii, weight, phi_dk, budget }
            }
            Subject::UmklappF => {
                expect(&["c"])?;
                Plan::Umklapp { phi_dk: p.number("phi_dk", Some(0.0))? }
            }
            Subject::Threshold => {
                expect(&["eps"])?;
                let radii = p.list("radii", None)?;
                let dim = p.number("dimension", Some(2.0))? as u8;
                let budget = budget(&mut p, config.tol, config.seed)?;
                ScatterSpec::new(dim, radii.len() / 2, radii.clone(), 1.0, Weight::Unit, None)?;
                if config.grid.start <= 0.0 {
                    return Err(CliError::Usage("threshold slacks must be positive".into()));
                }
                Plan::Threshold { dim, radii, budget }
            }
        };
        p.finish()?;
        Ok(plan)
    }

    fn evaluate(&self, x: f64, tol: f64) -> CliResult<Estimate> {
        Ok(match self {
            Plan::Integral { alpha, nus, cs, slot, choice } => {
                let mut cs = cs.clone();
                let alpha = match slot {
                    Some(i) => {
                        cs[*i] = x;
                        *alpha
                    }
                    None => x,
                };
                eval_integral(&IntegralSpec::new(alpha, nus, &cs)?, *choice, tol, 0)?
            }
            Plan::Trig { a, b, c_trig, alpha, nus, cs, target } => {
                let (mut c_trig, mut alpha, mut cs) = (*c_trig, *alpha, cs.clone());
                match target {
                    TrigTarget::Frequency => c_trig = x,
                    TrigTarget::Alpha => alpha = x,
                    TrigTarget::Coefficient(i) => cs[*i] = x,
                }
                bpint_core::eval_trig_bessel(&TrigBesselSpec::new(*a, *b, c_trig, alpha, nus, &cs)?, tol)?
            }
            Plan::Dos { t, a } => dos_hypercubic(&HypercubicLattice::new(t.clone(), a.clone())?, x, tol)?,
            Plan::Conductivity { t, a, axis, tau } => {
                conductivity_jj(&HypercubicLattice::new(t.clone(), a.clone())?, *axis, x, *tau, tol)?
            }
            Plan::Scatter { dim, radii, weight, phi_dk, budget } => {
                let spec = ScatterSpec::new(*dim, radii.len() / 2, radii.clone(), x, *weight, *phi_dk)?;
                if *dim == 2 {
                    eval_2d_angular(&spec, budget)?
                } else {
                    eval_3d_angular(&spec, budget)?
                }
            }
            Plan::Umklapp { phi_dk } => umklapp_f(x, *phi_dk, tol)?,
            Plan::Threshold { dim, radii, budget } => {
                let total: f64 = radii.iter().sum();
                let spec = ScatterSpec::new(*dim, radii.len() / 2, radii.clone(), total - x, Weight::Unit, None)?;
                bpint_core::delta_oracle::eval_angular(&spec, budget)?
            }
        })
    }
}

/// Format with 17 significant digits, which round-trips every double.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Run a sweep and render the CSV.
///
/// Points where the evaluation fails are left out and listed as trailing
/// comments; so are points whose value is the finite part of a divergent
/// integral.
pub fn run_sweep(config: &SweepConfig) -> CliResult<String> {
    config.validate()?;
    let plan = Plan::new(config)?;
    let xs = config.grid.points();
    let results: Vec<CliResult<Estimate>> = xs.par_iter().map(|&x| plan.evaluate(x, config.tol)).collect();

    let mut out = String::new();
    let _ = writeln!(
        out,
        "# bpint-version={}, config-hash={}, seed={}",
        env!("CARGO_PKG_VERSION"),
        config.hash(),
        config.seed
    );
    out.push_str("param,value,error_bound,method,seed\n");
    let mut notes = Vec::new();
    let mut fit_points = (Vec::new(), Vec::new());
    for (&x, result) in xs.iter().zip(results) {
        match result {
            Ok(e) if !(e.value.is_finite() && e.error_bound.is_finite()) => {
                notes.push(format!("# skipped {}: non-finite value {}", num(x), e.value));
            }
            Ok(e) => {
                let _ = writeln!(out, "{},{},{},{},{}", num(x), num(e.value), num(e.error_bound), e.method, config.seed);
                if e.flags.divergent {
                    notes.push(format!("# divergent at {}: value is the finite part", num(x)));
                }
                fit_points.0.push(x);
                fit_points.1.push(e.value);
            }
            Err(err) if err.exit_code() == 3 => notes.push(format!("# skipped {}: {err}", num(x))),
            Err(err) => return Err(err),
        }
    }
    if config.subject == Subject::Threshold {
        let fit = threshold_fit(&fit_points.0, &fit_points.1)?;
        let _ = writeln!(out, "exponent,{}±{}", num(fit.exponent), num(fit.exponent_stderr));
    }
    for note in notes {
        out.push_str(&note);
        out.push('\n');
    }
    Ok(out)
}

/// Reads `param,value` pairs from a sweep CSV. Skipped points come back as
/// NaN so that the grid stays uniform and the gap shows up as a singularity.
pub fn read_samples(text: &str) -> CliResult<Vec<(f64, f64)>> {
    let mut samples = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("# skipped ") {
            if let Some(x) = rest.split(':').next().and_then(|v| v.trim().parse::<f64>().ok()) {
                samples.push((x, f64::NAN));
            }
            continue;
        }
        if line.is_empty() || line.starts_with('#') || line.starts_with("param,") || line.starts_with("exponent,") {
            continue;
        }
        let mut fields = line.split(',');
        let parse = |f: Option<&str>| -> CliResult<f64> {
            f.and_then(|v| v.trim().parse::<f64>().ok())
                .ok_or_else(|| CliError::Usage(format!("line {}: expected numeric param,value", i + 1)))
        };
        let x = parse(fields.next())?;
        let y = parse(fields.next())?;
        samples.push((x, y));
    }
    samples.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_hits_round_values() {
        let g = Grid { parameter: "c".into(), start: -0.5, stop: 5.0, step: 0.01 };
        let pts = g.points();
        assert_eq!(pts.len(), 551);
        assert!(pts.contains(&0.0) && pts.contains(&2.0) && pts.contains(&4.0));
        assert_eq!(*pts.last().unwrap(), 5.0);
    }

    #[test]
    fn param_parsing() {
        assert_eq!(Param::parse("1,2.5"), Param::List(vec![1.0, 2.5]));
        assert_eq!(Param::parse("-3"), Param::Number(-3.0));
        assert_eq!(Param::parse("R2"), Param::Text("R2".into()));
    }

    #[test]
    fn hash_ignores_output_path() {
        let text = r#"{"schema":1,"subject":"umklapp_f","grid":{"parameter":"c","start":3,"stop":4,"step":0.5}}"#;
        let a = SweepConfig::from_json(text).unwrap();
        let b = SweepConfig { output_path: Some("x.csv".into()), ..a.clone() };
        assert_eq!(a.hash(), b.hash());
        let c = SweepConfig { seed: 7, ..a.clone() };
        assert_ne!(a.hash(), c.hash());
    }
}
