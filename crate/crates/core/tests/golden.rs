//! Frozen reference values produced by independent evaluators.

use bpint_core::bloch::{s_functions, umklapp_f};
use bpint_core::{eval_2d_angular, AngularBudget, ScatterSpec};
use serde::Deserialize;

#[derive(Deserialize)]
struct File<P> {
    tolerance: f64,
    points: Vec<P>,
}

#[derive(Deserialize)]
struct Umklapp {
    c: f64,
    phi_dk: f64,
    s1: f64,
    s2: f64,
    s3: f64,
    f: f64,
}

#[derive(Deserialize)]
struct Walk {
    radii: Vec<f64>,
    g: f64,
    value: f64,
}

fn load<P: for<'de> Deserialize<'de>>(text: &str) -> File<P> {
    serde_json::from_str(text).expect("golden file parses")
}

#[test]
fn umklapp_functions_match_frozen_values() {
    let file: File<Umklapp> = load(include_str!("golden/umklapp.json"));
    for p in &file.points {
        let s = s_functions(p.c, p.phi_dk, 1e-12).unwrap();
        let f = umklapp_f(p.c, p.phi_dk, 1e-12).unwrap();
        for (name, got, want) in [("S1", s.s1, p.s1), ("S2", s.s2, p.s2), ("S3", s.s3, p.s3), ("f", f, p.f)] {
            let err = (got.value - want).abs();
            assert!(err <= file.tolerance + got.error_bound, "{name}(c={}, phi={}): {got} vs {want}", p.c, p.phi_dk);
        }
    }
}

#[test]
fn planar_walk_matches_frozen_values() {
    let file: File<Walk> = load(include_str!("golden/planar_walk.json"));
    let budget = AngularBudget { tol: 1e-13, ..AngularBudget::default() };
    for p in &file.points {
        let e = eval_2d_angular(&ScatterSpec::planar(p.radii.clone(), p.g).unwrap(), &budget).unwrap();
        assert!((e.value - p.value).abs() <= file.tolerance + e.error_bound, "{:?}, g={}: {e} vs {}", p.radii, p.g, p.value);
    }
}
