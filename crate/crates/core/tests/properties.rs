//! Invariants that hold for every admissible input.

use bpint_core::bloch::{dos_hypercubic, kink_scan, umklapp_f, umklapp_rate, HoneycombModel, HypercubicLattice};
use bpint_core::specfun::{bessel_j, reciprocal_gamma, Order};
use bpint_core::{eval_bessel_product, IntegralSpec};
use proptest::prelude::*;

fn coefficients(m: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.5f64..1.5, m)
}

/// Convergent specs with small integer orders and unit-ish coefficients.
fn spec() -> impl Strategy<Value = (f64, Vec<f64>, Vec<f64>)> {
    (3usize..=5)
        .prop_flat_map(|m| (Just(m), prop::collection::vec(0u8..=2, m), coefficients(m), 0.2f64..0.9))
        .prop_map(|(m, nus, cs, frac)| {
            let nus: Vec<f64> = nus.into_iter().map(f64::from).collect();
            // anywhere inside the window, away from its edges
            let lower = (-nus.iter().sum::<f64>()).max(0.0);
            let upper = 0.5 * m as f64 + 1.0;
            (lower + frac * (upper - lower), nus, cs)
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn integral_is_symmetric_under_factor_permutation((alpha, nus, cs) in spec(), rotate in 1usize..4) {
        let a = eval_bessel_product(&IntegralSpec::new(alpha, &nus, &cs).unwrap(), 1e-10).unwrap();
        let k = rotate % nus.len();
        let (mut nus2, mut cs2) = (nus.clone(), cs.clone());
        nus2.rotate_left(k);
        cs2.rotate_left(k);
        let b = eval_bessel_product(&IntegralSpec::new(alpha, &nus2, &cs2).unwrap(), 1e-10).unwrap();
        prop_assert!(a.agrees_with(&b, 1e-12), "{a} vs {b}");
    }

    #[test]
    fn integral_scales_as_power_of_coefficients((alpha, nus, cs) in spec(), s in 0.3f64..3.0) {
        let base = eval_bessel_product(&IntegralSpec::new(alpha, &nus, &cs).unwrap(), 1e-11).unwrap();
        let scaled_cs: Vec<f64> = cs.iter().map(|c| s * c).collect();
        let scaled = eval_bessel_product(&IntegralSpec::new(alpha, &nus, &scaled_cs).unwrap(), 1e-11).unwrap();
        let expect = base.value * s.powf(-alpha);
        let bound = scaled.error_bound + base.error_bound * s.powf(-alpha) + 1e-12;
        prop_assert!((scaled.value - expect).abs() <= bound, "{} vs {expect}", scaled.value);
    }

    #[test]
    fn umklapp_rate_is_quadratic_in_coupling_and_temperature(
        c in 2.2f64..3.8, lambda in 0.01f64..1.0, temp in 0.001f64..0.05, k in 1.5f64..4.0,
    ) {
        let model = HoneycombModel { c, phi_dk: 0.0, lambda, temperature: temp, fermi_energy: 1.0, t: 1.0, d: 1.0 };
        let (base, _) = umklapp_rate(&model, 1e-10).unwrap();
        let (wide, _) = umklapp_rate(&HoneycombModel { lambda: k * lambda, ..model }, 1e-10).unwrap();
        let (hot, _) = umklapp_rate(&HoneycombModel { temperature: k * temp, ..model }, 1e-10).unwrap();
        // f is resolved to a tolerance relative to the prefactor, so compare within bounds
        for e in [wide, hot] {
            let expect = k * k * base.value;
            let bound = e.error_bound + k * k * base.error_bound + 1e-14 * expect.abs();
            prop_assert!((e.value - expect).abs() <= bound, "{e} vs {expect}");
        }
    }

    #[test]
    fn umklapp_f_is_a_rate(c in 0.1f64..5.0, phi in 0.0f64..std::f64::consts::PI) {
        let f = umklapp_f(c, phi, 1e-10).unwrap();
        prop_assert!(f.value >= -f.error_bound.max(1e-12), "f({c}) = {f}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn bessel_three_term_recurrence(nu in 1.0f64..20.0, x in 0.1f64..100.0) {
        let j = |n: f64| bessel_j(Order::new(n).unwrap(), x).unwrap();
        let (lo, mid, hi) = (j(nu - 1.0), j(nu), j(nu + 1.0));
        let scale = lo.abs().max(hi.abs()).max((2.0 * nu / x * mid).abs());
        prop_assert!((lo + hi - 2.0 * nu / x * mid).abs() <= 1e-12 * scale.max(1e-300), "nu={nu} x={x}");
    }

    #[test]
    fn reciprocal_gamma_shift(x in -30.0f64..30.0) {
        // 1/Gamma(x) = x / Gamma(x + 1)
        let lhs = reciprocal_gamma(x);
        let rhs = x * reciprocal_gamma(x + 1.0);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(rhs.abs()).max(1e-300), "x={x}: {lhs} vs {rhs}");
    }

    #[test]
    fn reciprocal_gamma_vanishes_at_poles(n in 0u32..60) {
        prop_assert_eq!(reciprocal_gamma(-(n as f64)), 0.0);
    }

    #[test]
    fn quadratics_have_no_kinks(a in -5.0f64..5.0, b in -5.0f64..5.0, c in -5.0f64..5.0, n in 9usize..400) {
        let samples: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let x = -1.0 + 2.0 * i as f64 / (n - 1) as f64;
                (x, a * x * x + b * x + c)
            })
            .collect();
        prop_assert!(kink_scan(&samples).unwrap().is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn dos_is_even_in_energy(
        t in prop::collection::vec(0.3f64..1.5, 1..=3), frac in 0.0f64..1.2,
    ) {
        let lattice = HypercubicLattice::with_hoppings(t.clone()).unwrap();
        let e = frac * t.iter().sum::<f64>();
        let plus = dos_hypercubic(&lattice, e, 1e-10).unwrap();
        let minus = dos_hypercubic(&lattice, -e, 1e-10).unwrap();
        prop_assert!((plus.value - minus.value).abs() <= 1e-8, "{plus} vs {minus}");
    }
}
