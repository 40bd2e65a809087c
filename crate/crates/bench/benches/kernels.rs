use bpint_core::specfun::{bessel_j, Order};
use bpint_core::{eval_2d_angular, eval_bessel_product, lauricella_fc, AngularBudget, IntegralSpec, LauricellaParams, ScatterSpec};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn bessel(c: &mut Criterion) {
    let mut group = c.benchmark_group("bessel_j");
    for (nu, x) in [(0.0, 0.5), (0.0, 30.0), (2.5, 8.0), (20.0, 150.0)] {
        let order = Order::new(nu).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("nu={nu},x={x}")), &x, |b, &x| {
            b.iter(|| bessel_j(order, black_box(x)).unwrap())
        });
    }
    group.finish();
}

fn products(c: &mut Criterion) {
    let mut group = c.benchmark_group("eval_bessel_product");
    group.sample_size(20);
    let cases = [
        ("three_j0", IntegralSpec::new(1.0, &[0.0; 3], &[1.0, 1.3, 0.9]).unwrap()),
        ("five_j0_planar", IntegralSpec::new(2.0, &[0.0; 5], &[1.0; 5]).unwrap()),
        ("mixed_orders", IntegralSpec::new(0.5, &[0.0, 1.0, 2.0, 0.5], &[0.7, 1.1, 1.4, 0.9]).unwrap()),
    ];
    for (name, spec) in &cases {
        group.bench_function(*name, |b| b.iter(|| eval_bessel_product(black_box(spec), 1e-10).unwrap()));
    }
    group.finish();
}

fn lauricella(c: &mut Criterion) {
    let mut group = c.benchmark_group("lauricella_fc");
    for x in [0.01, 0.05, 0.1] {
        let params = LauricellaParams { a: 1.0, b: 1.5, denominators: vec![1.0, 2.0, 1.5], variables: vec![x; 3] };
        group.bench_with_input(BenchmarkId::from_parameter(x), &params, |b, p| b.iter(|| lauricella_fc(p, 1e-12).unwrap()));
    }
    group.finish();
}

fn angular(c: &mut Criterion) {
    let mut group = c.benchmark_group("eval_2d_angular");
    group.sample_size(20);
    let budget = AngularBudget { tol: 1e-10, ..AngularBudget::default() };
    for g in [0.6, 1.0, 2.5] {
        let spec = ScatterSpec::planar(vec![1.0, 1.2, 0.8, 1.1], g).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(g), &spec, |b, s| b.iter(|| eval_2d_angular(s, &budget).unwrap()));
    }
    group.finish();
}

criterion_group!(kernels, bessel, products, lauricella, angular);
criterion_main!(kernels);
