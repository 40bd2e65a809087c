//! Fixed and adaptive rules on finite intervals.

/// Kronrod abscissae of the 21-point rule on [-1, 1] (non-negative half).
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_649_612_452,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Gauss weights for the embedded 10-point rule (abscissae XGK[1], XGK[3], ...).
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Result of integrating over one interval.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Piece {
    pub value: f64,
    pub error: f64,
    /// `int |f|`, used for rounding estimates
    pub abs: f64,
    pub evaluations: usize,
}

impl Piece {
    pub fn add(&mut self, other: Piece) {
        self.value += other.value;
        self.error += other.error;
        self.abs += other.abs;
        self.evaluations += other.evaluations;
    }
}

/// The 21 Kronrod nodes and weights mapped to [a, b].
pub(crate) fn kronrod_nodes(a: f64, b: f64) -> Vec<(f64, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut out = Vec::with_capacity(21);
    for j in 0..10 {
        out.push((center - half * XGK[j], half * WGK[j]));
        out.push((center + half * XGK[j], half * WGK[j]));
    }
    out.push((center, half * WGK[10]));
    out
}

/// One application of the 21-point Gauss-Kronrod pair.
pub(crate) fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Piece {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    let mut abs = WGK[10] * fc.abs();
    let mut fv = [0.0f64; 21];
    fv[20] = fc;
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[2 * j] = f1;
        fv[2 * j + 1] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        asc += WGK[j] * ((fv[2 * j] - mean).abs() + (fv[2 * j + 1] - mean).abs());
    }
    let value = kronrod * half;
    let abs = abs * half.abs();
    let asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    error = error.max(50.0 * f64::EPSILON * abs);
    Piece { value, error, abs, evaluations: 21 }
}

/// Adaptive bisection with the 21-point pair until the local error meets `tol`.
pub(crate) fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> Piece {
    let whole = gk21(f, a, b);
    if whole.error <= tol || depth == 0 || (b - a).abs() < 1e-12 * a.abs().max(1.0) {
        return whole;
    }
    let mid = 0.5 * (a + b);
    let mut left = adaptive(f, a, mid, 0.5 * tol, depth - 1);
    let right = adaptive(f, mid, b, 0.5 * tol, depth - 1);
    left.add(right);
    left.evaluations += whole.evaluations;
    left
}

/// Tanh-sinh quadrature on [a, b]; tolerates integrable algebraic endpoint
/// singularities. The integrand is never evaluated at the endpoints.
pub(crate) fn tanh_sinh<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Piece {
    tanh_sinh_offsets(&|x: f64, _: f64, _: f64| f(x), a, b, tol)
}

/// Tanh-sinh where the integrand also receives the distances `x - a` and
/// `b - x`, both accurate near their endpoint. Lets endpoint singularities be
/// evaluated without cancellation.
pub(crate) fn tanh_sinh_offsets<F: Fn(f64, f64, f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Piece {
    tanh_sinh_nested(&|x: f64, da: f64, db: f64| (f(x, da, db), 0.0), a, b, tol)
}

/// Tanh-sinh over an integrand that is itself approximate: `f` returns a
/// value and its error, and the weighted errors are added to the bound.
pub(crate) fn tanh_sinh_nested<F: Fn(f64, f64, f64) -> (f64, f64)>(f: &F, a: f64, b: f64, tol: f64) -> Piece {
    use std::f64::consts::FRAC_PI_2;
    let width = b - a;
    let t_max = 4.0;
    // node at parameter t: distances to both endpoints without cancellation
    let node = |t: f64| -> Option<(f64, f64, f64, f64)> {
        let u = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * u.abs()).exp();
        // distance from the nearer endpoint
        let near = width * e / (1.0 + e);
        let x = if u < 0.0 { a + near } else { b - near };
        // x may round onto the endpoint; the offsets stay exact and
        // non-finite values are skipped below
        if near <= 0.0 {
            return None;
        }
        // w = width/2 * (pi/2) cosh t * sech^2 u
        let sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
        let w = 0.5 * width * FRAC_PI_2 * t.cosh() * sech2;
        let far = width - near;
        let (da, db) = if u < 0.0 { (near, far) } else { (far, near) };
        Some((x, da, db, w))
    };
    let mut h = 1.0;
    let mut sum = 0.0;
    let mut abs = 0.0;
    let mut evaluations = 0;
    let inner = std::cell::Cell::new(0.0);
    let accumulate = |t: f64, sum: &mut f64, abs: &mut f64, evaluations: &mut usize| {
        if let Some((x, da, db, w)) = node(t) {
            let (v, e) = f(x, da, db);
            if v.is_finite() {
                *sum += w * v;
                *abs += w * v.abs();
                if e.is_finite() {
                    inner.set(inner.get() + w * e);
                }
            }
            *evaluations += 1;
        }
    };
    accumulate(0.0, &mut sum, &mut abs, &mut evaluations);
    let mut k = 1;
    while k as f64 * h <= t_max {
        accumulate(k as f64 * h, &mut sum, &mut abs, &mut evaluations);
        accumulate(-(k as f64) * h, &mut sum, &mut abs, &mut evaluations);
        k += 1;
    }
    let mut estimate = sum * h;
    let mut error = f64::INFINITY;
    for _level in 0..9 {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= t_max {
            accumulate(k as f64 * h, &mut sum, &mut abs, &mut evaluations);
            accumulate(-(k as f64) * h, &mut sum, &mut abs, &mut evaluations);
            k += 2;
        }
        let next = sum * h;
        error = (next - estimate).abs();
        estimate = next;
        if error <= tol.max(1e-15 * (abs * h)) {
            break;
        }
    }
    let error = error.max(20.0 * f64::EPSILON * abs * h) + inner.get() * h;
    Piece { value: estimate, error, abs: abs * h, evaluations }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_exact_for_polynomials() {
        for k in 0..30 {
            let p = gk21(&|x: f64| x.powi(k), 0.0, 2.0);
            let exact = 2f64.powi(k + 1) / (k + 1) as f64;
            assert!((p.value - exact).abs() <= 1e-13 * exact, "degree {k}");
        }
    }

    #[test]
    fn gauss_weights_sum_to_two() {
        let s: f64 = 2.0 * WG.iter().sum::<f64>();
        assert!((s - 2.0).abs() < 1e-15);
        let s: f64 = 2.0 * WGK[..10].iter().sum::<f64>() + WGK[10];
        assert!((s - 2.0).abs() < 1e-15);
    }

    #[test]
    fn tanh_sinh_endpoint_singularity() {
        let p = tanh_sinh(&|x: f64| x.powf(-0.5), 0.0, 1.0, 1e-14);
        assert!((p.value - 2.0).abs() < 1e-12, "{}", p.value);
        let p = tanh_sinh(&|x: f64| (1.0 - x).ln(), 0.0, 1.0, 1e-14);
        assert!((p.value + 1.0).abs() < 1e-12);
    }

    #[test]
    fn adaptive_oscillatory() {
        let p = adaptive(&|x: f64| (50.0 * x).cos(), 0.0, 3.0, 1e-13, 20);
        assert!((p.value - (150f64).sin() / 50.0).abs() < 1e-13);
    }
}
