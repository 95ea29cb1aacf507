use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;
use serde::Serialize;

use crate::{Error, Result};

/// Value of a one-dimensional quadrature with its absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: Complex64,
    pub err_est: f64,
    pub evals: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    /// Upper bound on the number of panels kept by the adaptive loop.
    pub max_subdivisions: usize,
    /// Number of equal panels the interval is cut into before adapting.
    pub initial_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            max_subdivisions: 400_000,
            initial_panels: 1,
        }
    }
}

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
#[allow(clippy::excessive_precision)]
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
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
    floor: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    // Largest error first; ties broken by position so the heap order is total.
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err).then_with(|| other.a.total_cmp(&self.a))
    }
}

fn eval<F: Fn(f64) -> Complex64>(f: &F, x: f64) -> Result<Complex64> {
    let v = f(x);
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteIntegrand { abscissa: x })
    }
}

/// One Gauss-Kronrod 21 panel. Error is the QUADPACK rescaling of |K21 - G10|.
fn gk21<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = eval(f, center)?;
    let mut res_k = fc * WGK[10];
    let mut res_g = Complex64::new(0.0, 0.0);
    let mut res_abs = fc.norm() * WGK[10];
    let mut fv1 = [Complex64::new(0.0, 0.0); 10];
    let mut fv2 = [Complex64::new(0.0, 0.0); 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = eval(f, center - dx)?;
        let f2 = eval(f, center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += (f1 + f2) * WGK[j];
        res_abs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            res_g += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = res_k * 0.5;
    let mut res_asc = WGK[10] * (fc - mean).norm();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).norm() + (fv2[j] - mean).norm());
    }
    let res_asc = res_asc * half.abs();
    let res_abs = res_abs * half.abs();
    let mut err = ((res_k - res_g) * half).norm();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(floor);
    }
    Ok(Panel {
        a,
        b,
        value: res_k * half,
        err,
        floor,
    })
}

/// Globally adaptive Gauss-Kronrod quadrature of a complex integrand on `[a, b]`
/// to absolute tolerance `tol`.
pub fn adaptive_quad<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    adaptive_quad_with(f, a, b, tol, &QuadOptions::default())
}

pub fn adaptive_quad_with<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    opts: &QuadOptions,
) -> Result<QuadResult> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::invalid(format!(
            "quadrature interval [{a}, {b}] must satisfy a < b"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    let m = opts.initial_panels.max(1);
    let width = (b - a) / m as f64;
    let mut heap = BinaryHeap::with_capacity(m.max(64));
    let mut evals = 0usize;
    for i in 0..m {
        let lo = a + width * i as f64;
        let hi = if i + 1 == m { b } else { a + width * (i + 1) as f64 };
        heap.push(gk21(&f, lo, hi)?);
        evals += 21;
    }
    let mut total_err: f64 = heap.iter().map(|p| p.err).sum();
    let mut total_floor: f64 = heap.iter().map(|p| p.floor).sum();
    let min_width = 64.0 * f64::EPSILON * a.abs().max(b.abs()).max(f64::MIN_POSITIVE);

    // Subdividing cannot push the estimate below the rounding floor.
    while total_err > tol.max(2.0 * total_floor) {
        if heap.len() >= opts.max_subdivisions {
            return Err(non_convergence(&heap, evals));
        }
        let worst = heap.pop().expect("heap is never empty");
        if worst.b - worst.a < min_width {
            heap.push(worst);
            return Err(non_convergence(&heap, evals));
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = gk21(&f, worst.a, mid)?;
        let right = gk21(&f, mid, worst.b)?;
        evals += 42;
        total_err += left.err + right.err - worst.err;
        total_floor += left.floor + right.floor - worst.floor;
        heap.push(left);
        heap.push(right);
        // Refresh the running sums now and then; the incremental update drifts.
        if heap.len() % 4096 == 0 {
            total_err = heap.iter().map(|p| p.err).sum();
            total_floor = heap.iter().map(|p| p.floor).sum();
        }
    }
    Ok(summarize(heap, evals))
}

fn summarize(heap: BinaryHeap<Panel>, evals: usize) -> QuadResult {
    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = panels.iter().fold(Complex64::new(0.0, 0.0), |acc, p| acc + p.value);
    let err_est = panels.iter().map(|p| p.err).sum();
    QuadResult { value, err_est, evals }
}

fn non_convergence(heap: &BinaryHeap<Panel>, evals: usize) -> Error {
    let r = summarize(heap.clone(), evals);
    Error::NonConvergence {
        best: r.value,
        err_est: r.err_est,
        evals,
    }
}

/// `∫_0^∞ g(u) du` for an integrand dominated by `exp(log_bound(u))`.
///
/// `log_bound` must satisfy `|g(u)| ≤ exp(log_bound(u))` and be concave on
/// `[0, ∞)` with `log_bound(u) → -∞`. Concavity turns the secant slope at the
/// truncation point `U` into a rigorous tail certificate
/// `∫_U^∞ B ≤ B(U) / |slope|`.
pub fn ray_quad<G, B>(g: G, log_bound: B, tol: f64) -> Result<QuadResult>
where
    G: Fn(f64) -> Complex64,
    B: Fn(f64) -> f64,
{
    ray_quad_with(g, log_bound, tol, &QuadOptions::default())
}

const RAY_LIMIT: f64 = 1.0e7;

pub fn ray_quad_with<G, B>(g: G, log_bound: B, tol: f64, opts: &QuadOptions) -> Result<QuadResult>
where
    G: Fn(f64) -> Complex64,
    B: Fn(f64) -> f64,
{
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    let half_tol = 0.5 * tol;
    let tail = |u: f64| -> Option<f64> {
        let du = 1e-3 * u.max(1e-3);
        let hi = log_bound(u);
        let lo = log_bound(u - du);
        let slope = (hi - lo) / du;
        if hi == f64::NEG_INFINITY {
            return Some(0.0);
        }
        (slope < 0.0 && hi.is_finite()).then(|| hi.exp() / -slope)
    };
    let passes = |u: f64| tail(u).is_some_and(|t| t <= half_tol);

    let mut hi = 0.25;
    let mut lo = 0.0;
    while !passes(hi) {
        lo = hi;
        hi *= 1.5;
        if hi > RAY_LIMIT {
            return Err(Error::DecayBoundUnreachable { tol, limit: RAY_LIMIT });
        }
    }
    // Shrink towards the smallest certified cut; the predicate is monotone
    // past the maximum of the bound, which `lo` is beyond unless it is 0.
    if lo > 0.0 && tail(lo).is_some() {
        for _ in 0..40 {
            let mid = 0.5 * (lo + hi);
            if passes(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo < 1e-3 * hi {
                break;
            }
        }
    }
    let cut = hi;
    let tail_bound = tail(cut).unwrap_or(0.0);
    let body = adaptive_quad_with(g, 0.0, cut, half_tol, opts)?;
    Ok(QuadResult {
        value: body.value,
        err_est: body.err_est + tail_bound,
        evals: body.evals,
    })
}
