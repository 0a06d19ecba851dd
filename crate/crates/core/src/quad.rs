//! Globally adaptive Gauss–Kronrod quadrature.
//!
//! The integrands met in this crate have beta-type endpoint behaviour
//! `g^{γ−1}` in the distance `g` to an endpoint, so most entry points take
//! the integrand as a function of that gap rather than of the abscissa.
//! The substitution `g = s^{1/γ}` then leaves a bounded integrand.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, Error, Result};
use crate::specfun::EvalPrecision;

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

/// Tolerances for one adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl QuadOptions {
    pub fn new(rel_tol: f64, abs_tol: f64, max_subdivisions: usize) -> Self {
        Self {
            rel_tol,
            abs_tol,
            max_subdivisions,
        }
    }

    pub fn from_precision(prec: &EvalPrecision) -> Self {
        Self::new(prec.rel_tol, 0.0, prec.max_quad_subdivisions)
    }

    pub fn with_abs_tol(self, abs_tol: f64) -> Self {
        Self { abs_tol, ..self }
    }

    pub fn with_rel_tol(self, rel_tol: f64) -> Self {
        Self { rel_tol, ..self }
    }
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self::from_precision(&EvalPrecision::default())
    }
}

/// An integral estimate and its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
}

impl std::ops::Add for QuadResult {
    type Output = QuadResult;
    fn add(self, rhs: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + rhs.value,
            error: self.error + rhs.error,
        }
    }
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs_value: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F>(f: &mut F, a: f64, b: f64) -> Result<Segment>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut eval = |x: f64| -> Result<f64> {
        let v = f(x)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(domain(format!("integrand is not finite at {x}: {v}")))
        }
    };
    let fc = eval(center)?;
    let mut kron = fc * WGK[10];
    let mut gauss = 0.0;
    let mut abs_sum = fc.abs() * WGK[10];
    let mut left = [0.0; 10];
    let mut right = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        left[j] = f1;
        right[j] = f2;
        kron += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kron;
    let mut asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        asc += WGK[j] * ((left[j] - mean).abs() + (right[j] - mean).abs());
    }
    let value = kron * half;
    let abs_value = abs_sum * half.abs();
    let asc = asc * half.abs();
    let mut error = ((kron - gauss) * half).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    if abs_value > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * abs_value);
    }
    Ok(Segment {
        a,
        b,
        value,
        error,
        abs_value,
    })
}

/// `∫_a^b f(x) dx` for finite `a < b`.
pub fn integrate<F>(mut f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(domain(format!("finite limits required, got [{a}, {b}]")));
    }
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            error: 0.0,
        });
    }
    if a > b {
        let r = integrate(f, b, a, opts)?;
        return Ok(QuadResult {
            value: -r.value,
            error: r.error,
        });
    }
    let first = kronrod(&mut f, a, b)?;
    let mut value = first.value;
    let mut error = first.error;
    let mut abs_value = first.abs_value;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    // segments too narrow to split further keep their error in this bucket
    let mut frozen_error = 0.0;
    let mut frozen_value = 0.0;
    let mut splits = 0;
    loop {
        let target = opts
            .abs_tol
            .max(opts.rel_tol * value.abs())
            .max(50.0 * f64::EPSILON * abs_value);
        if error <= target {
            return Ok(QuadResult { value, error });
        }
        let Some(worst) = heap.pop() else {
            break;
        };
        if splits >= opts.max_subdivisions {
            heap.push(worst);
            break;
        }
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) || (worst.b - worst.a) < 8.0 * f64::EPSILON * mid.abs() {
            frozen_error += worst.error;
            frozen_value += worst.value;
            continue;
        }
        let l = kronrod(&mut f, worst.a, mid)?;
        let r = kronrod(&mut f, mid, worst.b)?;
        value += l.value + r.value - worst.value;
        error += l.error + r.error - worst.error;
        abs_value += l.abs_value + r.abs_value - worst.abs_value;
        heap.push(l);
        heap.push(r);
        splits += 1;
    }
    // recompute from the pieces to shed accumulated cancellation in the running sums
    let value = heap.iter().map(|s| s.value).sum::<f64>() + frozen_value;
    let error = heap.iter().map(|s| s.error).sum::<f64>() + frozen_error;
    let target = opts.abs_tol.max(opts.rel_tol * value.abs());
    if error <= target {
        Ok(QuadResult { value, error })
    } else {
        Err(Error::Quadrature {
            estimate: value,
            error,
        })
    }
}

/// `∫_0^width f(g) dg` where `f(g)` may behave like `g^{γ−1}` as `g → 0`.
///
/// `γ = 1` is plain quadrature. The integrand receives the gap `g`, never `a + g`, so callers
/// keep full precision near the endpoint.
pub fn integrate_gap<F>(mut f: F, width: f64, gamma: f64, opts: &QuadOptions) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(gamma > 0.0) {
        return Err(domain(format!("gap exponent must be positive, got {gamma}")));
    }
    if !(width >= 0.0) {
        return Err(domain(format!("gap width must be nonnegative, got {width}")));
    }
    if width == 0.0 {
        return Ok(QuadResult {
            value: 0.0,
            error: 0.0,
        });
    }
    if gamma == 1.0 {
        return integrate(f, 0.0, width, opts);
    }
    let inv = 1.0 / gamma;
    let top = width.powf(gamma);
    integrate(
        |s: f64| {
            let g = s.powf(inv);
            if g == 0.0 {
                return Ok(0.0);
            }
            // dg = g/(γ s) ds
            Ok(f(g)? * g / (gamma * s))
        },
        0.0,
        top,
        opts,
    )
}

/// `∫_a^∞ f(x) dx` through `x = a + t/(1 − t)`.
pub fn integrate_tail<F>(mut f: F, a: f64, opts: &QuadOptions) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    integrate(
        |t: f64| {
            let s = 1.0 - t;
            let x = a + t / s;
            if !x.is_finite() {
                return Ok(0.0);
            }
            Ok(f(x)? / (s * s))
        },
        0.0,
        1.0,
        opts,
    )
}

/// `∫_0^∞ f(g) dg` with `g^{γ−1}` behaviour at 0, split at `split`.
pub fn integrate_gap_tail<F>(
    mut f: F,
    gamma: f64,
    split: f64,
    opts: &QuadOptions,
) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let head = integrate_gap(&mut f, split, gamma, opts)?;
    let tail = integrate_tail(&mut f, split, opts)?;
    Ok(head + tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> QuadOptions {
        QuadOptions::new(1e-12, 0.0, 2000)
    }

    #[test]
    fn polynomial_and_exponential() {
        let r = integrate(|x| Ok(x * x), 0.0, 3.0, &opts()).unwrap();
        assert!((r.value - 9.0).abs() < 1e-13);
        let r = integrate(|x: f64| Ok(x.exp()), 0.0, 1.0, &opts()).unwrap();
        assert!((r.value - (1f64.exp() - 1.0)).abs() < 1e-14);
        let r = integrate(|x| Ok(x), 1.0, 0.0, &opts()).unwrap();
        assert!((r.value + 0.5).abs() < 1e-15);
    }

    #[test]
    fn beta_edge() {
        // ∫_0^1 g^{-0.7}(1+g) dg = 1/0.3 + 1/1.3
        let r = integrate_gap(|g: f64| Ok(g.powf(-0.7) * (1.0 + g)), 1.0, 0.3, &opts()).unwrap();
        assert!((r.value - (1.0 / 0.3 + 1.0 / 1.3)).abs() < 1e-12);
    }

    #[test]
    fn semi_infinite() {
        let r = integrate_tail(|x: f64| Ok((-x).exp()), 2.0, &opts()).unwrap();
        assert!((r.value - (-2f64).exp()).abs() < 1e-14);
        // ∫_0^∞ g^{-1/2} e^{-g} dg = √π
        let r = integrate_gap_tail(|g: f64| Ok(g.powf(-0.5) * (-g).exp()), 0.5, 1.0, &opts()).unwrap();
        assert!((r.value - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn failure_is_reported() {
        let tiny = QuadOptions::new(1e-14, 0.0, 3);
        let r = integrate(|x: f64| Ok(x.powf(-0.9)), 0.0, 1.0, &tiny);
        assert!(matches!(r, Err(Error::Quadrature { .. })));
        let r = integrate(|x: f64| Ok(1.0 / x), -1.0, 1.0, &opts());
        assert!(r.is_err());
    }

    #[test]
    fn integrand_errors_propagate() {
        let r = integrate(|_| Err(Error::Pole(0.0)), 0.0, 1.0, &opts());
        assert_eq!(r, Err(Error::Pole(0.0)));
    }
}
