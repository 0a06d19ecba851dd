//! The hypergeometric-stable Lévy process: parameters, Lévy density,
//! truncation function, drift and a quadrature-based characteristic exponent.

use std::f64::consts::LN_2;

use crate::error::{domain, Error, Result};
use crate::quad::{integrate, integrate_gap, QuadOptions};
use crate::specfun::{hyp2f1_with_complement, ln_gamma, ComplexValue, EvalPrecision};

/// Which families of results apply to a parameter pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `α < d` and `α ≤ 1`: transient, points are polar.
    StrictlyTransient,
    /// `α = d = 1`: the Cauchy process on the line, recurrent.
    CauchyBoundary,
    /// `1 < α < d`: transient and single points are hit.
    HitsPoints,
}

/// Stability index `α ∈ (0, 2)` and dimension `d ≥ 1` with `α ≤ d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProcessParams {
    alpha: f64,
    dim: u32,
    regime: Regime,
}

impl ProcessParams {
    pub fn new(alpha: f64, dim: u32) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 2.0) {
            return Err(Error::Config(format!("alpha must lie in (0, 2), got {alpha}")));
        }
        if dim == 0 {
            return Err(Error::Config("dimension must be at least 1".into()));
        }
        let d = f64::from(dim);
        if alpha > d {
            return Err(Error::Regime {
                requirement: "alpha <= d",
            });
        }
        let regime = if alpha == d {
            Regime::CauchyBoundary
        } else if alpha > 1.0 {
            Regime::HitsPoints
        } else {
            Regime::StrictlyTransient
        };
        Ok(Self { alpha, dim, regime })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// The dimension as a float, for formulas.
    pub fn d(&self) -> f64 {
        f64::from(self.dim)
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn is_transient(&self) -> bool {
        self.regime != Regime::CauchyBoundary
    }

    /// Fails unless `α < d`.
    pub fn require_transient(&self) -> Result<()> {
        if self.is_transient() {
            Ok(())
        } else {
            Err(Error::Regime {
                requirement: "alpha < d (transient radial process)",
            })
        }
    }

    /// Fails unless `1 < α < d`.
    pub fn require_hits_points(&self) -> Result<()> {
        if self.regime == Regime::HitsPoints {
            Ok(())
        } else {
            Err(Error::Regime {
                requirement: "1 < alpha < d (single points are hit)",
            })
        }
    }
}

/// Normalising constant of `F̄`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FBarParams {
    /// `2^α α (d/2)_{α/2} / Γ(1 − α/2)`.
    pub prefactor: f64,
}

impl FBarParams {
    pub fn new(params: &ProcessParams) -> Result<Self> {
        let (a, d) = (params.alpha, params.d());
        let log = a * LN_2 + a.ln() + ln_gamma(0.5 * (d + a))? - ln_gamma(0.5 * d)?
            - ln_gamma(1.0 - 0.5 * a)?;
        Ok(Self {
            prefactor: log.exp(),
        })
    }
}

/// `F̄(z) = prefactor · ₂F₁((α+d)/4, (α+d)/4 + 1/2; d/2; z)` for `|z| < 1`.
pub fn f_bar(z: f64, params: &ProcessParams) -> Result<f64> {
    f_bar_with_complement(z, 1.0 - z, params, &EvalPrecision::default())
}

fn f_bar_with_complement(
    z: f64,
    one_minus_z: f64,
    params: &ProcessParams,
    prec: &EvalPrecision,
) -> Result<f64> {
    if !(z.abs() < 1.0) {
        return Err(domain(format!("f_bar requires |z| < 1, got {z}")));
    }
    let a = 0.25 * (params.alpha + params.d());
    let f = hyp2f1_with_complement(a, a + 0.5, 0.5 * params.d(), z, one_minus_z, prec)?;
    Ok(FBarParams::new(params)?.prefactor * f)
}

/// Truncation function `ℓ(y) = y/(1+y²) e^{(1−d)y} (1+e^{2y})^{(α+d)/2−1}` on `|y| < 1`.
pub fn truncation_ell(y: f64, params: &ProcessParams) -> f64 {
    if !(y.abs() < 1.0) {
        return 0.0;
    }
    let (a, d) = (params.alpha, params.d());
    y / (1.0 + y * y) * ((1.0 - d) * y).exp() * (1.0 + (2.0 * y).exp()).powf(0.5 * (a + d) - 1.0)
}

/// Lévy density `π(y)`, `y ≠ 0`.
pub fn levy_density(y: f64, params: &ProcessParams) -> Result<f64> {
    levy_density_with(y, params, &EvalPrecision::default())
}

pub fn levy_density_with(y: f64, params: &ProcessParams, prec: &EvalPrecision) -> Result<f64> {
    if y == 0.0 || !y.is_finite() {
        return Err(domain(format!("Lévy density needs finite y != 0, got {y}")));
    }
    let prefactor = FBarParams::new(params)?.prefactor;
    let g = y.abs();
    let positive = levy_density_positive(g, params, prefactor, prec)?;
    if y > 0.0 {
        Ok(positive)
    } else {
        Ok(positive * ((params.alpha - params.d()) * g).exp())
    }
}

/// `π(g)` for `g > 0` through the series in `e^{−2g}`.
fn levy_density_positive(
    g: f64,
    params: &ProcessParams,
    prefactor: f64,
    prec: &EvalPrecision,
) -> Result<f64> {
    let (a, d) = (params.alpha, params.d());
    let z = (-2.0 * g).exp();
    let f = hyp2f1_with_complement(0.5 * (a + d), 0.5 * a + 1.0, 0.5 * d, z, -(-2.0 * g).exp_m1(), prec)?;
    Ok(prefactor * (-a * g).exp() * f)
}

/// Lévy density written through `F̄` evaluated at `1/cosh²(y)`.
///
/// Independent of [`levy_density`] apart from the `₂F₁` kernel; used to
/// cross-check the two representations.
pub fn levy_density_via_f_bar(y: f64, params: &ProcessParams) -> Result<f64> {
    if y == 0.0 || !y.is_finite() {
        return Err(domain(format!("Lévy density needs finite y != 0, got {y}")));
    }
    let (a, d) = (params.alpha, params.d());
    let c = y.cosh();
    let t = y.tanh();
    let fb = f_bar_with_complement(1.0 / (c * c), t * t, params, &EvalPrecision::default())?;
    // e^{dy}(1+e^{2y})^{−(α+d)/2} = e^{(d−α)y/2} (2 cosh y)^{−(α+d)/2}
    Ok((0.5 * (d - a) * y).exp() * (2.0 * c).powf(-0.5 * (a + d)) * fb)
}

/// One-dimensional split `π = π₁ + π₂` into a Lamperti-stable part and a
/// compound-Poisson part. Requires `d = 1`.
pub fn levy_density_d1_split(y: f64, params: &ProcessParams) -> Result<(f64, f64)> {
    if params.dim != 1 {
        return Err(Error::Regime {
            requirement: "d = 1 (one-dimensional decomposition)",
        });
    }
    if y == 0.0 || !y.is_finite() {
        return Err(domain(format!("Lévy density needs finite y != 0, got {y}")));
    }
    let a = params.alpha;
    let c = 0.5 * FBarParams::new(params)?.prefactor;
    let ey = y.exp();
    let stable = c * ey / y.exp_m1().abs().powf(a + 1.0);
    let poisson = c * ey / (ey + 1.0).powf(a + 1.0);
    Ok((stable, poisson))
}

/// `π(g) − π(−g)` and `π(g) + π(−g)` for `g > 0`.
fn folded(g: f64, params: &ProcessParams, prefactor: f64, prec: &EvalPrecision) -> Result<(f64, f64)> {
    let p = levy_density_positive(g, params, prefactor, prec)?;
    let k = (params.alpha - params.d()) * g;
    Ok((-p * k.exp_m1(), p * (1.0 + k.exp())))
}

/// Drift `b = ∫(ℓ(y) − y 1{|y|≤1}) π(y) dy`.
///
/// `ℓπ` is odd, so only the compensator term survives:
/// `b = −∫₀¹ g (π(g) − π(−g)) dg`.
pub fn drift_b(params: &ProcessParams, prec: &EvalPrecision) -> Result<f64> {
    if params.alpha == params.d() {
        return Ok(0.0);
    }
    let prefactor = FBarParams::new(params)?.prefactor;
    let opts = QuadOptions::from_precision(prec);
    let r = integrate_gap(
        |g| Ok(g * folded(g, params, prefactor, prec)?.0),
        1.0,
        2.0 - params.alpha,
        &opts,
    )?;
    Ok(-r.value)
}

/// Lévy triplet data needed to evaluate `Ψ` by quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevyCharacteristics {
    pub params: ProcessParams,
    pub drift_b: f64,
    pub precision: EvalPrecision,
}

/// A characteristic-exponent value with its absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentEstimate {
    pub value: ComplexValue,
    /// Quadrature error plus the bound on the truncated tail.
    pub error: f64,
    /// Where the tail was cut.
    pub cutoff: f64,
}

impl LevyCharacteristics {
    pub fn new(params: ProcessParams, precision: EvalPrecision) -> Result<Self> {
        let precision = precision.validated()?;
        let drift_b = drift_b(&params, &precision)?;
        if !drift_b.is_finite() {
            return Err(Error::Overflow("drift"));
        }
        Ok(Self {
            params,
            drift_b,
            precision,
        })
    }

    /// `Ψ(λ) = iλb + ∫(1 − e^{iλy} + iλy 1{|y|<1}) π(y) dy` by quadrature.
    pub fn char_exponent(&self, lambda: f64) -> Result<ExponentEstimate> {
        if !lambda.is_finite() {
            return Err(domain("lambda must be finite"));
        }
        if lambda == 0.0 {
            return Ok(ExponentEstimate {
                value: ComplexValue::new(0.0, 0.0),
                error: 0.0,
                cutoff: 0.0,
            });
        }
        let params = &self.params;
        let prec = &self.precision;
        let prefactor = FBarParams::new(params)?.prefactor;
        let opts = QuadOptions::from_precision(prec);
        let gamma = 2.0 - params.alpha;

        let head_re = integrate_gap(
            |g| {
                let s = (0.5 * lambda * g).sin();
                Ok(2.0 * s * s * folded(g, params, prefactor, prec)?.1)
            },
            1.0,
            gamma,
            &opts,
        )?;
        let head_im = integrate_gap(
            |g| Ok(x_minus_sin(lambda * g) * folded(g, params, prefactor, prec)?.0),
            1.0,
            gamma,
            &opts,
        )?;

        let mut re = head_re.value;
        let mut im = lambda * self.drift_b + head_im.value;
        let mut error = head_re.error + head_im.error;

        // pieces of at most a few oscillations each, until the tail bound is negligible
        let piece = (4.0 * std::f64::consts::PI / lambda.abs()).clamp(0.5, 4.0);
        let mut start = 1.0;
        loop {
            let end = start + piece;
            let tail_opts = opts.with_abs_tol(0.1 * prec.rel_tol * re.abs().max(im.abs()));
            let r = integrate(
                |g| {
                    let (_, sum) = folded(g, params, prefactor, prec)?;
                    Ok((1.0 - (lambda * g).cos()) * sum)
                },
                start,
                end,
                &tail_opts,
            )?;
            let i = integrate(
                |g| {
                    let (diff, _) = folded(g, params, prefactor, prec)?;
                    Ok(-(lambda * g).sin() * diff)
                },
                start,
                end,
                &tail_opts,
            )?;
            re += r.value;
            im += i.value;
            error += r.error + i.error;
            start = end;
            let bound = self.tail_bound(start, prefactor)?;
            if bound <= 0.01 * prec.rel_tol * re.abs().max(im.abs()) {
                error += bound;
                break;
            }
            if start > 1e4 {
                return Err(Error::NonConvergence {
                    what: "characteristic exponent tail",
                    terms: (start / piece) as usize,
                });
            }
        }
        Ok(ExponentEstimate {
            value: ComplexValue::new(re, im),
            error,
            cutoff: start,
        })
    }

    /// Bound on `∫_Y^∞ 2(π(g) + π(−g)) dg`, using that `e^{αg}π(g)` decreases.
    fn tail_bound(&self, y: f64, prefactor: f64) -> Result<f64> {
        let (a, d) = (self.params.alpha, self.params.d());
        let p = levy_density_positive(y, &self.params, prefactor, &self.precision)?;
        Ok(2.0 * p * (1.0 + ((a - d) * y).exp()) / a)
    }
}

/// `x − sin x` without cancellation for small `x`.
fn x_minus_sin(x: f64) -> f64 {
    if x.abs() < 0.1 {
        let x2 = x * x;
        x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)))
    } else {
        x - x.sin()
    }
}

/// Numeric characteristic exponent; see [`LevyCharacteristics::char_exponent`].
pub fn char_exponent_numeric(lambda: f64, chars: &LevyCharacteristics) -> Result<ComplexValue> {
    Ok(chars.char_exponent(lambda)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: f64, d: u32) -> ProcessParams {
        ProcessParams::new(a, d).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn regimes() {
        assert_eq!(params(1.0, 1).regime(), Regime::CauchyBoundary);
        assert_eq!(params(0.5, 1).regime(), Regime::StrictlyTransient);
        assert_eq!(params(1.5, 3).regime(), Regime::HitsPoints);
        assert_eq!(params(1.0, 3).regime(), Regime::StrictlyTransient);
        assert!(ProcessParams::new(1.5, 1).is_err());
        assert!(ProcessParams::new(2.0, 3).is_err());
        assert!(ProcessParams::new(0.0, 3).is_err());
        assert!(params(1.0, 1).require_transient().is_err());
        assert!(params(0.5, 2).require_hits_points().is_err());
    }

    #[test]
    fn f_bar_values() {
        let p = params(0.7, 2);
        let pre = FBarParams::new(&p).unwrap().prefactor;
        assert_eq!(f_bar(0.0, &p).unwrap(), pre);
        let c = params(1.0, 1);
        let pre = FBarParams::new(&c).unwrap().prefactor;
        let x: f64 = 0.6;
        let expected = pre * 0.5 * (1.0 / (1.0 - x) + 1.0 / (1.0 + x));
        assert!(rel(f_bar(x * x, &c).unwrap(), expected) < 1e-13);
        assert!(f_bar(1.0, &c).is_err());
    }

    #[test]
    fn ell_values() {
        let c = params(1.0, 1);
        assert_eq!(truncation_ell(0.0, &c), 0.0);
        assert_eq!(truncation_ell(1.5, &c), 0.0);
        assert_eq!(truncation_ell(-1.5, &c), 0.0);
        assert!((truncation_ell(0.5, &c) - 0.4).abs() < 1e-15);
    }

    #[test]
    fn two_representations_agree() {
        for &(a, d) in &[(0.5, 1), (1.0, 3), (1.5, 2), (0.8, 5)] {
            let p = params(a, d);
            for &y in &[-2.0, -0.3, -0.01, 0.02, 0.7, 3.0] {
                let x = levy_density(y, &p).unwrap();
                let z = levy_density_via_f_bar(y, &p).unwrap();
                assert!(rel(x, z) < 1e-11, "({a},{d}) y={y}: {x} vs {z}");
            }
        }
    }

    #[test]
    fn ell_times_density_is_odd() {
        let p = params(0.6, 3);
        for &y in &[0.05, 0.4, 0.9] {
            let plus = truncation_ell(y, &p) * levy_density(y, &p).unwrap();
            let minus = truncation_ell(-y, &p) * levy_density(-y, &p).unwrap();
            assert!(rel(-minus, plus) < 1e-12);
        }
    }

    #[test]
    fn tail_and_blow_up() {
        let p = params(1.2, 3);
        let pre = FBarParams::new(&p).unwrap().prefactor;
        let v = levy_density(20.0, &p).unwrap() * (1.2f64 * 20.0).exp() / pre;
        assert!((v - 1.0).abs() < 1e-6);
        let (y1, y2) = (1e-3_f64, 1e-4_f64);
        let slope = (levy_density(y1, &p).unwrap().ln() - levy_density(y2, &p).unwrap().ln())
            / (y1.ln() - y2.ln());
        assert!((slope + 2.2).abs() < 0.05);
    }

    #[test]
    fn cauchy_drift_and_exponent() {
        let p = params(1.0, 1);
        assert_eq!(drift_b(&p, &EvalPrecision::default()).unwrap(), 0.0);
        let chars = LevyCharacteristics::new(p, EvalPrecision::default()).unwrap();
        let psi = chars.char_exponent(1.0).unwrap();
        let expected = (std::f64::consts::PI / 2.0).tanh();
        assert!(rel(psi.value.re, expected) < 1e-9, "{:?}", psi);
        assert!(psi.value.im.abs() < 1e-9);
    }

    #[test]
    fn exponent_symmetry() {
        let p = params(0.8, 2);
        let chars = LevyCharacteristics::new(p, EvalPrecision::with_rel_tol(1e-10).unwrap()).unwrap();
        let a = chars.char_exponent(1.3).unwrap().value;
        let b = chars.char_exponent(-1.3).unwrap().value;
        assert!((a - b.conj()).norm() < 1e-9);
        assert!(a.re > 0.0);
        assert_eq!(chars.char_exponent(0.0).unwrap().value, ComplexValue::new(0.0, 0.0));
    }
}
