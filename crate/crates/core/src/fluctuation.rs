//! Wiener–Hopf factors of the hypergeometric-stable process.
//!
//! Normalisation: the descending renewal measure has total mass 1, which
//! makes the descending ladder height a subordinator killed at rate 1.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::model::{levy_density_with, LevyCharacteristics, ProcessParams};
use crate::quad::{integrate_gap_tail, integrate_tail, QuadOptions};
use crate::specfun::{complex_ln_gamma, gamma_ratio, ln_beta, ln_gamma, reg_inc_beta_with, ComplexValue, EvalPrecision};

/// Constants of the ladder processes for one `(α, d)` with `α < d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderData {
    pub params: ProcessParams,
    desc_density_const: f64,
    asc_density_const: f64,
    asc_tail_const: f64,
}

impl LadderData {
    pub fn new(params: ProcessParams) -> Result<Self> {
        params.require_transient()?;
        let (a, d) = (params.alpha(), params.d());
        let desc_density_const = 2.0 * (-ln_beta(0.5 * a, 0.5 * (d - a))?).exp();
        let asc_density_const = (ln_gamma(0.5 * (d - a))?
            - (a - 1.0) * LN_2
            - ln_gamma(0.5 * d)?
            - ln_gamma(0.5 * a)?)
        .exp();
        let asc_tail_const = (a * LN_2).exp() * (0.5 * PI * a).sin() / PI
            * gamma_ratio(&[0.5 * d, 0.5 * a], &[0.5 * (d - a)])?;
        Ok(Self {
            params,
            desc_density_const,
            asc_density_const,
            asc_tail_const,
        })
    }

    fn ad(&self) -> (f64, f64) {
        (self.params.alpha(), self.params.d())
    }

    /// `κ̂(0, λ) = Γ((d+λ)/2) Γ((d−α)/2) / (Γ(d/2) Γ((d−α+λ)/2))`.
    pub fn kappa_desc(&self, lambda: f64) -> Result<f64> {
        check_lambda(lambda)?;
        let (a, d) = self.ad();
        gamma_ratio(
            &[0.5 * (d + lambda), 0.5 * (d - a)],
            &[0.5 * d, 0.5 * (d - a + lambda)],
        )
    }

    /// `κ(0, λ) = 2^α Γ(d/2) Γ((λ+α)/2) / (Γ((d−α)/2) Γ(λ/2))`.
    pub fn kappa_asc(&self, lambda: f64) -> Result<f64> {
        check_lambda(lambda)?;
        let (a, d) = self.ad();
        Ok((a * LN_2).exp()
            * gamma_ratio(&[0.5 * d, 0.5 * (lambda + a)], &[0.5 * (d - a), 0.5 * lambda])?)
    }

    /// `κ̂(0, z)` continued to complex `z`.
    pub fn kappa_desc_complex(&self, z: Complex64) -> Result<Complex64> {
        let (a, d) = self.ad();
        let log = complex_ln_gamma((z + d) * 0.5)? + ln_gamma(0.5 * (d - a))?
            - ln_gamma(0.5 * d)?
            - complex_ln_gamma((z + (d - a)) * 0.5)?;
        Ok(log.exp())
    }

    /// `κ(0, z)` continued to complex `z`; vanishes at `z = 0`.
    pub fn kappa_asc_complex(&self, z: Complex64) -> Result<Complex64> {
        if z == Complex64::new(0.0, 0.0) {
            return Ok(z);
        }
        let (a, d) = self.ad();
        let log = a * LN_2 + ln_gamma(0.5 * d)? + complex_ln_gamma((z + a) * 0.5)?
            - ln_gamma(0.5 * (d - a))?
            - complex_ln_gamma(z * 0.5)?;
        Ok(log.exp())
    }

    /// `v̂(y) = 2Γ(d/2)/(Γ((d−α)/2)Γ(α/2)) e^{(2−d)y} (e^{2y} − 1)^{α/2−1}`.
    pub fn renewal_density_desc(&self, y: f64) -> Result<f64> {
        check_positive(y)?;
        let (a, d) = self.ad();
        // e^{(2−d)y}(e^{2y}−1)^{α/2−1} = e^{(α−d)y}(1−e^{−2y})^{α/2−1}
        Ok(self.desc_density_const
            * ((a - d) * y).exp()
            * (-(-2.0 * y).exp_m1()).powf(0.5 * a - 1.0))
    }

    /// `V̂([0, y]) = I_{1−e^{−2y}}(α/2, (d−α)/2)`.
    pub fn renewal_cumulative_desc(&self, y: f64) -> Result<f64> {
        if !(y >= 0.0) {
            return Err(domain(format!("renewal argument must be nonnegative, got {y}")));
        }
        let (a, d) = self.ad();
        if y.is_infinite() {
            return Ok(1.0);
        }
        reg_inc_beta_with(-(-2.0 * y).exp_m1(), 0.5 * a, 0.5 * (d - a), &EvalPrecision::default())
    }

    /// `v(y) = Γ((d−α)/2)/(2^{α−1}Γ(d/2)Γ(α/2)) (1 − e^{−2y})^{α/2−1}`.
    pub fn renewal_density_asc(&self, y: f64) -> Result<f64> {
        check_positive(y)?;
        let a = self.params.alpha();
        Ok(self.asc_density_const * (-(-2.0 * y).exp_m1()).powf(0.5 * a - 1.0))
    }

    /// Limit of `v(y)` as `y → ∞`.
    pub fn renewal_density_asc_limit(&self) -> f64 {
        self.asc_density_const
    }

    /// Tail of the ascending ladder height Lévy measure,
    /// `Π̄_H(x) = (2^α sin(απ/2)/π)(Γ(d/2)Γ(α/2)/Γ((d−α)/2)) e^{−αx}(1−e^{−2x})^{−α/2}`.
    pub fn ladder_levy_tail_asc(&self, x: f64) -> Result<f64> {
        check_positive(x)?;
        let a = self.params.alpha();
        Ok(self.asc_tail_const * (-a * x).exp() * (-(-2.0 * x).exp_m1()).powf(-0.5 * a))
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda >= 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("Laplace argument must be finite and nonnegative, got {lambda}")))
    }
}

fn check_positive(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("argument must be positive and finite, got {x}")))
    }
}

pub fn kappa_desc(lambda: f64, params: &ProcessParams) -> Result<f64> {
    LadderData::new(*params)?.kappa_desc(lambda)
}

pub fn kappa_asc(lambda: f64, params: &ProcessParams) -> Result<f64> {
    LadderData::new(*params)?.kappa_asc(lambda)
}

pub fn renewal_density_desc(y: f64, params: &ProcessParams) -> Result<f64> {
    LadderData::new(*params)?.renewal_density_desc(y)
}

pub fn renewal_density_asc(y: f64, params: &ProcessParams) -> Result<f64> {
    LadderData::new(*params)?.renewal_density_asc(y)
}

pub fn ladder_levy_tail_asc(x: f64, params: &ProcessParams) -> Result<f64> {
    LadderData::new(*params)?.ladder_levy_tail_asc(x)
}

/// Closed-form characteristic exponent
/// `Ψ(λ) = 2^α Γ((−iλ+α)/2) Γ((iλ+d)/2) / (Γ(−iλ/2) Γ((iλ+d−α)/2))`.
///
/// Also valid for the Cauchy case `α = d = 1`, where it reduces to `λ tanh(πλ/2)`.
pub fn char_exponent_closed(lambda: f64, params: &ProcessParams) -> Result<ComplexValue> {
    if !lambda.is_finite() {
        return Err(domain("lambda must be finite"));
    }
    if lambda == 0.0 {
        return Ok(ComplexValue::new(0.0, 0.0));
    }
    let (a, d) = (params.alpha(), params.d());
    let il = Complex64::new(0.0, lambda);
    let log = a * LN_2 + complex_ln_gamma((a - il) * 0.5)? + complex_ln_gamma((il + d) * 0.5)?
        - complex_ln_gamma(-il * 0.5)?
        - complex_ln_gamma((il + (d - a)) * 0.5)?;
    Ok(log.exp())
}

/// `Π̄⁺(u) = ∫_u^∞ π(y) dy`.
pub fn levy_tail_positive(u: f64, params: &ProcessParams, prec: &EvalPrecision) -> Result<f64> {
    check_positive(u)?;
    let opts = QuadOptions::from_precision(prec);
    Ok(integrate_tail(|y| levy_density_with(y, params, prec), u, &opts)?.value)
}

/// Ascending ladder tail through the identity `Π̄_H(r) = ∫₀^∞ V̂(dl) Π̄⁺(l + r)`,
/// evaluated as an iterated quadrature.
pub fn vigon_tail_numeric(r: f64, chars: &LevyCharacteristics) -> Result<f64> {
    check_positive(r)?;
    let ladder = LadderData::new(chars.params)?;
    let prec = &chars.precision;
    let opts = QuadOptions::from_precision(prec);
    let a = chars.params.alpha();
    let outer = integrate_gap_tail(
        |l| {
            if l == 0.0 {
                return Ok(0.0);
            }
            Ok(ladder.renewal_density_desc(l)? * levy_tail_positive(l + r, &chars.params, prec)?)
        },
        0.5 * a,
        1.0,
        &opts,
    )?;
    Ok(outer.value)
}

/// The same identity after exchanging the integrals:
/// `Π̄_H(r) = ∫_r^∞ π(y) V̂([0, y − r]) dy`.
pub fn vigon_tail_fubini(r: f64, chars: &LevyCharacteristics) -> Result<f64> {
    check_positive(r)?;
    let ladder = LadderData::new(chars.params)?;
    let prec = &chars.precision;
    let opts = QuadOptions::from_precision(prec);
    let a = chars.params.alpha();
    let v = integrate_gap_tail(
        |g| {
            if g == 0.0 {
                return Ok(0.0);
            }
            Ok(levy_density_with(r + g, &chars.params, prec)? * ladder.renewal_cumulative_desc(g)?)
        },
        0.5 * a + 1.0,
        1.0,
        &opts,
    )?;
    Ok(v.value)
}
