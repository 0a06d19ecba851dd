//! Potential of `ξ` killed on entering `(−∞, 0)` and the mean exit time of `R` from `[1, ∞)`.

use std::f64::consts::LN_2;

use crate::error::{domain, Result};
use crate::model::ProcessParams;
use crate::quad::{integrate_gap, QuadOptions};
use crate::specfun::{gamma, ln_beta, ln_gamma, reg_inc_beta, EvalPrecision};

fn check_k(k: f64) -> Result<()> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("kernel constant k must be positive, got {k}")))
    }
}

/// Density `r(x, u)` of the potential measure of `ξ` started at `x` and killed below 0.
///
/// The constant `k` is not determined in closed form and is passed through.
/// At `u = x` the density is finite only for `α > 1`; otherwise `+∞` is returned.
pub fn potential_kernel_r(x: f64, u: f64, k: f64, params: &ProcessParams) -> Result<f64> {
    potential_kernel_r_with(x, u, k, params, &EvalPrecision::default())
}

pub fn potential_kernel_r_with(x: f64, u: f64, k: f64, params: &ProcessParams, prec: &EvalPrecision) -> Result<f64> {
    params.require_transient()?;
    check_k(k)?;
    if !(x >= 0.0 && u >= 0.0 && x.is_finite() && u.is_finite()) {
        return Err(domain(format!("potential kernel needs finite x, u ≥ 0, got x={x}, u={u}")));
    }
    if x == 0.0 || u == 0.0 {
        return Ok(0.0);
    }
    let (a, d) = (params.alpha(), params.d());
    let asc = |y: f64| (-(-2.0 * y).exp_m1()).powf(0.5 * a - 1.0);
    let desc = |z: f64| ((a - d) * z).exp() * (-(-2.0 * z).exp_m1()).powf(0.5 * a - 1.0);
    let lower = (u - x).max(0.0);
    let width = u - lower;
    let c = k * ((2.0 - a) * LN_2 - 2.0 * ln_gamma(0.5 * a)?).exp();
    let opts = QuadOptions::from_precision(prec);
    let integral = if u == x {
        if a <= 1.0 {
            return Ok(f64::INFINITY);
        }
        integrate_gap(|g| if g == 0.0 { Ok(0.0) } else { Ok(asc(g) * desc(g)) }, width, a - 1.0, &opts)?
    } else if u < x {
        // only asc(y) is singular, at y = 0
        integrate_gap(|g| if g == 0.0 { Ok(0.0) } else { Ok(asc(g) * desc(x + g - u)) }, width, 0.5 * a, &opts)?
    } else {
        // only desc is singular, at y = u − x
        integrate_gap(|g| if g == 0.0 { Ok(0.0) } else { Ok(asc(lower + g) * desc(g)) }, width, 0.5 * a, &opts)?
    };
    Ok(c * integral.value)
}

/// `E_x(σ₁⁻)` for the radial process in the form `k x^α/(2Γ(α)) ∫_{x^{−2}}^1 u^{d/2−1}(1−u)^{α/2−1} du`.
pub fn expected_sigma_minus(x: f64, k: f64, params: &ProcessParams) -> Result<f64> {
    params.require_transient()?;
    check_k(k)?;
    if !(x > 1.0 && x.is_finite()) {
        return Err(domain(format!("expected exit time needs x > 1, got {x}")));
    }
    let (a, d) = (params.alpha(), params.d());
    let (p, q) = (0.5 * d, 0.5 * a);
    let beta = ln_beta(p, q)?.exp();
    // 1 − I_{x^{−2}}(p, q) = I_{1−x^{−2}}(q, p), formed without cancellation near x = 1
    let upper_mass = reg_inc_beta(-(-2.0 * x.ln()).exp_m1(), q, p)?;
    Ok(k * x.powf(a) / (2.0 * gamma(a)?) * beta * upper_mass)
}

/// The same integral over `[x^{−2}, 1]` by quadrature, for cross-checking.
pub fn expected_sigma_minus_quadrature(x: f64, k: f64, params: &ProcessParams, prec: &EvalPrecision) -> Result<f64> {
    params.require_transient()?;
    check_k(k)?;
    if !(x > 1.0 && x.is_finite()) {
        return Err(domain(format!("expected exit time needs x > 1, got {x}")));
    }
    let (a, d) = (params.alpha(), params.d());
    let lo = x.powi(-2);
    let opts = QuadOptions::from_precision(prec);
    // gap measured from u = 1, where (1−u)^{α/2−1} is singular
    let integral = integrate_gap(
        |g| if g == 0.0 { Ok(0.0) } else { Ok((1.0 - g).powf(0.5 * d - 1.0) * g.powf(0.5 * a - 1.0)) },
        1.0 - lo,
        0.5 * a,
        &opts,
    )?;
    Ok(k * x.powf(a) / (2.0 * gamma(a)?) * integral.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: f64, d: u32) -> ProcessParams {
        ProcessParams::new(a, d).unwrap()
    }

    #[test]
    fn degenerate_ranges() {
        let q = p(1.0, 3);
        assert_eq!(potential_kernel_r(0.0, 1.0, 1.0, &q).unwrap(), 0.0);
        assert_eq!(potential_kernel_r(1.0, 0.0, 1.0, &q).unwrap(), 0.0);
        assert_eq!(potential_kernel_r(1.0, 1.0, 1.0, &q).unwrap(), f64::INFINITY);
        assert!(potential_kernel_r(1.0, 1.0, 1.0, &p(1.5, 3)).unwrap().is_finite());
    }

    #[test]
    fn kernel_reference_value() {
        let v = potential_kernel_r(1.0, 0.5, 1.0, &p(1.0, 3)).unwrap();
        assert!((v - 0.221799).abs() < 1e-6, "{v}");
    }

    #[test]
    fn kernel_is_linear_in_k() {
        let q = p(1.0, 3);
        let a = potential_kernel_r(1.0, 1.7, 1.0, &q).unwrap();
        let b = potential_kernel_r(1.0, 1.7, 2.5, &q).unwrap();
        assert!((b - 2.5 * a).abs() < 1e-14 * b);
    }

    #[test]
    fn sigma_minus_forms_agree() {
        let q = p(1.0, 3);
        let prec = EvalPrecision::with_rel_tol(1e-12).unwrap();
        for &x in &[1.01, 2.0, 7.5] {
            let c = expected_sigma_minus(x, 1.0, &q).unwrap();
            let n = expected_sigma_minus_quadrature(x, 1.0, &q, &prec).unwrap();
            assert!(((c - n) / c).abs() < 1e-10, "x={x}");
        }
        assert!((expected_sigma_minus(2.0, 1.0, &q).unwrap() - 1.48021024).abs() < 1e-7);
        // near x = 1 the integral behaves like 2·sqrt(2(x − 1)) for α = 1
        let x = 1.0 + 1e-12;
        let eps = x - 1.0;
        let near = expected_sigma_minus(x, 1.0, &q).unwrap();
        assert!(((near - (2.0 * eps).sqrt()) / near).abs() < 1e-6, "{near}");
        assert!(expected_sigma_minus(1.0, 1.0, &q).is_err());
    }
}
