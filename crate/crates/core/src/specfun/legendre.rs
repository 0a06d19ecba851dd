use super::{gamma, hyp2f1_with_complement, EvalPrecision};
use crate::error::{domain, Result};

/// Legendre function of the first kind `P^μ_ν(z)` for `z > 1`.
pub fn legendre_p(mu: f64, nu: f64, z: f64) -> Result<f64> {
    if z.is_nan() || z <= 1.0 {
        return Err(domain(format!("legendre_p requires z > 1, got {z}")));
    }
    let rho = ((z - 1.0) / (z + 1.0)).sqrt();
    legendre_p_at_ratio(mu, nu, rho, &EvalPrecision::default())
}

/// `P^μ_ν(z)` with `z = (1 + ρ²)/(1 − ρ²)`, for `ρ ∈ (0, 1)`.
///
/// Arguments of the form `(x² + y²)/|x² − y²|` are ratios in disguise:
/// `ρ = min(x,y)/max(x,y)`. Passing ρ keeps full precision both when the
/// points nearly coincide (`z → ∞`) and when they are far apart (`z → 1`).
pub fn legendre_p_at_ratio(mu: f64, nu: f64, rho: f64, prec: &EvalPrecision) -> Result<f64> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(domain(format!("legendre ratio must lie in (0, 1), got {rho}")));
    }
    let r2 = rho * rho;
    let comp = (1.0 - rho) * (1.0 + rho);
    let f = hyp2f1_with_complement(-nu, -mu - nu, 1.0 - mu, r2, comp, prec)?;
    let inv_gamma = 1.0 / gamma(1.0 - mu)?;
    Ok(inv_gamma * (-mu * rho.ln() - nu * comp.ln()).exp() * f)
}
