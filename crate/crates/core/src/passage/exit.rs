//! One-sided exit laws and the law of the all-time infimum.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::fluctuation::LadderData;
use crate::model::ProcessParams;
use crate::quad::{integrate_gap_tail, QuadOptions};
use crate::specfun::{gamma, reg_inc_beta, EvalPrecision};

use super::table::{IncrementalCdf, TableKind};

fn exit_const(params: &ProcessParams) -> f64 {
    2.0 / PI * (0.5 * PI * params.alpha()).sin()
}

/// Density of the exit position of the stable process from the unit ball
/// (start inside) or into it (start outside).
pub fn blumenthal_exit_density(y: &[f64], z: &[f64], params: &ProcessParams) -> Result<f64> {
    params.require_transient()?;
    let d = params.dim() as usize;
    if y.len() != d || z.len() != d {
        return Err(domain(format!("points must have dimension {d}")));
    }
    let ny2: f64 = y.iter().map(|v| v * v).sum();
    let nz2: f64 = z.iter().map(|v| v * v).sum();
    let inside_y = ny2 < 1.0;
    let inside_z = nz2 < 1.0;
    if inside_y == inside_z || ny2 == 1.0 {
        return Err(domain("the two points must lie on opposite sides of the unit sphere"));
    }
    let dist2: f64 = y.iter().zip(z).map(|(a, b)| (a - b) * (a - b)).sum();
    let (a, df) = (params.alpha(), params.d());
    let c = PI.powf(-(0.5 * df + 1.0)) * gamma(0.5 * df)? * (0.5 * PI * a).sin();
    Ok(c * (1.0 - ny2).abs().powf(0.5 * a) * (1.0 - nz2).abs().powf(-0.5 * a) * dist2.powf(-0.5 * df))
}

/// Density in `θ` of the overshoot `ξ_{T_u⁺} − u`.
pub fn overshoot_density(theta: f64, u: f64, params: &ProcessParams) -> Result<f64> {
    params.require_transient()?;
    if !(u > 0.0) || !(theta >= 0.0) {
        return Err(domain(format!("overshoot needs u > 0 and θ ≥ 0, got u={u}, θ={theta}")));
    }
    if theta == 0.0 {
        return Ok(f64::INFINITY);
    }
    if theta.is_infinite() {
        return Ok(0.0);
    }
    let a = params.alpha();
    // e^{2(u+θ)}/(e^{2(θ+u)}−1) = 1/(1−e^{−2(θ+u)}) and (e^{2θ}−1)^{−α/2} = e^{−αθ}(1−e^{−2θ})^{−α/2}
    Ok(exit_const(params)
        * (-(-2.0 * u).exp_m1()).powf(0.5 * a)
        * (-a * theta).exp()
        * (-(-2.0 * theta).exp_m1()).powf(-0.5 * a)
        / -(-2.0 * (theta + u)).exp_m1())
}

/// `P(ξ_{T_u⁺} − u ≤ θ)` by quadrature of the density.
pub fn overshoot_cdf(theta: f64, u: f64, params: &ProcessParams, prec: &EvalPrecision) -> Result<f64> {
    overshoot_cdf_sweep(u, params, prec)?.eval(theta)
}

/// Overshoot distribution function for a sorted sweep of abscissae.
pub fn overshoot_cdf_sweep(
    u: f64,
    params: &ProcessParams,
    prec: &EvalPrecision,
) -> Result<IncrementalCdf<impl FnMut(f64) -> Result<f64>>> {
    params.require_transient()?;
    if !(u > 0.0) {
        return Err(domain(format!("overshoot level must be positive, got {u}")));
    }
    let p = *params;
    Ok(IncrementalCdf::new(
        move |t| if t == 0.0 { Ok(0.0) } else { overshoot_density(t, u, &p) },
        1.0 - 0.5 * p.alpha(),
        QuadOptions::from_precision(prec),
    ))
}

/// Total mass of the overshoot density (equal to 1 since `ξ → +∞`).
pub fn overshoot_mass(u: f64, params: &ProcessParams, prec: &EvalPrecision) -> Result<f64> {
    params.require_transient()?;
    let opts = QuadOptions::from_precision(prec);
    let g = 1.0 - 0.5 * params.alpha();
    Ok(integrate_gap_tail(|t| if t == 0.0 { Ok(0.0) } else { overshoot_density(t, u, params) }, g, 1.0, &opts)?.value)
}

/// Defective density in `θ` of the undershoot `v − ξ_{T_v⁻}`, `v < 0`.
pub fn undershoot_density(theta: f64, v: f64, params: &ProcessParams) -> Result<f64> {
    params.require_transient()?;
    if !(v < 0.0) || !(theta >= 0.0) {
        return Err(domain(format!("undershoot needs v < 0 and θ ≥ 0, got v={v}, θ={theta}")));
    }
    if theta == 0.0 {
        return Ok(f64::INFINITY);
    }
    if theta.is_infinite() {
        return Ok(0.0);
    }
    let (a, d) = (params.alpha(), params.d());
    Ok(exit_const(params)
        * (d * (v - theta)).exp()
        * (-2.0 * v).exp_m1().powf(0.5 * a)
        * (-(-2.0 * theta).exp_m1()).powf(-0.5 * a)
        / -(2.0 * (v - theta)).exp_m1())
}

/// `P(T_v⁻ < ∞)` as the integral of the undershoot density.
pub fn undershoot_mass(v: f64, params: &ProcessParams, prec: &EvalPrecision) -> Result<f64> {
    params.require_transient()?;
    let opts = QuadOptions::from_precision(prec);
    let g = 1.0 - 0.5 * params.alpha();
    Ok(integrate_gap_tail(|t| if t == 0.0 { Ok(0.0) } else { undershoot_density(t, v, params) }, g, 1.0, &opts)?.value)
}

/// Density of `−inf_t ξ_t`.
pub fn infimum_density(z: f64, params: &ProcessParams) -> Result<f64> {
    if !(z >= 0.0) {
        return Err(domain(format!("infimum depth must be nonnegative, got {z}")));
    }
    let ladder = LadderData::new(*params)?;
    if z == 0.0 {
        return Ok(f64::INFINITY);
    }
    if z.is_infinite() {
        return Ok(0.0);
    }
    ladder.renewal_density_desc(z)
}

/// `P(−inf_t ξ_t ≤ z) = I_{1−e^{−2z}}(α/2, (d−α)/2)`.
pub fn infimum_cdf(z: f64, params: &ProcessParams) -> Result<f64> {
    params.require_transient()?;
    if !(z >= 0.0) {
        return Err(domain(format!("infimum depth must be nonnegative, got {z}")));
    }
    if z.is_infinite() {
        return Ok(1.0);
    }
    let (a, d) = (params.alpha(), params.d());
    reg_inc_beta(-(-2.0 * z).exp_m1(), 0.5 * a, 0.5 * (d - a))
}

pub fn infimum_law(z: f64, params: &ProcessParams, kind: TableKind) -> Result<f64> {
    match kind {
        TableKind::Density => infimum_density(z, params),
        TableKind::Cdf => infimum_cdf(z, params),
    }
}
