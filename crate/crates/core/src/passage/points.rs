//! Point-hitting probabilities for `1 < α < d`.

use std::f64::consts::{LN_2, PI};

use nalgebra::{DMatrix, DVector};

use crate::error::{domain, Error, Result};
use crate::model::ProcessParams;
use crate::specfun::{hyp2f1_with_complement, ln_gamma, EvalPrecision};

/// `ln P^μ_ν(z)` at `z = (1 + ρ²)/(1 − ρ²)` with the factor `(1 − ρ²)^{−ν}` split off,
/// so that callers can merge it with their own power of `|x² − y²|`.
fn ln_legendre_core(mu: f64, nu: f64, rho: f64, prec: &EvalPrecision) -> Result<f64> {
    let r2 = rho * rho;
    let f = hyp2f1_with_complement(-nu, -mu - nu, 1.0 - mu, r2, (1.0 - rho) * (1.0 + rho), prec)?;
    if !(f > 0.0) {
        return Err(domain(format!("Legendre factor is not positive ({f})")));
    }
    Ok(-mu * rho.ln() - ln_gamma(1.0 - mu)? + f.ln())
}

/// Potential density `u(x, y)` of the radial process, including the diagonal.
pub fn potential_density_u(x: f64, y: f64, params: &ProcessParams) -> Result<f64> {
    potential_density_u_with(x, y, params, &EvalPrecision::default())
}

pub fn potential_density_u_with(x: f64, y: f64, params: &ProcessParams, prec: &EvalPrecision) -> Result<f64> {
    params.require_hits_points()?;
    if !(x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite()) {
        return Err(domain(format!("potential density needs positive radii, got ({x}, {y})")));
    }
    let (a, d) = (params.alpha(), params.d());
    let ln_common = ln_gamma(0.5 * d)? + ln_gamma(0.5 * (d - a))? - ln_gamma(0.5 * a)?;
    if x == y {
        let ln_c = -0.5 * PI.ln() + (0.5 * d - 2.0) * LN_2 + ln_gamma(0.5 * (a - 1.0))?
            - ln_gamma(0.5 * (a + d) - 1.0)?;
        return Ok((ln_c + ln_common + (a - d) * x.ln()).exp());
    }
    let (lo, hi) = if x < y { (x, y) } else { (y, x) };
    let rho = lo / hi;
    let (mu, nu) = (1.0 - 0.5 * d, -0.5 * a);
    // |x² − y²| = hi²(1 − ρ²); the Legendre factor contributes (1 − ρ²)^{−ν} = (1 − ρ²)^{α/2}
    let ln_gap = 2.0 * hi.ln() + ((1.0 - rho) * (1.0 + rho)).ln();
    let ln_one_minus_r2 = ((1.0 - rho) * (1.0 + rho)).ln();
    let log = (0.5 * d - a) * LN_2 + ln_common + (1.0 - 0.5 * d) * (x.ln() + y.ln())
        + (0.5 * a - 1.0) * ln_gap
        - nu * ln_one_minus_r2
        + ln_legendre_core(mu, nu, rho, prec)?;
    Ok(log.exp())
}

/// `P(T_y < ∞)` for the hypergeometric-stable process started at 0.
pub fn hit_point_prob(y: f64, params: &ProcessParams) -> Result<f64> {
    hit_point_prob_with(y, params, &EvalPrecision::default())
}

pub fn hit_point_prob_with(y: f64, params: &ProcessParams, prec: &EvalPrecision) -> Result<f64> {
    params.require_hits_points()?;
    if y == 0.0 || !y.is_finite() {
        return Err(domain(format!("hitting level must be finite and nonzero, got {y}")));
    }
    let (a, d) = (params.alpha(), params.d());
    let ln_k = (2.0 - a) * LN_2 + 0.5 * PI.ln() + ln_gamma(0.5 * (d + a) - 1.0)? - ln_gamma(0.5 * (a - 1.0))?;
    let rho = (-y.abs()).exp();
    let (mu, nu) = (1.0 - 0.5 * d, -0.5 * a);
    let one_minus_r2 = -(-2.0 * y.abs()).exp_m1();
    // |e^{−2y} − 1| = e^{−2y}(1 − ρ²) for y < 0 and (1 − ρ²) for y > 0
    let ln_gap = one_minus_r2.ln() + if y < 0.0 { -2.0 * y } else { 0.0 };
    let log = ln_k + (0.5 * d - 1.0) * y + (0.5 * a - 1.0) * ln_gap - nu * one_minus_r2.ln()
        + ln_legendre_core(mu, nu, rho, prec)?;
    Ok(log.exp())
}

/// The matrix `U = [u(rᵢ, rⱼ)]` for a finite set of radii and its inverse.
#[derive(Debug, Clone)]
pub struct HittingMatrix {
    pub points: Vec<f64>,
    pub u: DMatrix<f64>,
    pub k: DMatrix<f64>,
    pub condition: f64,
}

/// Condition numbers above this trigger a warning.
pub const CONDITION_WARNING: f64 = 1e12;

impl HittingMatrix {
    pub fn new(points: &[f64], params: &ProcessParams) -> Result<Self> {
        params.require_hits_points()?;
        if points.is_empty() {
            return Err(domain("at least one point is required"));
        }
        if points.iter().any(|r| !(*r > 0.0 && r.is_finite())) {
            return Err(domain("points must be positive and finite"));
        }
        let mut sorted = points.to_vec();
        sorted.sort_by(f64::total_cmp);
        for w in sorted.windows(2) {
            if (w[1] - w[0]) <= 1e-12 * w[1] {
                return Err(Error::SingularMatrix(format!("points {} and {} coincide", w[0], w[1])));
            }
        }
        let n = points.len();
        let mut u = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = potential_density_u(points[i], points[j], params)?;
                u[(i, j)] = v;
                u[(j, i)] = v;
            }
        }
        let sv = u.clone().singular_values();
        let condition = sv.max() / sv.min();
        if !(condition.is_finite()) {
            return Err(Error::SingularMatrix("potential matrix is singular".into()));
        }
        if condition > CONDITION_WARNING {
            log::warn!("potential matrix is ill-conditioned (condition number {condition:.3e})");
        }
        let k = u
            .clone()
            .lu()
            .try_inverse()
            .ok_or_else(|| Error::SingularMatrix("LU factorisation failed".into()))?;
        Ok(Self {
            points: points.to_vec(),
            u,
            k,
            condition,
        })
    }
}

/// Probability of ever hitting the set and of hitting each point first.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPointHitting {
    pub prob_any: f64,
    pub first_hit: Vec<f64>,
}

/// Hitting probabilities of the radii `points` for the radial process started at norm `x`.
pub fn multi_point_hitting(points: &[f64], x: f64, params: &ProcessParams) -> Result<MultiPointHitting> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(domain(format!("start radius must be positive, got {x}")));
    }
    let m = HittingMatrix::new(points, params)?;
    let ux = DVector::from_iterator(
        points.len(),
        points.iter().map(|&r| potential_density_u(x, r, params)).collect::<Result<Vec<_>>>()?,
    );
    let first = m.k.transpose() * ux;
    let first_hit: Vec<f64> = first.iter().copied().collect();
    Ok(MultiPointHitting {
        prob_any: first_hit.iter().sum(),
        first_hit,
    })
}

/// The two-point laws for `ξ` written out explicitly with `v < 0 < u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPointHitting {
    pub prob_any: f64,
    /// `P(ξ` hits `v` before `u)`.
    pub first_v: f64,
    /// `P(ξ` hits `u` before `v)`.
    pub first_u: f64,
}

/// `f(x, a, b)` from the two-point law: probability of hitting `a` before `b` from `x`.
pub fn two_point_first(x: f64, a: f64, b: f64, params: &ProcessParams) -> Result<f64> {
    let u = |p: f64, q: f64| potential_density_u(p, q, params);
    let num = u(x, a)? / u(b, a)? - u(x, b)? / u(b, b)?;
    let den = u(a, a)? / u(b, a)? - u(a, b)? / u(b, b)?;
    Ok(num / den)
}

pub fn two_point_hitting(v: f64, u: f64, params: &ProcessParams) -> Result<TwoPointHitting> {
    params.require_hits_points()?;
    if !(v < 0.0 && u > 0.0) {
        return Err(domain(format!("two-point law needs v < 0 < u, got v={v}, u={u}")));
    }
    let (ev, eu) = (v.exp(), u.exp());
    let pu = |p: f64, q: f64| potential_density_u(p, q, params);
    let (u1v, u1u) = (pu(1.0, ev)?, pu(1.0, eu)?);
    let (uvv, uuu, uvu) = (pu(ev, ev)?, pu(eu, eu)?, pu(ev, eu)?);
    let delta = uvv * uuu - uvu * uvu;
    let prob_any = (u1v * uuu + u1u * uvv) / delta - uvu * (u1v + u1u) / delta;
    Ok(TwoPointHitting {
        prob_any,
        first_v: two_point_first(1.0, ev, eu, params)?,
        first_u: two_point_first(1.0, eu, ev, params)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: f64, d: u32) -> ProcessParams {
        ProcessParams::new(a, d).unwrap()
    }

    #[test]
    fn regime_gate() {
        assert!(hit_point_prob(0.5, &p(0.5, 2)).is_err());
        assert!(potential_density_u(1.0, 2.0, &p(1.0, 3)).is_err());
        assert!(hit_point_prob(0.0, &p(1.5, 3)).is_err());
    }

    #[test]
    fn potential_symmetry_and_scaling() {
        let q = p(1.5, 3);
        let a = potential_density_u(1.0, 2.0, &q).unwrap();
        let b = potential_density_u(2.0, 1.0, &q).unwrap();
        assert_eq!(a, b);
        let ratio = potential_density_u(2.0, 2.0, &q).unwrap() / potential_density_u(1.0, 1.0, &q).unwrap();
        assert!((ratio - 2f64.powf(-1.5)).abs() < 1e-14);
    }

    #[test]
    fn diagonal_is_the_limit() {
        let q = p(1.5, 3);
        let diag = potential_density_u(1.0, 1.0, &q).unwrap();
        let near = potential_density_u(1.0, 1.0 + 1e-7, &q).unwrap();
        assert!((near - diag).abs() / diag < 1e-3);
    }

    #[test]
    fn hitting_limits() {
        let q = p(1.5, 3);
        let far_below = hit_point_prob(-30.0, &q).unwrap();
        assert!(far_below < 1e-6);
        let far_above = hit_point_prob(30.0, &q).unwrap();
        assert!((far_above - 0.5f64.sqrt()).abs() < 1e-8);
        let near = hit_point_prob(1e-9, &q).unwrap();
        assert!(near > 0.99 && near <= 1.0 + 1e-12);
    }

    #[test]
    fn coincident_points_rejected() {
        let q = p(1.5, 3);
        assert!(matches!(HittingMatrix::new(&[1.0, 1.0], &q), Err(Error::SingularMatrix(_))));
    }
}
