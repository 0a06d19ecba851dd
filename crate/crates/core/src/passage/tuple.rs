//! Triple law at first passage and quadruple law at last passage.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::fluctuation::LadderData;
use crate::model::{levy_density_with, FBarParams, ProcessParams};
use crate::quad::{integrate_gap, integrate_gap_tail, integrate_tail, QuadOptions};
use crate::specfun::{ln_gamma, EvalPrecision};

/// Shape shared by both laws: the renewal kernels and the normalised jump density.
struct Kernels {
    params: ProcessParams,
    prefactor: f64,
    prec: EvalPrecision,
}

impl Kernels {
    fn new(params: &ProcessParams, prec: &EvalPrecision) -> Result<Self> {
        params.require_transient()?;
        Ok(Self {
            params: *params,
            prefactor: FBarParams::new(params)?.prefactor,
            prec: *prec,
        })
    }

    /// `e^{(2−d)g}(e^{2g} − 1)^{α/2−1}`.
    fn desc(&self, g: f64) -> f64 {
        let (a, d) = (self.params.alpha(), self.params.d());
        ((a - d) * g).exp() * (-(-2.0 * g).exp_m1()).powf(0.5 * a - 1.0)
    }

    /// `(1 − e^{−2g})^{α/2−1}`.
    fn asc(&self, g: f64) -> f64 {
        (-(-2.0 * g).exp_m1()).powf(0.5 * self.params.alpha() - 1.0)
    }

    /// `e^{−αs} ₂F₁((α+d)/2, α/2+1; d/2; e^{−2s})`.
    fn jump(&self, s: f64) -> Result<f64> {
        Ok(levy_density_with(s, &self.params, &self.prec)? / self.prefactor)
    }

    fn half_alpha(&self) -> f64 {
        0.5 * self.params.alpha()
    }
}

fn sine_factor(a: f64) -> f64 {
    (0.5 * a * PI).sin() / PI
}

fn triple_const(params: &ProcessParams) -> Result<f64> {
    let (a, d) = (params.alpha(), params.d());
    Ok(4.0 * a * (ln_gamma(0.5 * (a + d))? - ln_gamma(0.5 * d)? - ln_gamma(0.5 * a)?).exp() * sine_factor(a))
}

fn quadruple_const(params: &ProcessParams) -> Result<f64> {
    let (a, d) = (params.alpha(), params.d());
    Ok(8.0 * a * (ln_gamma(0.5 * (a + d))? - ln_gamma(0.5 * (d - a))? - 2.0 * ln_gamma(0.5 * a)?).exp()
        * sine_factor(a))
}

/// Joint density of `(ξ_{T_x⁺} − x, x − ξ_{T_x⁺−}, x − sup_{s<T_x⁺} ξ_s)` at `(u, v, y)`.
pub fn triple_law_first_passage(u: f64, v: f64, y: f64, x: f64, params: &ProcessParams) -> Result<f64> {
    let k = Kernels::new(params, &EvalPrecision::default())?;
    if !(x > 0.0 && u > 0.0 && (0.0..=x).contains(&y) && v >= y && v.is_finite()) {
        return Err(domain(format!(
            "triple law needs x > 0, u > 0, 0 ≤ y ≤ x, v ≥ y; got x={x}, u={u}, v={v}, y={y}"
        )));
    }
    if y == x || v == y {
        return Ok(f64::INFINITY);
    }
    Ok(triple_const(params)? * k.asc(x - y) * k.desc(v - y) * k.jump(u + v)?)
}

/// Radial version: joint density of `(sup_{s<σ₁⁺} R_s, R_{σ₁⁺−}, R_{σ₁⁺})` at `(z, w, θ)`
/// for the radial process started at `x ∈ (0, 1)`.
pub fn triple_law_radial(z: f64, w: f64, theta: f64, x: f64, params: &ProcessParams) -> Result<f64> {
    if !(x > 0.0 && x < 1.0 && z >= x && z <= 1.0 && w > 0.0 && w <= z && theta > 1.0) {
        return Err(domain(format!(
            "radial triple law needs 0 < x < 1, x ≤ z ≤ 1, 0 < w ≤ z, θ > 1; got x={x}, z={z}, w={w}, θ={theta}"
        )));
    }
    let jac = theta * w * z;
    Ok(triple_law_first_passage(theta.ln(), -w.ln(), -z.ln(), -x.ln(), params)? / jac)
}

/// `∫∫ triple(u, v, y) dv dy` over `0 ≤ y ≤ x ≤ … , v ≥ y`; equals the overshoot density at `u`.
pub fn triple_law_marginal_u(u: f64, x: f64, params: &ProcessParams, prec: &EvalPrecision) -> Result<f64> {
    let k = Kernels::new(params, prec)?;
    if !(x > 0.0 && u > 0.0) {
        return Err(domain(format!("triple marginal needs x > 0 and u > 0, got x={x}, u={u}")));
    }
    let opts = QuadOptions::from_precision(prec);
    let ha = k.half_alpha();
    let outer = integrate_gap(
        |h| {
            if h == 0.0 {
                return Ok(0.0);
            }
            let y = x - h;
            let inner = integrate_gap_tail(
                |g| if g == 0.0 { Ok(0.0) } else { Ok(k.desc(g) * k.jump(u + y + g)?) },
                ha,
                1.0,
                &opts,
            )?;
            Ok(k.asc(h) * inner.value)
        },
        x,
        ha,
        &opts,
    )?;
    Ok(triple_const(params)? * outer.value)
}

/// Total mass of the triple law, by quadrature of the `u`-marginal.
pub fn triple_law_mass(x: f64, params: &ProcessParams, prec: &EvalPrecision) -> Result<f64> {
    let opts = QuadOptions::from_precision(prec);
    let head = integrate_gap(
        |u| if u == 0.0 { Ok(0.0) } else { triple_law_marginal_u(u, x, params, prec) },
        1.0,
        1.0 - 0.5 * params.alpha(),
        &opts,
    )?;
    let tail = integrate_tail(|u| triple_law_marginal_u(u, x, params, prec), 1.0, &opts)?;
    Ok(head.value + tail.value)
}

/// Joint density of `(−J₀, J_{U_x} − x, x − ξ_{U_x−}, ξ_{U_x} − x)` at `(v, u, y, w)`,
/// where `U_x` is the last passage below `x` and `J` the future infimum.
pub fn quadruple_law_last_passage(
    v: f64,
    u: f64,
    y: f64,
    w: f64,
    x: f64,
    params: &ProcessParams,
) -> Result<f64> {
    let k = Kernels::new(params, &EvalPrecision::default())?;
    if !(x > 0.0 && v > 0.0 && y >= 0.0 && y < x + v && u >= 0.0 && w >= u && w.is_finite() && v.is_finite()) {
        return Err(domain(format!(
            "quadruple law needs x, v > 0, 0 ≤ y < x + v, 0 ≤ u ≤ w; got x={x}, v={v}, y={y}, u={u}, w={w}"
        )));
    }
    if w == u {
        return Ok(f64::INFINITY);
    }
    if w + y == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(quadruple_const(params)? * k.desc(v) * k.desc(w - u) * k.asc(x + v - y) * k.jump(w + y)?)
}

/// Radial version: joint density of `(1/F₀, R_{L_b−}, R_{L_b}, F_{L_b})` at `(v, y, w, u)`
/// for the radial process started at `x < b`.
pub fn quadruple_law_radial(
    v: f64,
    y: f64,
    w: f64,
    u: f64,
    x: f64,
    b: f64,
    params: &ProcessParams,
) -> Result<f64> {
    if !(x > 0.0 && b > x && v * x > 1.0 && y * v > 1.0 && y < b && u > b && w >= u) {
        return Err(domain(format!(
            "radial quadruple law needs 0 < x < b, v > 1/x, 1/v < y < b, b < u ≤ w; \
             got x={x}, b={b}, v={v}, y={y}, u={u}, w={w}"
        )));
    }
    let jac = v * y * w * u;
    let level = (b / x).ln();
    Ok(quadruple_law_last_passage((x * v).ln(), (u / b).ln(), (b / y).ln(), (w / b).ln(), level, params)? / jac)
}

/// `∫∫ quadruple dw du` as a function of `y`: the jump kernel integrated against the
/// descending renewal function, evaluated by quadrature.
fn quadruple_jump_factor(y: f64, k: &Kernels, opts: &QuadOptions) -> Result<f64> {
    let ha = k.half_alpha();
    // ∫_0^w desc(w − u) du is the renewal function on [0, w]
    let renewal = |w: f64| -> Result<f64> {
        if w == 0.0 {
            return Ok(0.0);
        }
        Ok(integrate_gap(|g| if g == 0.0 { Ok(0.0) } else { Ok(k.desc(g)) }, w, ha, opts)?.value)
    };
    Ok(integrate_gap_tail(
        |w| if w == 0.0 { Ok(0.0) } else { Ok(renewal(w)? * k.jump(w + y)?) },
        ha + 1.0,
        1.0,
        opts,
    )?
    .value)
}

/// Density of `−J₀` obtained by integrating the quadruple law over `(u, y, w)`.
///
/// The inner `(u, w)` integral is replaced by the ascending ladder tail, which it equals.
pub fn quadruple_law_marginal_v(v: f64, x: f64, params: &ProcessParams, prec: &EvalPrecision) -> Result<f64> {
    let k = Kernels::new(params, prec)?;
    if !(x > 0.0 && v > 0.0) {
        return Err(domain(format!("quadruple marginal needs x > 0 and v > 0, got x={x}, v={v}")));
    }
    let opts = QuadOptions::from_precision(prec);
    Ok(quadruple_const(params)? * k.desc(v) * quadruple_y_integral(x + v, &k, &opts)?)
}

/// `∫_0^s asc(s − y) · [∫∫ desc · jump] dy` with the inner factor in closed form.
fn quadruple_y_integral(s: f64, k: &Kernels, opts: &QuadOptions) -> Result<f64> {
    let ladder = LadderData::new(k.params)?;
    let (a, d) = (k.params.alpha(), k.params.d());
    let desc_const = 2.0 * (ln_gamma(0.5 * d)? - ln_gamma(0.5 * (d - a))? - ln_gamma(0.5 * a)?).exp();
    let scale = 1.0 / (desc_const * k.prefactor);
    let factor = |y: f64| -> Result<f64> {
        if y == 0.0 {
            return Ok(0.0);
        }
        Ok(ladder.ladder_levy_tail_asc(y)? * scale)
    };
    let ha = k.half_alpha();
    let half = 0.5 * s;
    // both ends are singular: asc at y = s and the ladder tail at y = 0
    let upper = integrate_gap(
        |h| if h == 0.0 { Ok(0.0) } else { Ok(k.asc(h) * factor(s - h)?) },
        half,
        ha,
        opts,
    )?;
    let lower = integrate_gap(
        |y| if y == 0.0 { Ok(0.0) } else { Ok(k.asc(s - y) * factor(y)?) },
        half,
        1.0 - ha,
        opts,
    )?;
    Ok(upper.value + lower.value)
}

/// Total mass of the quadruple law over its domain.
pub fn quadruple_law_mass(x: f64, params: &ProcessParams, prec: &EvalPrecision) -> Result<f64> {
    let opts = QuadOptions::from_precision(prec);
    let ha = 0.5 * params.alpha();
    let head = integrate_gap(
        |v| if v == 0.0 { Ok(0.0) } else { quadruple_law_marginal_v(v, x, params, prec) },
        1.0,
        ha,
        &opts,
    )?;
    let tail = integrate_tail(|v| quadruple_law_marginal_v(v, x, params, prec), 1.0, &opts)?;
    Ok(head.value + tail.value)
}

/// The `(u, w)` integral of the quadruple law at fixed `y`, by direct quadrature.
///
/// Agrees with the closed ladder tail used by [`quadruple_law_marginal_v`].
pub fn quadruple_jump_integral(y: f64, params: &ProcessParams, prec: &EvalPrecision) -> Result<f64> {
    let k = Kernels::new(params, prec)?;
    if !(y > 0.0) {
        return Err(domain(format!("jump integral needs y > 0, got {y}")));
    }
    quadruple_jump_factor(y, &k, &QuadOptions::from_precision(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::passage::overshoot_density;

    fn p(a: f64, d: u32) -> ProcessParams {
        ProcessParams::new(a, d).unwrap()
    }

    #[test]
    fn domain_checks() {
        let q = p(1.0, 3);
        assert!(triple_law_first_passage(0.4, 0.1, 0.2, 1.0, &q).is_err());
        assert!(triple_law_first_passage(0.4, 0.5, 1.2, 1.0, &q).is_err());
        assert!(quadruple_law_last_passage(0.5, 0.3, 0.1, 0.2, 1.0, &q).is_err());
        assert!(triple_law_first_passage(0.4, 0.5, 0.2, 1.0, &p(1.0, 1)).is_err());
    }

    #[test]
    fn triple_marginal_is_overshoot() {
        let q = p(1.0, 3);
        let prec = EvalPrecision::with_rel_tol(1e-9).unwrap();
        let m = triple_law_marginal_u(0.4, 1.0, &q, &prec).unwrap();
        let o = overshoot_density(0.4, 1.0, &q).unwrap();
        assert!(((m - o) / o).abs() < 1e-6, "{m} vs {o}");
    }

    #[test]
    fn radial_triple_matches_change_of_variables() {
        let q = p(1.0, 3);
        let (x, z, w, th) = (0.4_f64, 0.7_f64, 0.5_f64, 1.6_f64);
        let r = triple_law_radial(z, w, th, x, &q).unwrap();
        let direct = triple_law_first_passage(th.ln(), -w.ln(), -z.ln(), -x.ln(), &q).unwrap() / (th * w * z);
        assert_eq!(r, direct);
    }

    #[test]
    fn jump_integral_matches_ladder_tail() {
        let q = p(1.0, 3);
        let prec = EvalPrecision::with_rel_tol(1e-10).unwrap();
        let k = Kernels::new(&q, &prec).unwrap();
        let opts = QuadOptions::from_precision(&prec);
        let ladder = LadderData::new(q).unwrap();
        let desc_const = 2.0 * (ln_gamma(1.5).unwrap() - ln_gamma(1.0).unwrap() - ln_gamma(0.5).unwrap()).exp();
        for &y in &[0.2, 1.0] {
            let numeric = quadruple_jump_factor(y, &k, &opts).unwrap();
            let closed = ladder.ladder_levy_tail_asc(y).unwrap() / (desc_const * k.prefactor);
            assert!(((numeric - closed) / closed).abs() < 1e-7, "y={y}: {numeric} vs {closed}");
        }
    }
}
