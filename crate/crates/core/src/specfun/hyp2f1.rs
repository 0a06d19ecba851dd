//! Gauss hypergeometric function on the real half-line `z < 1`.
//!
//! Small arguments use the power series. Negative arguments are mapped into
//! `(0, 1)` by Pfaff's transformation. Arguments close to 1 are reached by
//! Taylor-stepping the hypergeometric differential equation from `z_switch`,
//! halving the distance to the singular point at each step, so that the
//! local series always converges at ratio 1/2.

use super::{is_nonpositive_integer, EvalPrecision};
use crate::error::{domain, Error, Result};

/// `₂F₁(a, b; c; z)` at the default precision.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    hyp2f1_with(a, b, c, z, &EvalPrecision::default())
}

/// `₂F₁(a, b; c; z)` for `z < 1`.
pub fn hyp2f1_with(a: f64, b: f64, c: f64, z: f64, prec: &EvalPrecision) -> Result<f64> {
    hyp2f1_with_complement(a, b, c, z, 1.0 - z, prec)
}

/// Same as [`hyp2f1_with`] with `1 − z` supplied by the caller.
///
/// When `z` is close to 1 the caller can usually form `1 − z` far more
/// accurately than the subtraction would, and the function value near the
/// singular point depends on it to full relative precision.
pub fn hyp2f1_with_complement(
    a: f64,
    b: f64,
    c: f64,
    z: f64,
    one_minus_z: f64,
    prec: &EvalPrecision,
) -> Result<f64> {
    if ![a, b, c, z, one_minus_z].iter().all(|v| v.is_finite()) {
        return Err(domain("hyp2f1 arguments must be finite"));
    }
    if is_nonpositive_integer(c) {
        return Err(Error::Pole(c));
    }
    if z >= 1.0 || one_minus_z <= 0.0 {
        return Err(domain(format!("hyp2f1 requires z < 1, got {z}")));
    }
    if z == 0.0 || a == 0.0 || b == 0.0 {
        return Ok(1.0);
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        let degree = match (is_nonpositive_integer(a), is_nonpositive_integer(b)) {
            (true, true) => (-a).min(-b),
            (true, false) => -a,
            _ => -b,
        };
        return Ok(polynomial(a, b, c, z, degree as usize));
    }
    if z.abs() <= prec.z_switch {
        return series(a, b, c, z, prec);
    }
    if z < 0.0 {
        // Pfaff: the transformed argument z/(z−1) lies in (0, 1) with complement 1/(1−z)
        let w = z / (z - 1.0);
        let w_comp = 1.0 / one_minus_z;
        let (lead, other) = if is_nonpositive_integer(c - a) && !is_nonpositive_integer(c - b) {
            (b, c - a)
        } else {
            (a, c - b)
        };
        let scale = (-lead * one_minus_z.ln()).exp();
        let inner = hyp2f1_with_complement(lead, other, c, w, w_comp, prec)?;
        return finite(scale * inner);
    }
    continuation(a, b, c, one_minus_z, prec)
}

/// Both the series and the continuation converge geometrically, so running
/// them well past `rel_tol` is cheap and keeps the stepping error from piling up.
fn inner_tol(prec: &EvalPrecision) -> f64 {
    (1e-3 * prec.rel_tol).max(0.25 * f64::EPSILON)
}

fn finite(v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow("hyp2f1"))
    }
}

/// Terminating series when `a` or `b` is `−degree`.
fn polynomial(a: f64, b: f64, c: f64, z: f64, degree: usize) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..degree {
        let n = n as f64;
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        sum += term;
    }
    sum
}

fn series(a: f64, b: f64, c: f64, z: f64, prec: &EvalPrecision) -> Result<f64> {
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut largest = 1.0_f64;
    let mut quiet = 0;
    for n in 0..prec.max_terms {
        let nf = n as f64;
        let ratio = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        term *= ratio;
        sum += term;
        largest = largest.max(term.abs());
        let floor = inner_tol(prec) * sum.abs() + f64::EPSILON * largest;
        if term.abs() <= floor && ratio.abs() < 1.0 {
            quiet += 1;
            if quiet == 2 {
                return finite(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence {
        what: "hypergeometric series",
        terms: prec.max_terms,
    })
}

/// Value and derivative at `1 − q_start`, then Taylor steps toward `1 − q_target`.
fn continuation(a: f64, b: f64, c: f64, q_target: f64, prec: &EvalPrecision) -> Result<f64> {
    let z0 = prec.z_switch;
    let mut q = 1.0 - z0;
    let mut f = series(a, b, c, z0, prec)?;
    let mut df = a * b / c * series(a + 1.0, b + 1.0, c + 1.0, z0, prec)?;
    let step_tol = inner_tol(prec);
    while q > q_target {
        let q_next = (0.5 * q).max(q_target);
        let h = q - q_next;
        let (nf, ndf) = taylor_step(a, b, c, q, h, f, df, step_tol, prec.max_terms)?;
        f = nf;
        df = ndf;
        q = q_next;
    }
    finite(f)
}

/// One Taylor step of the hypergeometric ODE from `z = 1 − q` to `z + h`.
///
/// Works with the scaled coefficients `s_n = t_n hⁿ`, so the step returns
/// `Σ s_n` and `Σ n s_n / h`.
#[allow(clippy::too_many_arguments)]
fn taylor_step(
    a: f64,
    b: f64,
    c: f64,
    q: f64,
    h: f64,
    f: f64,
    df: f64,
    tol: f64,
    max_terms: usize,
) -> Result<(f64, f64)> {
    let p0 = (1.0 - q) * q;
    let p1 = 2.0 * q - 1.0;
    let q0c = c - (a + b + 1.0) * (1.0 - q);
    let mut s_prev = f;
    let mut s_curr = df * h;
    let mut value = s_prev + s_curr;
    let mut slope = s_curr;
    let mut quiet = 0;
    for n in 0..max_terms {
        let nf = n as f64;
        let s_next = ((nf + a) * (nf + b) * h * h * s_prev
            - (p1 * nf + q0c) * (nf + 1.0) * h * s_curr)
            / (p0 * (nf + 1.0) * (nf + 2.0));
        value += s_next;
        slope += (nf + 2.0) * s_next;
        let scale = value.abs().max(slope.abs() * h);
        if s_next.abs() * (nf + 2.0) <= tol * scale {
            quiet += 1;
            if quiet == 2 {
                return Ok((value, slope / h));
            }
        } else {
            quiet = 0;
        }
        s_prev = s_curr;
        s_curr = s_next;
    }
    Err(Error::NonConvergence {
        what: "hypergeometric continuation",
        terms: max_terms,
    })
}
