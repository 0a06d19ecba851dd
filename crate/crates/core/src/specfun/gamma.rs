use std::f64::consts::PI;

use num_complex::Complex64;

use super::is_nonpositive_integer;
use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;

#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

fn lanczos_series(x: f64) -> f64 {
    LANCZOS_COEFFS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS_COEFFS[0], |acc, (i, c)| acc + c / (x + (i + 1) as f64))
}

fn lanczos_series_complex(z: Complex64) -> Complex64 {
    LANCZOS_COEFFS[1..]
        .iter()
        .enumerate()
        .fold(Complex64::new(LANCZOS_COEFFS[0], 0.0), |acc, (i, c)| {
            acc + *c / (z + (i + 1) as f64)
        })
}

/// `ln |Γ(x)|` for real `x`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    if x.is_nan() {
        return Err(Error::Domain("ln_gamma of NaN".into()));
    }
    if x < 0.5 {
        let s = (PI * x).sin().abs();
        return Ok(PI.ln() - s.ln() - ln_gamma(1.0 - x)?);
    }
    let x = x - 1.0;
    let t = x + LANCZOS_G + 0.5;
    Ok(HALF_LN_TWO_PI + (x + 0.5) * t.ln() - t + lanczos_series(x).ln())
}

/// `Γ(x)` for real `x`.
pub fn gamma(x: f64) -> Result<f64> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    let value = if x < 0.5 {
        PI / ((PI * x).sin() * gamma(1.0 - x)?)
    } else {
        let xm = x - 1.0;
        let t = xm + LANCZOS_G + 0.5;
        // split the power so t^(x+1/2) does not overflow before e^{-t} tames it
        let half = t.powf(0.5 * (xm + 0.5));
        (2.0 * PI).sqrt() * half * (half * (-t).exp()) * lanczos_series(xm)
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow("gamma"))
    }
}

/// Sign of `Γ(x)` away from poles.
fn gamma_sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else {
        // Γ alternates sign between consecutive negative integers
        if (x.floor() as i64).rem_euclid(2) == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// `∏Γ(num_i) / ∏Γ(den_j)` evaluated in log space.
///
/// A pole in the denominator makes the ratio vanish; a pole in the numerator
/// is an error.
pub fn gamma_ratio(num: &[f64], den: &[f64]) -> Result<f64> {
    if den.iter().any(|&x| is_nonpositive_integer(x)) {
        if let Some(&p) = num.iter().find(|&&x| is_nonpositive_integer(x)) {
            return Err(Error::Pole(p));
        }
        return Ok(0.0);
    }
    let mut log = 0.0;
    let mut sign = 1.0;
    for &x in num {
        log += ln_gamma(x)?;
        sign *= gamma_sign(x);
    }
    for &x in den {
        log -= ln_gamma(x)?;
        sign *= gamma_sign(x);
    }
    let value = sign * log.exp();
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow("gamma ratio"))
    }
}

/// Pochhammer symbol `(z)_a = Γ(z+a)/Γ(z)`.
pub fn pochhammer(z: f64, a: f64) -> Result<f64> {
    if a == 0.0 && !is_nonpositive_integer(z) {
        return Ok(1.0);
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(z));
    }
    if is_nonpositive_integer(z + a) {
        return Err(Error::Pole(z + a));
    }
    gamma_ratio(&[z + a], &[z])
}

/// `ln B(p, q)` for positive arguments.
pub fn ln_beta(p: f64, q: f64) -> Result<f64> {
    Ok(ln_gamma(p)? + ln_gamma(q)? - ln_gamma(p + q)?)
}

fn is_complex_pole(z: Complex64) -> bool {
    z.im == 0.0 && is_nonpositive_integer(z.re)
}

/// `Γ(z)` for complex `z` (Lanczos with reflection for `Re z < 1/2`).
pub fn complex_gamma(z: Complex64) -> Result<Complex64> {
    if is_complex_pole(z) {
        return Err(Error::Pole(z.re));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("complex_gamma of non-finite {z}")));
    }
    let value = if z.re < 0.5 {
        let s = (z * PI).sin();
        Complex64::new(PI, 0.0) / (s * complex_gamma(Complex64::new(1.0, 0.0) - z)?)
    } else {
        let zm = z - 1.0;
        let t = zm + (LANCZOS_G + 0.5);
        let power = ((zm + 0.5) * t.ln() - t).exp();
        power * (2.0 * PI).sqrt() * lanczos_series_complex(zm)
    };
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow("complex_gamma"))
    }
}

/// `ln Γ(z)` for complex `z`; the imaginary part is only defined modulo `2π`.
///
/// Use this when `|Im z|` is large enough for `Γ` itself to underflow.
pub fn complex_ln_gamma(z: Complex64) -> Result<Complex64> {
    if is_complex_pole(z) {
        return Err(Error::Pole(z.re));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("complex_ln_gamma of non-finite {z}")));
    }
    if z.im < 0.0 {
        return Ok(complex_ln_gamma(z.conj())?.conj());
    }
    if z.re < 0.5 {
        let one = Complex64::new(1.0, 0.0);
        return Ok(Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - complex_ln_gamma(one - z)?);
    }
    let zm = z - 1.0;
    let t = zm + (LANCZOS_G + 0.5);
    Ok((zm + 0.5) * t.ln() - t + HALF_LN_TWO_PI + lanczos_series_complex(zm).ln())
}

/// `ln sin(πz)` for `Im z ≥ 0`, written so that large imaginary parts do not overflow.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let e = (i * z * (2.0 * PI)).exp();
    -i * z * PI + Complex64::new(0.0, 0.5).ln() + (Complex64::new(1.0, 0.0) - e).ln()
}
