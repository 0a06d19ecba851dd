use hypstable::fluctuation::*;
use hypstable::specfun::gamma;
use hypstable::{EvalPrecision, ProcessParams};

fn p(a: f64, d: u32) -> ProcessParams {
    ProcessParams::new(a, d).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn ladder_exponents_at_zero() {
    let q = p(1.0, 3);
    assert_eq!(kappa_asc(0.0, &q).unwrap(), 0.0);
    // ξ drifts to +∞, so the descending ladder process is killed
    assert!(kappa_desc(0.0, &q).unwrap() > 0.0);
}

#[test]
fn renewal_densities_invert_exponents() {
    // ∫ e^{−λy} v̂(y) dy · κ̂(λ) = 1
    let q = p(1.0, 3);
    for &lambda in &[0.5, 2.0] {
        let lt = hypstable::quad::integrate_gap_tail(
            |y| if y == 0.0 { Ok(0.0) } else { Ok((-lambda * y).exp() * renewal_density_desc(y, &q)?) },
            0.5,
            1.0,
            &hypstable::quad::QuadOptions::default(),
        )
        .unwrap();
        assert!(rel(lt.value * kappa_desc(lambda, &q).unwrap(), 1.0) < 1e-9);
    }
}

#[test]
fn descending_renewal_example() {
    // α=1, d=3: v̂(1) = e^{−1}(e² − 1)^{−1/2} · 2Γ(3/2)/(Γ(1)Γ(1/2))
    let q = p(1.0, 3);
    let c = 2.0 * gamma(1.5).unwrap() / gamma(0.5).unwrap();
    let expected = c * (-1f64).exp() / (1f64.exp().powi(2) - 1.0).sqrt();
    assert!(rel(renewal_density_desc(1.0, &q).unwrap(), expected) < 1e-13);
}

#[test]
fn cauchy_closed_exponent() {
    let q = p(1.0, 1);
    let v = char_exponent_closed(2.0, &q).unwrap();
    assert!(rel(v.re, 2.0 * std::f64::consts::PI.tanh()) < 1e-12);
    assert!(v.im.abs() < 1e-12);
}

#[test]
fn vigon_forms_agree() {
    let chars = hypstable::LevyCharacteristics::new(p(0.5, 2), EvalPrecision::default()).unwrap();
    for &r in &[0.3, 1.5] {
        let closed = ladder_levy_tail_asc(r, &chars.params).unwrap();
        assert!(rel(vigon_tail_fubini(r, &chars).unwrap(), closed) < 1e-9);
    }
}

#[test]
fn regime_gate() {
    assert!(kappa_desc(1.0, &p(1.0, 1)).is_err());
}
