use std::f64::consts::LN_2;

use hypstable::passage::*;
use hypstable::{Error, EvalPrecision, ProcessParams};

fn p(a: f64, d: u32) -> ProcessParams {
    ProcessParams::new(a, d).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

// reference values below are from mpmath at 30 digits

#[test]
fn exit_density_examples() {
    let q = p(1.0, 3);
    assert!(rel(overshoot_density(0.3, 0.5, &q).unwrap(), 0.699_445_024_473_868_1) < 1e-13);
    assert!(rel(undershoot_density(0.5, -1.0, &q).unwrap(), 0.023_662_052_353_724_195) < 1e-13);
    let b = blumenthal_exit_density(&[0.5, 0.0], &[2.0, 0.0], &p(1.0, 2)).unwrap();
    assert!(rel(b, 0.022_515_818_587_186_17) < 1e-13);
}

#[test]
fn overshoot_mass_is_one() {
    let prec = EvalPrecision::default();
    for &(a, d) in &[(0.5, 1), (1.0, 2)] {
        assert!((overshoot_mass(1.0, &p(a, d), &prec).unwrap() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn undershoot_mass_matches_infimum() {
    let q = p(1.5, 3);
    let prec = EvalPrecision::default();
    let m = undershoot_mass(-0.5, &q, &prec).unwrap();
    assert!((m - (1.0 - infimum_cdf(0.5, &q).unwrap())).abs() < 1e-9);
}

#[test]
fn overshoot_cdf_is_monotone() {
    let q = p(1.0, 3);
    let mut cdf = overshoot_cdf_sweep(0.5, &q, &EvalPrecision::default()).unwrap();
    let mut last = 0.0;
    for i in 0..20 {
        let v = cdf.eval(0.25 * i as f64).unwrap();
        assert!(v >= last && v <= 1.0);
        last = v;
    }
}

#[test]
fn infimum_table() {
    let q = p(1.0, 3);
    let grid = Grid::parse("0:3:31").unwrap();
    let t = DistributionTable::tabulate(&grid, TableKind::Cdf, 1.0, |z| infimum_law(z, &q, TableKind::Cdf)).unwrap();
    assert_eq!(t.values[0], 0.0);
    assert!(t.values.windows(2).all(|w| w[1] >= w[0]));
}

#[test]
fn potential_density_examples() {
    let q = p(1.5, 3);
    assert!(rel(potential_density_u(1.0, 2.0, &q).unwrap(), 0.366_025_403_784_438_6) < 1e-12);
    assert!(rel(potential_density_u(1.0, 1.0, &q).unwrap(), std::f64::consts::SQRT_2) < 1e-12);
}

#[test]
fn hitting_examples() {
    assert!(rel(hit_point_prob(LN_2, &p(1.5, 2)).unwrap(), 0.861_962_045_907_803) < 1e-12);
    let q = p(1.5, 3);
    assert!(rel(hit_point_prob(-3.0, &q).unwrap(), 0.007_857_683_328_943_2) < 1e-11);
    assert!(matches!(hit_point_prob(0.0, &q), Err(Error::Domain(_))));
}

#[test]
fn hitting_far_above_tends_to_a_positive_limit() {
    // the limit is 2^{2−α}√π Γ((d+α)/2−1)/(Γ((α−1)/2)Γ(d/2)) = 1/√2 for α=1.5, d=3
    let q = p(1.5, 3);
    let v = hit_point_prob(30.0, &q).unwrap();
    assert!(rel(v, std::f64::consts::FRAC_1_SQRT_2) < 1e-8, "{v}");
}

#[test]
fn two_point_matrix_example() {
    let q = p(1.5, 3);
    let h = multi_point_hitting(&[1.0, 2.0], 1.5, &q).unwrap();
    assert!(rel(h.first_hit[0], 0.260_603_212_686_073_16) < 1e-10);
    assert!(rel(h.first_hit[1], 0.585_039_815_831_731_7) < 1e-10);
    assert!(rel(h.prob_any, 0.845_643_028_517_804_9) < 1e-10);
    let m = HittingMatrix::new(&[1.0, 2.0, 3.5], &q).unwrap();
    let id = &m.u * &m.k;
    for i in 0..3 {
        for j in 0..3 {
            let e = if i == j { 1.0 } else { 0.0 };
            assert!((id[(i, j)] - e).abs() < 1e-10);
        }
    }
}

#[test]
fn two_point_closed_form_matches_solve() {
    let q = p(1.5, 3);
    let t = two_point_hitting(-0.7, 0.4, &q).unwrap();
    let m = multi_point_hitting(&[(-0.7f64).exp(), 0.4f64.exp()], 1.0, &q).unwrap();
    assert!((t.first_v - m.first_hit[0]).abs() < 1e-10);
    assert!((t.first_u - m.first_hit[1]).abs() < 1e-10);
    assert!((t.prob_any - m.prob_any).abs() < 1e-10);
}

#[test]
fn tuple_laws_are_nonnegative_on_a_grid() {
    let q = p(1.0, 3);
    for i in 1..6 {
        for j in 0..5 {
            let (u, y) = (0.3 * i as f64, 0.2 * j as f64);
            assert!(triple_law_first_passage(u, y + 0.1 * i as f64, y, 1.0, &q).unwrap() >= 0.0);
            assert!(quadruple_law_last_passage(0.1 * i as f64, 0.1 * j as f64, 0.5 * y, 0.1 * j as f64 + 0.3, 0.5, &q).unwrap() >= 0.0);
        }
    }
}

#[test]
fn quadruple_v_marginal_is_infimum_density() {
    let q = p(1.0, 3);
    let prec = EvalPrecision::with_rel_tol(1e-9).unwrap();
    for &v in &[0.3, 2.0] {
        let m = quadruple_law_marginal_v(v, 0.5, &q, &prec).unwrap();
        assert!(rel(m, infimum_density(v, &q).unwrap()) < 1e-3);
    }
}

#[test]
fn quadruple_inner_integral_by_quadrature() {
    // the (u, w) integral of the kernel, numerically, times the normalising constants gives the ladder tail
    let q = p(1.0, 3);
    let prec = EvalPrecision::with_rel_tol(1e-10).unwrap();
    let ratio_at = |y: f64| quadruple_jump_integral(y, &q, &prec).unwrap() / hypstable::fluctuation::ladder_levy_tail_asc(y, &q).unwrap();
    assert!(rel(ratio_at(0.3), ratio_at(1.7)) < 1e-8);
}

#[test]
fn radial_quadruple_uses_the_same_kernel() {
    let q = p(1.0, 3);
    let (x, b) = (0.5_f64, 1.5_f64);
    let (v, y, w, u) = (3.0_f64, 1.0_f64, 2.5_f64, 2.0_f64);
    let r = quadruple_law_radial(v, y, w, u, x, b, &q).unwrap();
    let direct = quadruple_law_last_passage((x * v).ln(), (u / b).ln(), (b / y).ln(), (w / b).ln(), (b / x).ln(), &q)
        .unwrap()
        / (v * y * w * u);
    assert!(rel(r, direct) < 1e-14);
}

#[test]
fn potential_kernel_examples() {
    let q = p(1.0, 3);
    assert_eq!(potential_kernel_r(0.0, 1.0, 1.0, &q).unwrap(), 0.0);
    assert!(rel(potential_kernel_r(0.5, 2.0, 1.0, &q).unwrap(), 0.516_417_405_469_697_1) < 1e-9);
    assert!(rel(potential_kernel_r(1.0, 1.0, 1.0, &p(1.5, 3)).unwrap(), 0.983_937_698_494_118_3) < 1e-9);
    assert!(rel(expected_sigma_minus(2.0, 1.0, &q).unwrap(), 1.480_210_24) < 1e-8);
}
