//! Verification suites. Each returns a list of named checks.

use std::path::Path;

use hypstable::fluctuation::{char_exponent_closed, ladder_levy_tail_asc, vigon_tail_numeric};
use hypstable::passage::{
    hit_point_prob, infimum_cdf, infimum_density, multi_point_hitting, overshoot_cdf_sweep, overshoot_mass,
    potential_density_u, quadruple_law_mass, triple_law_marginal_u, two_point_hitting, undershoot_mass,
    overshoot_density,
};
use hypstable::quad::{integrate_gap, integrate_gap_tail, QuadOptions};
use hypstable::sim::{estimate_infimum, estimate_overshoot, ks_two_sample, sample_radial_at, sample_subordinator_increment, SimConfig};
use hypstable::{EvalPrecision, LevyCharacteristics, ProcessParams, Regime};
use rand::SeedableRng;

use crate::args::{Suite, VerifyArgs};
use crate::config::ConfigFile;
use crate::emit::{Check, Table};
use crate::{maybe_process_params, CliError};

fn pp(a: f64, d: u32) -> ProcessParams {
    ProcessParams::new(a, d).expect("built-in parameter pairs are valid")
}

/// Runs `f` and turns an evaluation error into a failed check.
fn guarded(name: &str, f: impl FnOnce() -> hypstable::Result<Check>) -> Check {
    f().unwrap_or_else(|e| Check::errored(name, &e.to_string()))
}

pub fn run(a: &VerifyArgs, config: &ConfigFile) -> Result<Vec<Check>, CliError> {
    let user = maybe_process_params(&a.process, config)?;
    let prec = config.precision()?;
    let quick = a.quick || config.get::<bool>("quick")?.unwrap_or(false);
    let seed: Option<u64> = config.pick(a.seed, "seed")?;
    let paths: Option<usize> = config.pick(a.paths, "paths")?;
    let dt: Option<f64> = config.pick(a.dt, "dt")?;
    let mut checks = Vec::new();
    let suites: &[Suite] = match a.suite {
        Suite::All => &[Suite::WienerHopf, Suite::Vigon, Suite::ExitLaws, Suite::Montecarlo],
        ref s => std::slice::from_ref(s),
    };
    if suites.contains(&Suite::Montecarlo) && seed.is_none() {
        return Err(CliError::Usage("Monte-Carlo verification requires --seed".into()));
    }
    for s in suites {
        match s {
            Suite::WienerHopf => checks.extend(wiener_hopf(user, quick, &prec, a.table.as_deref())?),
            Suite::Vigon => checks.extend(vigon(user, quick, &prec)?),
            Suite::ExitLaws => checks.extend(exit_laws(user, quick, &prec)?),
            Suite::Montecarlo => {
                let seed = seed.expect("checked above");
                checks.extend(montecarlo(user, quick, seed, paths, dt, &prec)?)
            }
            Suite::All => unreachable!(),
        }
    }
    Ok(checks)
}

fn tag(p: &ProcessParams) -> String {
    format!("alpha={} d={}", p.alpha(), p.dim())
}

pub fn wiener_hopf(
    user: Option<ProcessParams>,
    quick: bool,
    prec: &EvalPrecision,
    table_path: Option<&Path>,
) -> Result<Vec<Check>, CliError> {
    let pairs = match user {
        Some(p) => vec![p],
        None => vec![pp(0.5, 1), pp(1.0, 2), pp(1.5, 3), pp(0.8, 2), pp(1.0, 1)],
    };
    let lambdas: &[f64] = if quick { &[0.5, 2.0] } else { &[0.5, 1.0, 2.0, 4.0] };
    let mut checks = Vec::new();
    let mut table = Table::new(&["alpha", "dim", "lambda", "re_numeric", "im_numeric", "re_closed", "im_closed"]);
    for p in pairs {
        if p.regime() == Regime::CauchyBoundary {
            for &l in &[0.5, 1.0, 2.0, 5.0] {
                let name = format!("Cauchy closed exponent lambda={l}");
                checks.push(guarded(&name, || {
                    let c = char_exponent_closed(l, &p)?;
                    Ok(Check::relative(&name, l * (0.5 * std::f64::consts::PI * l).tanh(), c.norm(), 1e-10))
                }));
            }
        }
        let chars = LevyCharacteristics::new(p, *prec)?;
        let mut ratios = Vec::new();
        for &l in lambdas {
            let name = format!("numeric vs closed exponent {} lambda={l}", tag(&p));
            let r = (|| -> hypstable::Result<_> {
                let n = chars.char_exponent(l)?.value;
                let c = char_exponent_closed(l, &p)?;
                table.push(vec![p.alpha(), f64::from(p.dim()), l, n.re, n.im, c.re, c.im]);
                Ok((n / c, c))
            })();
            match r {
                Ok((ratio, _)) => {
                    checks.push(Check::absolute(format!("{name} imaginary ratio"), 0.0, ratio.im, 1e-6));
                    ratios.push(ratio.re);
                }
                Err(e) => checks.push(Check::errored(&name, &e.to_string())),
            }
        }
        if !ratios.is_empty() {
            let n = ratios.len() as f64;
            let mean = ratios.iter().sum::<f64>() / n;
            let sd = (ratios.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / n).sqrt();
            checks.push(Check::at_most(format!("exponent ratio coefficient of variation {}", tag(&p)), sd / mean.abs(), 1e-4));
            checks.push(Check::relative(format!("exponent ratio equals one {}", tag(&p)), 1.0, mean, 1e-6));
        }
    }
    if let Some(path) = table_path {
        crate::emit::write_output(Some(path), &table.to_csv()?)?;
    }
    Ok(checks)
}

pub fn vigon(user: Option<ProcessParams>, quick: bool, prec: &EvalPrecision) -> Result<Vec<Check>, CliError> {
    let pairs = match user {
        Some(p) => {
            p.require_transient()?;
            vec![p]
        }
        None => vec![pp(1.0, 3), pp(0.5, 2)],
    };
    let rs: &[f64] = if quick { &[0.5, 1.0] } else { &[0.1, 0.5, 1.0, 2.0] };
    let mut checks = Vec::new();
    for p in pairs {
        let chars = LevyCharacteristics::new(p, *prec)?;
        for &r in rs {
            let name = format!("ladder tail: renewal-weighted Levy tail vs closed form {} r={r}", tag(&p));
            checks.push(guarded(&name, || {
                Ok(Check::relative(&name, ladder_levy_tail_asc(r, &p)?, vigon_tail_numeric(r, &chars)?, 1e-5))
            }));
        }
    }
    Ok(checks)
}

pub fn exit_laws(user: Option<ProcessParams>, quick: bool, prec: &EvalPrecision) -> Result<Vec<Check>, CliError> {
    let pairs = match user {
        Some(p) => {
            p.require_transient()?;
            vec![p]
        }
        None => vec![pp(0.5, 1), pp(1.0, 2), pp(1.5, 3)],
    };
    let opts = QuadOptions::from_precision(prec);
    let mut checks = Vec::new();
    for p in &pairs {
        let p = *p;
        let levels: &[f64] = if quick { &[1.0] } else { &[0.2, 1.0, 3.0] };
        for &u in levels {
            let name = format!("overshoot density mass {} u={u}", tag(&p));
            checks.push(guarded(&name, || Ok(Check::absolute(&name, 1.0, overshoot_mass(u, &p, prec)?, 1e-6))));
        }
        let levels: &[f64] = if quick { &[-1.0] } else { &[-0.5, -1.0, -2.0] };
        for &v in levels {
            let name = format!("undershoot mass equals infimum tail {} v={v}", tag(&p));
            checks.push(guarded(&name, || {
                Ok(Check::absolute(&name, 1.0 - infimum_cdf(-v, &p)?, undershoot_mass(v, &p, prec)?, 1e-6))
            }));
        }
        let name = format!("infimum density mass {}", tag(&p));
        let ha = 0.5 * p.alpha();
        checks.push(guarded(&name, || {
            let m = integrate_gap_tail(|z| if z == 0.0 { Ok(0.0) } else { infimum_density(z, &p) }, ha, 1.0, &opts)?;
            Ok(Check::absolute(&name, 1.0, m.value, 1e-8))
        }));
        let n = if quick { 10 } else { 50 };
        let mut worst: f64 = 0.0;
        let name = format!("infimum CDF: incomplete beta vs quadrature, {n}-point grid, {}", tag(&p));
        let r = (|| -> hypstable::Result<()> {
            for i in 1..=n {
                let z = 4.0 * i as f64 / n as f64;
                let q = integrate_gap(|g| if g == 0.0 { Ok(0.0) } else { infimum_density(g, &p) }, z, ha, &opts)?;
                worst = worst.max((q.value - infimum_cdf(z, &p)?).abs());
            }
            Ok(())
        })();
        checks.push(match r {
            Ok(()) => Check::at_most(&name, worst, 1e-10),
            Err(e) => Check::errored(&name, &e.to_string()),
        });
        checks.extend(hitting_checks(&p));
    }
    if user.is_none() {
        checks.extend(hitting_checks(&pp(1.5, 2)));
    }
    let tuple_params = match user {
        Some(p) => p,
        None => pp(1.0, 3),
    };
    let fine = EvalPrecision::with_rel_tol(1e-9).map_err(CliError::from)?;
    let us: &[f64] = if quick { &[0.4] } else { &[0.1, 0.4, 1.5] };
    for &u in us {
        let name = format!("triple law (v, y)-marginal equals overshoot density {} x=1 u={u}", tag(&tuple_params));
        checks.push(guarded(&name, || {
            Ok(Check::relative(
                &name,
                overshoot_density(u, 1.0, &tuple_params)?,
                triple_law_marginal_u(u, 1.0, &tuple_params, &fine)?,
                1e-4,
            ))
        }));
    }
    let name = format!("quadruple law total mass {} x=0.5", tag(&tuple_params));
    checks.push(guarded(&name, || Ok(Check::absolute(&name, 1.0, quadruple_law_mass(0.5, &tuple_params, &fine)?, 5e-3))));
    Ok(checks)
}

fn hitting_checks(p: &ProcessParams) -> Vec<Check> {
    if p.regime() != Regime::HitsPoints {
        return Vec::new();
    }
    let p = *p;
    let mut checks = Vec::new();
    for &y in &[-2.0, -1.0, -0.5, 0.5, 1.0, 2.0] {
        let name = format!("point hitting probability times u(e^y, e^y) equals u(1, e^y) {} y={y}", tag(&p));
        checks.push(guarded(&name, || {
            let ey: f64 = f64::exp(y);
            let lhs = hit_point_prob(y, &p)? * potential_density_u(ey, ey, &p)?;
            Ok(Check::relative(&name, potential_density_u(1.0, ey, &p)?, lhs, 1e-10))
        }));
        let name = format!("single-point port formula equals point hitting {} y={y}", tag(&p));
        checks.push(guarded(&name, || {
            let m = multi_point_hitting(&[y.exp()], 1.0, &p)?;
            Ok(Check::relative(&name, hit_point_prob(y, &p)?, m.prob_any, 1e-10))
        }));
    }
    for &(v, u) in &[(-1.0, 0.5), (-0.3, 2.0)] {
        let name = format!("two-point first-hit probabilities sum to any-hit {} v={v} u={u}", tag(&p));
        checks.push(guarded(&name, || {
            let t = two_point_hitting(v, u, &p)?;
            Ok(Check::absolute(&name, t.prob_any, t.first_u + t.first_v, 1e-12))
        }));
        let name = format!("two-point closed form equals matrix solve {} v={v} u={u}", tag(&p));
        checks.push(guarded(&name, || {
            let t = two_point_hitting(v, u, &p)?;
            let m = multi_point_hitting(&[v.exp(), u.exp()], 1.0, &p)?;
            Ok(Check::absolute(&name, t.first_v, m.first_hit[0], 1e-10))
        }));
    }
    checks
}

/// Two standard deviations of the KS statistic under the null hypothesis.
fn ks_noise_band(n: usize) -> f64 {
    0.52 / (n as f64).sqrt()
}

/// The 99% critical value of the one-sample KS statistic.
fn ks_critical(n: usize) -> f64 {
    1.63 / (n as f64).sqrt()
}

pub fn montecarlo(
    user: Option<ProcessParams>,
    quick: bool,
    seed: u64,
    paths: Option<usize>,
    dt: Option<f64>,
    prec: &EvalPrecision,
) -> Result<Vec<Check>, CliError> {
    let p = match user {
        Some(p) => {
            p.require_transient()?;
            p
        }
        None => pp(1.0, 3),
    };
    let n = paths.unwrap_or(if quick { 2000 } else { 10_000 });
    let dt = dt.unwrap_or(if quick { 2e-4 } else { 1e-4 });
    let tol = if quick { ks_critical(n) } else { 0.02 };
    let mut checks = Vec::new();

    let draws = if quick { 100_000 } else { 1_000_000 };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let values: Vec<f64> = (0..draws)
        .map(|_| (-sample_subordinator_increment(1.0, 0.5, &mut rng)).exp())
        .collect();
    let mean = values.iter().sum::<f64>() / draws as f64;
    let sd = (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (draws - 1) as f64).sqrt();
    checks.push(Check::absolute(
        "subordinator Laplace transform at lambda=1, index 1/2 (3 standard errors)",
        (-1f64).exp(),
        mean,
        3.0 * sd / (draws as f64).sqrt(),
    ));

    let scale_paths = if quick { 2000 } else { 10_000 };
    let b = 2.0;
    let mut unit = SimConfig::new(p, scale_paths, seed);
    unit.dt = dt;
    let mut scaled = unit;
    scaled.start_norm = b;
    scaled.seed = seed.wrapping_add(1);
    let r1 = sample_radial_at(&unit, 1.0, 4)?;
    let mut rb: Vec<f64> = sample_radial_at(&scaled, b.powf(p.alpha()), 4)?.into_iter().map(|r| r / b).collect();
    let mut r1s = r1;
    r1s.sort_by(f64::total_cmp);
    rb.sort_by(f64::total_cmp);
    let scale_tol = if quick { 1.63 * (2.0 / scale_paths as f64).sqrt() } else { 0.03 };
    checks.push(Check::at_most("self-similarity: radius law at b^alpha t scaled by b (two-sample KS)", ks_two_sample(&r1s, &rb)?, scale_tol));

    let mut cfg = SimConfig::new(p, n, seed);
    cfg.dt = dt;
    let level = 0.5;
    let over_ks = |c: &SimConfig| -> Result<(f64, f64), CliError> {
        let law = estimate_overshoot(c, level)?;
        let mut cdf = overshoot_cdf_sweep(level, &p, prec)?;
        let min = law.samples.first().copied().unwrap_or(f64::NAN);
        Ok((law.ks_statistic(|x| cdf.eval(x))?, min))
    };
    let (ks0, min) = over_ks(&cfg)?;
    checks.push(Check::at_most(format!("overshoot KS vs closed CDF {} u=0.5 n={n} dt={dt}", tag(&p)), ks0, tol));
    checks.push(Check {
        name: "overshoot samples strictly positive (no upward creeping)".into(),
        expected: 0.0,
        observed: min,
        tolerance: 0.0,
        metric: "lower-bound",
        passed: min > 0.0,
    });
    let inf = estimate_infimum(&cfg)?;
    let ks_inf = inf.ks_statistic(|z| infimum_cdf(z, &p))?;
    checks.push(Check::at_most(format!("infimum KS vs closed CDF {} n={n} dt={dt}", tag(&p)), ks_inf, tol));

    if !quick {
        let mut prev = ks0;
        let mut step = dt;
        for _ in 0..2 {
            step *= 0.5;
            let mut c = cfg;
            c.dt = step;
            let (ks, _) = over_ks(&c)?;
            checks.push(Check::at_most(
                format!("overshoot KS at dt={step} not above KS at dt={} plus noise band", 2.0 * step),
                ks,
                prev + ks_noise_band(n),
            ));
            prev = ks;
        }
    }
    Ok(checks)
}
