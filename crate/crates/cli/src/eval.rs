//! `eval`: tabulate one law on a grid.

use hypstable::fluctuation::{char_exponent_closed, LadderData};
use hypstable::model::levy_density_with;
use hypstable::passage::{
    hit_point_prob_with, infimum_cdf, infimum_density, multi_point_hitting, overshoot_cdf_sweep, overshoot_density,
    potential_density_u_with, potential_kernel_r_with, undershoot_density, Grid, IncrementalCdf,
};
use hypstable::quad::QuadOptions;
use hypstable::{LevyCharacteristics, ProcessParams};

use crate::args::{EvalArgs, EvalTarget, KernelKind, LawKind};
use crate::config::ConfigFile;
use crate::emit::Table;
use crate::{process_params, CliError};

fn grid(a: &EvalArgs, config: &ConfigFile) -> Result<Vec<f64>, CliError> {
    let spec: String = config
        .pick(a.grid.clone(), "grid")?
        .ok_or_else(|| CliError::Usage("--grid lo:hi:n is required".into()))?;
    Ok(Grid::parse(&spec)?.points())
}

fn level(a: &EvalArgs, config: &ConfigFile) -> Result<f64, CliError> {
    config
        .pick(a.level, "level")?
        .ok_or_else(|| CliError::Usage("--level is required".into()))
}

pub fn run(a: &EvalArgs, config: &ConfigFile) -> Result<Table, CliError> {
    let params = process_params(&a.process, config)?;
    let prec = config.precision()?;
    let kind = a.kind.unwrap_or(LawKind::Density);
    let start: Option<f64> = config.pick(a.start, "start")?;
    match a.target {
        EvalTarget::LevyDensity => {
            let mut t = Table::new(&["y", "value"]);
            for y in grid(a, config)? {
                t.push(vec![y, levy_density_with(y, &params, &prec)?]);
            }
            Ok(t)
        }
        EvalTarget::Exponent => {
            let chars = LevyCharacteristics::new(params, prec)?;
            let mut t = Table::new(&["lambda", "re_numeric", "im_numeric", "re_closed", "im_closed"]);
            for l in grid(a, config)? {
                let n = chars.char_exponent(l)?.value;
                let c = char_exponent_closed(l, &params)?;
                t.push(vec![l, n.re, n.im, c.re, c.im]);
            }
            Ok(t)
        }
        EvalTarget::Overshoot => {
            let u = level(a, config)?;
            let points = grid(a, config)?;
            let mut t = Table::new(&["theta", "value"]);
            match kind {
                LawKind::Density => {
                    for th in points {
                        t.push(vec![th, overshoot_density(th, u, &params)?]);
                    }
                }
                LawKind::Cdf => {
                    let mut cdf = overshoot_cdf_sweep(u, &params, &prec)?;
                    for th in points {
                        t.push(vec![th, cdf.eval(th)?]);
                    }
                }
            }
            Ok(t)
        }
        EvalTarget::Undershoot => {
            let v = level(a, config)?;
            let points = grid(a, config)?;
            let mut t = Table::new(&["theta", "value"]);
            match kind {
                LawKind::Density => {
                    for th in points {
                        t.push(vec![th, undershoot_density(th, v, &params)?]);
                    }
                }
                LawKind::Cdf => {
                    undershoot_density(1.0, v, &params)?;
                    let mut cdf = IncrementalCdf::new(
                        |th| if th == 0.0 { Ok(0.0) } else { undershoot_density(th, v, &params) },
                        1.0 - 0.5 * params.alpha(),
                        QuadOptions::from_precision(&prec),
                    );
                    for th in points {
                        t.push(vec![th, cdf.eval(th)?]);
                    }
                }
            }
            Ok(t)
        }
        EvalTarget::Infimum => {
            let mut t = Table::new(&["z", "value"]);
            for z in grid(a, config)? {
                let v = match kind {
                    LawKind::Density => infimum_density(z, &params)?,
                    LawKind::Cdf => infimum_cdf(z, &params)?,
                };
                t.push(vec![z, v]);
            }
            Ok(t)
        }
        EvalTarget::Hitting => hitting(a, config, &params, start),
        EvalTarget::Potential => {
            let x = start.unwrap_or(1.0);
            match a.kernel.unwrap_or(KernelKind::Radial) {
                KernelKind::Radial => {
                    let mut t = Table::new(&["y", "value"]);
                    t.comments.push(format!("start={x}"));
                    for y in grid(a, config)? {
                        t.push(vec![y, potential_density_u_with(x, y, &params, &prec)?]);
                    }
                    Ok(t)
                }
                KernelKind::Killed => {
                    let k: f64 = config.pick(a.k, "k")?.unwrap_or(1.0);
                    let mut t = Table::new(&["u", "value", "k"]);
                    t.comments.push(format!("start={x} k={k}"));
                    for u in grid(a, config)? {
                        t.push(vec![u, potential_kernel_r_with(x, u, k, &params, &prec)?, k]);
                    }
                    Ok(t)
                }
            }
        }
        EvalTarget::Renewal => {
            let ladder = LadderData::new(params)?;
            let mut t = Table::new(&["y", "desc_density", "desc_cumulative", "asc_density"]);
            for y in grid(a, config)? {
                t.push(vec![
                    y,
                    ladder.renewal_density_desc(y)?,
                    ladder.renewal_cumulative_desc(y)?,
                    ladder.renewal_density_asc(y)?,
                ]);
            }
            Ok(t)
        }
    }
}

fn hitting(a: &EvalArgs, config: &ConfigFile, params: &ProcessParams, start: Option<f64>) -> Result<Table, CliError> {
    params.require_hits_points()?;
    let points: Option<String> = config.get("points")?;
    let points = match (&a.points, points) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(s)) => Some(
            s.split(',')
                .map(|c| c.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("bad point {c:?}"))))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        (None, None) => None,
    };
    match points {
        Some(points) => {
            let x = start.unwrap_or(1.0);
            let h = multi_point_hitting(&points, x, params)?;
            let mut t = Table::new(&["point", "first_hit_prob", "prob_any"]);
            t.comments.push(format!("start={x}"));
            for (r, p) in points.iter().zip(&h.first_hit) {
                t.push(vec![*r, *p, h.prob_any]);
            }
            Ok(t)
        }
        None => {
            let prec = config.precision()?;
            let mut t = Table::new(&["y", "value"]);
            for y in grid(a, config)? {
                t.push(vec![y, hit_point_prob_with(y, params, &prec)?]);
            }
            Ok(t)
        }
    }
}
