//! `simulate`: Monte-Carlo samples of a passage functional.

use hypstable::sim::{estimate_infimum, estimate_overshoot, SimConfig};

use crate::args::{SimMode, SimulateArgs};
use crate::config::ConfigFile;
use crate::emit::Table;
use crate::{process_params, CliError};

pub fn run(a: &SimulateArgs, config: &ConfigFile) -> Result<Table, CliError> {
    let params = process_params(&a.process, config)?;
    let seed = config
        .pick(a.seed, "seed")?
        .ok_or_else(|| CliError::Usage("--seed is required".into()))?;
    let mut sim = SimConfig::new(params, 10_000, seed);
    if let Some(n) = config.pick(a.paths, "paths")? {
        sim.n_paths = n;
    }
    if let Some(dt) = config.pick(a.dt, "dt")? {
        sim.dt = dt;
    }
    if let Some(t) = config.pick(a.tmax, "tmax")? {
        sim.t_max = t;
    }
    if let Some(x) = config.pick(a.start, "start")? {
        sim.start_norm = x;
    }
    let mode = match config.pick(a.mode.map(mode_name), "mode")?.as_deref() {
        Some("overshoot") => SimMode::Overshoot,
        Some("infimum") => SimMode::Infimum,
        Some(other) => return Err(CliError::Usage(format!("unknown mode {other:?}"))),
        None => return Err(CliError::Usage("--mode overshoot|infimum is required".into())),
    };
    let (law, level) = match mode {
        SimMode::Overshoot => {
            let u: f64 = config
                .pick(a.level, "level")?
                .ok_or_else(|| CliError::Usage("--level is required for the overshoot".into()))?;
            (estimate_overshoot(&sim, u)?, Some(u))
        }
        SimMode::Infimum => (estimate_infimum(&sim)?, None),
    };
    let mut t = Table::new(&["sample"]);
    t.comments.push(format!(
        "alpha={} dim={} paths={} dt={} tmax={} seed={} start={} mode={}{}",
        params.alpha(),
        params.dim(),
        sim.n_paths,
        sim.dt,
        sim.t_max,
        sim.seed,
        sim.start_norm,
        mode_name(mode),
        level.map(|u| format!(" level={u}")).unwrap_or_default()
    ));
    t.comments.push(format!("defect={}", law.defect));
    for s in law.samples {
        t.push(vec![s]);
    }
    Ok(t)
}

fn mode_name(m: SimMode) -> String {
    match m {
        SimMode::Overshoot => "overshoot".into(),
        SimMode::Infimum => "infimum".into(),
    }
}
