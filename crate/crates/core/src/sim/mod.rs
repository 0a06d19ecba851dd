//! Monte-Carlo simulation of the symmetric stable process as subordinated Brownian motion.
//!
//! Paths are advanced with a step `h = dt·R^α` in process time, so each step adds
//! `dt` to the Lamperti clock `∫ R_s^{−α} ds`. The horizon `t_max` is measured on that
//! clock, which is the time scale of `ξ`. Passage events are detected on the grid, so
//! the overshoot is biased upward by an amount that shrinks with `dt`.

mod empirical;
mod sampler;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::model::ProcessParams;

pub use empirical::{ks_statistic, ks_two_sample, EmpiricalLaw};
pub use sampler::{advance, sample_subordinator_increment};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub params: ProcessParams,
    pub n_paths: usize,
    /// Lamperti-clock increment per step.
    pub dt: f64,
    /// Horizon on the Lamperti clock.
    pub t_max: f64,
    pub seed: u64,
    pub start_norm: f64,
    /// A path stops once `R` exceeds this multiple of its running minimum.
    pub infimum_stop_ratio: f64,
}

impl SimConfig {
    pub fn new(params: ProcessParams, n_paths: usize, seed: u64) -> Self {
        Self {
            params,
            n_paths,
            dt: 1e-4,
            t_max: 50.0,
            seed,
            start_norm: 1.0,
            infimum_stop_ratio: 1e3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(domain(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(domain(format!("t_max must be positive, got {}", self.t_max)));
        }
        if self.n_paths == 0 {
            return Err(domain("at least one path is required"));
        }
        if !(self.start_norm > 0.0 && self.start_norm.is_finite()) {
            return Err(domain(format!("start_norm must be positive, got {}", self.start_norm)));
        }
        if !(self.infimum_stop_ratio > 1.0) {
            return Err(domain("infimum_stop_ratio must exceed 1"));
        }
        Ok(())
    }

    fn max_steps(&self) -> usize {
        (self.t_max / self.dt).ceil() as usize
    }

    fn rng(&self, path: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(path as u64);
        rng
    }
}

/// State of a single path.
struct Walker {
    z: Vec<f64>,
    r: f64,
    time: f64,
    clock: f64,
    alpha: f64,
    dt: f64,
    rng: ChaCha8Rng,
}

impl Walker {
    fn new(config: &SimConfig, path: usize) -> Self {
        let mut z = vec![0.0; config.params.dim() as usize];
        z[0] = config.start_norm;
        Self {
            z,
            r: config.start_norm,
            time: 0.0,
            clock: 0.0,
            alpha: config.params.alpha(),
            dt: config.dt,
            rng: config.rng(path),
        }
    }

    fn step(&mut self) {
        let h = self.dt * self.r.powf(self.alpha);
        advance(&mut self.z, h, self.alpha, &mut self.rng);
        self.time += h;
        self.clock += self.dt;
        self.r = self.z.iter().map(|v| v * v).sum::<f64>().sqrt();
    }
}

/// One recorded path.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSample {
    pub times: Vec<f64>,
    pub positions: Vec<Vec<f64>>,
    pub radial: Vec<f64>,
    pub lamperti_clock: Vec<f64>,
}

impl PathSample {
    /// `ξ = log(R/R₀)` at each recorded point, indexed by the Lamperti clock.
    pub fn xi(&self) -> Vec<f64> {
        let r0 = self.radial[0];
        self.radial.iter().map(|r| (r / r0).ln()).collect()
    }
}

/// Records full paths up to the horizon. Each path carries `t_max/dt + 1` points.
pub fn simulate_paths(config: &SimConfig) -> Result<impl Iterator<Item = PathSample> + '_> {
    config.params.require_transient()?;
    config.validate()?;
    let steps = config.max_steps();
    Ok((0..config.n_paths).map(move |i| {
        let mut w = Walker::new(config, i);
        let mut s = PathSample {
            times: Vec::with_capacity(steps + 1),
            positions: Vec::with_capacity(steps + 1),
            radial: Vec::with_capacity(steps + 1),
            lamperti_clock: Vec::with_capacity(steps + 1),
        };
        for k in 0..=steps {
            if k > 0 {
                w.step();
            }
            s.times.push(w.time);
            s.positions.push(w.z.clone());
            s.radial.push(w.r);
            s.lamperti_clock.push(w.clock);
        }
        s
    }))
}

/// `‖Z_t‖` for each path, simulated with `n_steps` equal steps in process time.
pub fn sample_radial_at(config: &SimConfig, t: f64, n_steps: usize) -> Result<Vec<f64>> {
    config.validate()?;
    if !(t > 0.0) || n_steps == 0 {
        return Err(domain("observation time and step count must be positive"));
    }
    let h = t / n_steps as f64;
    let alpha = config.params.alpha();
    Ok((0..config.n_paths)
        .into_par_iter()
        .map(|i| {
            let mut w = Walker::new(config, i);
            for _ in 0..n_steps {
                advance(&mut w.z, h, alpha, &mut w.rng);
            }
            w.z.iter().map(|v| v * v).sum::<f64>().sqrt()
        })
        .collect())
}

/// Overshoot `log(R_{σ⁺}/R₀) − u` at the first grid time the radius exceeds `R₀e^u`.
pub fn estimate_overshoot(config: &SimConfig, u: f64) -> Result<EmpiricalLaw> {
    config.params.require_transient()?;
    config.validate()?;
    if !(u > 0.0) {
        return Err(domain(format!("overshoot level must be positive, got {u}")));
    }
    let steps = config.max_steps();
    let threshold = config.start_norm * u.exp();
    let samples: Vec<f64> = (0..config.n_paths)
        .into_par_iter()
        .filter_map(|i| {
            let mut w = Walker::new(config, i);
            for _ in 0..steps {
                w.step();
                if w.r > threshold {
                    return Some((w.r / config.start_norm).ln() - u);
                }
            }
            None
        })
        .collect();
    let law = EmpiricalLaw::new(samples, config.n_paths)?;
    if law.defect > 0.01 {
        log::warn!(
            "{:.2}% of paths did not pass level {u} within the horizon {}",
            100.0 * law.defect,
            config.t_max
        );
    }
    Ok(law)
}

/// `−log(inf_t R_t/R₀)` over the horizon.
///
/// A path stops early once its radius exceeds `infimum_stop_ratio` times its running minimum.
pub fn estimate_infimum(config: &SimConfig) -> Result<EmpiricalLaw> {
    config.params.require_transient()?;
    config.validate()?;
    let steps = config.max_steps();
    let results: Vec<(f64, bool)> = (0..config.n_paths)
        .into_par_iter()
        .map(|i| {
            let mut w = Walker::new(config, i);
            let mut min = w.r;
            let mut min_step = 0usize;
            for k in 1..=steps {
                w.step();
                if w.r < min {
                    min = w.r;
                    min_step = k;
                }
                if w.r > config.infimum_stop_ratio * min {
                    return ((config.start_norm / min).ln(), false);
                }
            }
            ((config.start_norm / min).ln(), 10 * min_step >= 9 * steps)
        })
        .collect();
    let late = results.iter().filter(|(_, late)| *late).count();
    if late * 20 > config.n_paths {
        log::warn!(
            "running infimum not stabilised: {late} of {} paths attained it in the last 10% of the horizon",
            config.n_paths
        );
    }
    EmpiricalLaw::new(results.into_iter().map(|(s, _)| s).collect(), config.n_paths)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize) -> SimConfig {
        let mut c = SimConfig::new(ProcessParams::new(1.0, 3).unwrap(), n, 11);
        c.dt = 1e-2;
        c.t_max = 5.0;
        c
    }

    #[test]
    fn paths_are_consistent() {
        let c = cfg(2);
        for p in simulate_paths(&c).unwrap() {
            for (z, r) in p.positions.iter().zip(&p.radial) {
                let n = z.iter().map(|v| v * v).sum::<f64>().sqrt();
                assert_eq!(n, *r);
            }
            assert!(p.lamperti_clock.windows(2).all(|w| w[1] >= w[0]));
            // each step adds h·R^{−α} = dt to the clock
            for k in 1..p.times.len() {
                let h = p.times[k] - p.times[k - 1];
                let dc = h * p.radial[k - 1].powf(-1.0);
                assert!((dc - (p.lamperti_clock[k] - p.lamperti_clock[k - 1])).abs() < 1e-9);
            }
            let xi = p.xi();
            assert!(xi[0] == 0.0);
        }
    }

    #[test]
    fn seeded_determinism() {
        let c = cfg(64);
        assert_eq!(estimate_overshoot(&c, 0.5).unwrap(), estimate_overshoot(&c, 0.5).unwrap());
        assert_eq!(estimate_infimum(&c).unwrap(), estimate_infimum(&c).unwrap());
    }

    #[test]
    fn samples_have_the_right_sign() {
        let c = cfg(64);
        let o = estimate_overshoot(&c, 0.5).unwrap();
        assert!(o.samples.iter().all(|s| *s > 0.0));
        let m = estimate_infimum(&c).unwrap();
        assert!(m.samples.iter().all(|s| *s >= 0.0));
    }

    #[test]
    fn rejects_bad_config() {
        let mut c = cfg(1);
        c.dt = 0.0;
        assert!(estimate_infimum(&c).is_err());
        let c = SimConfig::new(ProcessParams::new(1.0, 1).unwrap(), 4, 0);
        assert!(estimate_infimum(&c).is_err());
    }
}
