//! Empirical laws and the Kolmogorov–Smirnov distance.

use crate::error::{domain, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalLaw {
    pub samples: Vec<f64>,
    pub count: usize,
    /// Fraction of paths on which the event did not occur within the horizon.
    pub defect: f64,
}

impl EmpiricalLaw {
    pub fn new(mut samples: Vec<f64>, n_paths: usize) -> Result<Self> {
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(domain("empirical samples must be finite"));
        }
        if n_paths < samples.len() || n_paths == 0 {
            return Err(domain("path count must cover the samples"));
        }
        samples.sort_by(f64::total_cmp);
        let count = samples.len();
        Ok(Self {
            samples,
            count,
            defect: 1.0 - count as f64 / n_paths as f64,
        })
    }

    /// Empirical distribution function at `x`.
    pub fn ecdf(&self, x: f64) -> f64 {
        if self.count == 0 {
            return 0.0;
        }
        self.samples.partition_point(|s| *s <= x) as f64 / self.count as f64
    }

    /// `sup_x |F_n(x) − F(x)|`. The CDF is queried at the samples in increasing order.
    pub fn ks_statistic<F>(&self, cdf: F) -> Result<f64>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        ks_statistic(&self.samples, cdf)
    }
}

/// Kolmogorov–Smirnov statistic of sorted `samples` against `cdf`.
pub fn ks_statistic<F>(samples: &[f64], mut cdf: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if samples.is_empty() {
        return Err(domain("KS statistic needs at least one sample"));
    }
    if samples.windows(2).any(|w| w[1] < w[0]) {
        return Err(domain("KS samples must be sorted"));
    }
    let n = samples.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x)?;
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    Ok(d)
}

/// Two-sample KS statistic.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(domain("KS statistic needs nonempty samples"));
    }
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_ks() {
        let s: Vec<f64> = (0..100).map(|i| (i as f64 + 0.5) / 100.0).collect();
        let d = ks_statistic(&s, |x| Ok(x)).unwrap();
        assert!((d - 0.005).abs() < 1e-12);
    }

    #[test]
    fn defect_and_ecdf() {
        let law = EmpiricalLaw::new(vec![3.0, 1.0, 2.0], 4).unwrap();
        assert_eq!(law.samples, vec![1.0, 2.0, 3.0]);
        assert_eq!(law.defect, 0.25);
        assert_eq!(law.ecdf(2.0), 2.0 / 3.0);
        assert!(EmpiricalLaw::new(vec![f64::NAN], 1).is_err());
    }

    #[test]
    fn two_sample() {
        assert_eq!(ks_two_sample(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(ks_two_sample(&[1.0], &[2.0]).unwrap(), 1.0);
    }
}
