//! Increments of the stable subordinator and of the subordinated Brownian motion.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

/// Increment over time `dt` of the stable subordinator with `E e^{−λσ_dt} = e^{−dt·λ^β}`,
/// `β = alpha_half ∈ (0, 1)`, by Kanter's representation.
pub fn sample_subordinator_increment<R: Rng + ?Sized>(dt: f64, alpha_half: f64, rng: &mut R) -> f64 {
    debug_assert!(alpha_half > 0.0 && alpha_half < 1.0);
    let b = alpha_half;
    loop {
        let u = PI * rng.random::<f64>();
        let e: f64 = Exp1.sample(rng);
        if u == 0.0 || e == 0.0 {
            continue;
        }
        let a = (b * u).sin() / u.sin().powf(1.0 / b) * ((1.0 - b) * u).sin().powf((1.0 - b) / b);
        let x = a * e.powf(-(1.0 - b) / b);
        let s = dt.powf(1.0 / b) * x;
        if s > 0.0 && s.is_finite() {
            return s;
        }
    }
}

/// Adds one increment `N(0, 2σ·I)` of `B_{2σ}` to `z`, with `σ` a subordinator increment over `dt`.
pub fn advance<R: Rng + ?Sized>(z: &mut [f64], dt: f64, alpha: f64, rng: &mut R) {
    let sigma = sample_subordinator_increment(dt, 0.5 * alpha, rng);
    let sd = (2.0 * sigma).sqrt();
    for zi in z.iter_mut() {
        let n: f64 = StandardNormal.sample(rng);
        *zi += sd * n;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn laplace_transform() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 200_000;
        let mean: f64 = (0..n)
            .map(|_| (-sample_subordinator_increment(1.0, 0.5, &mut rng)).exp())
            .sum::<f64>()
            / n as f64;
        // the variance of e^{−σ} is below 1/4
        assert!((mean - (-1f64).exp()).abs() < 3.0 * 0.5 / (n as f64).sqrt());
    }

    #[test]
    fn self_similar_in_time() {
        let mut a = ChaCha8Rng::seed_from_u64(3);
        let mut b = ChaCha8Rng::seed_from_u64(3);
        let x = sample_subordinator_increment(1.0, 0.4, &mut a);
        let y = sample_subordinator_increment(0.5, 0.4, &mut b);
        assert!((y - 0.5f64.powf(2.5) * x).abs() < 1e-12 * x);
    }
}
