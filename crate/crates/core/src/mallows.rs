//! Mallows sampling by repeated insertion.
//!
//! The `i`-th candidate of the central ranking is inserted into the ranking
//! built so far so that it lands ahead of `t` of the `i - 1` candidates already
//! placed with probability proportional to `φ^t`, `φ = e^{-θ}`. Each `t`
//! adds exactly `t` inversions with respect to the central ranking, so the
//! product of the insertion probabilities is the Mallows mass.
//!
//! Draw `index` uses ChaCha8 stream `index` of `seed`, so a sample does not
//! depend on which other samples were drawn.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Profile, Ranking};

#[derive(Clone, Debug, PartialEq)]
pub struct MallowsConfig {
    central: Ranking,
    theta: f64,
    seed: u64,
}

impl MallowsConfig {
    pub fn new(central: Ranking, theta: f64, seed: u64) -> Result<Self> {
        if !(theta.is_finite() && theta > 0.0) {
            return Err(Error::Invalid("theta must be positive".into()));
        }
        if central.is_empty() {
            return Err(Error::Invalid("central ranking must not be empty".into()));
        }
        Ok(MallowsConfig {
            central,
            theta,
            seed,
        })
    }

    /// Identity central ranking over `m` candidates.
    pub fn identity(m: usize, theta: f64, seed: u64) -> Result<Self> {
        MallowsConfig::new(Ranking::identity(m), theta, seed)
    }

    pub fn central(&self) -> &Ranking {
        &self.central
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

pub fn sample_ranking(cfg: &MallowsConfig, index: u64) -> Ranking {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index);
    let phi = (-cfg.theta).exp();
    let central = cfg.central.order();
    let mut order: Vec<usize> = Vec::with_capacity(central.len());
    let mut weights: Vec<f64> = Vec::with_capacity(central.len());
    for (i, &c) in central.iter().enumerate() {
        // weights[t] = φ^t for t inversions, t = 0..=i
        weights.push(if i == 0 { 1.0 } else { weights[i - 1] * phi });
        let total: f64 = weights.iter().sum();
        let mut u = rng.gen::<f64>() * total;
        let mut t = 0;
        while t < i && u >= weights[t] {
            u -= weights[t];
            t += 1;
        }
        order.insert(i - t, c);
    }
    Ranking::from_order_unchecked(order)
}

/// `n` draws on streams `0..n`.
pub fn sample_profile(cfg: &MallowsConfig, n: usize) -> Result<Profile> {
    if n == 0 {
        return Err(Error::Invalid("a profile needs at least one vote".into()));
    }
    let votes = (0..n as u64).map(|i| sample_ranking(cfg, i)).collect();
    Profile::new(cfg.central.len(), votes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::kt_distance;

    #[test]
    fn rejects_non_positive_theta() {
        for theta in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            let err = MallowsConfig::identity(3, theta, 1).unwrap_err();
            assert_eq!(err.to_string(), "theta must be positive");
        }
    }

    #[test]
    fn single_candidate() {
        let cfg = MallowsConfig::identity(1, 1.0, 9).unwrap();
        assert_eq!(sample_ranking(&cfg, 0).order(), &[0]);
    }

    #[test]
    fn draws_are_deterministic_per_index() {
        let cfg = MallowsConfig::identity(8, 0.7, 42).unwrap();
        let later = sample_ranking(&cfg, 5);
        let _ = sample_ranking(&cfg, 0);
        assert_eq!(sample_ranking(&cfg, 5), later);
        assert_eq!(sample_profile(&cfg, 20).unwrap(), sample_profile(&cfg, 20).unwrap());
    }

    #[test]
    fn samples_are_permutations() {
        let cfg = MallowsConfig::new(Ranking::new(vec![3, 1, 0, 2, 4]).unwrap(), 0.3, 2).unwrap();
        for i in 0..500 {
            let r = sample_ranking(&cfg, i);
            assert!(Ranking::new(r.order().to_vec()).is_ok());
        }
    }

    #[test]
    fn two_candidates_follow_closed_form() {
        let theta = 1.0f64;
        let cfg = MallowsConfig::identity(2, theta, 3).unwrap();
        let trials = 100_000u64;
        let hits = (0..trials)
            .filter(|&i| sample_ranking(&cfg, i).order() == [0, 1])
            .count() as f64;
        let p = 1.0 / (1.0 + (-theta).exp());
        let se = (p * (1.0 - p) / trials as f64).sqrt();
        assert!((hits / trials as f64 - p).abs() < 3.0 * se);
    }

    #[test]
    fn large_theta_stays_at_center() {
        let cfg = MallowsConfig::identity(10, 8.0, 1).unwrap();
        let center = Ranking::identity(10);
        let total: u64 = (0..200)
            .map(|i| kt_distance(&sample_ranking(&cfg, i), &center).unwrap())
            .sum();
        assert!(total <= 2, "{total}");
    }
}
