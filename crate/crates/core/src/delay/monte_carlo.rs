//! Sampling estimator of the expected delay.
//!
//! Each draw picks the location of a request with probability proportional
//! to its dwell rate and records that location's delay term. The sample mean
//! converges to the closed form. Draws are split over independent ChaCha
//! streams derived from one seed, so a given (seed, samples, streams) triple
//! always yields the same estimate regardless of thread scheduling.

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{DelayCase, LinkRates, SchemeLoads};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloConfig {
    pub samples: u64,
    pub seed: u64,
    /// Per-location sampling weights; the dwell probabilities when `None`.
    pub dwell_rates: Option<Vec<f64>>,
    /// Highest occurrence count kept in the Poisson series of each rate.
    pub truncation: u32,
    pub streams: usize,
}

impl Default for MonteCarloConfig {
    fn default() -> Self {
        MonteCarloConfig {
            samples: 1_000_000,
            seed: 0,
            dwell_rates: None,
            truncation: 20,
            streams: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarloEstimate {
    pub case: DelayCase,
    pub samples: u64,
    pub mean_minutes: f64,
    pub std_error: f64,
    /// Poisson mass up to the truncation for each dwell rate. It tends to 1,
    /// which leaves the dwell rates themselves as the only weighting.
    pub poisson_mass: Vec<f64>,
}

/// `sum_{k=0}^{kappa} e^-lambda lambda^k / k!`
pub fn poisson_mass(lambda: f64, kappa: u32) -> f64 {
    let mut term = (-lambda).exp();
    let mut total = term;
    for k in 1..=kappa {
        term *= lambda / f64::from(k);
        total += term;
    }
    total
}

#[derive(Clone, Copy, Default)]
struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, o: Moments) -> Moments {
        if self.n == 0 {
            return o;
        }
        if o.n == 0 {
            return self;
        }
        let n = self.n + o.n;
        let delta = o.mean - self.mean;
        Moments {
            n,
            mean: self.mean + delta * o.n as f64 / n as f64,
            m2: self.m2 + o.m2 + delta * delta * self.n as f64 * o.n as f64 / n as f64,
        }
    }
}

pub fn monte_carlo_delay(
    loads: &SchemeLoads,
    config: &MonteCarloConfig,
    rates: &LinkRates,
    case: DelayCase,
) -> Result<MonteCarloEstimate> {
    if config.samples == 0 {
        return Err(Error::invalid("samples", "must be > 0"));
    }
    if config.streams == 0 {
        return Err(Error::invalid("streams", "must be > 0"));
    }
    rates.check()?;
    let weights: Vec<f64> = match &config.dwell_rates {
        Some(w) => {
            if w.len() != loads.locations.len() {
                return Err(Error::invalid(
                    "dwell_rates",
                    format!(
                        "expected {} rates, got {}",
                        loads.locations.len(),
                        w.len()
                    ),
                ));
            }
            w.clone()
        }
        None => loads.locations.iter().map(|l| l.probability).collect(),
    };
    let index = WeightedIndex::new(&weights)
        .map_err(|e| Error::invalid("dwell_rates", e.to_string()))?;
    let terms: Vec<f64> = loads
        .locations
        .iter()
        .map(|l| l.load(case).minutes(rates))
        .collect();

    let streams = config.streams as u64;
    let base = config.samples / streams;
    let extra = config.samples % streams;
    let moments = (0..streams)
        .into_par_iter()
        .map(|i| {
            let n = base + u64::from(i < extra);
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(i);
            let mut m = Moments::default();
            for _ in 0..n {
                m.push(terms[index.sample(&mut rng)]);
            }
            m
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Moments::default(), Moments::merge);

    let variance = if moments.n > 1 {
        (moments.m2 / (moments.n - 1) as f64).max(0.0)
    } else {
        0.0
    };
    Ok(MonteCarloEstimate {
        case,
        samples: moments.n,
        mean_minutes: moments.mean,
        std_error: (variance / moments.n as f64).sqrt(),
        poisson_mass: weights
            .iter()
            .map(|&l| poisson_mass(l, config.truncation))
            .collect(),
    })
}
