//! Finite-shot sampling of control distributions, Wilson intervals and the
//! sequential discard monitor.
//!
//! Draws use ChaCha20 seeded with `seed_from_u64`; the multinomial is built
//! from sequential binomials in ascending bitstring order, so a record
//! depends only on `(dist, n_shots, seed)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::measures::ToleranceConfig;
use crate::num::Real;
use crate::swaptest::{BitOrder, ControlDistribution};

/// Name of the generator behind every draw.
pub const PRNG: &str = "ChaCha20 (rand_chacha, seed_from_u64)";

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959963984540054;
/// One-sided 95% normal quantile.
pub const Z_95_ONE_SIDED: f64 = 1.6448536269514722;

/// Outcome counts indexed by group mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotRecord {
    m: usize,
    counts: Vec<u64>,
    n_shots: u64,
    seed: u64,
}

impl ShotRecord {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, mask: usize) -> u64 {
        self.counts[mask]
    }

    pub fn n_shots(&self) -> u64 {
        self.n_shots
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `(bitstring, count)` in ascending mask order.
    pub fn entries(&self, order: BitOrder) -> Vec<(String, u64)> {
        self.counts.iter().enumerate().map(|(mask, &k)| (order.render(mask, self.m), k)).collect()
    }

    pub fn frequency(&self, mask: usize) -> f64 {
        self.counts[mask] as f64 / self.n_shots as f64
    }

    /// Empirical control distribution.
    pub fn to_distribution(&self) -> Result<ControlDistribution<f64>> {
        ControlDistribution::from_probs(self.m, (0..self.counts.len()).map(|i| self.frequency(i)).collect())
    }
}

fn draw<R: Rng>(probs: &[f64], n_shots: u64, rng: &mut R) -> Vec<u64> {
    let mut counts = vec![0u64; probs.len()];
    let mut left = n_shots;
    let mut mass = 1.0f64;
    for (i, &p) in probs.iter().enumerate() {
        if left == 0 {
            break;
        }
        if i + 1 == probs.len() || mass <= 0.0 {
            counts[i] = left;
            break;
        }
        let q = (p / mass).clamp(0.0, 1.0);
        let k = Binomial::new(left, q).expect("probability in [0, 1]").sample(rng);
        counts[i] = k;
        left -= k;
        mass -= p;
    }
    counts
}

/// Multinomial draw of `n_shots` outcomes.
pub fn sample<T: Real>(dist: &ControlDistribution<T>, n_shots: u64, seed: u64) -> Result<ShotRecord> {
    if n_shots == 0 {
        return Err(Error::InvalidParameter("need at least one shot".into()));
    }
    let probs: Vec<f64> = dist.probs().iter().map(|p| p.to_f64_lossy()).collect();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let counts = draw(&probs, n_shots, &mut rng);
    Ok(ShotRecord { m: dist.m(), counts, n_shots, seed })
}

/// Wilson score interval for `k` successes in `n` trials at normal quantile `z`.
pub fn wilson(k: u64, n: u64, z: f64) -> (f64, f64) {
    let (lo_exact, hi_exact) = (k == 0, k == n);
    let (k, n) = (k as f64, n as f64);
    let p = k / n;
    let z2 = z * z;
    let den = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / den;
    let half = z / den * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    let lo = if lo_exact { 0.0 } else { (centre - half).max(0.0) };
    let hi = if hi_exact { 1.0 } else { (centre + half).min(1.0) };
    (lo, hi)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mask: usize,
    pub point: f64,
    pub lower: f64,
    pub upper: f64,
}

/// Point estimate and 95% Wilson interval for every bitstring.
pub fn estimate(record: &ShotRecord) -> Vec<Estimate> {
    (0..record.counts.len())
        .map(|mask| {
            let (lower, upper) = wilson(record.counts[mask], record.n_shots, Z_95);
            Estimate { mask, point: record.frequency(mask), lower, upper }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonitorState {
    Accepting,
    Violated,
}

/// Streams control outcomes and discards the input pair once the odd-parity
/// rate is confidently above the tolerance bound.
///
/// The CE estimate `1 - f(0...0)` is refreshed after every outcome, and a
/// violation needs the one-sided 95% Wilson lower bound on `P(odd)` to exceed
/// `(CE / R) T`. Nothing is declared before `min_steps` outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct SequentialMonitor {
    config: ToleranceConfig<f64>,
    m: usize,
    min_steps: u64,
    steps: u64,
    zeros: u64,
    odd: u64,
    state: MonitorState,
}

/// Default warm-up before any decision.
pub const DEFAULT_MIN_STEPS: u64 = 10;

impl SequentialMonitor {
    pub fn new(config: ToleranceConfig<f64>, m: usize) -> Result<Self> {
        if m == 0 || m > 24 {
            return Err(Error::InvalidParameter(format!("{m} controls")));
        }
        Ok(Self { config, m, min_steps: DEFAULT_MIN_STEPS, steps: 0, zeros: 0, odd: 0, state: MonitorState::Accepting })
    }

    pub fn with_min_steps(mut self, min_steps: u64) -> Self {
        self.min_steps = min_steps;
        self
    }

    pub fn step(&mut self, outcome: usize) -> Result<MonitorState> {
        if self.state == MonitorState::Violated {
            return Err(Error::MonitorViolated);
        }
        if outcome >> self.m != 0 {
            return Err(Error::InvalidParameter(format!("outcome {outcome} has more than {} bits", self.m)));
        }
        self.steps += 1;
        if outcome == 0 {
            self.zeros += 1;
        }
        if outcome.count_ones() % 2 == 1 {
            self.odd += 1;
        }
        if self.steps >= self.min_steps && self.odd_lower_bound() > self.bound() {
            self.state = MonitorState::Violated;
        }
        Ok(self.state)
    }

    pub fn state(&self) -> MonitorState {
        self.state
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn odd_count(&self) -> u64 {
        self.odd
    }

    pub fn ce_estimate(&self) -> f64 {
        if self.steps == 0 {
            0.0
        } else {
            1.0 - self.zeros as f64 / self.steps as f64
        }
    }

    pub fn bound(&self) -> f64 {
        self.config.bound(self.ce_estimate())
    }

    pub fn odd_lower_bound(&self) -> f64 {
        if self.steps == 0 {
            0.0
        } else {
            wilson(self.odd, self.steps, Z_95_ONE_SIDED).0
        }
    }

    /// State copies consumed: one of each input per outcome.
    pub fn copies_used(&self) -> u64 {
        2 * self.steps
    }

    /// Control qubits consumed, one per group per outcome.
    pub fn ancillas_used(&self) -> u64 {
        self.m as u64 * self.steps
    }
}

/// Runs a monitor on a seeded stream drawn from `dist` until it declares a
/// violation or `max_steps` outcomes pass. Returns the monitor.
pub fn monitor_stream<T: Real>(
    dist: &ControlDistribution<T>,
    config: ToleranceConfig<f64>,
    max_steps: u64,
    seed: u64,
) -> Result<SequentialMonitor> {
    let mut mon = SequentialMonitor::new(config, dist.m())?;
    let probs: Vec<f64> = dist.probs().iter().map(|p| p.to_f64_lossy()).collect();
    let mut cdf = Vec::with_capacity(probs.len());
    let mut acc = 0.0;
    for p in &probs {
        acc += p;
        cdf.push(acc);
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    for _ in 0..max_steps {
        let u: f64 = rng.random::<f64>() * acc;
        // first index whose cdf exceeds u, so zero-probability outcomes never come up
        let i = cdf.partition_point(|&c| c <= u).min(probs.len() - 1);
        if mon.step(i)? == MonitorState::Violated {
            break;
        }
    }
    Ok(mon)
}

#[cfg(test)]
mod tests;
