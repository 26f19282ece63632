//! Seeded Monte Carlo estimates of the absorption probability.
//!
//! Trial `i` draws from ChaCha8 keyed by the 64-bit seed (expanded with
//! `SeedableRng::seed_from_u64`) on stream `i`, so every trial has its own
//! reproducible substream and the estimate does not depend on execution
//! order or on the number of rayon workers.
//!
//! Walks that are not absorbed within `max_steps` are censored and counted
//! as not absorbed, so the point estimate is biased low whenever
//! `censored > 0`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::probability::StepProbability;

/// Default censoring horizon.
pub const DEFAULT_MAX_STEPS: u64 = 100_000;

/// Two-sided 95% normal quantile.
const Z_95: f64 = 1.959_963_984_540_054;

// Positions at least this far above the origin advance in blocks.
const BLOCK_MIN: u64 = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct WalkConfig {
    pub k: u32,
    pub p: StepProbability,
    pub max_steps: u64,
    pub trials: u64,
    pub seed: u64,
}

impl WalkConfig {
    pub fn new(k: u32, p: StepProbability, trials: u64, seed: u64) -> Self {
        WalkConfig { k, p, max_steps: DEFAULT_MAX_STEPS, trials, seed }
    }

    pub fn with_max_steps(mut self, max_steps: u64) -> Self {
        self.max_steps = max_steps;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::ZeroStart);
        }
        if self.max_steps < self.k as u64 {
            return Err(Error::Config(format!(
                "max_steps = {} cannot reach the origin from k = {}",
                self.max_steps, self.k
            )));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkOutcome {
    /// First passage to 0 at this step.
    Absorbed(u64),
    Censored,
}

impl WalkOutcome {
    pub fn is_absorbed(self) -> bool {
        matches!(self, WalkOutcome::Absorbed(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AbsorptionEstimate {
    pub trials: u64,
    pub absorbed: u64,
    pub censored: u64,
    pub point: f64,
    /// Wilson score 95% interval.
    pub ci_low: f64,
    pub ci_high: f64,
    pub is_lower_bound: bool,
}

/// Runs one walk from `k` until it reaches 0 or `max_steps` elapse.
///
/// Near the origin the walk takes single Bernoulli steps. From position
/// `x > BLOCK_MIN` the next `x - 1` steps cannot reach 0, so they are
/// replaced by one Binomial draw for the number of right steps; the law of
/// the absorption time is unchanged. The sequence of draws never depends on
/// `max_steps`, so the same stream absorbed under a horizon stays absorbed
/// under any longer one.
pub fn run_walk<R: Rng + ?Sized>(k: u32, p: f64, max_steps: u64, rng: &mut R) -> WalkOutcome {
    let mut pos = k as u64;
    let mut t = 0u64;
    if pos == 0 {
        return WalkOutcome::Absorbed(0);
    }
    loop {
        if pos > max_steps.saturating_sub(t) {
            return WalkOutcome::Censored;
        }
        let block = pos - 1;
        if block >= BLOCK_MIN {
            let rights = Binomial::new(block, p)
                .expect("p validated to [0, 1]")
                .sample(rng);
            pos = pos + 2 * rights - block;
            t += block;
        } else {
            t += 1;
            if rng.random_bool(p) {
                pos += 1;
            } else {
                pos -= 1;
                if pos == 0 {
                    return WalkOutcome::Absorbed(t);
                }
            }
        }
    }
}

/// RNG for trial `index` under `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Outcome of trial `index` for `config`, reproducible in isolation.
pub fn run_trial(config: &WalkConfig, index: u64) -> WalkOutcome {
    let mut rng = trial_rng(config.seed, index);
    run_walk(config.k, config.p.to_f64(), config.max_steps, &mut rng)
}

/// Runs `config.trials` independent walks on the global rayon pool.
pub fn estimate_absorption(config: &WalkConfig) -> Result<AbsorptionEstimate> {
    config.validate()?;
    let p = config.p.to_f64();
    let base = ChaCha8Rng::seed_from_u64(config.seed);
    let absorbed = (0..config.trials)
        .into_par_iter()
        .map_init(
            || base.clone(),
            |rng, i| {
                rng.set_stream(i);
                rng.set_word_pos(0);
                run_walk(config.k, p, config.max_steps, rng).is_absorbed() as u64
            },
        )
        .sum::<u64>();
    Ok(summarize(config.trials, absorbed))
}

/// Same as [`estimate_absorption`] on a dedicated pool of `workers` threads.
pub fn estimate_absorption_with_workers(
    config: &WalkConfig,
    workers: usize,
) -> Result<AbsorptionEstimate> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    pool.install(|| estimate_absorption(config))
}

fn summarize(trials: u64, absorbed: u64) -> AbsorptionEstimate {
    let censored = trials - absorbed;
    let point = absorbed as f64 / trials as f64;
    let (lo, hi) = wilson_interval(absorbed, trials, Z_95);
    AbsorptionEstimate {
        trials,
        absorbed,
        censored,
        point,
        ci_low: lo,
        ci_high: hi,
        is_lower_bound: censored > 0,
    }
}

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let margin = z / denom * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    // at 0 or `trials` successes one end equals phat up to rounding
    ((center - margin).clamp(0.0, phat), (center + margin).clamp(phat, 1.0))
}
