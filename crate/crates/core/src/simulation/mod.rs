//! Monte Carlo estimates of the stationary tandem workloads.
//!
//! Each replication owns a ChaCha8 stream selected by its index, so results
//! are reproducible and independent of the number of worker threads.
//! Confidence half-widths come from batch means: the post-burn-in part of
//! every replication is cut into equal batches and the spread of the batch
//! estimates gives a Student-t interval.

pub mod accumulators;
pub mod compound_poisson;
pub mod diffusive;
pub mod stable;

pub use accumulators::BatchMoments;
pub use compound_poisson::{CpEvent, CpPath};
pub use diffusive::GridState;
pub use stable::StableGenerator;

use crate::levy_models::{LevyModel, TandemParams};
use crate::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

/// Minimum number of batches for a confidence interval.
pub const MIN_BATCHES: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub seed: u64,
    pub replications: usize,
    /// Arrivals per replication (compound Poisson input).
    pub arrivals_per_replication: u64,
    /// Time horizon per replication (Brownian and α-stable input).
    pub horizon: f64,
    /// Grid step; `None` picks min(0.01, 0.01/ε).
    pub step: Option<f64>,
    pub burn_in: f64,
    pub xs: Vec<f64>,
    /// Total number of batches across all replications.
    pub batches: usize,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            replications: 1,
            arrivals_per_replication: 1_000_000,
            horizon: 10_000.0,
            step: None,
            burn_in: 0.1,
            xs: Vec::new(),
            batches: 30,
            threads: None,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::Config("at least one replication is required".into()));
        }
        if !(self.burn_in >= 0.0 && self.burn_in < 0.5) {
            return Err(Error::Config(format!("burn-in fraction must lie in [0, 0.5), got {}", self.burn_in)));
        }
        if let Some(step) = self.step {
            if !(step > 0.0 && step.is_finite()) {
                return Err(Error::Config(format!("grid step must be positive, got {step}")));
            }
        }
        if self.batches < MIN_BATCHES {
            return Err(Error::Config(format!(
                "need at least {MIN_BATCHES} batches for confidence intervals, got {}",
                self.batches
            )));
        }
        if self.xs.iter().any(|&x| !(x >= 0.0 && x.is_finite())) {
            return Err(Error::Config("tail grid must hold finite non-negative values".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::Config("thread count must be positive".into()));
        }
        Ok(())
    }

    fn batches_per_replication(&self) -> usize {
        self.batches.div_ceil(self.replications)
    }
}

/// A point estimate with its 95% confidence half-width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub half_width: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    /// (x, P(Q₂ > x)) estimates.
    pub tails: Vec<(f64, Estimate)>,
    pub mean_q1: Estimate,
    pub mean_q2: Estimate,
    pub cov: Estimate,
    pub corr: Estimate,
    /// Input work per unit time.
    pub input_rate: Estimate,
    pub seed: u64,
    pub replications: usize,
    pub batches: usize,
    /// Arrivals (compound Poisson) or grid steps (diffusive) after burn-in.
    pub samples: u64,
    /// Simulated time after burn-in.
    pub observed_time: f64,
}

/// Covariance and correlation with batch-means half-widths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationEstimate {
    pub cov: Estimate,
    pub corr: Estimate,
}

fn t_quantile(batches: usize) -> f64 {
    StudentsT::new(0.0, 1.0, (batches - 1) as f64)
        .expect("positive degrees of freedom")
        .inverse_cdf(0.975)
}

/// Pooled value and batch-means half-width for the functional `f`.
fn batch_estimate<F: Fn(&BatchMoments) -> f64>(pooled: &BatchMoments, batches: &[BatchMoments], f: F) -> Estimate {
    let n = batches.len();
    let values: Vec<f64> = batches.iter().map(&f).collect();
    let mean = values.iter().sum::<f64>() / n as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    Estimate { value: f(pooled), half_width: t_quantile(n) * (var / n as f64).sqrt() }
}

/// Batch-means covariance and correlation of (Q₁, Q₂).
pub fn estimate_correlation(batches: &[BatchMoments]) -> Result<CorrelationEstimate> {
    if batches.len() < MIN_BATCHES {
        return Err(Error::Config(format!(
            "need at least {MIN_BATCHES} batches, got {}",
            batches.len()
        )));
    }
    let pooled = pool(batches);
    Ok(CorrelationEstimate {
        cov: batch_estimate(&pooled, batches, BatchMoments::covariance),
        corr: batch_estimate(&pooled, batches, BatchMoments::correlation),
    })
}

/// Batch-means correlation of a stationary sequence of pairs, cut into
/// `batches` contiguous batches of equal size.
pub fn estimate_correlation_pairs(pairs: &[(f64, f64)], batches: usize) -> Result<CorrelationEstimate> {
    if batches < MIN_BATCHES {
        return Err(Error::Config(format!("need at least {MIN_BATCHES} batches, got {batches}")));
    }
    let per = pairs.len() / batches;
    if per < 2 {
        return Err(Error::Config(format!("{} pairs cannot fill {batches} batches", pairs.len())));
    }
    let moments: Vec<BatchMoments> = pairs
        .chunks_exact(per)
        .take(batches)
        .map(|chunk| {
            let mut b = BatchMoments::new(0);
            for &(a, c) in chunk {
                b.add_point(a, c, 1.0, &[]);
            }
            b
        })
        .collect();
    estimate_correlation(&moments)
}

fn pool(batches: &[BatchMoments]) -> BatchMoments {
    let mut pooled = BatchMoments::new(batches[0].exceed.len());
    for b in batches {
        pooled.absorb(b);
    }
    pooled
}

fn summarize(cfg: &SimConfig, batches: Vec<BatchMoments>, samples: u64) -> Result<SimResult> {
    let pooled = pool(&batches);
    if !(pooled.duration > 0.0) {
        return Err(Error::Config("no simulated time after burn-in".into()));
    }
    let corr = estimate_correlation(&batches)?;
    let tails = cfg
        .xs
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, batch_estimate(&pooled, &batches, |b| b.exceed[i] / b.duration)))
        .collect();
    Ok(SimResult {
        tails,
        mean_q1: batch_estimate(&pooled, &batches, BatchMoments::mean_q1),
        mean_q2: batch_estimate(&pooled, &batches, BatchMoments::mean_q2),
        cov: corr.cov,
        corr: corr.corr,
        input_rate: batch_estimate(&pooled, &batches, |b| b.input / b.duration),
        seed: cfg.seed,
        replications: cfg.replications,
        batches: batches.len(),
        samples,
        observed_time: pooled.duration,
    })
}

fn replication_rng(seed: u64, rep: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(rep as u64);
    rng
}

fn run_replications<F>(cfg: &SimConfig, run: F) -> Result<Vec<BatchMoments>>
where
    F: Fn(usize) -> Result<Vec<BatchMoments>> + Sync,
{
    let collect = || (0..cfg.replications).into_par_iter().map(&run).collect::<Result<Vec<_>>>();
    let per_rep = match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?
            .install(collect)?,
        None => collect()?,
    };
    Ok(per_rep.into_iter().flatten().collect())
}

/// Event-driven simulation for compound Poisson input.
pub fn simulate_tandem_cp(model: &LevyModel, params: &TandemParams, cfg: &SimConfig) -> Result<SimResult> {
    cfg.validate()?;
    let LevyModel::CompoundPoisson { lambda, job_law } = *model else {
        return Err(Error::Parameter("event-driven simulation needs compound Poisson input".into()));
    };
    check_params(model, params)?;
    let n = cfg.arrivals_per_replication;
    let burn = (cfg.burn_in * n as f64) as u64;
    let per_rep = cfg.batches_per_replication();
    let per_batch = (n - burn) / per_rep as u64;
    if per_batch == 0 {
        return Err(Error::Config(format!(
            "{n} arrivals leave nothing after burn-in for {per_rep} batches"
        )));
    }
    let (r1, r2) = (params.r1(), params.r2());
    let batches = run_replications(cfg, |rep| {
        let mut path = CpPath::new(lambda, job_law, r1, r2, replication_rng(cfg.seed, rep));
        compound_poisson::run_batches(&mut path, burn, per_rep, per_batch, &cfg.xs)
    })?;
    summarize(cfg, batches, per_batch * (per_rep * cfg.replications) as u64)
}

/// Grid step used for diffusive input when none is configured.
pub fn default_step(eps: f64) -> f64 {
    0.01f64.min(0.01 / eps)
}

/// Lindley-recursion simulation for Brownian or α-stable input.
pub fn simulate_tandem_diffusive(model: &LevyModel, params: &TandemParams, cfg: &SimConfig) -> Result<SimResult> {
    cfg.validate()?;
    check_params(model, params)?;
    let step = cfg.step.unwrap_or_else(|| default_step(params.eps()));
    let inc = diffusive::Increment::for_model(model, step)
        .ok_or_else(|| Error::Parameter("grid simulation needs Brownian or α-stable input".into()))?;
    if !(cfg.horizon > 0.0 && cfg.horizon.is_finite()) {
        return Err(Error::Config(format!("horizon must be positive, got {}", cfg.horizon)));
    }
    let n = (cfg.horizon / step).floor() as u64;
    let burn = (cfg.burn_in * n as f64) as u64;
    let per_rep = cfg.batches_per_replication();
    let per_batch = n.saturating_sub(burn) / per_rep as u64;
    if per_batch == 0 {
        return Err(Error::Config(format!(
            "horizon {} with step {step} leaves nothing after burn-in",
            cfg.horizon
        )));
    }
    let (r1, r2) = (params.r1(), params.r2());
    let batches = run_replications(cfg, |rep| {
        let mut rng = replication_rng(cfg.seed, rep);
        Ok(diffusive::run_batches(&mut rng, inc, r1, r2, step, burn, per_rep, per_batch, &cfg.xs))
    })?;
    summarize(cfg, batches, per_batch * (per_rep * cfg.replications) as u64)
}

fn check_params(model: &LevyModel, params: &TandemParams) -> Result<()> {
    let m = model.mean_input();
    if (params.mean_input() - m).abs() > 1e-12 * m {
        return Err(Error::Parameter(format!(
            "tandem parameters assume E J₁ = {}, model has {m}",
            params.mean_input()
        )));
    }
    Ok(())
}
