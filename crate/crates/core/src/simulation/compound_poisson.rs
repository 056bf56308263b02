//! Exact event-driven paths of the tandem fed by compound Poisson input.
//!
//! The upstream workload Q₁ drains at rate r₁. The total workload
//! Q₁ + Q₂ behaves as a single queue drained at rate r₂ on the same input,
//! so Q₂ is recovered as the difference. Between arrivals every workload is
//! piecewise linear: while Q₁ > 0 the downstream queue grows at r₁ − r₂,
//! afterwards it drains at r₂ until empty.

use super::accumulators::BatchMoments;
use crate::levy_models::JobLaw;
use crate::{Error, Result};
use rand::Rng;
use rand_distr::Exp1;

/// Workloads just after an arrival.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpEvent {
    pub time: f64,
    pub inter_arrival: f64,
    pub job: f64,
    /// Workloads just before the arrival.
    pub q1_before: f64,
    pub q2_before: f64,
    pub q1: f64,
    pub q2: f64,
}

/// A compound Poisson tandem path, advanced one arrival at a time.
pub struct CpPath<R: Rng> {
    lambda: f64,
    law: JobLaw,
    r1: f64,
    r2: f64,
    q1: f64,
    total: f64,
    time: f64,
    rng: R,
}

impl<R: Rng> CpPath<R> {
    /// Path started empty at time 0.
    pub fn new(lambda: f64, law: JobLaw, r1: f64, r2: f64, rng: R) -> Self {
        Self { lambda, law, r1, r2, q1: 0.0, total: 0.0, time: 0.0, rng }
    }

    #[inline]
    fn draw_job(&mut self) -> f64 {
        match self.law {
            JobLaw::Exponential { rate } => {
                let e: f64 = self.rng.sample(Exp1);
                e / rate
            }
            JobLaw::Pareto { index, scale } => {
                let u: f64 = self.rng.random();
                scale * (1.0 - u).powf(-1.0 / index)
            }
            JobLaw::Deterministic { size } => size,
        }
    }

    /// Lets `tau` time units pass without arrivals, recording the linear
    /// pieces in `acc`.
    #[inline]
    fn drain(&mut self, tau: f64, acc: Option<&mut BatchMoments>, xs: &[f64]) {
        let (q1, total, r1, r2) = (self.q1, self.total, self.r1, self.r2);
        if let Some(acc) = acc {
            let t1 = q1 / r1;
            let t2 = total / r2;
            let q2 = total - q1;
            if tau <= t1 {
                acc.add_linear(q1, -r1, q2, r1 - r2, tau, xs);
            } else {
                acc.add_linear(q1, -r1, q2, r1 - r2, t1, xs);
                let peak = total - r2 * t1;
                if tau <= t2 {
                    acc.add_linear(0.0, 0.0, peak, -r2, tau - t1, xs);
                } else {
                    acc.add_linear(0.0, 0.0, peak, -r2, t2 - t1, xs);
                    acc.add_idle(tau - t2);
                }
            }
        }
        self.q1 = (q1 - r1 * tau).max(0.0);
        self.total = (total - r2 * tau).max(self.q1);
        self.time += tau;
    }

    /// Advances to the next arrival and adds its job.
    #[inline]
    pub fn step(&mut self, mut acc: Option<&mut BatchMoments>, xs: &[f64]) -> CpEvent {
        let e: f64 = self.rng.sample(Exp1);
        let tau = e / self.lambda;
        self.drain(tau, acc.as_deref_mut(), xs);
        let (q1_before, q2_before) = (self.q1, self.total - self.q1);
        let job = self.draw_job();
        if let Some(acc) = acc {
            acc.input += job;
        }
        self.q1 += job;
        self.total += job;
        CpEvent {
            time: self.time,
            inter_arrival: tau,
            job,
            q1_before,
            q2_before,
            q1: self.q1,
            q2: self.total - self.q1,
        }
    }

    pub fn time(&self) -> f64 {
        self.time
    }
}

/// Simulates one replication: `burn` arrivals discarded, then `batches`
/// batches of `per_batch` arrivals each.
pub(crate) fn run_batches<R: Rng>(
    path: &mut CpPath<R>,
    burn: u64,
    batches: usize,
    per_batch: u64,
    xs: &[f64],
) -> Result<Vec<BatchMoments>> {
    for _ in 0..burn {
        path.step(None, xs);
    }
    let mut out = Vec::with_capacity(batches);
    for _ in 0..batches {
        let mut acc = BatchMoments::new(xs.len());
        for _ in 0..per_batch {
            path.step(Some(&mut acc), xs);
        }
        if !(acc.int_q2.is_finite() && acc.int_q1_q2.is_finite()) {
            return Err(Error::Numeric("workload integrals overflowed".into()));
        }
        out.push(acc);
    }
    Ok(out)
}
