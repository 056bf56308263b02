//! Grid paths of the tandem for Brownian and α-stable input.
//!
//! Both the upstream queue (rate r₁) and the total workload (rate r₂) follow
//! the Lindley recursion Q ← max(Q + ΔJ − rδ, 0) on a grid of step δ; the
//! downstream queue is their difference.

use super::accumulators::BatchMoments;
use super::stable::StableGenerator;
use crate::levy_models::LevyModel;
use rand::Rng;
use rand_distr::StandardNormal;

#[derive(Debug, Clone, Copy)]
pub(crate) enum Increment {
    Gaussian { mean: f64, sd: f64 },
    Stable { mean: f64, scale: f64, generator: StableGenerator },
}

impl Increment {
    pub(crate) fn for_model(model: &LevyModel, step: f64) -> Option<Self> {
        match *model {
            LevyModel::Brownian { mean_input, sigma2 } => {
                Some(Increment::Gaussian { mean: mean_input * step, sd: (sigma2 * step).sqrt() })
            }
            LevyModel::AlphaStable { alpha, mean_input } => Some(Increment::Stable {
                mean: mean_input * step,
                scale: step.powf(1.0 / alpha),
                generator: StableGenerator::new(alpha),
            }),
            LevyModel::CompoundPoisson { .. } => None,
        }
    }

    #[inline]
    pub(crate) fn draw<R: Rng>(&self, rng: &mut R) -> f64 {
        match self {
            Increment::Gaussian { mean, sd } => {
                let z: f64 = rng.sample(StandardNormal);
                mean + sd * z
            }
            Increment::Stable { mean, scale, generator } => mean + scale * generator.sample(rng),
        }
    }
}

/// Grid state of the two recursions.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GridState {
    pub q1: f64,
    pub total: f64,
}

impl GridState {
    #[inline]
    pub fn advance(&mut self, increment: f64, r1_step: f64, r2_step: f64) {
        self.q1 = (self.q1 + increment - r1_step).max(0.0);
        self.total = (self.total + increment - r2_step).max(0.0);
    }

    pub fn q2(&self) -> f64 {
        self.total - self.q1
    }
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn run_batches<R: Rng>(
    rng: &mut R,
    inc: Increment,
    r1: f64,
    r2: f64,
    step: f64,
    burn: u64,
    batches: usize,
    per_batch: u64,
    xs: &[f64],
) -> Vec<BatchMoments> {
    let mut state = GridState::default();
    let (d1, d2) = (r1 * step, r2 * step);
    for _ in 0..burn {
        state.advance(inc.draw(rng), d1, d2);
    }
    let mut out = Vec::with_capacity(batches);
    for _ in 0..batches {
        let mut acc = BatchMoments::new(xs.len());
        for _ in 0..per_batch {
            let j = inc.draw(rng);
            state.advance(j, d1, d2);
            acc.input += j;
            acc.add_point(state.q1, state.q2(), step, xs);
        }
        out.push(acc);
    }
    out
}
