//! Totally right-skewed α-stable variates by the Chambers–Mallows–Stuck
//! method.

use rand::Rng;
use rand_distr::Exp1;
use std::f64::consts::FRAC_PI_2;

/// Pre-computed constants of the generator for a fixed α ∈ (1, 2].
#[derive(Debug, Clone, Copy)]
pub struct StableGenerator {
    alpha: f64,
    shift: f64,
    scale: f64,
}

impl StableGenerator {
    pub fn new(alpha: f64) -> Self {
        let t = (alpha * FRAC_PI_2).tan();
        Self { alpha, shift: t.atan() / alpha, scale: (1.0 + t * t).powf(0.5 / alpha) }
    }

    /// A variate X with E X = 0 and log E e^{−sX} = C s^α,
    /// C = 1/cos(π(α/2 − 1)).
    #[inline]
    pub fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        let a = self.alpha;
        let v = (rng.random::<f64>() - 0.5) * std::f64::consts::PI;
        let w: f64 = rng.sample(Exp1);
        let avb = a * (v + self.shift);
        self.scale * avb.sin() / v.cos().powf(1.0 / a) * ((v - avb).cos() / w).powf((1.0 - a) / a)
    }
}
