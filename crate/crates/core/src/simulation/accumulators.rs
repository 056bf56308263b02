//! Time-weighted moment accumulators for one batch of a workload path.

use serde::{Deserialize, Serialize};

/// Integrals of workload functionals over one batch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchMoments {
    pub duration: f64,
    pub int_q1: f64,
    pub int_q2: f64,
    pub int_q1_sq: f64,
    pub int_q2_sq: f64,
    pub int_q1_q2: f64,
    /// Time with Q₂ > x for every x of the grid.
    pub exceed: Vec<f64>,
    /// Total input work offered during the batch.
    pub input: f64,
}

impl BatchMoments {
    pub fn new(grid_len: usize) -> Self {
        Self {
            duration: 0.0,
            int_q1: 0.0,
            int_q2: 0.0,
            int_q1_sq: 0.0,
            int_q2_sq: 0.0,
            int_q1_q2: 0.0,
            exceed: vec![0.0; grid_len],
            input: 0.0,
        }
    }

    /// Adds a stretch of length `len` on which Q₁ = a₁ + b₁t and
    /// Q₂ = a₂ + b₂t, integrating every functional exactly.
    #[inline]
    pub fn add_linear(&mut self, a1: f64, b1: f64, a2: f64, b2: f64, len: f64, xs: &[f64]) {
        if len <= 0.0 {
            return;
        }
        let l2 = len * len / 2.0;
        let l3 = len * len * len / 3.0;
        self.duration += len;
        self.int_q1 += a1 * len + b1 * l2;
        self.int_q2 += a2 * len + b2 * l2;
        self.int_q1_sq += a1 * a1 * len + 2.0 * a1 * b1 * l2 + b1 * b1 * l3;
        self.int_q2_sq += a2 * a2 * len + 2.0 * a2 * b2 * l2 + b2 * b2 * l3;
        self.int_q1_q2 += a1 * a2 * len + (a1 * b2 + a2 * b1) * l2 + b1 * b2 * l3;
        let end = a2 + b2 * len;
        for (acc, &x) in self.exceed.iter_mut().zip(xs) {
            if a2 > x && end > x {
                *acc += len;
            } else if a2 > x || end > x {
                let cross = (x - a2) / b2;
                *acc += if b2 > 0.0 { len - cross } else { cross };
            }
        }
    }

    /// Adds a grid point held for `dt` (rectangle rule).
    #[inline]
    pub fn add_point(&mut self, q1: f64, q2: f64, dt: f64, xs: &[f64]) {
        self.duration += dt;
        self.int_q1 += q1 * dt;
        self.int_q2 += q2 * dt;
        self.int_q1_sq += q1 * q1 * dt;
        self.int_q2_sq += q2 * q2 * dt;
        self.int_q1_q2 += q1 * q2 * dt;
        for (acc, &x) in self.exceed.iter_mut().zip(xs) {
            if q2 > x {
                *acc += dt;
            }
        }
    }

    /// Adds a stretch where both queues are empty.
    #[inline]
    pub fn add_idle(&mut self, len: f64) {
        if len > 0.0 {
            self.duration += len;
        }
    }

    pub fn mean_q1(&self) -> f64 {
        self.int_q1 / self.duration
    }

    pub fn mean_q2(&self) -> f64 {
        self.int_q2 / self.duration
    }

    pub fn covariance(&self) -> f64 {
        self.int_q1_q2 / self.duration - self.mean_q1() * self.mean_q2()
    }

    pub fn correlation(&self) -> f64 {
        let v1 = self.int_q1_sq / self.duration - self.mean_q1().powi(2);
        let v2 = self.int_q2_sq / self.duration - self.mean_q2().powi(2);
        self.covariance() / (v1 * v2).sqrt()
    }

    /// Merges another batch into this one.
    pub fn absorb(&mut self, other: &BatchMoments) {
        self.duration += other.duration;
        self.int_q1 += other.int_q1;
        self.int_q2 += other.int_q2;
        self.int_q1_sq += other.int_q1_sq;
        self.int_q2_sq += other.int_q2_sq;
        self.int_q1_q2 += other.int_q1_q2;
        for (a, b) in self.exceed.iter_mut().zip(&other.exceed) {
            *a += b;
        }
        self.input += other.input;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_piece_integrals() {
        let mut b = BatchMoments::new(2);
        // Q₁ = 2 − t, Q₂ = t on [0, 2].
        b.add_linear(2.0, -1.0, 0.0, 1.0, 2.0, &[0.5, 3.0]);
        assert!((b.int_q1 - 2.0).abs() < 1e-15);
        assert!((b.int_q1_q2 - 4.0 / 3.0).abs() < 1e-15);
        assert!((b.int_q2_sq - 8.0 / 3.0).abs() < 1e-15);
        assert!((b.exceed[0] - 1.5).abs() < 1e-15);
        assert_eq!(b.exceed[1], 0.0);
    }

    #[test]
    fn falling_piece_exceedance() {
        let mut b = BatchMoments::new(1);
        b.add_linear(0.0, 0.0, 4.0, -2.0, 2.0, &[1.0]);
        assert!((b.exceed[0] - 1.5).abs() < 1e-15);
    }
}
