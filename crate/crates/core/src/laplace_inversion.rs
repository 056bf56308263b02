//! Numerical inversion of workload transforms into tail probabilities.
//!
//! The tail P(Q > x) has transform (1 − L(s))/s where L is the LST of Q.
//! Two inverters are provided:
//!
//! * Euler summation (Abate–Whitt): a trapezoidal rule on the Bromwich
//!   contour Re(s) = A/(2x), with the alternating series accelerated by
//!   binomial averaging. Needs complex evaluations.
//! * Gaver–Stehfest: a real-axis rule, used as an independent check.

use crate::{Error, Result, C64};
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};

/// A Laplace–Stieltjes transform evaluable in the right half-plane.
pub trait TransformFn {
    fn eval(&self, s: C64) -> Result<C64>;
}

impl<F> TransformFn for F
where
    F: Fn(C64) -> Result<C64>,
{
    fn eval(&self, s: C64) -> Result<C64> {
        self(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InversionMethod {
    EulerSummation,
    GaverStehfest,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InversionConfig {
    pub method: InversionMethod,
    pub target_accuracy: f64,
    /// Contour abscissa parameter A; `None` derives it as ln(1/target).
    pub euler_a: Option<f64>,
    pub euler_terms: usize,
    pub euler_smoothing: usize,
    pub stehfest_terms: usize,
}

impl Default for InversionConfig {
    fn default() -> Self {
        Self {
            method: InversionMethod::EulerSummation,
            target_accuracy: 1e-8,
            euler_a: None,
            euler_terms: 40,
            euler_smoothing: 15,
            stehfest_terms: 14,
        }
    }
}

impl InversionConfig {
    pub fn stehfest() -> Self {
        Self { method: InversionMethod::GaverStehfest, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.target_accuracy >= 1e-10 && self.target_accuracy < 1.0) {
            return Err(Error::Config(format!(
                "target accuracy must lie in [1e-10, 1), got {}",
                self.target_accuracy
            )));
        }
        if let Some(a) = self.euler_a {
            if !(a > 0.0 && a.is_finite()) {
                return Err(Error::Config(format!("Euler parameter A must be positive, got {a}")));
            }
        }
        if self.euler_terms == 0 || self.euler_smoothing == 0 {
            return Err(Error::Config("Euler term counts must be positive".into()));
        }
        if self.stehfest_terms == 0 || self.stehfest_terms % 2 == 1 || self.stehfest_terms > 18 {
            return Err(Error::Config(format!(
                "Stehfest term count must be even and at most 18, got {}",
                self.stehfest_terms
            )));
        }
        Ok(())
    }

    fn abscissa(&self) -> f64 {
        self.euler_a.unwrap_or_else(|| (1.0 / self.target_accuracy).ln())
    }
}

/// Where a tail value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Provenance {
    ExactInverted,
    RegimeOne,
    RegimeTwo,
    MittagLeffler,
    Simulated,
}

impl Provenance {
    /// Label used in the `method` column of CSV output.
    pub fn label(&self) -> &'static str {
        match self {
            Provenance::ExactInverted => "exact",
            Provenance::RegimeOne => "regime1",
            Provenance::RegimeTwo => "regime2",
            Provenance::MittagLeffler => "mittag-leffler",
            Provenance::Simulated => "simulated",
        }
    }
}

/// An inverted tail value with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Inversion {
    pub value: f64,
    pub error_estimate: f64,
    /// The raw value left [0, 1] by more than its error estimate and was clamped.
    pub clamped: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailPoint {
    pub x: f64,
    pub p: f64,
    /// 95% confidence half-width (simulation) or inversion error estimate.
    pub half_width: Option<f64>,
    pub clamped: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailCurve {
    pub points: Vec<TailPoint>,
    pub provenance: Provenance,
    pub warnings: Vec<String>,
}

impl TailCurve {
    pub fn new(points: Vec<TailPoint>, provenance: Provenance) -> Self {
        Self { points, provenance, warnings: Vec::new() }
    }

    /// Records a warning for every increase of p beyond the combined
    /// half-widths of neighbouring points.
    pub fn check_monotone(&mut self, slack: f64) {
        for w in self.points.windows(2) {
            let allowed = slack + w[0].half_width.unwrap_or(0.0) + w[1].half_width.unwrap_or(0.0);
            if w[1].p > w[0].p + allowed {
                self.warnings.push(format!(
                    "tail increases from {:.6} at x = {} to {:.6} at x = {}",
                    w[0].p, w[0].x, w[1].p, w[1].x
                ));
            }
        }
    }
}

/// P(Q > x) for the LST `lst`, to `cfg.target_accuracy` (Euler) or about
/// 1e-4 (Stehfest).
pub fn invert_tail<T: TransformFn + ?Sized>(lst: &T, x: f64, cfg: &InversionConfig) -> Result<f64> {
    Ok(invert_tail_detailed(lst, x, cfg)?.value)
}

pub fn invert_tail_detailed<T: TransformFn + ?Sized>(lst: &T, x: f64, cfg: &InversionConfig) -> Result<Inversion> {
    cfg.validate()?;
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!("tail inversion needs x > 0, got {x}")));
    }
    let tail_transform = |s: C64| -> Result<C64> { Ok((C64::new(1.0, 0.0) - lst.eval(s)?) / s) };
    let (raw, err) = match cfg.method {
        InversionMethod::EulerSummation => euler(&tail_transform, x, cfg)?,
        InversionMethod::GaverStehfest => (stehfest(&tail_transform, x, cfg.stehfest_terms)?, 1e-4),
    };
    let value = raw.clamp(0.0, 1.0);
    Ok(Inversion { value, error_estimate: err, clamped: (raw - value).abs() > err })
}

fn euler<F: Fn(C64) -> Result<C64>>(f: &F, t: f64, cfg: &InversionConfig) -> Result<(f64, f64)> {
    let a = cfg.abscissa();
    let n = cfg.euler_terms;
    let m = cfg.euler_smoothing;
    let scale = (a / 2.0).exp() / t;
    let base = a / (2.0 * t);
    let mut partial = Vec::with_capacity(n + m + 2);
    let mut sum = 0.5 * f(C64::new(base, 0.0))?.re;
    for k in 1..=(n + m + 1) {
        let s = C64::new(base, k as f64 * PI / t);
        let term = f(s)?.re;
        sum += if k % 2 == 0 { term } else { -term };
        if k >= n {
            partial.push(sum * scale);
        }
    }
    if partial.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric(format!("Euler partial sums not finite at x = {t}")));
    }
    let binomial_mean = |offset: usize| -> f64 {
        let mut acc = 0.0;
        let mut coeff = 1.0; // C(m, j)
        for j in 0..=m {
            acc += coeff * partial[offset + j];
            coeff = coeff * (m - j) as f64 / (j + 1) as f64;
        }
        acc / 2f64.powi(m as i32)
    };
    let e0 = binomial_mean(0);
    let e1 = binomial_mean(1);
    let discretization = (-a).exp() / (1.0 - (-a).exp());
    let estimate = (e0 - e1).abs() + discretization;
    if estimate > 1e-3 {
        return Err(Error::Numeric(format!(
            "Euler summation did not converge at x = {t}: averaged sums {e0:.6e} and {e1:.6e}, last partial sums {:?}",
            &partial[partial.len().saturating_sub(3)..]
        )));
    }
    Ok((e1, estimate))
}

fn stehfest_weights(n: usize) -> Vec<f64> {
    let half = n / 2;
    let fact = |k: usize| (1..=k).fold(1.0f64, |a, i| a * i as f64);
    (1..=n)
        .map(|k| {
            let mut v = 0.0;
            for j in (k + 1) / 2..=k.min(half) {
                v += (j as f64).powi(half as i32) * fact(2 * j)
                    / (fact(half - j) * fact(j) * fact(j - 1) * fact(k - j) * fact(2 * j - k));
            }
            if (k + half) % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect()
}

fn stehfest<F: Fn(C64) -> Result<C64>>(f: &F, t: f64, n: usize) -> Result<f64> {
    let w = stehfest_weights(n);
    let h = LN_2 / t;
    let mut acc = 0.0;
    for (k, wk) in w.iter().enumerate() {
        acc += wk * f(C64::new((k + 1) as f64 * h, 0.0))?.re;
    }
    Ok(acc * h)
}

/// Tail curve on a strictly increasing positive grid. Failures at
/// individual points become warnings; the call fails only if every point
/// fails.
pub fn tail_curve<T: TransformFn + ?Sized>(lst: &T, xs: &[f64], cfg: &InversionConfig) -> Result<TailCurve> {
    cfg.validate()?;
    if xs.is_empty() {
        return Err(Error::Config("empty x-grid".into()));
    }
    if xs.iter().any(|&x| !(x > 0.0)) || xs.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Config("x-grid must be positive and strictly increasing".into()));
    }
    let mut curve = TailCurve::new(Vec::with_capacity(xs.len()), Provenance::ExactInverted);
    let mut first_error = None;
    for &x in xs {
        match invert_tail_detailed(lst, x, cfg) {
            Ok(inv) => curve.points.push(TailPoint {
                x,
                p: inv.value,
                half_width: Some(inv.error_estimate),
                clamped: inv.clamped,
            }),
            Err(e) => {
                curve.warnings.push(format!("x = {x}: {e}"));
                first_error.get_or_insert(e);
            }
        }
    }
    if curve.points.is_empty() {
        return Err(first_error.expect("at least one failure recorded"));
    }
    curve.check_monotone(cfg.target_accuracy);
    Ok(curve)
}
