//! Spectrally-positive Lévy input models, tandem service-rate
//! parametrizations, Laplace exponents φ and their inverses ψ.
//!
//! For the net process X = J − r₁t the Laplace exponent is
//! φ(s) = log E e^{−sX₁}. It is convex with φ(0) = 0 and φ'(0) = r₁ − E J₁;
//! ψ is its inverse on the right half-line, continued analytically into
//! the right half-plane.

use crate::error::ensure_finite;
use crate::special_functions::{gamma_fn, upper_incomplete_gamma};
use crate::{Error, Result, C64};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, SQRT_2};

/// Law of the job sizes of a compound Poisson input.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum JobLaw {
    Exponential { rate: f64 },
    /// P(B > x) = (x/scale)^(−index) for x ≥ scale.
    Pareto { index: f64, scale: f64 },
    Deterministic { size: f64 },
}

impl JobLaw {
    /// Pareto law with E B = 1, i.e. scale = (ν − 1)/ν.
    pub fn pareto_unit_mean(index: f64) -> Result<Self> {
        if !(index > 1.0) || !index.is_finite() {
            return Err(Error::Parameter(format!("Pareto index must exceed 1, got {index}")));
        }
        Ok(JobLaw::Pareto { index, scale: (index - 1.0) / index })
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            JobLaw::Exponential { rate } => rate > 0.0 && rate.is_finite(),
            JobLaw::Pareto { index, scale } => {
                index > 1.0 && index.is_finite() && scale > 0.0 && scale.is_finite()
            }
            JobLaw::Deterministic { size } => size > 0.0 && size.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Parameter(format!("invalid job-size law {self:?} (need finite mean)")))
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            JobLaw::Exponential { rate } => 1.0 / rate,
            JobLaw::Pareto { index, scale } => index * scale / (index - 1.0),
            JobLaw::Deterministic { size } => size,
        }
    }

    /// E B², `None` when infinite.
    pub fn second_moment(&self) -> Option<f64> {
        match *self {
            JobLaw::Exponential { rate } => Some(2.0 / (rate * rate)),
            JobLaw::Pareto { index, scale } if index > 2.0 => {
                Some(index * scale * scale / (index - 2.0))
            }
            JobLaw::Pareto { .. } => None,
            JobLaw::Deterministic { size } => Some(size * size),
        }
    }

    pub fn third_moment_finite(&self) -> bool {
        match *self {
            JobLaw::Pareto { index, .. } => index > 3.0,
            _ => true,
        }
    }

    /// The constant L in P(B > x) ~ L x^(−ν) for Pareto jobs.
    pub fn tail_constant(&self) -> Option<f64> {
        match *self {
            JobLaw::Pareto { index, scale } => Some(scale.powf(index)),
            _ => None,
        }
    }

    /// b(s) = E e^{−sB}.
    pub fn lst(&self, s: C64) -> Result<C64> {
        Ok(self.lst_minus_one(s)? + 1.0)
    }

    /// b(s) − 1, evaluated without cancellation near s = 0.
    pub fn lst_minus_one(&self, s: C64) -> Result<C64> {
        let v = match *self {
            JobLaw::Exponential { rate } => -s / (s + rate),
            JobLaw::Deterministic { size } => expm1(-s * size),
            JobLaw::Pareto { index, scale } => pareto_lst_minus_one(index, scale, s)?,
        };
        ensure_finite(v, "job-size transform")
    }

    /// b'(s) = −E[B e^{−sB}].
    pub fn lst_derivative(&self, s: C64) -> Result<C64> {
        let v = match *self {
            JobLaw::Exponential { rate } => -rate / ((s + rate) * (s + rate)),
            JobLaw::Deterministic { size } => -size * (-s * size).exp(),
            JobLaw::Pareto { index, scale } => pareto_lst_derivative(index, scale, s)?,
        };
        ensure_finite(v, "job-size transform derivative")
    }
}

fn expm1(z: C64) -> C64 {
    if z.norm() < 1e-5 {
        z * (1.0 + z * (0.5 + z / 6.0))
    } else if z.im == 0.0 {
        C64::new(z.re.exp_m1(), 0.0)
    } else {
        z.exp() - 1.0
    }
}

fn check_pareto_arg(index: f64, s: C64) -> Result<()> {
    if s.re < 0.0 {
        return Err(Error::Domain(format!("Pareto transform needs Re(s) ≥ 0, got {s}")));
    }
    if index == index.floor() {
        return Err(Error::Parameter(format!(
            "Pareto transform is implemented for non-integer index, got {index}"
        )));
    }
    Ok(())
}

// Below this |x_m s| the entire-series form is used.
const PARETO_SERIES_RADIUS: f64 = 2.0;

/// b(s) − 1 for P(B > x) = (x/x_m)^{−ν}:
/// b(s) = ν a^ν Γ(−ν, a) with a = x_m s, and for small |a|
/// b(s) − 1 = ν Γ(−ν) a^ν − ν Σ_{k≥1} (−a)^k / (k!(k−ν)).
fn pareto_lst_minus_one(index: f64, scale: f64, s: C64) -> Result<C64> {
    check_pareto_arg(index, s)?;
    if s == C64::new(0.0, 0.0) {
        return Ok(C64::new(0.0, 0.0));
    }
    let a = s * scale;
    if a.norm() <= PARETO_SERIES_RADIUS {
        let lead = a.powf(index) * (index * gamma_fn(-index)?);
        let mut sum = C64::new(0.0, 0.0);
        let mut ak = C64::new(1.0, 0.0);
        for k in 1..200 {
            ak *= -a / k as f64;
            let term = ak / (k as f64 - index);
            sum += term;
            if term.norm() <= 1e-17 * sum.norm() {
                break;
            }
        }
        Ok(lead - sum * index)
    } else {
        let b = a.powf(index) * upper_incomplete_gamma(-index, a)? * index;
        Ok(b - 1.0)
    }
}

/// b'(s) = −ν x_m a^{ν−1} Γ(1−ν, a).
fn pareto_lst_derivative(index: f64, scale: f64, s: C64) -> Result<C64> {
    check_pareto_arg(index, s)?;
    if s == C64::new(0.0, 0.0) {
        return Ok(C64::new(-index * scale / (index - 1.0), 0.0));
    }
    let a = s * scale;
    if a.norm() <= PARETO_SERIES_RADIUS {
        // d/da of the series form, times x_m.
        let lead = a.powf(index - 1.0) * (index * index * gamma_fn(-index)?);
        let mut sum = C64::new(0.0, 0.0);
        let mut ak = C64::new(1.0, 0.0); // (−a)^{k−1}/(k−1)!
        for k in 1..200 {
            let term = -ak / (k as f64 - index);
            sum += term;
            if k > 1 && term.norm() <= 1e-17 * sum.norm() {
                break;
            }
            ak *= -a / k as f64;
        }
        Ok((lead - sum * index) * scale)
    } else {
        let g = upper_incomplete_gamma(1.0 - index, a)?;
        Ok(-(a.powf(index - 1.0) * g) * (index * scale))
    }
}

/// Family of the input process.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelKind {
    Brownian,
    CompoundPoisson,
    AlphaStable,
}

/// Spectrally-positive Lévy input J.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LevyModel {
    /// J_t = m t + σ W_t.
    Brownian { mean_input: f64, sigma2: f64 },
    /// Poisson(λ) arrivals of i.i.d. jobs.
    CompoundPoisson { lambda: f64, job_law: JobLaw },
    /// Totally right-skewed α-stable motion with log E e^{−s(J₁−m)} = C s^α,
    /// C = 1/cos(π(α/2 − 1)).
    AlphaStable { alpha: f64, mean_input: f64 },
}

/// Moments relevant to the heavy-traffic scalings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean: f64,
    /// Var J₁ = σ², `None` when infinite.
    pub variance_rate: Option<f64>,
    pub third_moment_finite: bool,
}

impl LevyModel {
    pub fn brownian(mean_input: f64, sigma2: f64) -> Result<Self> {
        if !(mean_input > 0.0 && mean_input.is_finite()) {
            return Err(Error::Parameter(format!("mean input must be positive, got {mean_input}")));
        }
        if !(sigma2 > 0.0 && sigma2.is_finite()) {
            return Err(Error::Parameter(format!("σ² must be positive, got {sigma2}")));
        }
        Ok(LevyModel::Brownian { mean_input, sigma2 })
    }

    pub fn compound_poisson(lambda: f64, job_law: JobLaw) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::Parameter(format!("arrival rate must be positive, got {lambda}")));
        }
        job_law.validate()?;
        Ok(LevyModel::CompoundPoisson { lambda, job_law })
    }

    pub fn alpha_stable(alpha: f64, mean_input: f64) -> Result<Self> {
        if !(alpha > 1.0 && alpha <= 2.0) {
            return Err(Error::Parameter(format!("stability index must lie in (1, 2], got {alpha}")));
        }
        if !(mean_input > 0.0 && mean_input.is_finite()) {
            return Err(Error::Parameter(format!("mean input must be positive, got {mean_input}")));
        }
        Ok(LevyModel::AlphaStable { alpha, mean_input })
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            LevyModel::Brownian { .. } => ModelKind::Brownian,
            LevyModel::CompoundPoisson { .. } => ModelKind::CompoundPoisson,
            LevyModel::AlphaStable { .. } => ModelKind::AlphaStable,
        }
    }

    /// E J₁.
    pub fn mean_input(&self) -> f64 {
        match *self {
            LevyModel::Brownian { mean_input, .. } | LevyModel::AlphaStable { mean_input, .. } => {
                mean_input
            }
            LevyModel::CompoundPoisson { lambda, job_law } => lambda * job_law.mean(),
        }
    }

    /// Var J₁ = σ², or `None` for infinite-variance input.
    pub fn sigma2(&self) -> Option<f64> {
        self.moments().variance_rate
    }

    pub fn moments(&self) -> Moments {
        match *self {
            LevyModel::Brownian { mean_input, sigma2 } => Moments {
                mean: mean_input,
                variance_rate: Some(sigma2),
                third_moment_finite: true,
            },
            LevyModel::CompoundPoisson { lambda, job_law } => Moments {
                mean: lambda * job_law.mean(),
                variance_rate: job_law.second_moment().map(|m2| lambda * m2),
                third_moment_finite: job_law.third_moment_finite(),
            },
            LevyModel::AlphaStable { alpha, mean_input } => Moments {
                mean: mean_input,
                variance_rate: if alpha == 2.0 { Some(2.0) } else { None },
                third_moment_finite: alpha == 2.0,
            },
        }
    }

    fn check_rate(&self, r1: f64) -> Result<()> {
        if !(r1 >= 0.0 && r1.is_finite()) {
            return Err(Error::Parameter(format!("service rate must be non-negative, got {r1}")));
        }
        Ok(())
    }

    fn check_drift(&self, r1: f64) -> Result<f64> {
        self.check_rate(r1)?;
        let drift = r1 - self.mean_input();
        if !(drift > 0.0) {
            return Err(Error::Parameter(format!(
                "ψ needs r₁ > E J₁ (r₁ = {r1}, E J₁ = {})",
                self.mean_input()
            )));
        }
        Ok(drift)
    }

    /// φ(s) of X = J − r₁t.
    pub fn laplace_exponent(&self, r1: f64, s: C64) -> Result<C64> {
        self.check_rate(r1)?;
        let v = match *self {
            LevyModel::Brownian { mean_input, sigma2 } => {
                s * (r1 - mean_input) + s * s * (0.5 * sigma2)
            }
            LevyModel::CompoundPoisson { lambda, job_law } => {
                s * r1 + job_law.lst_minus_one(s)? * lambda
            }
            LevyModel::AlphaStable { alpha, mean_input } => {
                s * (r1 - mean_input) + cpow(s, alpha) * stable_constant(alpha)
            }
        };
        ensure_finite(v, "Laplace exponent")
    }

    /// φ'(s).
    pub fn laplace_exponent_derivative(&self, r1: f64, s: C64) -> Result<C64> {
        self.check_rate(r1)?;
        let v = match *self {
            LevyModel::Brownian { mean_input, sigma2 } => s * sigma2 + (r1 - mean_input),
            LevyModel::CompoundPoisson { lambda, job_law } => {
                job_law.lst_derivative(s)? * lambda + r1
            }
            LevyModel::AlphaStable { alpha, mean_input } => {
                cpow(s, alpha - 1.0) * (alpha * stable_constant(alpha)) + (r1 - mean_input)
            }
        };
        ensure_finite(v, "Laplace exponent derivative")
    }

    /// ψ(s) through the fastest exact route available for the model:
    /// closed form (Brownian), Cardano (α = 3/2), otherwise Newton.
    pub fn psi(&self, r1: f64, s: C64) -> Result<C64> {
        match *self {
            LevyModel::Brownian { .. } => psi_closed_brownian(self, r1, s),
            LevyModel::AlphaStable { alpha, mean_input } if alpha == 1.5 => {
                let r = self.check_drift(r1)?;
                psi_cardano_three_halves(r, s).or_else(|_| {
                    psi_numeric(&LevyModel::AlphaStable { alpha, mean_input }, r1, s)
                })
            }
            _ => psi_numeric(self, r1, s),
        }
    }
}

/// C = 1/cos(π(α/2 − 1)).
pub fn stable_constant(alpha: f64) -> f64 {
    1.0 / (PI * (alpha / 2.0 - 1.0)).cos()
}

fn cpow(s: C64, p: f64) -> C64 {
    if s == C64::new(0.0, 0.0) {
        if p > 0.0 {
            C64::new(0.0, 0.0)
        } else {
            C64::new(f64::INFINITY, 0.0)
        }
    } else if s.im == 0.0 && s.re > 0.0 {
        C64::new(s.re.powf(p), 0.0)
    } else {
        s.powf(p)
    }
}

/// Free function form of [`LevyModel::laplace_exponent`].
pub fn laplace_exponent(model: &LevyModel, r1: f64, s: C64) -> Result<C64> {
    model.laplace_exponent(r1, s)
}

/// ψ(s) = −r/σ² + (1/σ)√(r²/σ² + 2s) for Brownian input, evaluated as
/// 2s / (r + √(r² + 2σ²s)).
pub fn psi_closed_brownian(model: &LevyModel, r1: f64, s: C64) -> Result<C64> {
    let LevyModel::Brownian { sigma2, .. } = *model else {
        return Err(Error::Parameter("closed-form ψ needs a Brownian model".into()));
    };
    let r = model.check_drift(r1)?;
    let radicand = s * (2.0 * sigma2) + r * r;
    if radicand.im == 0.0 && radicand.re < 0.0 {
        return Err(Error::BranchCut(format!(
            "r²/σ² + 2s is negative real at s = {s}; continue along a path instead"
        )));
    }
    let v = s * 2.0 / (radicand.sqrt() + r);
    ensure_finite(v, "Brownian ψ")
}

const NEWTON_MAX: usize = 200;
const CONTINUATION_STEPS: usize = 64;

/// ψ(s) by safeguarded Newton iteration on the real axis and Newton
/// continuation along the segment from |s| to s in the complex plane.
pub fn psi_numeric(model: &LevyModel, r1: f64, s: C64) -> Result<C64> {
    let drift = model.check_drift(r1)?;
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Domain(format!("ψ argument is not finite ({s})")));
    }
    if s.re < 0.0 {
        return Err(Error::Domain(format!("ψ is evaluated on Re(s) ≥ 0, got {s}")));
    }
    if s == C64::new(0.0, 0.0) {
        return Ok(s);
    }
    let target_tol = 1e-12 * (1.0 + s.norm());
    if s.im == 0.0 {
        let x = psi_real(model, r1, drift, s.re)?;
        return Ok(C64::new(x, 0.0));
    }
    let anchor = s.norm();
    let mut z = C64::new(psi_real(model, r1, drift, anchor)?, 0.0);
    let start = C64::new(anchor, 0.0);
    for k in 1..=CONTINUATION_STEPS {
        let target = start + (s - start) * (k as f64 / CONTINUATION_STEPS as f64);
        z = newton_complex(model, r1, z, target)?;
    }
    let residual = (model.laplace_exponent(r1, z)? - s).norm();
    if residual > target_tol {
        return Err(Error::Numeric(format!(
            "ψ continuation ended with residual {residual:.3e} at s = {s}"
        )));
    }
    Ok(z)
}

fn psi_real(model: &LevyModel, r1: f64, drift: f64, s: f64) -> Result<f64> {
    let tol = 1e-12 * (1.0 + s);
    let mut lo = 0.0;
    // φ(x) ≥ φ'(0) x, so ψ(s) ≤ s/φ'(0).
    let mut hi = 4.0 * s / drift;
    let mut x = s / drift;
    let mut best = (f64::INFINITY, x);
    for _ in 0..NEWTON_MAX {
        let f = model.laplace_exponent(r1, C64::new(x, 0.0))?.re - s;
        if f.abs() < best.0 {
            best = (f.abs(), x);
        }
        if f > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let d = model.laplace_exponent_derivative(r1, C64::new(x, 0.0))?.re;
        let mut next = x - f / d;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 4.0 * f64::EPSILON * x.abs() || f == 0.0 {
            x = next;
            break;
        }
        x = next;
    }
    let f = (model.laplace_exponent(r1, C64::new(x, 0.0))?.re - s).abs();
    let (res, x) = if f <= best.0 { (f, x) } else { best };
    if res > tol {
        return Err(Error::Numeric(format!(
            "Newton/bisection for ψ({s}) stalled with residual {res:.3e} (bracket [{lo}, {hi}])"
        )));
    }
    Ok(x)
}

fn newton_complex(model: &LevyModel, r1: f64, mut z: C64, target: C64) -> Result<C64> {
    for _ in 0..NEWTON_MAX {
        let f = model.laplace_exponent(r1, z)? - target;
        let d = model.laplace_exponent_derivative(r1, z)?;
        if d.norm() == 0.0 {
            return Err(Error::Numeric(format!("φ' vanishes at {z} during continuation")));
        }
        let step = f / d;
        let mut next = z - step;
        // Stay in the right half-plane where the exponent is defined.
        if next.re < 0.0 {
            next = C64::new(0.5 * z.re, next.im);
        }
        z = next;
        if step.norm() <= 4.0 * f64::EPSILON * z.norm().max(1e-300) {
            return Ok(z);
        }
    }
    let f = (model.laplace_exponent(r1, z)? - target).norm();
    if f <= 1e-12 * (1.0 + target.norm()) {
        Ok(z)
    } else {
        Err(Error::Numeric(format!(
            "Newton continuation diverged near s = {target} (residual {f:.3e})"
        )))
    }
}

/// ψ for 3/2-stable input, φ(s) = r s + √2 s^{3/2}, by Cardano's formula
/// ψ(s) = (R^{1/3} + r²/(18 R^{1/3}) − r/(3√2))² with
/// R(s) = −r³/(54√2) + √(s²/8 − s r³/108) + s/(2√2).
///
/// All three cube-root branches are tried; the one solving φ(ψ) = s in the
/// right half-plane is returned. Fails when none meets 1e-9.
pub fn psi_cardano_three_halves(r: f64, s: C64) -> Result<C64> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Parameter(format!("Cardano ψ needs r > 0, got {r}")));
    }
    if s == C64::new(0.0, 0.0) {
        return Ok(s);
    }
    let r3 = r * r * r;
    let big_r = (s * s / 8.0 - s * (r3 / 108.0)).sqrt() + s / (2.0 * SQRT_2) - r3 / (54.0 * SQRT_2);
    if big_r.norm() < 1e-12 * r3 {
        return Err(Error::Numeric(format!("Cardano radicand R(s) ≈ 0 at s = {s}")));
    }
    let phi = |z: C64| z * r + cpow(z, 1.5) * SQRT_2;
    let principal = big_r.powf(1.0 / 3.0);
    let rotations = [
        C64::new(1.0, 0.0),
        C64::from_polar(1.0, 2.0 * PI / 3.0),
        C64::from_polar(1.0, -2.0 * PI / 3.0),
    ];
    let tol = 1e-9 * (1.0 + s.norm());
    let mut best: Option<(f64, C64)> = None;
    for rot in rotations {
        let cube = principal * rot;
        let zeta = cube + r * r / (18.0 * cube) - r / (3.0 * SQRT_2);
        if zeta.re < -1e-12 {
            continue;
        }
        let mut psi = zeta * zeta;
        if s.im == 0.0 && psi.im.abs() <= 1e-9 {
            psi.im = 0.0;
        }
        let residual = (phi(psi) - s).norm();
        if residual <= tol && best.map_or(true, |(b, _)| residual < b) {
            best = Some((residual, psi));
        }
    }
    best.map(|(_, psi)| psi).ok_or_else(|| {
        Error::Numeric(format!("no Cardano branch solves φ(ψ) = s at s = {s}"))
    })
}

/// Busy-period transform π(s) = b((λ − λπ(s) + s)/r₁) of the upstream
/// queue, solved by fixed-point iteration from π = 0.
pub fn busy_period_lst(model: &LevyModel, r1: f64, s: f64) -> Result<f64> {
    let LevyModel::CompoundPoisson { lambda, job_law } = *model else {
        return Err(Error::Parameter("busy-period transform needs compound Poisson input".into()));
    };
    model.check_rate(r1)?;
    if !(model.mean_input() < r1) {
        return Err(Error::Parameter(format!(
            "busy period needs ρ₁ < 1 (E J₁ = {}, r₁ = {r1})",
            model.mean_input()
        )));
    }
    if !(s >= 0.0) {
        return Err(Error::Domain(format!("busy-period transform needs s ≥ 0, got {s}")));
    }
    if s == 0.0 {
        return Ok(1.0);
    }
    let mut pi = 0.0;
    for _ in 0..10_000 {
        let arg = (lambda - lambda * pi + s) / r1;
        let next = job_law.lst(C64::new(arg, 0.0))?.re;
        if (next - pi).abs() <= 1e-13 * next.abs().max(1e-300) {
            return Ok(next);
        }
        pi = next;
    }
    Err(Error::Numeric(format!("busy-period iteration did not converge at s = {s}")))
}

/// ψ(s) = (λ − λπ(s) + s)/r₁, the inverse exponent recovered from the
/// busy-period transform.
pub fn psi_from_busy_period(model: &LevyModel, r1: f64, s: f64) -> Result<f64> {
    let LevyModel::CompoundPoisson { lambda, .. } = *model else {
        return Err(Error::Parameter("busy-period transform needs compound Poisson input".into()));
    };
    let pi = busy_period_lst(model, r1, s)?;
    Ok((lambda - lambda * pi + s) / r1)
}

pub fn model_moments(model: &LevyModel) -> Moments {
    model.moments()
}

/// How the two service rates were specified.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Parametrization {
    Direct,
    /// r₁ = E J₁ + r with r fixed, r₂ = E J₁ + ε.
    RegimeOne { r: f64, eps: f64 },
    /// r₁ = E J₁ + γε, r₂ = E J₁ + ε.
    RegimeTwo { gamma: f64, eps: f64 },
}

/// Service rates of the two nodes and the derived regime quantities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TandemParams {
    r1: f64,
    r2: f64,
    mean_input: f64,
    mode: Parametrization,
}

impl TandemParams {
    pub fn direct(mean_input: f64, r1: f64, r2: f64) -> Result<Self> {
        Self::build(mean_input, r1, r2, Parametrization::Direct)
    }

    pub fn regime_one(mean_input: f64, r: f64, eps: f64) -> Result<Self> {
        Self::build(mean_input, mean_input + r, mean_input + eps, Parametrization::RegimeOne { r, eps })
    }

    pub fn regime_two(mean_input: f64, gamma: f64, eps: f64) -> Result<Self> {
        if !(gamma > 1.0) {
            return Err(Error::Parameter(format!("Regime II needs γ > 1, got {gamma}")));
        }
        Self::build(
            mean_input,
            mean_input + gamma * eps,
            mean_input + eps,
            Parametrization::RegimeTwo { gamma, eps },
        )
    }

    /// r_i = E J₁/ρ_i.
    pub fn from_loads(mean_input: f64, rho1: f64, rho2: f64) -> Result<Self> {
        for (name, rho) in [("ρ₁", rho1), ("ρ₂", rho2)] {
            if !(rho > 0.0 && rho < 1.0) {
                return Err(Error::Parameter(format!("{name} must lie in (0, 1), got {rho}")));
            }
        }
        Self::build(mean_input, mean_input / rho1, mean_input / rho2, Parametrization::Direct)
    }

    fn build(mean_input: f64, r1: f64, r2: f64, mode: Parametrization) -> Result<Self> {
        if !(mean_input > 0.0 && mean_input.is_finite()) {
            return Err(Error::Parameter(format!("mean input must be positive, got {mean_input}")));
        }
        if !(r1.is_finite() && r2.is_finite()) {
            return Err(Error::Parameter("service rates must be finite".into()));
        }
        if !(r2 < r1) {
            return Err(Error::Parameter(format!(
                "downstream rate must be below upstream rate (r₁ = {r1}, r₂ = {r2})"
            )));
        }
        if !(r2 > mean_input) {
            return Err(Error::Parameter(format!(
                "unstable: need E J₁ < r₂ (E J₁ = {mean_input}, r₂ = {r2})"
            )));
        }
        Ok(Self { r1, r2, mean_input, mode })
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }
    pub fn r2(&self) -> f64 {
        self.r2
    }
    pub fn mean_input(&self) -> f64 {
        self.mean_input
    }
    pub fn mode(&self) -> Parametrization {
        self.mode
    }
    /// r = r₁ − E J₁.
    pub fn r(&self) -> f64 {
        match self.mode {
            Parametrization::RegimeOne { r, .. } => r,
            _ => self.r1 - self.mean_input,
        }
    }
    /// ε = r₂ − E J₁.
    pub fn eps(&self) -> f64 {
        match self.mode {
            Parametrization::RegimeOne { eps, .. } | Parametrization::RegimeTwo { eps, .. } => eps,
            Parametrization::Direct => self.r2 - self.mean_input,
        }
    }
    /// γ = (r₁ − E J₁)/(r₂ − E J₁).
    pub fn gamma(&self) -> f64 {
        match self.mode {
            Parametrization::RegimeTwo { gamma, .. } => gamma,
            _ => self.r() / self.eps(),
        }
    }
    pub fn rho1(&self) -> f64 {
        self.mean_input / self.r1
    }
    pub fn rho2(&self) -> f64 {
        self.mean_input / self.r2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn exp_model() -> LevyModel {
        LevyModel::compound_poisson(1.0, JobLaw::Exponential { rate: 1.0 }).unwrap()
    }

    #[test]
    fn brownian_exponent_by_substitution() {
        let m = LevyModel::brownian(1.0, 2.0).unwrap();
        assert_eq!(m.laplace_exponent(2.0, c(1.0)).unwrap(), c(2.0));
        assert_eq!(m.laplace_exponent(2.0, c(0.0)).unwrap(), c(0.0));
    }

    #[test]
    fn compound_poisson_exponent() {
        let v = exp_model().laplace_exponent(2.0, c(1.0)).unwrap();
        assert!((v.re - 1.5).abs() < 1e-15);
        // φ'(0) = r₁ − E J₁.
        let d = exp_model().laplace_exponent_derivative(2.0, c(0.0)).unwrap();
        assert!((d.re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn negative_rate_rejected() {
        assert!(matches!(exp_model().laplace_exponent(-1.0, c(1.0)), Err(Error::Parameter(_))));
    }

    #[test]
    fn closed_brownian_inverse() {
        let m = LevyModel::brownian(1.0, 2.0).unwrap();
        let p = psi_closed_brownian(&m, 2.0, c(2.0)).unwrap();
        assert!((p.re - 1.0).abs() < 1e-15);
        assert_eq!(psi_closed_brownian(&m, 2.0, c(0.0)).unwrap(), c(0.0));
        // Bisection oracle at s = 0.5.
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid + mid * mid < 0.5 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let p = psi_closed_brownian(&m, 2.0, c(0.5)).unwrap().re;
        assert!((p - lo).abs() < 1e-12);
        assert!((m.laplace_exponent(2.0, c(p)).unwrap().re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn closed_brownian_flags_branch_cut() {
        let m = LevyModel::brownian(1.0, 2.0).unwrap();
        assert!(matches!(psi_closed_brownian(&m, 2.0, c(-1.0)), Err(Error::BranchCut(_))));
    }

    #[test]
    fn numeric_inverse_matches_closed_form() {
        let m = LevyModel::brownian(1.0, 2.0).unwrap();
        for s in [0.1, 1.0, 10.0] {
            let a = psi_numeric(&m, 2.0, c(s)).unwrap();
            let b = psi_closed_brownian(&m, 2.0, c(s)).unwrap();
            assert!((a - b).norm() < 1e-10);
        }
        assert_eq!(psi_numeric(&m, 2.0, c(0.0)).unwrap(), c(0.0));
        let z = C64::new(0.3, 4.0);
        let a = psi_numeric(&m, 2.0, z).unwrap();
        let b = psi_closed_brownian(&m, 2.0, z).unwrap();
        assert!((a - b).norm() < 1e-10, "{a} vs {b}");
    }

    #[test]
    fn numeric_inverse_compound_poisson() {
        let p = psi_numeric(&exp_model(), 2.0, c(1.5)).unwrap();
        assert!((p.re - 1.0).abs() < 1e-10);
    }

    #[test]
    fn numeric_inverse_rejects_zero_drift() {
        assert!(matches!(psi_numeric(&exp_model(), 1.0, c(1.0)), Err(Error::Parameter(_))));
    }

    #[test]
    fn cardano_matches_root_finding() {
        let m = LevyModel::alpha_stable(1.5, 1.0).unwrap();
        assert!(psi_cardano_three_halves(1.0, c(0.0)).unwrap().norm() <= 1e-9);
        for (r, s) in [(1.0, 1.0), (2.0, 0.25)] {
            let a = psi_cardano_three_halves(r, c(s)).unwrap();
            let b = psi_numeric(&m, 1.0 + r, c(s)).unwrap();
            assert!((a - b).norm() < 1e-9, "r={r} s={s}: {a} vs {b}");
            assert_eq!(a.im, 0.0);
        }
    }

    #[test]
    fn cardano_in_the_complex_plane() {
        let m = LevyModel::alpha_stable(1.5, 1.0).unwrap();
        for z in [C64::new(0.5, 2.0), C64::new(3.0, -7.0), C64::new(0.01, 0.2)] {
            let a = psi_cardano_three_halves(1.0, z).unwrap();
            let b = psi_numeric(&m, 2.0, z).unwrap();
            assert!((a - b).norm() < 1e-9, "{z}: {a} vs {b}");
        }
    }

    #[test]
    fn busy_period_at_origin_and_slope() {
        let m = exp_model();
        assert_eq!(busy_period_lst(&m, 2.0, 0.0).unwrap(), 1.0);
        // Second-order one-sided difference: π'(0) = −E B/(r₁ − λ E B) = −1.
        let h = 1e-4;
        let p1 = busy_period_lst(&m, 2.0, h).unwrap();
        let p2 = busy_period_lst(&m, 2.0, 2.0 * h).unwrap();
        let slope = (-3.0 + 4.0 * p1 - p2) / (2.0 * h);
        assert!((slope + 1.0).abs() < 1e-6, "slope {slope}");
    }

    #[test]
    fn busy_period_reconstructs_psi() {
        let m = exp_model();
        for s in [0.1, 1.0] {
            let a = psi_from_busy_period(&m, 2.0, s).unwrap();
            let b = psi_numeric(&m, 2.0, c(s)).unwrap().re;
            assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn moments_by_family() {
        assert_eq!(exp_model().moments().variance_rate, Some(2.0));
        assert_eq!(LevyModel::brownian(1.0, 2.0).unwrap().sigma2(), Some(2.0));
        let par = LevyModel::compound_poisson(1.0, JobLaw::pareto_unit_mean(1.5).unwrap()).unwrap();
        assert_eq!(par.sigma2(), None);
        assert!((par.mean_input() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pareto_transform_against_quadrature() {
        let law = JobLaw::pareto_unit_mean(1.5).unwrap();
        let JobLaw::Pareto { index, scale } = law else { unreachable!() };
        for s in [0.01, 0.5, 3.0, 20.0] {
            // ∫_{x_m}^∞ e^{−sx} ν x_m^ν x^{−ν−1} dx with x = x_m/u².
            let q = crate::quadrature::integrate(
                |u: f64| {
                    if u <= 0.0 {
                        return 0.0;
                    }
                    let x = scale / (u * u);
                    (-s * x).exp() * 2.0 * index * u.powf(2.0 * index - 1.0)
                },
                0.0,
                1.0,
                1e-14,
            )
            .unwrap()
            .value;
            let b = law.lst(c(s)).unwrap().re;
            assert!((b - q).abs() < 1e-12, "s={s}: {b} vs {q}");
        }
    }

    #[test]
    fn pareto_derivative_matches_difference() {
        let law = JobLaw::pareto_unit_mean(1.5).unwrap();
        for z in [C64::new(0.7, 0.4), C64::new(5.0, -3.0)] {
            let h = 1e-6;
            let fd = (law.lst(z + h).unwrap() - law.lst(z - h).unwrap()) / (2.0 * h);
            let d = law.lst_derivative(z).unwrap();
            assert!((fd - d).norm() < 1e-8, "{z}: {fd} vs {d}");
        }
    }

    #[test]
    fn tandem_parametrizations() {
        let p = TandemParams::from_loads(1.0, 0.6, 0.8).unwrap();
        assert!((p.r1() - 5.0 / 3.0).abs() < 1e-15);
        assert!((p.eps() - 0.25).abs() < 1e-15);
        assert!((p.gamma() - 8.0 / 3.0).abs() < 1e-14);
        let q = TandemParams::regime_two(1.0, 2.0, 0.1).unwrap();
        assert!((q.r1() - 1.2).abs() < 1e-15 && (q.rho2() - 1.0 / 1.1).abs() < 1e-15);
        assert!(TandemParams::direct(1.0, 1.0, 1.2).is_err());
        assert!(TandemParams::regime_two(1.0, 0.5, 0.1).is_err());
        assert!(TandemParams::regime_one(1.0, 1.0, 0.0).is_err());
    }
}
