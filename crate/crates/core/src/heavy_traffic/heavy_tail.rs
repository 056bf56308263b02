//! Compound Poisson input with regularly varying jobs,
//! P(B > x) ~ L x^{−ν} with 1 < ν < 2.
//!
//! In Regime I the downstream workload scaled by Δ(ε) converges to a
//! Mittag-Leffler law, giving P(Q₂ > x) ≈ E_{ν−1}(−(Δ(ε)x)^{ν−1}).

use super::ConvergenceReport;
use crate::levy_models::{JobLaw, LevyModel};
use crate::special_functions::{gamma_fn, mittag_leffler};
use crate::{Error, Result, C64};
use serde::{Deserialize, Serialize};

/// How Δ(ε) is obtained from the balance equation
/// C (r − ε)^ν Δ^{ν−1} L(1/Δ) = ε, C = −λΓ(1−ν)/r^{ν+1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeltaMode {
    /// (r − ε)^ν replaced by r^ν: Δ = (ε / ((λ/r)|Γ(1−ν)| L))^{1/(ν−1)}.
    Closed,
    /// Balance equation root-solved on (0, 1) with (r − ε)^ν retained.
    Exact,
}

/// Scaling function ε ↦ Δ(ε) for constant slowly varying part L.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaScaling {
    pub lambda: f64,
    pub r: f64,
    pub nu: f64,
    pub tail_constant: f64,
    pub mode: DeltaMode,
}

fn check_index(nu: f64) -> Result<()> {
    if !(nu > 1.0 && nu < 2.0) {
        return Err(Error::Parameter(format!("tail index ν must lie in (1, 2), got {nu}")));
    }
    Ok(())
}

impl DeltaScaling {
    pub fn new(lambda: f64, r: f64, nu: f64, tail_constant: f64) -> Result<Self> {
        check_index(nu)?;
        for (name, v) in [("λ", lambda), ("r", r), ("L", tail_constant)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Parameter(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(Self { lambda, r, nu, tail_constant, mode: DeltaMode::Closed })
    }

    /// Scaling for a compound Poisson model with Pareto jobs, upstream
    /// rate r₁ (so r = r₁ − E J₁).
    pub fn for_model(model: &LevyModel, r1: f64) -> Result<Self> {
        let LevyModel::CompoundPoisson { lambda, job_law: law @ JobLaw::Pareto { index, .. } } = *model
        else {
            return Err(Error::Parameter(
                "Mittag-Leffler scaling needs compound Poisson input with Pareto jobs".into(),
            ));
        };
        let tail = law.tail_constant().expect("Pareto law has a tail constant");
        Self::new(lambda, r1 - model.mean_input(), index, tail)
    }

    pub fn with_mode(mut self, mode: DeltaMode) -> Self {
        self.mode = mode;
        self
    }

    /// C = −λΓ(1−ν)/r^{ν+1} > 0.
    pub fn balance_constant(&self) -> Result<f64> {
        Ok(-self.lambda * gamma_fn(1.0 - self.nu)? / self.r.powf(self.nu + 1.0))
    }

    pub fn delta(&self, eps: f64) -> Result<f64> {
        if !(eps > 0.0 && eps < self.r) {
            return Err(Error::Parameter(format!("ε must lie in (0, r = {}), got {eps}", self.r)));
        }
        let l = self.tail_constant;
        match self.mode {
            DeltaMode::Closed => {
                let g = gamma_fn(1.0 - self.nu)?.abs();
                Ok((eps / ((self.lambda / self.r) * g * l)).powf(1.0 / (self.nu - 1.0)))
            }
            DeltaMode::Exact => self.delta_general(eps, |_| l),
        }
    }

    /// Root of C (r − ε)^ν Δ^{ν−1} L(1/Δ) = ε on (0, 1) for a general
    /// slowly varying `l`, by bisection on the logarithm of Δ.
    pub fn delta_general<L: Fn(f64) -> f64>(&self, eps: f64, l: L) -> Result<f64> {
        let c = self.balance_constant()?;
        let lhs = |d: f64| c * (self.r - eps).powf(self.nu) * d.powf(self.nu - 1.0) * l(1.0 / d) - eps;
        let (mut lo, mut hi) = (1e-300f64.ln(), 0.0f64);
        if lhs(1.0) < 0.0 {
            return Err(Error::Numeric(format!("Δ(ε) ≥ 1 at ε = {eps}; ε too large for the scaling")));
        }
        for _ in 0..400 {
            let mid = 0.5 * (lo + hi);
            if lhs(mid.exp()) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo < 1e-15 {
                break;
            }
        }
        Ok((0.5 * (lo + hi)).exp())
    }
}

/// P(Q₂ > x) ≈ E_{ν−1}(−(Δx)^{ν−1}).
pub fn mittag_leffler_tail_approx(delta: f64, nu: f64, x: f64) -> Result<f64> {
    check_index(nu)?;
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("tail evaluated for x ≥ 0, got {x}")));
    }
    if !(delta > 0.0) {
        return Err(Error::Parameter(format!("Δ must be positive, got {delta}")));
    }
    mittag_leffler(nu - 1.0, -(delta * x).powf(nu - 1.0))
}

/// Ratios of both sides of the small-s asymptotics implied by the
/// Tauberian theorem for Pareto jobs:
///
/// * b(s) − 1 + E B·s ∼ −Γ(1−ν) L s^ν,
/// * ψ(s) − s/r ∼ λΓ(1−ν) L s^ν / r^{ν+1}.
#[derive(Debug, Clone, PartialEq)]
pub struct TauberianCheck {
    pub job_transform: ConvergenceReport,
    pub inverse_exponent: ConvergenceReport,
}

impl TauberianCheck {
    pub fn passed(&self) -> bool {
        self.job_transform.passed && self.inverse_exponent.passed
    }
}

const TAUBERIAN_TOLERANCE: f64 = 0.02;

pub fn tauberian_ratio_check(model: &LevyModel, r1: f64, s_seq: &[f64]) -> Result<TauberianCheck> {
    let LevyModel::CompoundPoisson { lambda, job_law: law @ JobLaw::Pareto { index, .. } } = *model
    else {
        return Err(Error::Parameter("Tauberian check needs compound Poisson Pareto input".into()));
    };
    check_index(index)?;
    if s_seq.is_empty() || s_seq.windows(2).any(|w| !(w[1] < w[0])) || s_seq.iter().any(|&s| !(s > 0.0)) {
        return Err(Error::Config("s-sequence must be positive and strictly decreasing".into()));
    }
    let l = law.tail_constant().expect("Pareto law has a tail constant");
    let g = gamma_fn(1.0 - index)?;
    let r = r1 - model.mean_input();
    if !(r > 0.0) {
        return Err(Error::Parameter(format!("need r₁ > E J₁, got r = {r}")));
    }
    let mut b_points = Vec::with_capacity(s_seq.len());
    let mut psi_points = Vec::with_capacity(s_seq.len());
    for &s in s_seq {
        let sn = s.powf(index);
        let b = law.lst_minus_one(C64::new(s, 0.0))?.re + law.mean() * s;
        b_points.push((s, b / (-g * l * sn)));
        let psi = model.psi(r1, C64::new(s, 0.0))?.re - s / r;
        psi_points.push((s, psi / (lambda * g * l * sn / r.powf(index + 1.0))));
    }
    Ok(TauberianCheck {
        job_transform: ConvergenceReport::ratio(b_points, TAUBERIAN_TOLERANCE),
        inverse_exponent: ConvergenceReport::ratio(psi_points, TAUBERIAN_TOLERANCE),
    })
}
