//! Regime II: both nodes critically loaded, r₁ = E J₁ + γε and
//! r₂ = E J₁ + ε, so the scaled pair (εQ₁, εQ₂) has a non-degenerate
//! limit whenever Var J₁ = σ² is finite.
//!
//! Writing R = √(γ² + 2σ²(γ−1)s₂) and ψ̃ = 2(γ−1)s₂/(γ + R), the limit
//! transform factors as
//!
//! ```text
//! (γ + R)/(R − γ + 2) · 1/(γ + σ²(ψ̃ + s₁)/2)
//! ```
//!
//! which is an algebraic rearrangement of the ratio of the two quadratic
//! forms in s₁, s₂ without its removable zero.

use crate::{Error, Result, C64};
use serde::{Deserialize, Serialize};

fn validate(sigma2: f64, gamma: f64) -> Result<()> {
    if !(sigma2 > 0.0 && sigma2.is_finite()) {
        return Err(Error::Parameter(format!("σ² must be positive and finite, got {sigma2}")));
    }
    if !(gamma > 1.0 && gamma.is_finite()) {
        return Err(Error::Parameter(format!("Regime II needs γ > 1, got {gamma}")));
    }
    Ok(())
}

fn check_args(s: &[C64]) -> Result<()> {
    for z in s {
        if !(z.re >= 0.0) || !z.im.is_finite() || !z.re.is_finite() {
            return Err(Error::Domain(format!("limit transform needs Re(s) ≥ 0, got {z}")));
        }
    }
    Ok(())
}

/// Limit transform of (εQ₁, εQ₂).
pub fn regime2_joint_lst(sigma2: f64, gamma: f64, s1: C64, s2: C64) -> Result<C64> {
    validate(sigma2, gamma)?;
    check_args(&[s1, s2])?;
    let root = (s2 * (2.0 * sigma2 * (gamma - 1.0)) + gamma * gamma).sqrt();
    let psi = s2 * (2.0 * (gamma - 1.0)) / (root + gamma);
    let first = (root + gamma) / (root - gamma + 2.0);
    let second = C64::new(1.0, 0.0) / ((psi + s1) * (0.5 * sigma2) + gamma);
    Ok(first * second)
}

/// Limit transform of εQ₁: an exponential law with rate 2γ/σ².
pub fn regime2_upstream_lst(sigma2: f64, gamma: f64, s: C64) -> Result<C64> {
    validate(sigma2, gamma)?;
    check_args(&[s])?;
    let rate = 2.0 * gamma / sigma2;
    Ok(C64::new(rate, 0.0) / (s + rate))
}

/// Limit transform of εQ₂,
/// (1/(γ−1)) (γ − 2 + √(γ² + 2sσ²(γ−1))) / (2 + sσ²).
pub fn regime2_downstream_lst(sigma2: f64, gamma: f64, s: C64) -> Result<C64> {
    regime2_joint_lst(sigma2, gamma, C64::new(0.0, 0.0), s)
}

/// Moments of the Regime II limit pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeTwoMoments {
    pub eq1: f64,
    pub eq2: f64,
    pub var_q1: f64,
    pub var_q2: f64,
    pub cov: f64,
    pub corr: f64,
}

pub fn regime2_moments(sigma2: f64, gamma: f64) -> Result<RegimeTwoMoments> {
    validate(sigma2, gamma)?;
    let s4 = sigma2 * sigma2;
    let g3 = gamma * gamma * gamma;
    Ok(RegimeTwoMoments {
        eq1: sigma2 / (2.0 * gamma),
        eq2: sigma2 * (gamma - 1.0) / (2.0 * gamma),
        var_q1: s4 / (4.0 * gamma * gamma),
        var_q2: (gamma - 1.0).powi(2) * (gamma + 2.0) * s4 / (4.0 * g3),
        cov: (gamma - 1.0) * s4 / (4.0 * g3),
        corr: correlation_coefficient(gamma)?,
    })
}

/// c(γ) = 1/√(γ(γ+2)), decreasing from 1/√3 at γ = 1 to 0.
pub fn correlation_coefficient(gamma: f64) -> Result<f64> {
    if !(gamma > 1.0 && gamma.is_finite()) {
        return Err(Error::Parameter(format!("Regime II needs γ > 1, got {gamma}")));
    }
    Ok(1.0 / (gamma * (gamma + 2.0)).sqrt())
}
