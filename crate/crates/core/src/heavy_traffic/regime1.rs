//! Regime I: the upstream load stays fixed (r₁ = E J₁ + r) while the
//! downstream node becomes critical (r₂ = E J₁ + ε, ε ↓ 0).

use crate::levy_models::stable_constant;
use crate::{Error, Result, C64};

/// Limit of E e^{−s₁Q₁ − s₂εQ₂} for finite-variance input:
/// (s₁φ'(0)/φ(s₁)) · 1/(1 + σ²s₂/2), where φ'(0) = r.
///
/// `phi` evaluates the upstream Laplace exponent.
pub fn regime1_joint_limit_finite_var<F>(sigma2: f64, r: f64, phi: F, s1: C64, s2: C64) -> Result<C64>
where
    F: Fn(C64) -> Result<C64>,
{
    if !(sigma2 > 0.0 && sigma2.is_finite()) {
        return Err(Error::Parameter(format!("σ² must be positive and finite, got {sigma2}")));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Parameter(format!("r must be positive, got {r}")));
    }
    let upstream = if s1 == C64::new(0.0, 0.0) { C64::new(1.0, 0.0) } else { s1 * r / phi(s1)? };
    let downstream = C64::new(1.0, 0.0) / (s2 * (0.5 * sigma2) + 1.0);
    Ok(upstream * downstream)
}

fn validate_stable(alpha: f64, r: f64) -> Result<()> {
    if !(alpha > 1.0 && alpha < 2.0) {
        return Err(Error::Parameter(format!("α must lie in (1, 2), got {alpha}")));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Parameter(format!("r must be positive, got {r}")));
    }
    Ok(())
}

fn pow_principal(s: C64, p: f64) -> C64 {
    if s == C64::new(0.0, 0.0) {
        s
    } else {
        s.powf(p)
    }
}

/// Limit of E e^{−s₁Q₁ − s₂ε^β Q₂} for α-stable input, β = 1/(α−1):
/// r/(r + C s₁^{α−1}) · 1/(1 + C s₂^{α−1}).
pub fn regime1_alpha_stable_limit(alpha: f64, r: f64, s1: C64, s2: C64) -> Result<C64> {
    validate_stable(alpha, r)?;
    let c = stable_constant(alpha);
    let up = C64::new(r, 0.0) / (pow_principal(s1, alpha - 1.0) * c + r);
    let down = C64::new(1.0, 0.0) / (pow_principal(s2, alpha - 1.0) * c + 1.0);
    Ok(up * down)
}

/// Scale factors (a₁, a₂) with a₁Q₁ and a₂Q₂ converging to independent
/// Mittag-Leffler laws with transform 1/(1 + s^{α−1}):
/// a₁ = (r/C)^β and a₂ = (ε/C)^β.
pub fn alpha_stable_scalings(alpha: f64, r: f64, eps: f64) -> Result<(f64, f64)> {
    validate_stable(alpha, r)?;
    if !(eps > 0.0) {
        return Err(Error::Parameter(format!("ε must be positive, got {eps}")));
    }
    let beta = 1.0 / (alpha - 1.0);
    let c = stable_constant(alpha);
    Ok(((r / c).powf(beta), (eps / c).powf(beta)))
}

/// 1/(1 + s₁^{α−1}) · 1/(1 + s₂^{α−1}).
pub fn regime1_alpha_stable_normalized(alpha: f64, s1: C64, s2: C64) -> Result<C64> {
    validate_stable(alpha, 1.0)?;
    let one = C64::new(1.0, 0.0);
    Ok(one / (pow_principal(s1, alpha - 1.0) + 1.0) / (pow_principal(s2, alpha - 1.0) + 1.0))
}
