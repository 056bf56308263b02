//! Exact Laplace–Stieltjes transforms of the stationary workloads of the
//! fluid tandem: the upstream queue Q₁, the downstream queue Q₂, and the
//! pair (Q₁, Q₂).
//!
//! With d = r₁ − r₂, ε = r₂ − E J₁ and p = ψ(d s₂):
//!
//! ```text
//! E e^{−sQ₁}          = s φ'(0) / φ(s)
//! E e^{−s₁Q₁ − s₂Q₂}  = [ε s₂ / (s₂ − p)] · [(p − s₁) / (d s₂ − φ(s₁))]
//! E e^{−sQ₂}          = (ε/d) · ψ(ds) / (s − ψ(ds))
//! ```

use crate::levy_models::{LevyModel, TandemParams};
use crate::{Error, Result, C64};
use serde::{Deserialize, Serialize};

// Relative distance below which s₁ is treated as the removable point p.
const REMOVABLE_BAND: f64 = 1e-6;

/// A Lévy input feeding two fluid queues in series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TandemSystem {
    model: LevyModel,
    params: TandemParams,
}

impl TandemSystem {
    pub fn new(model: LevyModel, params: TandemParams) -> Result<Self> {
        let m = model.mean_input();
        if (params.mean_input() - m).abs() > 1e-12 * m {
            return Err(Error::Parameter(format!(
                "tandem parameters assume E J₁ = {}, model has {m}",
                params.mean_input()
            )));
        }
        Ok(Self { model, params })
    }

    /// System with r_i = E J₁/ρ_i.
    pub fn from_loads(model: LevyModel, rho1: f64, rho2: f64) -> Result<Self> {
        let params = TandemParams::from_loads(model.mean_input(), rho1, rho2)?;
        Self::new(model, params)
    }

    pub fn model(&self) -> &LevyModel {
        &self.model
    }

    pub fn params(&self) -> &TandemParams {
        &self.params
    }

    fn phi(&self, s: C64) -> Result<C64> {
        self.model.laplace_exponent(self.params.r1(), s)
    }

    fn psi(&self, s: C64) -> Result<C64> {
        self.model.psi(self.params.r1(), s)
    }

    fn rate_gap(&self) -> f64 {
        self.params.r1() - self.params.r2()
    }

    fn downstream_drift(&self) -> f64 {
        self.params.r2() - self.model.mean_input()
    }

    /// E e^{−sQ₁}, the generalized Pollaczek–Khinchine transform.
    pub fn lst_upstream(&self, s: C64) -> Result<C64> {
        check_half_plane(s)?;
        if s == C64::new(0.0, 0.0) {
            return Ok(C64::new(1.0, 0.0));
        }
        let slope = self.params.r1() - self.model.mean_input();
        let phi = self.phi(s)?;
        if phi.norm() <= 1e-300 {
            return Err(Error::Numeric(format!("φ(s) vanishes at s = {s:e}")));
        }
        Ok(s * slope / phi)
    }

    /// E e^{−s₁Q₁ − s₂Q₂}.
    pub fn lst_joint(&self, s1: C64, s2: C64) -> Result<C64> {
        check_half_plane(s1)?;
        check_half_plane(s2)?;
        if s2 == C64::new(0.0, 0.0) {
            return self.lst_upstream(s1);
        }
        let d = self.rate_gap();
        let p = self.psi(s2 * d)?;
        let first = s2 * self.downstream_drift() / (s2 - p);
        let second = if (s1 - p).norm() <= REMOVABLE_BAND * (1.0 + p.norm()) {
            // (p − s₁)/(φ(p) − φ(s₁)) is a divided difference of φ; at the
            // midpoint it matches 1/φ' to second order.
            let mid = (s1 + p) * 0.5;
            let deriv = self.model.laplace_exponent_derivative(self.params.r1(), mid)?;
            C64::new(1.0, 0.0) / deriv
        } else {
            let denom = s2 * d - self.phi(s1)?;
            if denom.norm() <= 1e-13 * (1.0 + (s2 * d).norm()) {
                return Err(Error::Numeric(format!(
                    "joint transform denominator vanishes at (s₁, s₂) = ({s1}, {s2})"
                )));
            }
            (p - s1) / denom
        };
        Ok(first * second)
    }

    /// E e^{−sQ₂}.
    pub fn lst_downstream(&self, s: C64) -> Result<C64> {
        check_half_plane(s)?;
        if s == C64::new(0.0, 0.0) {
            return Ok(C64::new(1.0, 0.0));
        }
        let d = self.rate_gap();
        let p = self.psi(s * d)?;
        let gap = s - p;
        if gap.norm() <= 1e-300 {
            return Err(Error::Numeric(format!("s − ψ(ds) vanishes at s = {s:e}")));
        }
        Ok(p / gap * (self.downstream_drift() / d))
    }

    /// E e^{−s(Q₁ + Q₂)}, the single-queue transform at rate r₂.
    pub fn lst_total(&self, s: C64) -> Result<C64> {
        check_half_plane(s)?;
        if s == C64::new(0.0, 0.0) {
            return Ok(C64::new(1.0, 0.0));
        }
        let exponent = self.model.laplace_exponent(self.params.r2(), s)?;
        Ok(s * self.downstream_drift() / exponent)
    }
}

fn check_half_plane(s: C64) -> Result<()> {
    if !(s.re >= 0.0) || !s.im.is_finite() || !s.re.is_finite() {
        return Err(Error::Domain(format!("transform evaluated only on Re(s) ≥ 0, got {s}")));
    }
    Ok(())
}
