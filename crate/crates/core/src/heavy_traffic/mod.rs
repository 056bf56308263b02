//! Heavy-traffic limit laws and the approximations built on them.
//!
//! [`RegimeApprox`] turns a model and a pair of service rates into an
//! approximation of the downstream tail P(Q₂ > x):
//!
//! | regime | input | approximation |
//! |--------|-------|---------------|
//! | I  | finite variance | exponential with rate 2ε/σ² |
//! | II | finite variance | inverted Regime II marginal at εx |
//! | I  | Pareto jobs, 1 < ν < 2 | E_{ν−1}(−(Δ(ε)x)^{ν−1}) |
//! | I  | α-stable | E_{α−1}(−(ε/C)x^{α−1}) |

pub mod expansion;
pub mod heavy_tail;
pub mod regime1;
pub mod regime2;

pub use expansion::{regime_one_expansion_check, regime_two_expansion_check};
pub use heavy_tail::{
    mittag_leffler_tail_approx, tauberian_ratio_check, DeltaMode, DeltaScaling, TauberianCheck,
};
pub use regime1::{
    alpha_stable_scalings, regime1_alpha_stable_limit, regime1_alpha_stable_normalized,
    regime1_joint_limit_finite_var,
};
pub use regime2::{
    correlation_coefficient, regime2_downstream_lst, regime2_joint_lst, regime2_moments,
    regime2_upstream_lst, RegimeTwoMoments,
};

use crate::laplace_inversion::{invert_tail, InversionConfig, Provenance};
use crate::levy_models::{stable_constant, JobLaw, LevyModel, TandemParams};
use crate::special_functions::mittag_leffler;
use crate::{Error, Result, C64};
use serde::{Deserialize, Serialize};

/// Which node is critically loaded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// Downstream only.
    One,
    /// Both nodes, with r₁ − E J₁ = γ(r₂ − E J₁).
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum VarianceClass {
    Finite,
    HeavyTailed { nu: f64 },
    AlphaStable { alpha: f64 },
}

/// A downstream heavy-traffic approximation with its parameters resolved.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeApprox {
    pub regime: Regime,
    pub variance_class: VarianceClass,
    pub sigma2: Option<f64>,
    pub eps: f64,
    pub gamma: f64,
    pub r: f64,
    pub lambda: Option<f64>,
    pub tail_constant: Option<f64>,
    pub delta: Option<f64>,
}

impl RegimeApprox {
    /// Regime I approximation for any supported input. Pareto jobs and
    /// α-stable input lead to Mittag-Leffler tails.
    pub fn regime_one(model: &LevyModel, params: &TandemParams) -> Result<Self> {
        let base = Self::base(Regime::One, params);
        match *model {
            LevyModel::CompoundPoisson { lambda, job_law: JobLaw::Pareto { index, .. } } if index < 2.0 => {
                let scaling = DeltaScaling::for_model(model, params.r1())?;
                Ok(Self {
                    variance_class: VarianceClass::HeavyTailed { nu: index },
                    lambda: Some(lambda),
                    tail_constant: Some(scaling.tail_constant),
                    delta: Some(scaling.delta(params.eps())?),
                    ..base
                })
            }
            LevyModel::AlphaStable { alpha, .. } if alpha < 2.0 => {
                Ok(Self { variance_class: VarianceClass::AlphaStable { alpha }, ..base })
            }
            _ => {
                let sigma2 = model.sigma2().ok_or_else(|| {
                    Error::Parameter("input has neither finite variance nor a supported heavy tail".into())
                })?;
                Ok(Self { sigma2: Some(sigma2), ..base })
            }
        }
    }

    /// Regime II approximation; only finite-variance input has a known limit.
    pub fn regime_two(model: &LevyModel, params: &TandemParams) -> Result<Self> {
        let sigma2 = model.sigma2().ok_or_else(|| {
            Error::Parameter(
                "Regime II needs finite-variance input; no limit law is known for infinite variance".into(),
            )
        })?;
        Ok(Self { sigma2: Some(sigma2), ..Self::base(Regime::Two, params) })
    }

    /// Mittag-Leffler approximation; requires Pareto jobs with 1 < ν < 2.
    pub fn mittag_leffler(model: &LevyModel, params: &TandemParams) -> Result<Self> {
        let approx = Self::regime_one(model, params)?;
        match approx.variance_class {
            VarianceClass::HeavyTailed { .. } => Ok(approx),
            _ => Err(Error::Parameter(
                "Mittag-Leffler approximation needs compound Poisson input with Pareto jobs, 1 < ν < 2".into(),
            )),
        }
    }

    fn base(regime: Regime, params: &TandemParams) -> Self {
        Self {
            regime,
            variance_class: VarianceClass::Finite,
            sigma2: None,
            eps: params.eps(),
            gamma: params.gamma(),
            r: params.r(),
            lambda: None,
            tail_constant: None,
            delta: None,
        }
    }

    pub fn provenance(&self) -> Provenance {
        match (self.regime, self.variance_class) {
            (Regime::Two, _) => Provenance::RegimeTwo,
            (Regime::One, VarianceClass::Finite) => Provenance::RegimeOne,
            (Regime::One, _) => Provenance::MittagLeffler,
        }
    }

    /// Approximate E e^{−sQ₂} in the original (unscaled) units.
    pub fn downstream_lst(&self, s: C64) -> Result<C64> {
        let one = C64::new(1.0, 0.0);
        match (self.regime, self.variance_class) {
            (Regime::Two, _) => {
                regime2_downstream_lst(self.sigma2.expect("finite variance"), self.gamma, s / self.eps)
            }
            (Regime::One, VarianceClass::Finite) => {
                let rate = 2.0 * self.eps / self.sigma2.expect("finite variance");
                Ok(C64::new(rate, 0.0) / (s + rate))
            }
            (Regime::One, VarianceClass::HeavyTailed { nu }) => {
                let delta = self.delta.expect("heavy-tailed approximation carries Δ");
                Ok(one / ((s / delta).powf(nu - 1.0) + 1.0))
            }
            (Regime::One, VarianceClass::AlphaStable { alpha }) => {
                Ok(one / (s.powf(alpha - 1.0) * (stable_constant(alpha) / self.eps) + 1.0))
            }
        }
    }

    /// Approximate P(Q₂ > x).
    pub fn downstream_tail(&self, x: f64, cfg: &InversionConfig) -> Result<f64> {
        if !(x >= 0.0 && x.is_finite()) {
            return Err(Error::Domain(format!("tail evaluated for x ≥ 0, got {x}")));
        }
        if x == 0.0 {
            return Ok(1.0);
        }
        match (self.regime, self.variance_class) {
            (Regime::Two, _) => {
                let sigma2 = self.sigma2.expect("finite variance");
                let gamma = self.gamma;
                invert_tail(&|s: C64| regime2_downstream_lst(sigma2, gamma, s), self.eps * x, cfg)
            }
            (Regime::One, VarianceClass::Finite) => {
                Ok((-2.0 * self.eps * x / self.sigma2.expect("finite variance")).exp())
            }
            (Regime::One, VarianceClass::HeavyTailed { nu }) => {
                mittag_leffler_tail_approx(self.delta.expect("Δ present"), nu, x)
            }
            (Regime::One, VarianceClass::AlphaStable { alpha }) => {
                let z = -(self.eps / stable_constant(alpha)) * x.powf(alpha - 1.0);
                mittag_leffler(alpha - 1.0, z)
            }
        }
    }
}

/// One point of a convergence study.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergencePoint {
    /// ε or s.
    pub parameter: f64,
    /// Residual against the expansion, or ratio − 1 for ratio checks.
    pub residual: f64,
    /// Residual divided by parameter^claimed_order, or the raw ratio.
    pub normalized: f64,
}

/// Outcome of an expansion-order or asymptotic-ratio study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub points: Vec<ConvergencePoint>,
    pub claimed_order: Option<f64>,
    /// Least-squares slope of log|residual| against log ε.
    pub fitted_order: Option<f64>,
    /// Slope (order checks) or ratio tolerance (ratio checks) required.
    pub required: f64,
    /// Every residual sits at the rounding floor: the expansion is exact.
    pub exact: bool,
    pub passed: bool,
}

impl ConvergenceReport {
    /// Order study from (ε, residual, magnitude) triples; residuals within a
    /// few ulps of the magnitude count as zero.
    pub(crate) fn order(raw: Vec<(f64, f64, f64)>, claimed: f64, required: f64) -> Self {
        let floor = |res: f64, mag: f64| res.abs() <= 64.0 * f64::EPSILON * mag;
        let points: Vec<ConvergencePoint> = raw
            .iter()
            .map(|&(e, res, _)| ConvergencePoint { parameter: e, residual: res, normalized: res / e.powf(claimed) })
            .collect();
        let usable: Vec<(f64, f64)> = raw
            .iter()
            .filter(|&&(_, res, mag)| !floor(res, mag))
            .map(|&(e, res, _)| (e.ln(), res.abs().ln()))
            .collect();
        if usable.len() < 3 {
            return Self {
                points,
                claimed_order: Some(claimed),
                fitted_order: None,
                required,
                exact: true,
                passed: true,
            };
        }
        let slope = least_squares_slope(&usable);
        Self {
            points,
            claimed_order: Some(claimed),
            fitted_order: Some(slope),
            required,
            exact: false,
            passed: slope >= required,
        }
    }

    /// Ratio study from (s, ratio) pairs; passes when the last ratio is
    /// within `tolerance` of 1.
    pub(crate) fn ratio(raw: Vec<(f64, f64)>, tolerance: f64) -> Self {
        let passed = raw.last().map_or(false, |&(_, q)| (q - 1.0).abs() <= tolerance);
        Self {
            points: raw
                .into_iter()
                .map(|(s, q)| ConvergencePoint { parameter: s, residual: q - 1.0, normalized: q })
                .collect(),
            claimed_order: None,
            fitted_order: None,
            required: tolerance,
            exact: false,
            passed,
        }
    }
}

fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}
