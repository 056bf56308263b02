//! Numerical order-of-expansion checks for the small-ε behaviour of ψ that
//! underlies both heavy-traffic limits.
//!
//! * Regime I: ψ(sε(r−ε)) = sε − sε²/r − σ²s²ε²/(2r) + o(ε²).
//! * Regime II, with φ'(0) = ε and σ² = 1:
//!   ψ(sε²(γ−1)) = ε(−1 + √(1 + 2s(γ−1))) + o(ε).

use super::ConvergenceReport;
use crate::levy_models::LevyModel;
use crate::{Error, Result, C64};

const MIN_POINTS: usize = 6;
const ORDER_MARGIN: f64 = 0.3;

fn check_sequence(eps_seq: &[f64]) -> Result<()> {
    if eps_seq.len() < MIN_POINTS {
        return Err(Error::Config(format!(
            "expansion checks need at least {MIN_POINTS} ε values, got {}",
            eps_seq.len()
        )));
    }
    if eps_seq.iter().any(|&e| !(e > 0.0)) || eps_seq.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::Config("ε-sequence must be positive and strictly decreasing".into()));
    }
    Ok(())
}

fn finite_variance(model: &LevyModel) -> Result<f64> {
    model
        .sigma2()
        .ok_or_else(|| Error::Parameter("expansion checks need finite-variance input".into()))
}

/// Residuals of ψ(sε(r−ε)) against its second-order expansion; the fitted
/// order must reach 2.3.
pub fn regime_one_expansion_check(model: &LevyModel, r: f64, s: f64, eps_seq: &[f64]) -> Result<ConvergenceReport> {
    let sigma2 = finite_variance(model)?;
    check_sequence(eps_seq)?;
    if !(r > 0.0) || eps_seq[0] >= r {
        return Err(Error::Parameter(format!("need 0 < ε < r, got r = {r}")));
    }
    let r1 = model.mean_input() + r;
    let mut points = Vec::with_capacity(eps_seq.len());
    for &eps in eps_seq {
        let psi = model.psi(r1, C64::new(s * eps * (r - eps), 0.0))?.re;
        let predicted = s * eps - s * eps * eps / r - sigma2 * s * s * eps * eps / (2.0 * r);
        points.push((eps, psi - predicted, psi.abs().max(predicted.abs())));
    }
    Ok(ConvergenceReport::order(points, 2.0, 2.0 + ORDER_MARGIN))
}

/// Residuals of σψ(sε²(γ−1)) for the model run at drift φ'(0) = εσ against
/// ε(−1 + √(1 + 2s(γ−1))). Substituting y = σx maps the model's exponent to
/// one with φ'(0) = ε and unit variance, so the comparison is the unit-variance
/// form for any σ².
pub fn regime_two_expansion_check(model: &LevyModel, gamma: f64, s: f64, eps_seq: &[f64]) -> Result<ConvergenceReport> {
    let sigma2 = finite_variance(model)?;
    check_sequence(eps_seq)?;
    if !(gamma > 1.0) {
        return Err(Error::Parameter(format!("γ must exceed 1, got {gamma}")));
    }
    let sigma = sigma2.sqrt();
    let lead = -1.0 + (1.0 + 2.0 * s * (gamma - 1.0)).sqrt();
    let mut points = Vec::with_capacity(eps_seq.len());
    for &eps in eps_seq {
        let r1 = model.mean_input() + eps * sigma;
        let psi = sigma * model.psi(r1, C64::new(s * eps * eps * (gamma - 1.0), 0.0))?.re;
        let predicted = eps * lead;
        points.push((eps, psi - predicted, psi.abs().max(predicted.abs())));
    }
    Ok(ConvergenceReport::order(points, 1.0, 1.0 + ORDER_MARGIN))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levy_models::JobLaw;

    fn geometric(n: usize) -> Vec<f64> {
        (0..n).map(|k| 0.1 * 0.5f64.powi(k as i32)).collect()
    }

    #[test]
    fn brownian_regime_one_order() {
        let m = LevyModel::brownian(1.0, 2.0).unwrap();
        let rep = regime_one_expansion_check(&m, 1.0, 1.0, &geometric(8)).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!(rep.fitted_order.unwrap() >= 2.5);
    }

    #[test]
    fn exponential_jobs_order_three() {
        let m = LevyModel::compound_poisson(1.0, JobLaw::Exponential { rate: 1.0 }).unwrap();
        let rep = regime_one_expansion_check(&m, 1.0, 1.0, &geometric(8)).unwrap();
        assert!(rep.passed);
        assert!((rep.fitted_order.unwrap() - 3.0).abs() < 0.2, "{rep:?}");
    }

    #[test]
    fn zero_argument_gives_zero_residual() {
        let m = LevyModel::brownian(1.0, 2.0).unwrap();
        let rep = regime_one_expansion_check(&m, 1.0, 0.0, &geometric(6)).unwrap();
        assert!(rep.points.iter().all(|p| p.residual == 0.0));
        let rep = regime_two_expansion_check(&m, 2.0, 0.0, &geometric(6)).unwrap();
        assert!(rep.points.iter().all(|p| p.residual == 0.0));
    }

    #[test]
    fn regime_two_leading_coefficient() {
        let m = LevyModel::brownian(1.0, 1.0).unwrap();
        let eps = 1e-4;
        let psi = m.psi(1.0 + eps, C64::new(4.0 * eps * eps, 0.0)).unwrap().re;
        assert!((psi / eps - 2.0).abs() < 0.02);
        let rep = regime_two_expansion_check(&m, 2.0, 1.0, &geometric(7)).unwrap();
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn regime_two_compound_poisson() {
        let m = LevyModel::compound_poisson(1.0, JobLaw::Exponential { rate: 1.0 }).unwrap();
        let rep = regime_two_expansion_check(&m, 2.0, 1.0, &geometric(8)).unwrap();
        assert!(rep.passed && rep.fitted_order.unwrap() >= 1.3, "{rep:?}");
    }

    #[test]
    fn short_sequence_rejected() {
        let m = LevyModel::brownian(1.0, 2.0).unwrap();
        assert!(matches!(regime_one_expansion_check(&m, 1.0, 1.0, &geometric(3)), Err(Error::Config(_))));
    }
}
