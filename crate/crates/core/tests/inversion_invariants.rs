use levytandem::laplace_inversion::{invert_tail, invert_tail_detailed, tail_curve, InversionConfig, InversionMethod};
use levytandem::{Error, JobLaw, LevyModel, TandemSystem, C64};
use proptest::prelude::*;

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

#[test]
fn unit_exponential() {
    let v = invert_tail(&|s: C64| Ok(one() / (s + 1.0)), 1.0, &InversionConfig::default()).unwrap();
    assert!((v - (-1.0f64).exp()).abs() < 1e-8);
}

proptest! {
    #[test]
    fn exponential_mixtures(w in 0.05f64..0.95, mu1 in 0.05f64..5.0, mu2 in 0.05f64..5.0, x in 0.05f64..30.0) {
        let lst = |s: C64| Ok(one() / (s / mu1 + 1.0) * w + one() / (s / mu2 + 1.0) * (1.0 - w));
        let oracle = w * (-mu1 * x).exp() + (1.0 - w) * (-mu2 * x).exp();
        let v = invert_tail(&lst, x, &InversionConfig::default()).unwrap();
        prop_assert!((v - oracle).abs() < 1e-7, "{v} vs {oracle}");
    }

    #[test]
    fn euler_and_stehfest_agree_on_smooth_tails(mu in 0.1f64..3.0, x in 0.1f64..20.0) {
        let lst = |s: C64| Ok(one() / ((s / mu).sqrt() + 1.0));
        let a = invert_tail(&lst, x, &InversionConfig::default()).unwrap();
        let b = invert_tail(&lst, x, &InversionConfig::stehfest()).unwrap();
        prop_assert!((a - b).abs() < 1e-3);
    }

    #[test]
    fn upstream_tail_of_exponential_jobs(rho1 in 0.1f64..0.95, x in 0.1f64..50.0) {
        let model = LevyModel::compound_poisson(1.0, JobLaw::Exponential { rate: 1.0 }).unwrap();
        let sys = TandemSystem::from_loads(model, rho1, 0.5 * (rho1 + 1.0)).unwrap();
        let v = invert_tail(&|s: C64| sys.lst_upstream(s), x, &InversionConfig::default()).unwrap();
        let oracle = rho1 * (-(1.0 - rho1) * x).exp();
        prop_assert!((v - oracle).abs() < 1e-7);
    }
}

#[test]
fn downstream_curve_is_monotone() {
    let model = LevyModel::compound_poisson(1.0, JobLaw::pareto_unit_mean(1.5).unwrap()).unwrap();
    let sys = TandemSystem::from_loads(model, 0.5, 0.95).unwrap();
    let xs: Vec<f64> = (1..=40).map(|k| k as f64 * 12.5).collect();
    let curve = tail_curve(&|s: C64| sys.lst_downstream(s), &xs, &InversionConfig::default()).unwrap();
    assert_eq!(curve.points.len(), xs.len());
    assert!(curve.warnings.is_empty(), "{:?}", curve.warnings);
    for w in curve.points.windows(2) {
        assert!(w[1].p <= w[0].p + 1e-9);
    }
    assert!(curve.points.iter().all(|p| !p.clamped));
}

#[test]
fn error_estimate_is_reported() {
    let inv = invert_tail_detailed(&|s: C64| Ok(one() / (s + 1.0)), 2.0, &InversionConfig::default()).unwrap();
    assert!(inv.error_estimate < 1e-7);
    assert!((inv.value - (-2.0f64).exp()).abs() <= inv.error_estimate.max(1e-9));
}

#[test]
fn bad_inputs_are_rejected() {
    let lst = |s: C64| Ok(one() / (s + 1.0));
    let cfg = InversionConfig::default();
    assert!(matches!(invert_tail(&lst, 0.0, &cfg), Err(Error::Domain(_))));
    assert!(matches!(invert_tail(&lst, f64::NAN, &cfg), Err(Error::Domain(_))));
    let bad = InversionConfig { method: InversionMethod::GaverStehfest, stehfest_terms: 13, ..cfg };
    assert!(invert_tail(&lst, 1.0, &bad).is_err());
    assert!(tail_curve(&lst, &[2.0, 1.0], &cfg).is_err());
}
