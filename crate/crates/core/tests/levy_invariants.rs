use levytandem::levy_models::{
    psi_cardano_three_halves, psi_closed_brownian, psi_from_busy_period, psi_numeric, stable_constant,
};
use levytandem::{JobLaw, LevyModel, C64};
use proptest::prelude::*;

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn models() -> impl Strategy<Value = LevyModel> {
    prop_oneof![
        (0.2f64..3.0, 0.1f64..4.0).prop_map(|(m, s2)| LevyModel::brownian(m, s2).unwrap()),
        (0.2f64..3.0).prop_map(|l| LevyModel::compound_poisson(l, JobLaw::Exponential { rate: 1.0 }).unwrap()),
        (1.1f64..2.9).prop_map(|nu| LevyModel::compound_poisson(1.0, JobLaw::pareto_unit_mean(nu + 1e-3).unwrap()).unwrap()),
        (1.1f64..2.0).prop_map(|a| LevyModel::alpha_stable(a, 1.0).unwrap()),
    ]
}

proptest! {
    #[test]
    fn psi_inverts_phi_on_real_axis(model in models(), slack in 0.05f64..3.0, s in 1e-3f64..50.0) {
        let r1 = model.mean_input() + slack;
        let p = model.psi(r1, c(s)).unwrap();
        let back = model.laplace_exponent(r1, p).unwrap();
        prop_assert!((back - c(s)).norm() <= 1e-10 * s.max(1.0), "φ(ψ({s})) = {back}");
        prop_assert!(p.re >= 0.0 && p.im.abs() < 1e-12);
    }

    #[test]
    fn psi_inverts_phi_off_axis(model in models(), slack in 0.1f64..2.0, re in 0.0f64..5.0, im in -5.0f64..5.0) {
        prop_assume!(re + im.abs() > 1e-3);
        let r1 = model.mean_input() + slack;
        let s = C64::new(re, im);
        let p = model.psi(r1, s).unwrap();
        prop_assert!(p.re >= -1e-12);
        let back = model.laplace_exponent(r1, p).unwrap();
        prop_assert!((back - s).norm() <= 1e-9 * s.norm().max(1.0), "φ(ψ({s})) = {back}");
    }

    #[test]
    fn exponent_is_convex(model in models(), slack in 0.05f64..3.0, a in 0.0f64..20.0, b in 0.0f64..20.0) {
        let r1 = model.mean_input() + slack;
        let phi = |s: f64| model.laplace_exponent(r1, c(s)).unwrap().re;
        let mid = phi(0.5 * (a + b));
        prop_assert!(mid <= 0.5 * (phi(a) + phi(b)) + 1e-12 * (1.0 + phi(a).abs() + phi(b).abs()));
    }

    #[test]
    fn psi_is_increasing(model in models(), slack in 0.05f64..3.0, s in 1e-3f64..20.0, ds in 1e-3f64..5.0) {
        let r1 = model.mean_input() + slack;
        let lo = model.psi(r1, c(s)).unwrap().re;
        let hi = model.psi(r1, c(s + ds)).unwrap().re;
        prop_assert!(hi > lo);
    }

    #[test]
    fn takacs_route_matches_newton(lambda in 0.2f64..2.0, slack in 0.05f64..2.0, s in 1e-3f64..20.0) {
        let model = LevyModel::compound_poisson(lambda, JobLaw::Exponential { rate: 1.0 }).unwrap();
        let r1 = lambda + slack;
        let a = psi_from_busy_period(&model, r1, s).unwrap();
        let b = psi_numeric(&model, r1, c(s)).unwrap().re;
        prop_assert!((a - b).abs() <= 1e-10 * b.max(1e-3));
    }

    #[test]
    fn cardano_matches_newton(slack in 0.05f64..3.0, re in 0.0f64..10.0, im in -10.0f64..10.0) {
        prop_assume!(re + im.abs() > 1e-3);
        let model = LevyModel::alpha_stable(1.5, 1.0).unwrap();
        let s = C64::new(re, im);
        let a = psi_cardano_three_halves(slack, s).unwrap();
        let b = psi_numeric(&model, 1.0 + slack, s).unwrap();
        prop_assert!((a - b).norm() <= 1e-9 * b.norm().max(1e-3));
    }
}

#[test]
fn stable_index_two_is_brownian_with_variance_two() {
    assert!((stable_constant(2.0) - 1.0).abs() < 1e-15);
    let stable = LevyModel::alpha_stable(2.0, 1.0).unwrap();
    let bm = LevyModel::brownian(1.0, 2.0).unwrap();
    for s in [C64::new(0.3, 0.0), C64::new(2.0, -1.5), C64::new(0.0, 4.0)] {
        let a = stable.laplace_exponent(1.7, s).unwrap();
        let b = bm.laplace_exponent(1.7, s).unwrap();
        assert!((a - b).norm() < 1e-13 * (1.0 + b.norm()));
        let pa = psi_numeric(&stable, 1.7, s).unwrap();
        let pb = psi_closed_brownian(&bm, 1.7, s).unwrap();
        assert!((pa - pb).norm() < 1e-10 * (1.0 + pb.norm()));
    }
}

#[test]
fn exponential_jobs_have_quadratic_inverse() {
    // φ(s) = r s − λ s/(1+s) is a ratio of quadratics, so ψ solves r ψ² + (r − λ − s)ψ − s = 0.
    let (lambda, r1) = (1.0, 1.6);
    let model = LevyModel::compound_poisson(lambda, JobLaw::Exponential { rate: 1.0 }).unwrap();
    for s in [1e-4, 0.3, 2.0, 40.0] {
        let b = r1 - lambda - s;
        let root = (-b + (b * b + 4.0 * r1 * s).sqrt()) / (2.0 * r1);
        let p = model.psi(r1, c(s)).unwrap().re;
        assert!((p - root).abs() < 1e-12 * root.max(1e-3), "s = {s}: {p} vs {root}");
    }
}

#[test]
fn rates_at_or_below_the_mean_are_rejected() {
    let model = LevyModel::compound_poisson(1.0, JobLaw::Exponential { rate: 1.0 }).unwrap();
    assert!(model.psi(1.0, c(1.0)).is_err());
    assert!(model.psi(0.5, c(1.0)).is_err());
    assert!(LevyModel::alpha_stable(1.0, 1.0).is_err());
    assert!(LevyModel::brownian(1.0, -1.0).is_err());
}
