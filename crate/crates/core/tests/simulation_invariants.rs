use levytandem::simulation::{
    estimate_correlation_pairs, simulate_tandem_cp, simulate_tandem_diffusive, CpPath, GridState,
};
use levytandem::{JobLaw, LevyModel, SimConfig, TandemParams};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

const T_29: f64 = 2.045_229_642_132_703;

fn exp_model() -> LevyModel {
    LevyModel::compound_poisson(1.0, JobLaw::Exponential { rate: 1.0 }).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn path_follows_the_tandem_recursion(seed in any::<u64>(), rho1 in 0.2f64..0.9, frac in 0.1f64..0.9) {
        let rho2 = rho1 + frac * (0.99 - rho1);
        let (r1, r2) = (1.0 / rho1, 1.0 / rho2);
        let mut path = CpPath::new(1.0, JobLaw::Exponential { rate: 1.0 }, r1, r2, ChaCha8Rng::seed_from_u64(seed));
        let (mut q1, mut total) = (0.0f64, 0.0f64);
        for _ in 0..2000 {
            let ev = path.step(None, &[]);
            q1 = (q1 - r1 * ev.inter_arrival).max(0.0);
            total = (total - r2 * ev.inter_arrival).max(0.0);
            prop_assert!((ev.q1_before - q1).abs() <= 1e-9 * (1.0 + q1));
            prop_assert!((ev.q1_before + ev.q2_before - total).abs() <= 1e-9 * (1.0 + total));
            q1 += ev.job;
            total += ev.job;
            prop_assert!(ev.q2 >= 0.0 && ev.q2_before >= 0.0);
            prop_assert!((ev.q1 - q1).abs() <= 1e-9 * (1.0 + q1));
        }
    }

    #[test]
    fn grid_state_keeps_downstream_nonnegative(steps in proptest::collection::vec(-1.0f64..3.0, 1..400)) {
        let mut g = GridState::default();
        for inc in steps {
            g.advance(inc, 0.9, 0.6);
            prop_assert!(g.q1 >= 0.0 && g.q2() >= -1e-12);
        }
    }
}

fn small_cfg(seed: u64, replications: usize, threads: Option<usize>) -> SimConfig {
    SimConfig {
        seed,
        replications,
        arrivals_per_replication: 200_000,
        xs: vec![1.0, 5.0],
        threads,
        ..SimConfig::default()
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let params = TandemParams::from_loads(1.0, 0.6, 0.8).unwrap();
    let a = simulate_tandem_cp(&exp_model(), &params, &small_cfg(7, 3, Some(1))).unwrap();
    let b = simulate_tandem_cp(&exp_model(), &params, &small_cfg(7, 3, Some(2))).unwrap();
    let c = simulate_tandem_cp(&exp_model(), &params, &small_cfg(7, 3, None)).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, c);
    let d = simulate_tandem_cp(&exp_model(), &params, &small_cfg(8, 3, Some(1))).unwrap();
    assert_ne!(a.tails, d.tails);
}

#[test]
fn diffusive_runs_are_reproducible() {
    let model = LevyModel::brownian(1.0, 2.0).unwrap();
    let params = TandemParams::regime_two(1.0, 2.0, 0.2).unwrap();
    let cfg = SimConfig { seed: 3, horizon: 2_000.0, xs: vec![1.0], ..SimConfig::default() };
    let a = simulate_tandem_diffusive(&model, &params, &cfg).unwrap();
    let b = simulate_tandem_diffusive(&model, &params, &cfg).unwrap();
    assert_eq!(a, b);
    assert!(a.tails[0].1.value > 0.0 && a.tails[0].1.value < 1.0);
}

#[test]
fn input_rate_matches_the_model() {
    let params = TandemParams::from_loads(1.0, 0.6, 0.8).unwrap();
    let cfg = SimConfig { arrivals_per_replication: 2_000_000, ..small_cfg(11, 1, None) };
    let res = simulate_tandem_cp(&exp_model(), &params, &cfg).unwrap();
    let se = res.input_rate.half_width / T_29;
    assert!((res.input_rate.value - 1.0).abs() <= 3.0 * se, "{:?}", res.input_rate);
}

#[test]
fn moderate_load_matches_exact_values() {
    // Exact inversion of the downstream transform at (0.6, 0.8): P(Q₂ > 1) = 0.49955, P(Q₂ > 5) = 0.16393.
    let params = TandemParams::from_loads(1.0, 0.6, 0.8).unwrap();
    let cfg = SimConfig { arrivals_per_replication: 4_000_000, ..small_cfg(5, 1, None) };
    let res = simulate_tandem_cp(&exp_model(), &params, &cfg).unwrap();
    for ((x, est), want) in res.tails.iter().zip([0.49955, 0.16393]) {
        assert!((est.value - want).abs() <= 1.5 * est.half_width + 2e-3, "x = {x}: {est:?} vs {want}");
    }
    let eq1 = 0.6 / 0.4;
    assert!((res.mean_q1.value - eq1).abs() <= 1.5 * res.mean_q1.half_width + 1e-2);
}

#[test]
fn independent_pairs_give_zero_correlation() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let pairs: Vec<(f64, f64)> =
        (0..30_000).map(|_| (rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
    let est = estimate_correlation_pairs(&pairs, 30).unwrap();
    assert!(est.corr.value.abs() <= est.corr.half_width, "{:?}", est.corr);

    let rho: f64 = 0.6;
    let pairs: Vec<(f64, f64)> = (0..30_000)
        .map(|_| {
            let (a, b): (f64, f64) = (rng.sample(StandardNormal), rng.sample(StandardNormal));
            (a, rho * a + (1.0 - rho * rho).sqrt() * b)
        })
        .collect();
    let est = estimate_correlation_pairs(&pairs, 30).unwrap();
    assert!((est.corr.value - rho).abs() <= 1.5 * est.corr.half_width, "{:?}", est.corr);
    assert!(estimate_correlation_pairs(&pairs, 5).is_err());
}

#[test]
fn invalid_configs_are_rejected() {
    let params = TandemParams::from_loads(1.0, 0.6, 0.8).unwrap();
    for cfg in [
        SimConfig { replications: 0, ..SimConfig::default() },
        SimConfig { batches: 3, ..SimConfig::default() },
        SimConfig { burn_in: 0.7, ..SimConfig::default() },
        SimConfig { xs: vec![-1.0], ..SimConfig::default() },
        SimConfig { threads: Some(0), ..SimConfig::default() },
    ] {
        assert!(simulate_tandem_cp(&exp_model(), &params, &cfg).unwrap_err().is_validation());
    }
}
