//! Fixtures shared by the benchmarks.

use levytandem::{JobLaw, LevyModel, TandemParams, TandemSystem};

pub fn exponential_system(rho1: f64, rho2: f64) -> TandemSystem {
    let model = LevyModel::compound_poisson(1.0, JobLaw::Exponential { rate: 1.0 }).expect("valid model");
    TandemSystem::from_loads(model, rho1, rho2).expect("valid loads")
}

pub fn pareto_system(rho1: f64, rho2: f64) -> TandemSystem {
    let law = JobLaw::pareto_unit_mean(1.5).expect("valid index");
    let model = LevyModel::compound_poisson(1.0, law).expect("valid model");
    TandemSystem::from_loads(model, rho1, rho2).expect("valid loads")
}

pub fn loads(rho1: f64, rho2: f64) -> TandemParams {
    TandemParams::from_loads(1.0, rho1, rho2).expect("valid loads")
}
