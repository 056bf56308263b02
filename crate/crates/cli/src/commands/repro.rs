use super::simulate::simulate;
use crate::args::ReproTable;
use crate::error::CliResult;
use crate::golden::{Reference, TABLE1, TABLE2, TABLE3};
use crate::output::Table;
use crate::spec::RunSpec;
use levytandem::heavy_traffic::correlation_coefficient;
use levytandem::simulation::default_step;
use levytandem::{Estimate, InversionConfig, JobLaw, LevyModel, RegimeApprox, SimConfig, TandemParams};
use std::collections::BTreeMap;

const REGIME_TWO_EPS: f64 = 0.1;

fn fixed(v: f64) -> String {
    format!("{v:.6}")
}

fn signed(v: f64) -> String {
    format!("{v:+.6}")
}

/// Simulated tails for every load pair of the table, keyed by row index.
fn simulate_groups(
    spec: &RunSpec,
    model: &LevyModel,
    keyed: &[(f64, f64, f64, usize)],
    budget: u64,
) -> CliResult<BTreeMap<usize, Estimate>> {
    let mut groups: Vec<((f64, f64), Vec<(f64, usize)>)> = Vec::new();
    for &(a, b, x, i) in keyed {
        match groups.iter_mut().find(|g| g.0 == (a, b)) {
            Some(g) => g.1.push((x, i)),
            None => groups.push(((a, b), vec![(x, i)])),
        }
    }
    let mut out = BTreeMap::new();
    for ((rho1, rho2), points) in groups {
        let params = TandemParams::from_loads(model.mean_input(), rho1, rho2)?;
        let cfg = SimConfig {
            seed: spec.seed(),
            replications: spec.opts.replications.unwrap_or(1),
            batches: spec.opts.batches.unwrap_or(30),
            arrivals_per_replication: budget,
            xs: points.iter().map(|p| p.0).collect(),
            threads: spec.threads,
            ..SimConfig::default()
        };
        let res = simulate(model, &params, &cfg)?;
        for ((_, i), (_, est)) in points.iter().zip(res.tails) {
            out.insert(*i, est);
        }
    }
    Ok(out)
}

fn exp_table(spec: &RunSpec, text: &str) -> CliResult<Table> {
    let reference = Reference::parse(text)?;
    let keyed = reference.keyed()?;
    let (simul, r1_col, r2_col) = (reference.column("simul"), reference.column("r1"), reference.column("r2"));
    let model = LevyModel::compound_poisson(1.0, JobLaw::Exponential { rate: 1.0 })?;
    let sims = match spec.opts.simulate {
        Some(n) => Some(simulate_groups(spec, &model, &keyed, n)?),
        None => None,
    };
    let mut header = vec!["rho1", "rho2", "x", "r1", "r2", "printed_r1", "printed_r2", "diff_r1", "diff_r2"];
    if sims.is_some() {
        header.extend(["simul", "half_width", "printed_simul", "diff_simul"]);
    }
    let cfg = InversionConfig::default();
    let mut table = Table::new(&header);
    for &(rho1, rho2, x, i) in &keyed {
        let params = TandemParams::from_loads(1.0, rho1, rho2)?;
        let r1 = RegimeApprox::regime_one(&model, &params)?.downstream_tail(x, &cfg)?;
        let r2 = RegimeApprox::regime_two(&model, &params)?.downstream_tail(x, &cfg)?;
        let row = &reference.rows[i];
        let (p1, p2) = (reference.number(i, r1_col.expect("r1 column"))?, reference.number(i, r2_col.expect("r2 column"))?);
        let mut cells = vec![
            row[0].clone(),
            row[1].clone(),
            row[2].clone(),
            fixed(r1),
            fixed(r2),
            row[r1_col.unwrap()].clone(),
            row[r2_col.unwrap()].clone(),
            signed(r1 - p1),
            signed(r2 - p2),
        ];
        if let Some(sims) = &sims {
            let est = sims[&i];
            let printed = reference.number(i, simul.expect("simul column"))?;
            cells.extend([fixed(est.value), fixed(est.half_width), row[simul.unwrap()].clone(), signed(est.value - printed)]);
        }
        table.push(cells);
    }
    Ok(table)
}

fn pareto_table(spec: &RunSpec) -> CliResult<Table> {
    let reference = Reference::parse(TABLE3)?;
    let keyed = reference.keyed()?;
    let (simul, ml_col, diff_col) =
        (reference.column("simul").expect("simul"), reference.column("ml").expect("ml"), reference.column("diff_pct").expect("diff_pct"));
    let model = LevyModel::compound_poisson(1.0, JobLaw::pareto_unit_mean(1.5)?)?;
    let sims = match spec.opts.simulate {
        Some(n) => Some(simulate_groups(spec, &model, &keyed, n)?),
        None => None,
    };
    let mut header = vec!["rho1", "rho2", "x", "ml", "printed_ml", "diff_ml"];
    if sims.is_some() {
        header.extend(["simul", "half_width", "printed_simul", "diff_pct", "printed_diff_pct"]);
    }
    let cfg = InversionConfig::default();
    let mut table = Table::new(&header);
    for &(rho1, rho2, x, i) in &keyed {
        let params = TandemParams::from_loads(1.0, rho1, rho2)?;
        let ml = RegimeApprox::mittag_leffler(&model, &params)?.downstream_tail(x, &cfg)?;
        let row = &reference.rows[i];
        let mut cells = vec![
            row[0].clone(),
            row[1].clone(),
            row[2].clone(),
            fixed(ml),
            row[ml_col].clone(),
            signed(ml - reference.number(i, ml_col)?),
        ];
        if let Some(sims) = &sims {
            let est = sims[&i];
            let diff = (ml - est.value) / est.value * 100.0;
            cells.extend([fixed(est.value), fixed(est.half_width), row[simul].clone(), format!("{diff:.2}"), row[diff_col].clone()]);
        }
        table.push(cells);
    }
    Ok(table)
}

/// γ = 1.01, then 1.5, 2.0, …, 20.
pub fn gamma_grid() -> Vec<f64> {
    std::iter::once(1.01).chain((3..=40).map(|k| k as f64 * 0.5)).collect()
}

fn correlation_figure(spec: &RunSpec) -> CliResult<Table> {
    let mut header = vec!["gamma", "c"];
    if spec.opts.simulate.is_some() {
        header.extend(["simul", "half_width"]);
    }
    let mut table = Table::new(&header);
    let model = LevyModel::brownian(1.0, 2.0)?;
    for gamma in gamma_grid() {
        let mut cells = vec![format!("{gamma:.2}"), fixed(correlation_coefficient(gamma)?)];
        if let Some(steps) = spec.opts.simulate {
            let params = TandemParams::regime_two(1.0, gamma, REGIME_TWO_EPS)?;
            let cfg = SimConfig {
                seed: spec.seed(),
                horizon: steps as f64 * default_step(REGIME_TWO_EPS),
                threads: spec.threads,
                replications: spec.opts.replications.unwrap_or(1),
                batches: spec.opts.batches.unwrap_or(30),
                ..SimConfig::default()
            };
            let res = simulate(&model, &params, &cfg)?;
            cells.extend([fixed(res.corr.value), fixed(res.corr.half_width)]);
        }
        table.push(cells);
    }
    Ok(table)
}

pub fn run(spec: &RunSpec, which: ReproTable) -> CliResult<Table> {
    match which {
        ReproTable::Table1 => exp_table(spec, TABLE1),
        ReproTable::Table2 => exp_table(spec, TABLE2),
        ReproTable::Table3 => pareto_table(spec),
        ReproTable::FigCorrelation => correlation_figure(spec),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spans_the_range() {
        let g = gamma_grid();
        assert_eq!(g.first(), Some(&1.01));
        assert_eq!(g.last(), Some(&20.0));
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }
}
