use crate::error::CliResult;
use crate::output::{exact, params_hash, Table, TAIL_HEADER};
use crate::spec::RunSpec;
use levytandem::simulation::{simulate_tandem_cp, simulate_tandem_diffusive};
use levytandem::{LevyModel, Provenance, SimConfig, SimResult, TandemParams};

pub fn simulate(model: &LevyModel, params: &TandemParams, cfg: &SimConfig) -> CliResult<SimResult> {
    let res = match model {
        LevyModel::CompoundPoisson { .. } => simulate_tandem_cp(model, params, cfg)?,
        _ => simulate_tandem_diffusive(model, params, cfg)?,
    };
    Ok(res)
}

pub fn run(spec: &RunSpec) -> CliResult<Table> {
    let params = spec.tandem()?;
    let cfg = spec.sim_config(spec.xs()?);
    let res = simulate(&spec.model, &params, &cfg)?;
    let mut fields = spec.hash_fields();
    fields.push(("task", "simulate".into()));
    fields.push(("seed", cfg.seed.to_string()));
    fields.push(("replications", cfg.replications.to_string()));
    fields.push(("batches", cfg.batches.to_string()));
    fields.push(("arrivals", cfg.arrivals_per_replication.to_string()));
    fields.push(("horizon", exact(cfg.horizon)));
    let hash = params_hash(&fields);
    eprintln!(
        "mean Q1 {} ± {}, mean Q2 {} ± {}, corr {} ± {}, input rate {} ± {}",
        res.mean_q1.value,
        res.mean_q1.half_width,
        res.mean_q2.value,
        res.mean_q2.half_width,
        res.corr.value,
        res.corr.half_width,
        res.input_rate.value,
        res.input_rate.half_width
    );
    let mut header = TAIL_HEADER.to_vec();
    header.push("half_width");
    let mut table = Table::new(&header);
    for (x, est) in res.tails {
        table.push(vec![
            exact(x),
            exact(est.value),
            Provenance::Simulated.label().into(),
            hash.clone(),
            exact(est.half_width),
        ]);
    }
    Ok(table)
}
