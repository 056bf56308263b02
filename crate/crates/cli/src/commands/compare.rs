use super::simulate::simulate;
use super::{regime_approx, regime_name};
use crate::args::RegimeArg;
use crate::error::{CliError, CliResult};
use crate::golden::Reference;
use crate::output::{exact, params_hash, Table};
use crate::spec::{check_grid, RunSpec};
use levytandem::laplace_inversion::invert_tail;
use levytandem::{InversionConfig, Provenance, TandemParams, TandemSystem, C64};

pub const HEADER: [&str; 7] = ["x", "simul", "half_width", "method", "approx", "diff_pct", "params_hash"];

/// (x, value, half-width) of the comparison baseline.
type Baseline = Vec<(f64, f64, Option<f64>)>;

fn from_reference(name: &str, params: &TandemParams, xs: Option<&[f64]>) -> CliResult<Baseline> {
    let table = Reference::load(name)?;
    let x_col = table.column("x").ok_or_else(|| CliError::validation("reference table needs an x column"))?;
    let v_col = table
        .column("simul")
        .or_else(|| table.column("p"))
        .ok_or_else(|| CliError::validation("reference table needs a simul or p column"))?;
    let load_cols = (table.column("rho1"), table.column("rho2"));
    let mut available = Vec::new();
    for i in 0..table.rows.len() {
        if let (Some(a), Some(b)) = load_cols {
            let close = |u: f64, v: f64| (u - v).abs() <= 1e-9;
            if !(close(table.number(i, a)?, params.rho1()) && close(table.number(i, b)?, params.rho2())) {
                continue;
            }
        }
        available.push((table.number(i, x_col)?, table.number(i, v_col)?, None));
    }
    if available.is_empty() {
        return Err(CliError::validation(format!(
            "reference {name} has no rows for rho1 = {}, rho2 = {}",
            params.rho1(),
            params.rho2()
        )));
    }
    let Some(xs) = xs else {
        return Ok(available);
    };
    xs.iter()
        .map(|&x| {
            available.iter().find(|r| (r.0 - x).abs() <= 1e-9 * x.max(1.0)).copied().ok_or_else(|| {
                let have: Vec<String> = available.iter().map(|r| exact(r.0)).collect();
                CliError::validation(format!("reference {name} has no value at x = {x} (available: {})", have.join(", ")))
            })
        })
        .collect()
}

pub fn run(spec: &RunSpec) -> CliResult<Table> {
    let params = spec.tandem()?;
    if let Some(xs) = &spec.opts.xs {
        check_grid(xs)?;
    }
    let mut fields = spec.hash_fields();
    fields.push(("task", "compare".into()));
    let baseline: Baseline = match &spec.opts.reference {
        Some(name) => {
            fields.push(("reference", name.clone()));
            from_reference(name, &params, spec.opts.xs.as_deref())?
        }
        None => {
            let cfg = spec.sim_config(spec.xs()?);
            fields.push(("seed", cfg.seed.to_string()));
            fields.push(("arrivals", cfg.arrivals_per_replication.to_string()));
            fields.push(("horizon", exact(cfg.horizon)));
            let res = simulate(&spec.model, &params, &cfg)?;
            res.tails.iter().map(|(x, e)| (*x, e.value, Some(e.half_width))).collect()
        }
    };
    let regimes: Vec<RegimeArg> = match spec.opts.regime {
        Some(r) => vec![r],
        None if spec.model.sigma2().is_some() => vec![RegimeArg::One, RegimeArg::Two],
        None => vec![RegimeArg::One],
    };
    let cfg = InversionConfig::default();
    let mut methods: Vec<(String, Box<dyn Fn(f64) -> CliResult<f64>>)> = Vec::new();
    if spec.opts.regime.is_none() {
        let sys = TandemSystem::new(spec.model, params)?;
        let cfg = cfg.clone();
        methods.push((
            Provenance::ExactInverted.label().into(),
            Box::new(move |x| Ok(invert_tail(&|s: C64| sys.lst_downstream(s), x, &cfg)?)),
        ));
    }
    for regime in regimes {
        fields.push(("regime", regime_name(regime).into()));
        let approx = regime_approx(regime, &spec.model, &params)?;
        let cfg = cfg.clone();
        methods.push((approx.provenance().label().into(), Box::new(move |x| Ok(approx.downstream_tail(x, &cfg)?))));
    }
    let hash = params_hash(&fields);
    let mut table = Table::new(&HEADER);
    for (x, simul, hw) in baseline {
        for (label, eval) in &methods {
            let approx = eval(x)?;
            let diff = (approx - simul) / simul * 100.0;
            table.push(vec![
                exact(x),
                exact(simul),
                hw.map(exact).unwrap_or_default(),
                label.clone(),
                exact(approx),
                format!("{diff:.2}"),
                hash.clone(),
            ]);
        }
    }
    Ok(table)
}
