use crate::args::{MethodArg, TransformArg};
use crate::error::{CliError, CliResult};
use crate::output::{exact, params_hash, Table, TAIL_HEADER};
use crate::spec::RunSpec;
use levytandem::laplace_inversion::invert_tail;
use levytandem::{InversionConfig, Provenance, TandemSystem, C64};

pub fn inversion_config(method: Option<MethodArg>) -> InversionConfig {
    match method.unwrap_or(MethodArg::Euler) {
        MethodArg::Euler => InversionConfig::default(),
        MethodArg::Stehfest => InversionConfig::stehfest(),
    }
}

pub fn run(spec: &RunSpec) -> CliResult<Table> {
    let xs = spec.xs()?;
    let transform = spec.opts.transform.unwrap_or(TransformArg::Downstream);
    let cfg = inversion_config(spec.opts.method);
    let mut fields = vec![("task", "invert".to_string()), ("method", format!("{:?}", cfg.method))];
    let values: Vec<f64> = match transform {
        TransformArg::Exp => {
            let mu = spec.opts.mu.unwrap_or(1.0);
            fields.push(("transform", "exp".into()));
            fields.push(("mu", exact(mu)));
            let lst = move |s: C64| Ok(C64::new(mu, 0.0) / (s + mu));
            xs.iter().map(|&x| invert_tail(&lst, x, &cfg)).collect::<Result<_, _>>()?
        }
        TransformArg::Joint => {
            return Err(CliError::validation("invert needs a one-dimensional transform, not joint"))
        }
        marginal => {
            let sys = TandemSystem::new(spec.model, spec.tandem()?)?;
            fields.extend(spec.hash_fields());
            fields.push(("transform", format!("{marginal:?}").to_lowercase()));
            let lst = |s: C64| match marginal {
                TransformArg::Upstream => sys.lst_upstream(s),
                TransformArg::Total => sys.lst_total(s),
                _ => sys.lst_downstream(s),
            };
            xs.iter().map(|&x| invert_tail(&lst, x, &cfg)).collect::<Result<_, _>>()?
        }
    };
    let hash = params_hash(&fields);
    let mut table = Table::new(&TAIL_HEADER);
    for (x, p) in xs.into_iter().zip(values) {
        table.push(vec![exact(x), exact(p), Provenance::ExactInverted.label().into(), hash.clone()]);
    }
    Ok(table)
}
