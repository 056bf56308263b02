use super::{regime_approx, regime_name};
use crate::error::CliResult;
use crate::output::{exact, params_hash, Table, TAIL_HEADER};
use crate::spec::RunSpec;
use levytandem::InversionConfig;

pub fn run(spec: &RunSpec) -> CliResult<Table> {
    let params = spec.tandem()?;
    let xs = spec.xs()?;
    let regime = spec.regime();
    let approx = regime_approx(regime, &spec.model, &params)?;
    let mut fields = spec.hash_fields();
    fields.push(("task", "approx".into()));
    fields.push(("regime", regime_name(regime).into()));
    let hash = params_hash(&fields);
    let label = approx.provenance().label();
    let cfg = InversionConfig::default();
    let mut table = Table::new(&TAIL_HEADER);
    for x in xs {
        let p = approx.downstream_tail(x, &cfg)?;
        table.push(vec![exact(x), exact(p), label.into(), hash.clone()]);
    }
    Ok(table)
}
