use crate::args::TransformArg;
use crate::error::{CliError, CliResult};
use crate::output::{exact, params_hash, Table};
use crate::spec::{parse_complex, parse_complex_list, RunSpec};
use levytandem::{TandemSystem, C64};

pub const HEADER: [&str; 6] = ["s_re", "s_im", "re", "im", "transform", "params_hash"];

pub fn run(spec: &RunSpec) -> CliResult<Table> {
    let points = parse_complex_list(spec.opts.s.as_deref().ok_or_else(|| CliError::validation("--s is required"))?)?;
    let transform = spec.opts.transform.unwrap_or(TransformArg::Downstream);
    let name = format!("{transform:?}").to_lowercase();
    let mut fields = vec![("task", "lst-eval".to_string()), ("transform", name.clone())];
    let eval: Box<dyn Fn(C64) -> CliResult<C64>> = match transform {
        TransformArg::Exp => {
            let mu = spec.opts.mu.unwrap_or(1.0);
            if !(mu > 0.0) {
                return Err(CliError::validation(format!("--mu must be positive, got {mu}")));
            }
            fields.push(("mu", exact(mu)));
            Box::new(move |s| Ok(C64::new(mu, 0.0) / (s + mu)))
        }
        other => {
            let sys = TandemSystem::new(spec.model, spec.tandem()?)?;
            fields.extend(spec.hash_fields());
            let s2 = match (other, spec.opts.s2.as_deref()) {
                (TransformArg::Joint, Some(text)) => {
                    let s2 = parse_complex(text)?;
                    fields.push(("s2", format!("{}{:+}i", exact(s2.re), s2.im)));
                    s2
                }
                (TransformArg::Joint, None) => return Err(CliError::validation("the joint transform needs --s2")),
                (_, Some(_)) => return Err(CliError::validation("--s2 applies only to --transform joint")),
                (_, None) => C64::new(0.0, 0.0),
            };
            Box::new(move |s| {
                Ok(match other {
                    TransformArg::Upstream => sys.lst_upstream(s)?,
                    TransformArg::Joint => sys.lst_joint(s, s2)?,
                    TransformArg::Total => sys.lst_total(s)?,
                    _ => sys.lst_downstream(s)?,
                })
            })
        }
    };
    let hash = params_hash(&fields);
    let mut table = Table::new(&HEADER);
    for s in points {
        if s.re < 0.0 {
            return Err(CliError::validation(format!("transform arguments need Re s ≥ 0, got {s}")));
        }
        let v = eval(s)?;
        table.push(vec![exact(s.re), exact(s.im), exact(v.re), exact(v.im), name.clone(), hash.clone()]);
    }
    Ok(table)
}
