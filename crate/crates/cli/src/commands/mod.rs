pub mod approx;
pub mod compare;
pub mod invert;
pub mod lst_eval;
pub mod repro;
pub mod simulate;

use crate::args::RegimeArg;
use crate::error::{CliError, CliResult};
use levytandem::{LevyModel, RegimeApprox, TandemParams};

pub fn regime_approx(regime: RegimeArg, model: &LevyModel, params: &TandemParams) -> CliResult<RegimeApprox> {
    let approx = match regime {
        RegimeArg::One => RegimeApprox::regime_one(model, params),
        RegimeArg::Two => RegimeApprox::regime_two(model, params),
        RegimeArg::MittagLeffler => RegimeApprox::mittag_leffler(model, params),
    };
    approx.map_err(|e| match regime {
        RegimeArg::Two if model.sigma2().is_none() => {
            CliError::validation(format!("{e}; use --regime 1 or --regime ml instead"))
        }
        _ => e.into(),
    })
}

pub fn regime_name(regime: RegimeArg) -> &'static str {
    match regime {
        RegimeArg::One => "1",
        RegimeArg::Two => "2",
        RegimeArg::MittagLeffler => "ml",
    }
}
