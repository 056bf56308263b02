//! Resolution of command-line options into a model, a tandem and run settings.

use crate::args::{FormatArg, ModelArg, Opts, RegimeArg};
use crate::error::{CliError, CliResult};
use crate::output::exact;
use levytandem::{JobLaw, LevyModel, SimConfig, TandemParams, C64};
use std::path::Path;

/// Environment variable capping the number of simulation workers.
pub const THREADS_ENV: &str = "LEVYTANDEM_THREADS";

pub const DEFAULT_ARRIVALS: u64 = 1_000_000;
pub const DEFAULT_HORIZON: f64 = 10_000.0;

#[derive(Debug, Clone)]
pub struct RunSpec {
    pub opts: Opts,
    pub model_arg: ModelArg,
    pub model: LevyModel,
    pub threads: Option<usize>,
}

impl RunSpec {
    pub fn new(opts: Opts, threads_env: Option<&str>) -> CliResult<Self> {
        let model_arg = resolve_model(&opts)?;
        let model = build_model(model_arg, &opts)?;
        let threads = parse_threads(threads_env)?;
        Ok(Self { opts, model_arg, model, threads })
    }

    pub fn format(&self) -> FormatArg {
        self.opts.format.unwrap_or(FormatArg::Csv)
    }

    pub fn out(&self) -> Option<&Path> {
        self.opts.out.as_deref()
    }

    pub fn seed(&self) -> u64 {
        self.opts.seed.unwrap_or(1)
    }

    pub fn tandem(&self) -> CliResult<TandemParams> {
        let o = &self.opts;
        let mean = self.model.mean_input();
        let loads = (o.rho1, o.rho2);
        let rates = (o.r1, o.r2);
        let two = (o.gamma, o.eps);
        let given = [loads.0.or(loads.1), rates.0.or(rates.1), two.0.or(two.1)]
            .iter()
            .filter(|g| g.is_some())
            .count();
        if given > 1 {
            return Err(CliError::validation(
                "give exactly one of --rho1/--rho2, --r1/--r2 or --gamma/--eps",
            ));
        }
        let params = match (loads, rates, two) {
            ((Some(a), Some(b)), _, _) => TandemParams::from_loads(mean, a, b)?,
            (_, (Some(a), Some(b)), _) => TandemParams::direct(mean, a, b)?,
            (_, _, (Some(g), Some(e))) => TandemParams::regime_two(mean, g, e)?,
            ((None, None), (None, None), (None, None)) => {
                return Err(CliError::validation(
                    "no tandem given: use --rho1/--rho2 (loads), --r1/--r2 (rates) or --gamma/--eps",
                ))
            }
            _ => return Err(CliError::validation("tandem options come in pairs: both loads, both rates, or --gamma with --eps")),
        };
        Ok(params)
    }

    pub fn xs(&self) -> CliResult<Vec<f64>> {
        let xs = self.opts.xs.clone().ok_or_else(|| CliError::validation("--xs is required"))?;
        check_grid(&xs)?;
        Ok(xs)
    }

    /// Regime requested, or the natural one for the model.
    pub fn regime(&self) -> RegimeArg {
        self.opts.regime.unwrap_or(if self.model.sigma2().is_some() { RegimeArg::Two } else { RegimeArg::MittagLeffler })
    }

    pub fn sim_config(&self, xs: Vec<f64>) -> SimConfig {
        let o = &self.opts;
        let base = SimConfig::default();
        let arrivals = o.simulate.unwrap_or(DEFAULT_ARRIVALS);
        let mut cfg = SimConfig {
            seed: self.seed(),
            replications: o.replications.unwrap_or(base.replications),
            batches: o.batches.unwrap_or(base.batches),
            arrivals_per_replication: arrivals,
            xs,
            threads: self.threads,
            ..base
        };
        cfg.horizon = match (o.horizon, o.simulate) {
            (Some(h), _) => h,
            (None, Some(n)) => n as f64 * self.grid_step(),
            (None, None) => DEFAULT_HORIZON,
        };
        cfg
    }

    fn grid_step(&self) -> f64 {
        let eps = self.tandem().map(|t| t.eps()).unwrap_or(1.0);
        levytandem::simulation::default_step(eps)
    }

    /// Canonical description of the model and tandem for `params_hash`.
    pub fn hash_fields(&self) -> Vec<(&'static str, String)> {
        let mut fields = vec![("model", model_name(self.model_arg).to_string())];
        match self.model {
            LevyModel::Brownian { mean_input, sigma2 } => {
                fields.push(("lambda", exact(mean_input)));
                fields.push(("sigma2", exact(sigma2)));
            }
            LevyModel::CompoundPoisson { lambda, job_law } => {
                fields.push(("lambda", exact(lambda)));
                match job_law {
                    JobLaw::Exponential { rate } => fields.push(("mu", exact(rate))),
                    JobLaw::Pareto { index, scale } => {
                        fields.push(("nu", exact(index)));
                        fields.push(("scale", exact(scale)));
                    }
                    JobLaw::Deterministic { size } => fields.push(("size", exact(size))),
                }
            }
            LevyModel::AlphaStable { alpha, mean_input } => {
                fields.push(("lambda", exact(mean_input)));
                fields.push(("alpha", exact(alpha)));
            }
        }
        if let Ok(t) = self.tandem() {
            fields.push(("r1", exact(t.r1())));
            fields.push(("r2", exact(t.r2())));
        }
        fields
    }
}

pub fn model_name(arg: ModelArg) -> &'static str {
    match arg {
        ModelArg::Brownian => "brownian",
        ModelArg::CpExp => "cp-exp",
        ModelArg::CpPareto => "cp-pareto",
        ModelArg::Stable => "stable",
    }
}

fn resolve_model(o: &Opts) -> CliResult<ModelArg> {
    let inferred = match (o.nu.is_some(), o.alpha.is_some(), o.sigma2.is_some()) {
        (false, false, false) if o.regime == Some(RegimeArg::MittagLeffler) => Some(ModelArg::CpPareto),
        (false, false, false) => None,
        (true, false, false) => Some(ModelArg::CpPareto),
        (false, true, false) => Some(ModelArg::Stable),
        (false, false, true) => Some(ModelArg::Brownian),
        _ => return Err(CliError::validation("--nu, --alpha and --sigma2 belong to different models")),
    };
    let model = o.model.or(inferred).unwrap_or(ModelArg::CpExp);
    let allowed: &[(&str, bool)] = match model {
        ModelArg::Brownian => &[("--sigma2", true), ("--mu", false), ("--nu", false), ("--alpha", false)],
        ModelArg::CpExp => &[("--sigma2", false), ("--mu", true), ("--nu", false), ("--alpha", false)],
        ModelArg::CpPareto => &[("--sigma2", false), ("--mu", true), ("--nu", true), ("--alpha", false)],
        ModelArg::Stable => &[("--sigma2", false), ("--mu", false), ("--nu", false), ("--alpha", true)],
    };
    let present = [o.sigma2.is_some(), o.mu.is_some(), o.nu.is_some(), o.alpha.is_some()];
    for ((flag, ok), given) in allowed.iter().zip(present) {
        if given && !ok {
            return Err(CliError::validation(format!(
                "{flag} does not apply to the {} model",
                model_name(model)
            )));
        }
    }
    Ok(model)
}

fn build_model(arg: ModelArg, o: &Opts) -> CliResult<LevyModel> {
    let lambda = o.lambda.unwrap_or(1.0);
    let mu = o.mu.unwrap_or(1.0);
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(CliError::validation(format!("--mu must be positive, got {mu}")));
    }
    let model = match arg {
        ModelArg::Brownian => LevyModel::brownian(lambda, o.sigma2.unwrap_or(1.0))?,
        ModelArg::CpExp => LevyModel::compound_poisson(lambda, JobLaw::Exponential { rate: mu })?,
        ModelArg::CpPareto => {
            let nu = o.nu.unwrap_or(1.5);
            if !(nu > 1.0 && nu.is_finite()) || nu.fract() == 0.0 {
                return Err(CliError::validation(format!("--nu must be a non-integer above 1, got {nu}")));
            }
            LevyModel::compound_poisson(lambda, JobLaw::Pareto { index: nu, scale: (nu - 1.0) / (nu * mu) })?
        }
        ModelArg::Stable => LevyModel::alpha_stable(o.alpha.unwrap_or(1.5), lambda)?,
    };
    Ok(model)
}

fn parse_threads(raw: Option<&str>) -> CliResult<Option<usize>> {
    match raw.map(str::trim) {
        None | Some("") => Ok(None),
        Some(v) => match v.parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::validation(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        },
    }
}

pub fn check_grid(xs: &[f64]) -> CliResult<()> {
    if xs.is_empty() {
        return Err(CliError::validation("empty --xs"));
    }
    if xs.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
        return Err(CliError::validation("--xs values must be positive and finite"));
    }
    if xs.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(CliError::validation("--xs must be strictly increasing"));
    }
    Ok(())
}

/// Parses `a`, `bi`, `a+bi` or `a-bi`.
pub fn parse_complex(text: &str) -> CliResult<C64> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::validation(format!("cannot parse {text:?} as a complex number"));
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return t.parse::<f64>().map(|re| C64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let imag = |s: &str| -> CliResult<f64> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => s.parse().map_err(|_| bad()),
        }
    };
    match split {
        Some(i) => Ok(C64::new(body[..i].parse().map_err(|_| bad())?, imag(&body[i..])?)),
        None => Ok(C64::new(0.0, imag(body)?)),
    }
}

pub fn parse_complex_list(text: &str) -> CliResult<Vec<C64>> {
    text.split(',').map(parse_complex).collect()
}
