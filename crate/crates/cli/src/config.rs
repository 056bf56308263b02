//! Configuration files.
//!
//! Grammar, one entry per line:
//!
//! ```text
//! line    := blank | comment | entry
//! comment := '#' <anything>
//! entry   := key '=' value
//! key     := long option name without the leading dashes, e.g. rho1, json-errors
//! value   := the rest of the line with surrounding whitespace removed
//! ```
//!
//! Keys may appear once. List values use commas (`xs = 1, 5, 10`), switches
//! take `true` or `false`. An option given on the command line overrides the
//! file.

use crate::args::Opts;
use crate::error::{CliError, CliResult};
use clap::ValueEnum;
use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

/// Parsed entries with their line numbers.
#[derive(Debug, Default, PartialEq)]
pub struct ConfigFile {
    pub entries: BTreeMap<String, (usize, String)>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::validation(format!("config line {lineno}: expected key = value, got {line:?}")));
            };
            let key = key.trim().to_ascii_lowercase().replace('_', "-");
            let value = value.trim().to_string();
            if key.is_empty() {
                return Err(CliError::validation(format!("config line {lineno}: empty key")));
            }
            if value.is_empty() {
                return Err(CliError::validation(format!("config line {lineno}: empty value for {key}")));
            }
            if let Some((first, _)) = entries.insert(key.clone(), (lineno, value)) {
                return Err(CliError::validation(format!(
                    "config line {lineno}: {key} already set on line {first}"
                )));
            }
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::validation(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Fills every option the command line left unset.
    pub fn apply(&self, opts: &mut Opts) -> CliResult<()> {
        for (key, (line, value)) in &self.entries {
            let at = |msg: String| CliError::validation(format!("config line {line}: {key}: {msg}"));
            match key.as_str() {
                "model" => fill_enum(&mut opts.model, value).map_err(at)?,
                "rho1" => fill(&mut opts.rho1, value).map_err(at)?,
                "rho2" => fill(&mut opts.rho2, value).map_err(at)?,
                "r1" => fill(&mut opts.r1, value).map_err(at)?,
                "r2" => fill(&mut opts.r2, value).map_err(at)?,
                "gamma" => fill(&mut opts.gamma, value).map_err(at)?,
                "eps" => fill(&mut opts.eps, value).map_err(at)?,
                "sigma2" => fill(&mut opts.sigma2, value).map_err(at)?,
                "lambda" => fill(&mut opts.lambda, value).map_err(at)?,
                "mu" => fill(&mut opts.mu, value).map_err(at)?,
                "nu" => fill(&mut opts.nu, value).map_err(at)?,
                "alpha" => fill(&mut opts.alpha, value).map_err(at)?,
                "xs" => {
                    if opts.xs.is_none() {
                        opts.xs = Some(parse_list(value).map_err(at)?);
                    }
                }
                "s" => fill_string(&mut opts.s, value),
                "s2" => fill_string(&mut opts.s2, value),
                "transform" => fill_enum(&mut opts.transform, value).map_err(at)?,
                "regime" => fill_enum(&mut opts.regime, value).map_err(at)?,
                "method" => fill_enum(&mut opts.method, value).map_err(at)?,
                "seed" => fill(&mut opts.seed, value).map_err(at)?,
                "simulate" => fill(&mut opts.simulate, value).map_err(at)?,
                "replications" => fill(&mut opts.replications, value).map_err(at)?,
                "batches" => fill(&mut opts.batches, value).map_err(at)?,
                "horizon" => fill(&mut opts.horizon, value).map_err(at)?,
                "reference" => fill_string(&mut opts.reference, value),
                "out" => {
                    if opts.out.is_none() {
                        opts.out = Some(value.into());
                    }
                }
                "format" => fill_enum(&mut opts.format, value).map_err(at)?,
                "json-errors" => {
                    let flag: bool = value.parse().map_err(|_| at(format!("expected true or false, got {value:?}")))?;
                    opts.json_errors |= flag;
                }
                "config" => return Err(at("config files cannot include other config files".into())),
                _ => return Err(at("unknown key".into())),
            }
        }
        Ok(())
    }
}

fn fill<T: FromStr>(slot: &mut Option<T>, value: &str) -> Result<(), String> {
    if slot.is_none() {
        *slot = Some(value.parse().map_err(|_| format!("cannot parse {value:?}"))?);
    }
    Ok(())
}

fn fill_enum<T: ValueEnum>(slot: &mut Option<T>, value: &str) -> Result<(), String> {
    if slot.is_none() {
        *slot = Some(T::from_str(value, true)?);
    }
    Ok(())
}

fn fill_string(slot: &mut Option<String>, value: &str) {
    if slot.is_none() {
        *slot = Some(value.to_string());
    }
}

pub fn parse_list(value: &str) -> Result<Vec<f64>, String> {
    value
        .split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| format!("cannot parse {:?} as a number", v.trim())))
        .collect()
}
