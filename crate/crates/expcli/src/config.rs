//! Plain-text `key = value` configuration.
//!
//! Blank lines and `#` comments are ignored. Keys match the long CLI flags
//! (`max-iter` and `max_iter` are both accepted). Later entries win, so
//! command-line flags appended after the file override it.

use std::str::FromStr;

use codil_core::operators::NoiseModel;
use codil_core::solvers::Method;

use crate::error::{CliError, Result};
use crate::spec::{ExperimentSpec, ProblemKind, SweepGrid};

pub const KEYS: [&str; 16] = [
    "problem",
    "n",
    "method",
    "nu",
    "lambda",
    "omega",
    "eps",
    "tau",
    "seed",
    "max-iter",
    "noise",
    "sweep",
    "lambdas",
    "zero-degree",
    "supercritical",
    "out",
];

fn canonical(key: &str) -> String {
    key.trim().replace('_', "-")
}

pub fn parse_config(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::config(format!("line {}", lineno + 1), "expected `key = value`")
        })?;
        let key = canonical(key);
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::config(key, "unknown key"));
        }
        pairs.push((key, value.trim().to_string()));
    }
    Ok(pairs)
}

fn last<'a>(pairs: &'a [(String, String)], key: &str) -> Option<&'a str> {
    pairs.iter().rev().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse::<T>()
        .map_err(|_| CliError::config(key, format!("cannot parse `{value}`")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(CliError::config(key, format!("expected true/false, got `{value}`"))),
    }
}

/// Builds a spec: problem first (it sets defaults), then method, then the rest.
pub fn spec_from_pairs(pairs: &[(String, String)]) -> Result<ExperimentSpec> {
    let pairs: Vec<(String, String)> = pairs.iter().map(|(k, v)| (canonical(k), v.clone())).collect();
    if let Some((k, _)) = pairs.iter().find(|(k, _)| !KEYS.contains(&k.as_str())) {
        return Err(CliError::config(k.clone(), "unknown key"));
    }
    let n = last(&pairs, "n").map(|v| parse::<usize>("n", v)).transpose()?;
    let problem = ProblemKind::parse(last(&pairs, "problem").unwrap_or("eq36"), n)?;
    let mut spec = ExperimentSpec::new(problem);
    if let Some(v) = last(&pairs, "method") {
        let method = Method::from_str(v).map_err(|e| CliError::config("method", e.to_string()))?;
        spec = spec.with_method(method);
    }
    let s = &mut spec.solver;
    if let Some(v) = last(&pairs, "nu") {
        s.nu = parse("nu", v)?;
    }
    if let Some(v) = last(&pairs, "lambda") {
        s.lambda = parse("lambda", v)?;
    }
    if let Some(v) = last(&pairs, "omega") {
        s.omega = parse("omega", v)?;
    }
    if let Some(v) = last(&pairs, "eps") {
        s.epsilon = parse("eps", v)?;
    }
    if let Some(v) = last(&pairs, "tau") {
        s.tau = parse("tau", v)?;
    }
    if let Some(v) = last(&pairs, "max-iter") {
        s.max_iter = parse("max-iter", v)?;
    }
    if let Some(v) = last(&pairs, "supercritical") {
        s.allow_supercritical = parse_bool("supercritical", v)?;
    }
    s.validate().map_err(|e| match e {
        codil_core::Error::InvalidParameter { name, value, reason } => {
            CliError::config(if name == "epsilon" { "eps" } else { name }, format!("{value}: {reason}"))
        }
        other => other.into(),
    })?;
    if let Some(v) = last(&pairs, "seed") {
        spec.seed = parse("seed", v)?;
    }
    if let Some(v) = last(&pairs, "noise") {
        spec.noise = NoiseModel::from_str(v).map_err(|e| CliError::config("noise", e.to_string()))?;
    }
    match (last(&pairs, "sweep"), last(&pairs, "lambdas")) {
        (Some(_), Some(_)) => return Err(CliError::config("sweep", "give either sweep or lambdas")),
        (Some(v), None) => spec.sweep = Some(SweepGrid::parse_range(v)?),
        (None, Some(v)) => spec.sweep = Some(SweepGrid::parse_list(v)?),
        (None, None) => {}
    }
    if let Some(v) = last(&pairs, "zero-degree") {
        spec.zero_degree = Some(parse("zero-degree", v)?);
    }
    if let Some(v) = last(&pairs, "out") {
        spec.output = Some(v.into());
    }
    Ok(spec)
}
