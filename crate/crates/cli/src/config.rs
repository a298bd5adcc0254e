//! Flat `key = value` run configurations. Keys are the long flag names of the
//! chosen subcommand plus `subcommand`; values are passed through verbatim.

use std::collections::BTreeMap;
use std::fmt;

use anyhow::{anyhow, bail, Context, Result};
use clap::CommandFactory;

use crate::Cli;

/// Flags that belong to the top-level command and are valid with any subcommand.
const GLOBAL_KEYS: [&str; 2] = ["out", "format"];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunConfig {
    pub subcommand: Option<String>,
    pub values: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("config line {}: expected `key = value`, got `{line}`", n + 1))?;
            let (key, value) = (key.trim().replace('_', "-"), value.trim().to_string());
            if key.is_empty() {
                bail!("config line {}: empty key", n + 1);
            }
            if key == "subcommand" {
                cfg.subcommand = Some(value);
            } else if cfg.values.insert(key.clone(), value).is_some() {
                bail!("config line {}: duplicate key `{key}`", n + 1);
            }
        }
        Ok(cfg)
    }

    /// Reject keys that are not flags of the subcommand.
    pub fn validate(&self, subcommand: &str) -> Result<()> {
        let cmd = Cli::command();
        let sub = cmd.find_subcommand(subcommand).ok_or_else(|| anyhow!("unknown subcommand `{subcommand}`"))?;
        for key in self.values.keys() {
            let known = GLOBAL_KEYS.contains(&key.as_str()) || sub.get_arguments().any(|a| a.get_long() == Some(key.as_str()));
            if !known {
                bail!("unknown config key `{key}` for subcommand `{subcommand}`");
            }
        }
        Ok(())
    }

    fn flags(&self) -> Vec<String> {
        self.values.iter().flat_map(|(k, v)| [format!("--{k}"), v.clone()]).collect()
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = &self.subcommand {
            writeln!(f, "subcommand = {s}")?;
        }
        for (k, v) in &self.values {
            writeln!(f, "{k} = {v}")?;
        }
        Ok(())
    }
}

fn is_subcommand(s: &str) -> bool {
    Cli::command().find_subcommand(s).is_some()
}

/// Pull `--config PATH` out of `argv` and splice the file's flags in right after
/// the subcommand name, so flags given on the command line come later and win.
pub fn expand_argv(argv: Vec<String>) -> Result<Vec<String>> {
    let mut rest = Vec::with_capacity(argv.len());
    let mut path = None;
    let mut it = argv.into_iter();
    while let Some(arg) = it.next() {
        if arg == "--config" {
            path = Some(it.next().ok_or_else(|| anyhow!("--config needs a path"))?);
        } else if let Some(p) = arg.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(arg);
        }
    }
    let Some(path) = path else {
        return Ok(rest);
    };
    let text = std::fs::read_to_string(&path).with_context(|| format!("reading config `{path}`"))?;
    let cfg = RunConfig::parse(&text)?;
    let pos = rest.iter().skip(1).position(|a| is_subcommand(a)).map(|p| p + 1);
    let (pos, sub) = match (pos, &cfg.subcommand) {
        (Some(p), Some(s)) if &rest[p] != s => bail!("config selects `{s}` but the command line selects `{}`", rest[p]),
        (Some(p), _) => (p, rest[p].clone()),
        (None, Some(s)) => {
            let at = rest.len().min(1);
            rest.insert(at, s.clone());
            (at, s.clone())
        }
        (None, None) => bail!("no subcommand given on the command line or in the config"),
    };
    cfg.validate(&sub)?;
    let tail = rest.split_off(pos + 1);
    rest.extend(cfg.flags());
    rest.extend(tail);
    Ok(rest)
}
