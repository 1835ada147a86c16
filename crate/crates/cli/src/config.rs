//! `key = value` run configuration. Every key is also a command-line flag, and
//! flags override the file.

use std::path::{Path, PathBuf};

use sr_chroma::steenrod::RelationSet;

use crate::report::Format;
use crate::CliError;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunConfig {
    pub p: Option<u32>,
    pub family: Option<String>,
    pub vector: Option<String>,
    pub generators: Option<String>,
    pub graph: Option<PathBuf>,
    pub table: Option<PathBuf>,
    pub degree_bound: Option<u32>,
    pub relations: Option<RelationSet>,
    pub multisets: Option<PathBuf>,
    pub format: Option<Format>,
    /// `Some(None)` disables the cap.
    pub cap: Option<Option<u64>>,
    pub scheme: Option<String>,
    pub c: Option<usize>,
}

fn number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value.parse().map_err(|_| CliError::Input(format!("`{key}` expects a number, got `{value}`")))
}

pub fn parse_cap(value: &str) -> Result<Option<u64>, CliError> {
    match value {
        "none" | "off" => Ok(None),
        v => number::<f64>("cap", v).and_then(|x| {
            if x.is_finite() && x >= 1.0 && x.fract() == 0.0 && x <= u64::MAX as f64 {
                Ok(Some(x as u64))
            } else {
                Err(CliError::Input(format!("`cap` expects a positive integer or `none`, got `{v}`")))
            }
        }),
    }
}

pub fn parse_relations(value: &str) -> Result<RelationSet, CliError> {
    value.parse().map_err(|e: sr_chroma::Error| CliError::Input(e.to_string()))
}

impl RunConfig {
    /// Parses a configuration file; relative paths resolve against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Input(format!("config line {}: expected `key = value`", i + 1)))?;
            let key = key.trim().replace('-', "_");
            let value = value.trim();
            let path = || base.join(value);
            match key.as_str() {
                "p" | "prime" => cfg.p = Some(number(&key, value)?),
                "family" => cfg.family = Some(value.into()),
                "vector" => cfg.vector = Some(value.into()),
                "generators" => cfg.generators = Some(value.into()),
                "graph" => cfg.graph = Some(path()),
                "table" => cfg.table = Some(path()),
                "degree_bound" => cfg.degree_bound = Some(number(&key, value)?),
                "relations" => cfg.relations = Some(parse_relations(value)?),
                "multisets" => cfg.multisets = Some(path()),
                "format" => cfg.format = Some(value.parse()?),
                "cap" => cfg.cap = Some(parse_cap(value)?),
                "scheme" => cfg.scheme = Some(value.into()),
                "c" | "colors" => cfg.c = Some(number(&key, value)?),
                other => return Err(CliError::Input(format!("config line {}: unknown key `{other}`", i + 1))),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = crate::read(path)?;
        RunConfig::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    /// Fields set in `flags` win.
    pub fn overlay(self, flags: RunConfig) -> RunConfig {
        RunConfig {
            p: flags.p.or(self.p),
            family: flags.family.or(self.family),
            vector: flags.vector.or(self.vector),
            generators: flags.generators.or(self.generators),
            graph: flags.graph.or(self.graph),
            table: flags.table.or(self.table),
            degree_bound: flags.degree_bound.or(self.degree_bound),
            relations: flags.relations.or(self.relations),
            multisets: flags.multisets.or(self.multisets),
            format: flags.format.or(self.format),
            cap: flags.cap.or(self.cap),
            scheme: flags.scheme.or(self.scheme),
            c: flags.c.or(self.c),
        }
    }
}
