//! Scenario files: the JSON envelope, grid and parameter decoding.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::value::RawValue;

use crate::error::{CliError, CliResult};
use crate::families::{self, Family, Kind};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub t_start: f64,
    pub t_end: f64,
    pub steps: usize,
}

impl Grid {
    pub fn validate(&self) -> CliResult<()> {
        if !(self.t_start.is_finite() && self.t_end.is_finite()) {
            return Err(CliError::Validation("grid: t_start and t_end must be finite".into()));
        }
        if self.steps < 1 {
            return Err(CliError::Validation("grid: steps must be at least 1".into()));
        }
        Ok(())
    }

    /// Evenly spaced epochs, both ends included.
    pub fn epochs(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.t_start];
        }
        let n = (self.steps - 1) as f64;
        let span = self.t_end - self.t_start;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.t_end } else { self.t_start + span * (i as f64 / n) })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Constants {
    #[serde(default)]
    pub c: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    #[serde(default)]
    pub format: Option<Format>,
    #[serde(default)]
    pub path: Option<PathBuf>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope<'a> {
    schema_version: u32,
    scenario: String,
    #[serde(borrow)]
    params: &'a RawValue,
    grid: Grid,
    #[serde(default)]
    constants: Constants,
    #[serde(default)]
    outputs: Outputs,
}

/// A parsed and validated scenario.
pub struct Scenario {
    pub kind: &'static Kind,
    pub family: Box<dyn Family>,
    pub grid: Grid,
    pub c: f64,
    pub outputs: Outputs,
    /// Directory relative paths in the file are resolved against
    pub base_dir: PathBuf,
}

impl std::fmt::Debug for Scenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Scenario").field("tag", &self.kind.tag).field("grid", &self.grid).field("c", &self.c).finish()
    }
}

impl Scenario {
    pub fn tag(&self) -> &'static str {
        self.kind.tag
    }

    /// Output path from the file, resolved against the scenario directory.
    pub fn output_path(&self) -> Option<PathBuf> {
        self.outputs.path.as_ref().map(|p| self.base_dir.join(p))
    }
}

/// Context handed to a family builder.
pub struct BuildCtx<'a> {
    pub tag: &'static str,
    pub c: f64,
    pub base_dir: &'a Path,
    source: &'a str,
    name: &'a str,
    params: &'a str,
}

/// Strips serde_json's trailing " at line L column C".
fn bare_message(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_string(),
        None => s,
    }
}

impl BuildCtx<'_> {
    /// Decodes `params` into `P`, reporting file line, column and field path.
    pub fn parse<P: DeserializeOwned>(&self) -> CliResult<P> {
        let mut de = serde_json::Deserializer::from_str(self.params);
        serde_path_to_error::deserialize(&mut de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            let offset = self.params.as_ptr() as usize - self.source.as_ptr() as usize;
            let before = &self.source[..offset];
            let base_line = before.matches('\n').count() + 1;
            let base_col = offset - before.rfind('\n').map_or(0, |i| i + 1);
            let (line, col) = if inner.line() <= 1 {
                (base_line, base_col + inner.column())
            } else {
                (base_line + inner.line() - 1, inner.column())
            };
            let field = if path == "." { "params".to_string() } else { format!("params.{path}") };
            CliError::Validation(format!("{}:{line}:{col}: {field}: {}", self.name, bare_message(&inner)))
        })
    }

    pub fn invalid(&self, e: doppler::DopplerError) -> CliError {
        CliError::at(self.tag, None, e)
    }
}

/// Parses scenario text. `name` labels diagnostics, `base_dir` anchors
/// relative paths.
pub fn parse_scenario(text: &str, name: &str, base_dir: &Path) -> CliResult<Scenario> {
    let mut de = serde_json::Deserializer::from_str(text);
    let env: Envelope = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        CliError::Validation(format!("{name}:{}:{}: {path}: {}", inner.line(), inner.column(), bare_message(&inner)))
    })?;
    de.end().map_err(|e| CliError::Validation(format!("{name}: {e}")))?;
    if env.schema_version != SCHEMA_VERSION {
        return Err(CliError::Validation(format!(
            "{name}: unsupported schema_version {} (expected {SCHEMA_VERSION})",
            env.schema_version
        )));
    }
    let kind = families::lookup(&env.scenario).ok_or_else(|| {
        CliError::Validation(format!("{name}: unknown scenario tag '{}'; run list-scenarios for the accepted tags", env.scenario))
    })?;
    env.grid.validate()?;
    let c = env.constants.c.unwrap_or(doppler::core::C);
    if !(c.is_finite() && c > 0.0) {
        return Err(CliError::Validation(format!("{name}: constants.c must be positive, got {c}")));
    }
    let ctx = BuildCtx { tag: kind.tag, c, base_dir, source: text, name, params: env.params.get() };
    let family = (kind.build)(&ctx)?;
    Ok(Scenario { kind, family, grid: env.grid, c, outputs: env.outputs, base_dir: base_dir.to_path_buf() })
}

pub fn load_scenario(path: &Path) -> CliResult<Scenario> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_scenario(&text, &path.display().to_string(), &base)
}
