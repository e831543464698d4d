//! Budget and default settings: flags and environment first, then an
//! optional `key = value` file, then built-in defaults.

use std::path::Path;
use std::time::Duration;

use clap::Args;
use permgraph::enumeration::Budget;
use serde::Deserialize;

use crate::CliError;

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct Settings {
    /// Read defaults from a `key = value` file.
    #[arg(long, global = true, env = "PERMGRAPH_CONFIG")]
    pub config: Option<std::path::PathBuf>,

    /// Longest sequence the oracle accepts.
    #[arg(long, global = true, env = "PERMGRAPH_MAX_TERMS")]
    pub max_terms: Option<usize>,

    /// Most permutations the oracle may hold at once.
    #[arg(long, global = true, env = "PERMGRAPH_MAX_STORED")]
    pub max_stored: Option<usize>,

    /// Wall-clock limit per oracle call, in milliseconds.
    #[arg(long, global = true, env = "PERMGRAPH_TIME_LIMIT_MS")]
    pub time_limit_ms: Option<u64>,
}

/// Keys accepted in the config file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub max_terms: Option<usize>,
    pub max_stored: Option<usize>,
    pub time_limit_ms: Option<u64>,
    pub max_n: Option<usize>,
    pub max_edges: Option<usize>,
    pub max_support: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| {
            let (line, column) = e
                .span()
                .map(|s| line_column(&text, s.start))
                .unwrap_or((1, 1));
            CliError::Parse(format!(
                "{}: line {line}, column {column}: {}",
                path.display(),
                e.message()
            ))
        })
    }
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

/// Effective settings after merging.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub budget: Budget,
    pub file: FileConfig,
}

impl Settings {
    pub fn resolve(&self) -> Result<Resolved, CliError> {
        let file = match &self.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let mut budget = Budget::default();
        if let Some(t) = self.max_terms.or(file.max_terms) {
            budget.max_terms = t;
        }
        if let Some(s) = self.max_stored.or(file.max_stored) {
            budget.max_stored = s;
        }
        if let Some(ms) = self.time_limit_ms.or(file.time_limit_ms) {
            budget.time_limit = Some(Duration::from_millis(ms));
        }
        Ok(Resolved { budget, file })
    }
}
