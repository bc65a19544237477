//! File formats and reproduction recipes behind the `balprod` binary.

pub mod alist;
pub mod bundle;
pub mod repro;

use std::path::Path;

use anyhow::{Context, Result};
use balprod::distance::{SearchConfig, DEFAULT_CANDIDATE_BUDGET, DEFAULT_TABLE_BUDGET_BYTES};
use balprod::BitMatrix;

pub const ENV_CANDIDATE_BUDGET: &str = "BALPROD_CANDIDATE_BUDGET";
pub const ENV_TABLE_BYTES: &str = "BALPROD_TABLE_BYTES";

/// Search budgets, with environment overrides applied.
pub fn search_config() -> Result<SearchConfig> {
    let read = |key: &str, default: u64| -> Result<u64> {
        match std::env::var(key) {
            Ok(v) => v.trim().parse().with_context(|| format!("{key}={v:?} is not an unsigned integer")),
            Err(_) => Ok(default),
        }
    };
    Ok(SearchConfig {
        candidate_budget: read(ENV_CANDIDATE_BUDGET, DEFAULT_CANDIDATE_BUDGET)?,
        table_budget_bytes: read(ENV_TABLE_BYTES, DEFAULT_TABLE_BUDGET_BYTES)?,
        symmetry: None,
    })
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn read_document(path: &Path) -> Result<bundle::Document> {
    bundle::Document::parse(&read_text(path)?).with_context(|| format!("{}", path.display()))
}

/// A classical matrix from an `.alist` file or a matrix bundle.
pub fn read_matrix(path: &Path) -> Result<BitMatrix> {
    let text = read_text(path)?;
    let parsed = if path.extension().is_some_and(|e| e == "alist") {
        alist::parse(&text)
    } else {
        bundle::Document::parse(&text).and_then(|d| bundle::matrix_from_document(&d))
    };
    parsed.with_context(|| format!("{}", path.display()))
}
