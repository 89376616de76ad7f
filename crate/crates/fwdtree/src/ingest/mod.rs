//! Reading and writing graphs and matrices.

mod dot;
mod edges;
mod json;
mod mm;

pub use dot::{parse_dot_subset, render_dot};
pub use edges::{parse_edge_list, render_edge_list};
pub use json::{parse_json, render_json};
pub use mm::{read_matrix_market, write_matrix_market};

use fwdtree_core::RawGraph;
use thiserror::Error;

/// First problem found in a document. `line` is 1-based; 0 means the
/// problem is not tied to one line (for example a missing closing brace).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, reason: impl Into<String>) -> Self {
        ParseError { line, reason: reason.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum GraphFormat {
    Edges,
    Dot,
    Json,
}

impl GraphFormat {
    /// Guess from the first meaningful token: `{` is JSON, `graph` (or any
    /// other DOT keyword) is DOT, anything else an edge list.
    pub fn sniff(text: &str) -> GraphFormat {
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with("//"))
            .unwrap_or("");
        if first.starts_with('{') || first.starts_with('[') {
            GraphFormat::Json
        } else if first
            .split(|c: char| !c.is_ascii_alphanumeric())
            .next()
            .is_some_and(|w| matches!(w, "graph" | "digraph" | "strict"))
        {
            GraphFormat::Dot
        } else {
            GraphFormat::Edges
        }
    }

    pub fn parse(self, text: &str) -> Result<RawGraph, ParseError> {
        match self {
            GraphFormat::Edges => parse_edge_list(text),
            GraphFormat::Dot => parse_dot_subset(text),
            GraphFormat::Json => parse_json(text),
        }
    }

    pub fn render(self, g: &RawGraph) -> String {
        match self {
            GraphFormat::Edges => render_edge_list(g),
            GraphFormat::Dot => render_dot(g),
            GraphFormat::Json => render_json(g),
        }
    }
}
