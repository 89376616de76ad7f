//! Matrix output formats.

use std::fmt::Write;

use fwdtree_core::IntMatrix;
use serde::Serialize;

use crate::ingest::write_matrix_market;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum MatrixFormat {
    /// Columns padded to a common width.
    #[default]
    Text,
    /// `{"rows": r, "cols": c, "data": [[...], ...]}`.
    Json,
    /// Matrix Market coordinate, 1-based.
    Mm,
    /// One row per line, entries separated by single spaces.
    Dense,
}

#[derive(Serialize)]
struct MatrixDoc<'a> {
    rows: usize,
    cols: usize,
    data: Vec<&'a [i64]>,
}

pub fn render_matrix(format: MatrixFormat, m: &IntMatrix) -> String {
    match format {
        MatrixFormat::Dense => m.to_string(),
        MatrixFormat::Text => {
            let width = m
                .nonzeros()
                .map(|(_, _, v)| v.to_string().len())
                .max()
                .unwrap_or(1);
            let mut out = String::new();
            for r in 0..m.rows() {
                let cells: Vec<String> = m.row(r).iter().map(|v| format!("{v:>width$}")).collect();
                writeln!(out, "{}", cells.join(" ")).unwrap();
            }
            out
        }
        MatrixFormat::Json => {
            let doc = MatrixDoc {
                rows: m.rows(),
                cols: m.cols(),
                data: (0..m.rows()).map(|r| m.row(r)).collect(),
            };
            let mut s = serde_json::to_string(&doc).expect("plain integers serialize");
            s.push('\n');
            s
        }
        MatrixFormat::Mm => write_matrix_market(
            m.rows(),
            m.cols(),
            m.nonzeros().map(|(r, c, v)| (r + 1, c + 1, v)),
        ),
    }
}
