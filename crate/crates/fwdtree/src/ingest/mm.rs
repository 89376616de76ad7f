//! Matrix Market coordinate files with integer entries, 1-based.

use std::fmt::Write;

use fwdtree_core::IntMatrix;

use super::ParseError;

const BANNER: &str = "%%MatrixMarket matrix coordinate integer general";

/// `entries` are `(row, col, value)`, 1-based, written in the order given.
pub fn write_matrix_market(
    rows: usize,
    cols: usize,
    entries: impl IntoIterator<Item = (usize, usize, i64)>,
) -> String {
    let entries: Vec<_> = entries.into_iter().collect();
    let mut out = format!("{BANNER}\n{rows} {cols} {}\n", entries.len());
    for (r, c, v) in entries {
        writeln!(out, "{r} {c} {v}").unwrap();
    }
    out
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, ParseError> {
    let tok = tok.ok_or_else(|| ParseError::new(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| ParseError::new(line, format!("bad {what} `{tok}`")))
}

/// Reads a coordinate file into a dense grid. Repeated positions are
/// rejected rather than summed.
pub fn read_matrix_market(text: &str) -> Result<IntMatrix, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (_, banner) = lines.next().ok_or_else(|| ParseError::new(1, "empty document"))?;
    let words: Vec<String> = banner.split_whitespace().map(str::to_ascii_lowercase).collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" || words[1] != "matrix" {
        return Err(ParseError::new(1, "missing `%%MatrixMarket matrix` banner"));
    }
    if words[2] != "coordinate" || words[3] != "integer" || words[4] != "general" {
        return Err(ParseError::new(
            1,
            format!("only `coordinate integer general` is supported, found `{}`", words[2..].join(" ")),
        ));
    }
    let mut body = lines.filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
    let (line, size) = body.next().ok_or_else(|| ParseError::new(0, "missing size line"))?;
    let mut toks = size.split_whitespace();
    let rows: usize = field(toks.next(), line, "row count")?;
    let cols: usize = field(toks.next(), line, "column count")?;
    let nnz: usize = field(toks.next(), line, "entry count")?;
    if toks.next().is_some() {
        return Err(ParseError::new(line, "size line has extra fields"));
    }
    let mut m = IntMatrix::zeros(rows, cols);
    let mut seen = std::collections::BTreeSet::new();
    let mut count = 0;
    for (line, text) in body {
        let mut toks = text.split_whitespace();
        let r: usize = field(toks.next(), line, "row index")?;
        let c: usize = field(toks.next(), line, "column index")?;
        let v: i64 = field(toks.next(), line, "value")?;
        if toks.next().is_some() {
            return Err(ParseError::new(line, "entry has extra fields"));
        }
        if !(1..=rows).contains(&r) || !(1..=cols).contains(&c) {
            return Err(ParseError::new(line, format!("entry ({r}, {c}) outside {rows}x{cols}")));
        }
        if !seen.insert((r, c)) {
            return Err(ParseError::new(line, format!("entry ({r}, {c}) given twice")));
        }
        m.set(r - 1, c - 1, v);
        count += 1;
    }
    if count != nnz {
        return Err(ParseError::new(0, format!("size line promises {nnz} entries, found {count}")));
    }
    Ok(m)
}
