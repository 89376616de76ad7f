//! Plain edge lists: one `u v` pair per line, `#` starts a comment, and an
//! optional `datum k` line names the datum (default 0).

use std::fmt::Write;

use fwdtree_core::RawGraph;

use super::ParseError;

fn parse_label(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse::<usize>()
        .map_err(|_| ParseError::new(line, format!("expected a non-negative node label, found `{tok}`")))
}

pub fn parse_edge_list(text: &str) -> Result<RawGraph, ParseError> {
    let mut datum: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            ["datum", k] => {
                if datum.is_some() {
                    return Err(ParseError::new(line, "datum declared twice"));
                }
                if !edges.is_empty() {
                    return Err(ParseError::new(line, "datum must be declared before the first edge"));
                }
                datum = Some(parse_label(k, line)?);
            }
            ["datum", ..] => return Err(ParseError::new(line, "expected `datum <label>`")),
            [u, v] => edges.push((parse_label(u, line)?, parse_label(v, line)?)),
            _ => {
                return Err(ParseError::new(
                    line,
                    format!("expected two node labels, found {} tokens", toks.len()),
                ))
            }
        }
    }
    Ok(RawGraph::new(datum.unwrap_or(0), edges))
}

/// Always writes the datum line so that parsing gives back the same graph.
pub fn render_edge_list(g: &RawGraph) -> String {
    let mut out = format!("datum {}\n", g.datum());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_document() {
        let g = parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!(g.datum(), 0);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn comments_and_datum() {
        let g = parse_edge_list("# header\ndatum 4\n\n4 1  # trailing\n  1   7\n").unwrap();
        assert_eq!(g.datum(), 4);
        assert_eq!(g.edges(), &[(4, 1), (1, 7)]);
    }

    #[test]
    fn self_loop_is_accepted_by_the_parser() {
        let g = parse_edge_list("0 0\n").unwrap();
        assert_eq!(g.edges(), &[(0, 0)]);
    }

    #[test]
    fn errors_carry_the_line() {
        assert_eq!(parse_edge_list("0 1\n1 x\n").unwrap_err().line, 2);
        assert_eq!(parse_edge_list("0 1 2\n").unwrap_err().line, 1);
        assert_eq!(parse_edge_list("0 1\ndatum 0\n").unwrap_err().line, 2);
        assert_eq!(parse_edge_list("datum 1\ndatum 2\n").unwrap_err().line, 2);
        assert_eq!(parse_edge_list("\n\n-1 2\n").unwrap_err().line, 3);
        assert!(parse_edge_list("datum\n").is_err());
    }

    #[test]
    fn render_round_trip() {
        let g = RawGraph::new(3, vec![(3, 0), (0, 2), (1, 3)]);
        let text = render_edge_list(&g);
        assert_eq!(text, "datum 3\n3 0\n0 2\n1 3\n");
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }
}
