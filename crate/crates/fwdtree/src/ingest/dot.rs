//! The undirected DOT subset:
//!
//! ```text
//! graph [name] {
//!     datum = 0;
//!     0 -- 1 -- 2;
//!     2 -- 6
//! }
//! ```
//!
//! Node ids are non-negative integers (optionally quoted). Statements end
//! with `;`, `,` or a line break. `//`, `/* */` and `#` comments are
//! skipped. Anything else, such as attribute lists, directed edges or
//! `node`/`edge`/`subgraph` statements, is rejected with the token named.

use std::fmt::Write;

use fwdtree_core::RawGraph;

use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Quoted(String),
    Dash,
    Arrow,
    Open,
    Close,
    Eq,
    Sep,
    Newline,
    Other(char),
}

impl Tok {
    fn show(&self) -> String {
        match self {
            Tok::Word(w) => w.clone(),
            Tok::Quoted(q) => format!("\"{q}\""),
            Tok::Dash => "--".into(),
            Tok::Arrow => "->".into(),
            Tok::Open => "{".into(),
            Tok::Close => "}".into(),
            Tok::Eq => "=".into(),
            Tok::Sep => ";".into(),
            Tok::Newline => "end of line".into(),
            Tok::Other(c) => c.to_string(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut line = 1;
    let mut p = 0;
    while p < chars.len() {
        let c = chars[p];
        match c {
            '\n' => {
                out.push((line, Tok::Newline));
                line += 1;
                p += 1;
            }
            c if c.is_whitespace() => p += 1,
            '#' => {
                while p < chars.len() && chars[p] != '\n' {
                    p += 1;
                }
            }
            '/' if chars.get(p + 1) == Some(&'/') => {
                while p < chars.len() && chars[p] != '\n' {
                    p += 1;
                }
            }
            '/' if chars.get(p + 1) == Some(&'*') => {
                let start = line;
                p += 2;
                loop {
                    match chars.get(p) {
                        None => return Err(ParseError::new(start, "unterminated comment")),
                        Some('*') if chars.get(p + 1) == Some(&'/') => {
                            p += 2;
                            break;
                        }
                        Some('\n') => line += 1,
                        _ => {}
                    }
                    p += 1;
                }
            }
            '"' => {
                let start = line;
                let mut s = String::new();
                p += 1;
                loop {
                    match chars.get(p) {
                        None => return Err(ParseError::new(start, "unterminated string")),
                        Some('"') => break,
                        Some(&ch) => {
                            if ch == '\n' {
                                line += 1;
                            }
                            s.push(ch);
                        }
                    }
                    p += 1;
                }
                p += 1;
                out.push((start, Tok::Quoted(s)));
            }
            '-' if chars.get(p + 1) == Some(&'-') => {
                out.push((line, Tok::Dash));
                p += 2;
            }
            '-' if chars.get(p + 1) == Some(&'>') => {
                out.push((line, Tok::Arrow));
                p += 2;
            }
            '{' => {
                out.push((line, Tok::Open));
                p += 1;
            }
            '}' => {
                out.push((line, Tok::Close));
                p += 1;
            }
            '=' => {
                out.push((line, Tok::Eq));
                p += 1;
            }
            ';' | ',' => {
                out.push((line, Tok::Sep));
                p += 1;
            }
            c if c.is_alphanumeric() || c == '_' || c == '.' => {
                let mut s = String::new();
                while p < chars.len() && (chars[p].is_alphanumeric() || chars[p] == '_' || chars[p] == '.') {
                    s.push(chars[p]);
                    p += 1;
                }
                out.push((line, Tok::Word(s)));
            }
            other => {
                out.push((line, Tok::Other(other)));
                p += 1;
            }
        }
    }
    Ok(out)
}

fn unsupported(line: usize, tok: &Tok) -> ParseError {
    ParseError::new(line, format!("unsupported token `{}`", tok.show()))
}

fn node_id(line: usize, tok: &Tok) -> Result<usize, ParseError> {
    let s = match tok {
        Tok::Word(w) | Tok::Quoted(w) => w,
        other => return Err(unsupported(line, other)),
    };
    s.parse::<usize>()
        .map_err(|_| ParseError::new(line, format!("node id `{s}` is not a non-negative integer")))
}

const KEYWORDS: [&str; 5] = ["digraph", "node", "edge", "subgraph", "strict"];

pub fn parse_dot_subset(text: &str) -> Result<RawGraph, ParseError> {
    let toks = lex(text)?;
    let mut it = toks.iter().filter(|(_, t)| *t != Tok::Newline);

    let Some((line, head)) = it.next() else {
        return Err(ParseError::new(0, "empty document, expected `graph {`"));
    };
    match head {
        Tok::Word(w) if w == "graph" => {}
        other => return Err(unsupported(*line, other)),
    }
    match it.next() {
        Some((_, Tok::Open)) => {}
        Some((_, Tok::Word(_) | Tok::Quoted(_))) => match it.next() {
            Some((_, Tok::Open)) => {}
            Some((l, t)) => return Err(unsupported(*l, t)),
            None => return Err(ParseError::new(0, "expected `{`")),
        },
        Some((l, t)) => return Err(unsupported(*l, t)),
        None => return Err(ParseError::new(0, "expected `{`")),
    }

    // Statements are split on separators and line breaks, so go back to the
    // full token stream from here on.
    let start = toks
        .iter()
        .position(|(_, t)| *t == Tok::Open)
        .expect("opening brace seen above")
        + 1;
    let body = &toks[start..];
    let mut datum: Option<usize> = None;
    let mut edges = Vec::new();
    let mut p = 0;
    let mut closed = false;
    while p < body.len() {
        let (line, tok) = &body[p];
        match tok {
            Tok::Sep | Tok::Newline => {
                p += 1;
                continue;
            }
            Tok::Close => {
                closed = true;
                p += 1;
                break;
            }
            Tok::Word(w) if w == "datum" => {
                match body.get(p + 1) {
                    Some((_, Tok::Eq)) => {}
                    Some((l, t)) => return Err(unsupported(*l, t)),
                    None => return Err(ParseError::new(*line, "expected `=` after `datum`")),
                }
                let (l, t) = body
                    .get(p + 2)
                    .ok_or_else(|| ParseError::new(*line, "expected a node id after `datum =`"))?;
                if datum.is_some() {
                    return Err(ParseError::new(*l, "datum declared twice"));
                }
                datum = Some(node_id(*l, t)?);
                p += 3;
            }
            Tok::Word(w) if KEYWORDS.contains(&w.as_str()) || w == "graph" => {
                return Err(unsupported(*line, tok));
            }
            Tok::Word(_) | Tok::Quoted(_) => {
                if let Some((l, t @ Tok::Eq)) = body.get(p + 1) {
                    return Err(ParseError::new(
                        *l,
                        format!("unsupported token `{}`: only `datum` may be assigned", t.show()),
                    ));
                }
                let mut prev = node_id(*line, tok)?;
                p += 1;
                let mut chained = false;
                loop {
                    match body.get(p) {
                        Some((_, Tok::Dash)) => {
                            let (l, t) = body
                                .get(p + 1)
                                .ok_or_else(|| ParseError::new(*line, "edge is missing its second node"))?;
                            let next = node_id(*l, t)?;
                            edges.push((prev, next));
                            prev = next;
                            chained = true;
                            p += 2;
                        }
                        Some((_, Tok::Sep | Tok::Newline | Tok::Close)) | None => break,
                        Some((l, t)) => return Err(unsupported(*l, t)),
                    }
                }
                if !chained {
                    return Err(ParseError::new(*line, "a lone node statement is not supported"));
                }
            }
            other => return Err(unsupported(*line, other)),
        }
    }
    if !closed {
        return Err(ParseError::new(0, "missing closing `}`"));
    }
    if let Some((l, t)) = body[p..].iter().find(|(_, t)| *t != Tok::Newline) {
        return Err(ParseError::new(*l, format!("unexpected `{}` after the graph", t.show())));
    }
    Ok(RawGraph::new(datum.unwrap_or(0), edges))
}

pub fn render_dot(g: &RawGraph) -> String {
    let mut out = String::from("graph {\n");
    writeln!(out, "  datum = {};", g.datum()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let g = parse_dot_subset("graph { 0 -- 1; }").unwrap();
        assert_eq!((g.datum(), g.edges()), (0, &[(0, 1)][..]));
    }

    #[test]
    fn chains_names_and_comments() {
        let text = "// header\ngraph \"g1\" {\n  datum = 3 /* inline */\n  3 -- 1 -- 2, 2 -- \"7\"\n  # shell style\n}\n";
        let g = parse_dot_subset(text).unwrap();
        assert_eq!(g.datum(), 3);
        assert_eq!(g.edges(), &[(3, 1), (1, 2), (2, 7)]);
    }

    #[test]
    fn unsupported_tokens_are_named() {
        let cases = [
            ("digraph { 0 -> 1 }", "digraph"),
            ("graph { 0 -> 1 }", "->"),
            ("graph { 0 -- 1 [weight=2] }", "["),
            ("graph { node [shape=box] }", "node"),
            ("graph { subgraph s { 0 -- 1 } }", "subgraph"),
            ("strict graph { 0 -- 1 }", "strict"),
            ("graph { rankdir = LR }", "="),
        ];
        for (text, tok) in cases {
            let err = parse_dot_subset(text).unwrap_err();
            assert!(err.reason.contains(&format!("`{tok}`")), "{text}: {err}");
        }
    }

    #[test]
    fn structural_errors() {
        assert!(parse_dot_subset("").is_err());
        assert!(parse_dot_subset("graph { 0 -- 1").is_err());
        assert!(parse_dot_subset("graph { 0 -- }").is_err());
        assert!(parse_dot_subset("graph { a -- b }").is_err());
        assert!(parse_dot_subset("graph { 5 }").is_err());
        assert!(parse_dot_subset("graph { 0 -- 1 } extra").is_err());
        assert_eq!(parse_dot_subset("graph {\n0 -- 1\n0 -- x\n}").unwrap_err().line, 3);
    }

    #[test]
    fn render_round_trip() {
        let g = RawGraph::new(2, vec![(2, 0), (0, 1), (5, 2)]);
        let text = render_dot(&g);
        assert_eq!(text, "graph {\n  datum = 2;\n  2 -- 0;\n  0 -- 1;\n  5 -- 2;\n}\n");
        assert_eq!(parse_dot_subset(&text).unwrap(), g);
    }
}
