//! `{"datum": 0, "edges": [[u, v], ...]}`; `datum` may be omitted.

use fwdtree_core::RawGraph;
use serde::{Deserialize, Serialize};

use super::ParseError;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    #[serde(default)]
    datum: usize,
    edges: Vec<[usize; 2]>,
}

pub fn parse_json(text: &str) -> Result<RawGraph, ParseError> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| ParseError::new(e.line(), e.to_string()))?;
    Ok(RawGraph::new(doc.datum, doc.edges.into_iter().map(|[u, v]| (u, v)).collect()))
}

pub fn render_json(g: &RawGraph) -> String {
    let doc = GraphDoc {
        datum: g.datum(),
        edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
    };
    let mut s = serde_json::to_string(&doc).expect("plain integers serialize");
    s.push('\n');
    s
}
