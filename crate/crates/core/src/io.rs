//! Text formats: structures as JSON, graphs as edge lists.

use thiserror::Error;

use crate::graph::Graph;
use crate::structure::{RawStructure, Structure, StructureError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("line {line}: {msg}")]
    Graph { line: usize, msg: String },
}

fn graph_err(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Graph { line, msg: msg.into() }
}

pub fn parse_structure(text: &str) -> Result<Structure, IoError> {
    let raw: RawStructure = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
    Ok(Structure::from_raw(&raw)?)
}

/// Pretty-printed JSON with keys `vocabulary`, `universe`, `relations`.
pub fn serialize_structure(s: &Structure) -> String {
    let mut out = serde_json::to_string_pretty(&s.to_raw()).expect("raw structures serialize");
    out.push('\n');
    out
}

/// Parses `n m` followed by `m` lines `u v`. Blank lines are ignored.
pub fn parse_graph(text: &str) -> Result<Graph, IoError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let pair = |line: usize, l: &str| -> Result<(usize, usize), IoError> {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let [a, b] = fields[..] else {
            return Err(graph_err(line, format!("expected two integers, got `{l}`")));
        };
        let parse = |x: &str| x.parse::<usize>().map_err(|_| graph_err(line, format!("not a vertex: `{x}`")));
        Ok((parse(a)?, parse(b)?))
    };
    let (line, header) = lines.next().ok_or_else(|| graph_err(1, "missing header `n m`"))?;
    let (n, m) = pair(line, header)?;
    let mut g = Graph::new(n);
    let mut seen = 0;
    for (line, l) in lines {
        let (u, v) = pair(line, l)?;
        if u >= n || v >= n {
            return Err(graph_err(line, format!("vertex out of range 0..{n}")));
        }
        if u == v {
            return Err(graph_err(line, "self-loop"));
        }
        if g.has_edge(u, v) {
            return Err(graph_err(line, format!("duplicate edge {u} {v}")));
        }
        g.add_edge(u, v);
        seen += 1;
    }
    if seen != m {
        return Err(graph_err(line, format!("header announces {m} edges, found {seen}")));
    }
    Ok(g)
}

/// Writes every vertex index below the graph's capacity; edges come out
/// sorted with the smaller endpoint first.
pub fn serialize_graph(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.capacity(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::RootedPathStructure;

    const EXAMPLE: &str = r#"{"vocabulary": {"root": 1, "E": 2}, "universe": ["p1","p2"], "relations": {"root": [["p1"]], "E": [["p1","p2"]]}}"#;

    #[test]
    fn documented_structure() {
        let s = parse_structure(EXAMPLE).unwrap();
        let p = RootedPathStructure::new(s.clone()).unwrap();
        assert_eq!(p.k(), 2);
        assert_eq!(parse_structure(&serialize_structure(&s)).unwrap(), s);
    }

    #[test]
    fn structure_errors() {
        let dup = r#"{"vocabulary": {"E": 2}, "universe": ["a","b"], "relations": {"E": [["a","b"],["a","b"]]}}"#;
        assert_eq!(parse_structure(dup), Err(IoError::Structure(StructureError::DuplicateTuple("E".into()))));
        let extra = r#"{"vocabulary": {"E": 2}, "universe": ["a"], "relations": {}, "colour": 1}"#;
        assert!(matches!(parse_structure(extra), Err(IoError::Json(_))));
        assert!(matches!(parse_structure("{"), Err(IoError::Json(_))));
    }

    #[test]
    fn graphs() {
        let g = parse_graph("2 1\n0 1").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
        let err = parse_graph("2 1\n0 0").unwrap_err().to_string();
        assert!(err.contains("self-loop"), "{err}");
        assert!(parse_graph("3 2\n0 1\n1 0").unwrap_err().to_string().contains("duplicate"));
        assert!(parse_graph("3 1\n0 x").is_err());
        assert!(parse_graph("3 2\n0 1").is_err());
        assert!(parse_graph("3 1\n0 3").is_err());
        assert!(parse_graph("").is_err());
    }
}
