//! Edge-list text and JSON graph formats.

use super::Graph;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Renders `n m` followed by one `u v` line per edge.
pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.edge_count());
    for &(u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
    let nums = |line: usize, l: &str| -> Result<(usize, usize)> {
        let mut it = l.split_whitespace().map(|t| t.parse::<usize>());
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
            _ => Err(Error::Parse { line, msg: format!("expected two integers, got '{l}'") }),
        }
    };
    let (n, m) = nums(hl, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let (u, v) = nums(line, l)?;
        if u >= n || v >= n {
            return Err(Error::Parse { line, msg: format!("vertex out of range in '{l}'") });
        }
        if u == v {
            return Err(Error::Parse { line, msg: format!("self-loop '{l}'") });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: hl,
            msg: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    Graph::new(n, &edges)
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    n: usize,
    edges: Vec<[usize; 2]>,
}

pub fn to_json(g: &Graph) -> String {
    let jg = JsonGraph { n: g.n(), edges: g.edges().iter().map(|&(u, v)| [u, v]).collect() };
    serde_json::to_string(&jg).expect("serializable")
}

pub fn parse_json(text: &str) -> Result<Graph> {
    let jg: JsonGraph = serde_json::from_str(text)
        .map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
    let edges: Vec<_> = jg.edges.iter().map(|e| (e[0], e[1])).collect();
    Graph::new(jg.n, &edges)
}

/// Parses either format, choosing JSON when the text starts with `{`.
pub fn parse_any(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_edge_list(text)
    }
}

/// SHA-256 of the canonical edge-list rendering, hex encoded.
pub fn graph_hash(g: &Graph) -> String {
    hex::encode(Sha256::digest(to_edge_list(g).as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    #[test]
    fn round_trips() {
        for g in [octahedron(), icosahedron(), Graph::empty(5), Graph::empty(0)] {
            assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
            assert_eq!(parse_json(&to_json(&g)).unwrap(), g);
            assert_eq!(to_edge_list(&parse_any(&to_edge_list(&g)).unwrap()), to_edge_list(&g));
        }
    }

    #[test]
    fn parse_errors_carry_lines() {
        match parse_edge_list("3 2\n0 1\n1 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_edge_list("3 1\n0 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
    }

    #[test]
    fn hash_is_stable() {
        assert_eq!(graph_hash(&octahedron()), graph_hash(&cross_polytope(2)));
        assert_ne!(graph_hash(&octahedron()), graph_hash(&icosahedron()));
    }
}
