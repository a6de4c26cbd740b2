use thiserror::Error;

use super::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed header, expected \"n m\"")]
    Header { line: usize },
    #[error("missing header line")]
    MissingHeader,
    #[error("line {line}: malformed edge, expected \"u v\"")]
    Edge { line: usize },
    #[error("line {line}: vertex {vertex} out of range (n = {n})")]
    OutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u}-{v}")]
    Duplicate { line: usize, u: usize, v: usize },
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("line {line}: unexpected content after {m} edges")]
    Trailing { line: usize, m: usize },
}

fn two_numbers(s: &str) -> Option<(usize, usize)> {
    let mut it = s.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

/// Parses the edge-list format: `#` comment lines, a header `n m`, then
/// exactly `m` lines `u v` with 0-based ids.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (n, m) = two_numbers(header).ok_or(ParseError::Header { line: hline })?;

    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::with_capacity(m);
    for (line, l) in lines {
        if edges.len() == m {
            return Err(ParseError::Trailing { line, m });
        }
        let (u, v) = two_numbers(l).ok_or(ParseError::Edge { line })?;
        for vertex in [u, v] {
            if vertex >= n {
                return Err(ParseError::OutOfRange { line, vertex, n });
            }
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(ParseError::Duplicate { line, u: key.0, v: key.1 });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCount { expected: m, found: edges.len() });
    }
    Ok(Graph::from_edges(n, edges).expect("edge list validated line by line"))
}
