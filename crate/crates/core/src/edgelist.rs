//! Plain-text edge lists: `u v` pairs, `#` comments, and an optional
//! `n <count>` header.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Parse an edge-list document.
///
/// Blank lines and lines starting with `#` are ignored. An optional header
/// `n <count>` (at most one, before any edge) fixes the vertex count;
/// otherwise the count is the largest mentioned id plus one. Malformed
/// lines, self-loops, and duplicate edges are reported with their 1-based
/// line number.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut max_id: Option<usize> = None;
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens[0] == "n" {
            if declared.is_some() || !edges.is_empty() {
                return Err(Error::Parse {
                    line,
                    msg: "header must appear once, before any edge".into(),
                });
            }
            if tokens.len() != 2 {
                return Err(Error::Parse {
                    line,
                    msg: "header form is `n <count>`".into(),
                });
            }
            declared = Some(parse_id(tokens[1], line)?);
            continue;
        }
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line,
                msg: format!("expected `u v`, got {} token(s)", tokens.len()),
            });
        }
        let u = parse_id(tokens[0], line)?;
        let v = parse_id(tokens[1], line)?;
        if u == v {
            return Err(Error::Parse {
                line,
                msg: format!("self-loop at vertex {u}"),
            });
        }
        if let Some(limit) = declared {
            if u >= limit || v >= limit {
                return Err(Error::Parse {
                    line,
                    msg: format!("vertex id exceeds declared count {limit}"),
                });
            }
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::Parse {
                line,
                msg: format!("duplicate edge ({u}, {v})"),
            });
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u.max(v))));
        edges.push((u, v));
    }
    let n = declared.unwrap_or_else(|| max_id.map_or(0, |m| m + 1));
    Graph::from_edges(n, &edges)
}

fn parse_id(token: &str, line: usize) -> Result<usize> {
    token.parse::<usize>().map_err(|_| Error::Parse {
        line,
        msg: format!("invalid vertex id `{token}`"),
    })
}

/// Serialize to the canonical form: sorted `u v` lines, LF-separated, with
/// an `n <count>` header only when trailing isolated vertices would make
/// the edge list alone underdetermine the vertex count.
pub fn serialize_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let implied = edges.iter().map(|&(_, v)| v + 1).max().unwrap_or(0);
    let mut lines: Vec<String> = Vec::new();
    if implied != g.n() {
        lines.push(format!("n {}", g.n()));
    }
    lines.extend(edges.iter().map(|&(u, v)| format!("{u} {v}")));
    lines.join("\n")
}
