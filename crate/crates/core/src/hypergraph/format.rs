//! The `.hg` text format.
//!
//! ```text
//! # optional comments
//! n 4
//! e 0 1
//! e 0 1 2
//! ```
//!
//! Exactly one `n` line must precede the `e` lines. Blank lines are ignored.

use std::fmt::Write as _;

use super::Hypergraph;
use crate::error::{Error, Result};

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<Vec<usize>> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let tag = tokens.next().unwrap_or_default();
        match tag {
            "n" => {
                if n.is_some() {
                    return Err(parse_error(line_no, "repeated `n` line"));
                }
                let value = tokens
                    .next()
                    .ok_or_else(|| parse_error(line_no, "`n` needs a vertex count"))?;
                let count = parse_id(line_no, value)?;
                if tokens.next().is_some() {
                    return Err(parse_error(line_no, "trailing tokens after vertex count"));
                }
                if count == 0 {
                    return Err(Error::NoVertices);
                }
                n = Some(count);
            }
            "e" => {
                if n.is_none() {
                    return Err(parse_error(line_no, "edge before the `n` line"));
                }
                let edge = tokens
                    .map(|t| parse_id(line_no, t))
                    .collect::<Result<Vec<usize>>>()?;
                edges.push(edge);
            }
            other => {
                return Err(parse_error(line_no, &format!("unknown line tag `{other}`")));
            }
        }
    }

    let n = n.ok_or_else(|| parse_error(0, "missing `n` line"))?;
    Hypergraph::new(n, edges)
}

/// Canonical text: the `n` line, then edges by size and lexicographically.
pub fn serialize_hypergraph(g: &Hypergraph) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", g.n()).unwrap();
    for e in g.edges() {
        out.push('e');
        for v in e.vertices() {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn parse_id(line: usize, token: &str) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| parse_error(line, &format!("`{token}` is not a non-negative integer")))
}

fn parse_error(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}
