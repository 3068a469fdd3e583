//! Text formats.
//!
//! Weighted graph file:
//!
//! ```text
//! # comment
//! n m k
//! u v w      (m lines, 1-based vertices, 1 <= w <= k)
//! ```
//!
//! Scheme file: one `u v w` line per edge in elimination order.

use std::fmt::Write as _;

use crate::error::{GraphError, ParseError};
use crate::graph::{EdgeId, Graph, WeightedGraph};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Densely remap weights onto `1..=k'` instead of rejecting gaps.
    pub normalize: bool,
}

/// Yields `(line_number, fields)` for every non-blank, non-comment line.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim_end_matches('\r').trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

fn number<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> Result<T, ParseError> {
    field.parse().map_err(|_| ParseError::Malformed {
        line,
        reason: format!("{what} `{field}` is not a non-negative integer"),
    })
}

pub fn parse_weighted(text: &str, opts: ParseOptions) -> Result<WeightedGraph, ParseError> {
    let mut lines = data_lines(text);
    let (header_line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    if header.len() != 3 {
        return Err(ParseError::Malformed {
            line: header_line,
            reason: format!("header needs `n m k`, found {} fields", header.len()),
        });
    }
    let n: usize = number(header_line, header[0], "n")?;
    let m: usize = number(header_line, header[1], "m")?;
    let k: u32 = number(header_line, header[2], "k")?;
    if n == 0 {
        return Err(ParseError::Malformed {
            line: header_line,
            reason: "n must be positive".into(),
        });
    }
    if (k == 0) != (m == 0) {
        return Err(ParseError::Malformed {
            line: header_line,
            reason: "k is 0 exactly when m is 0".into(),
        });
    }

    let mut edges = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    let mut edge_lines = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, fields) in lines {
        last_line = line;
        if edges.len() == m {
            return Err(ParseError::EdgeCount { line, expected: m, found: m + 1 });
        }
        if fields.len() != 3 {
            return Err(ParseError::Malformed {
                line,
                reason: format!("edge needs `u v w`, found {} fields", fields.len()),
            });
        }
        let u: usize = number(line, fields[0], "u")?;
        let v: usize = number(line, fields[1], "v")?;
        let w: u32 = number(line, fields[2], "w")?;
        for x in [u, v] {
            if x == 0 || x > n {
                return Err(ParseError::VertexOutOfRange { line, vertex: x, n });
            }
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        if w == 0 || w > k {
            return Err(ParseError::WeightOutOfRange { line, weight: w, k });
        }
        edges.push((u - 1, v - 1));
        weights.push(w);
        edge_lines.push(line);
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCount {
            line: last_line,
            expected: m,
            found: edges.len(),
        });
    }

    let graph = Graph::new(n, edges).map_err(|e| match e {
        GraphError::DuplicateEdge { edge, u, v } => ParseError::DuplicateEdge {
            line: edge_lines[edge],
            u: u + 1,
            v: v + 1,
        },
        other => unreachable!("validated above: {other}"),
    })?;
    let built = if opts.normalize {
        WeightedGraph::normalized(graph, weights)
    } else {
        WeightedGraph::new(graph, weights, k)
    };
    built.map_err(|e| match e {
        GraphError::NotSurjective { k, missing } => ParseError::NotSurjective {
            line: header_line,
            k,
            missing,
        },
        other => unreachable!("validated above: {other}"),
    })
}

pub fn emit_weighted(wg: &WeightedGraph) -> String {
    let g = wg.graph();
    let mut out = String::with_capacity(16 * (g.m() + 1));
    writeln!(out, "{} {} {}", g.n(), g.m(), wg.k()).unwrap();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        writeln!(out, "{} {} {}", u + 1, v + 1, wg.weight(e)).unwrap();
    }
    out
}

/// Writes an edge ordering in scheme format.
pub fn emit_scheme(wg: &WeightedGraph, order: &[EdgeId]) -> String {
    let mut out = String::with_capacity(12 * order.len());
    for &e in order {
        let (u, v) = wg.graph().endpoints(e);
        writeln!(out, "{} {} {}", u + 1, v + 1, wg.weight(e)).unwrap();
    }
    out
}

/// Reads a scheme file against `wg`. Each line names an edge by its
/// endpoints (either orientation); an optional third column must match the
/// edge's weight. Whether the result is a permutation is checked by the
/// consumers.
pub fn parse_scheme(text: &str, wg: &WeightedGraph) -> Result<Vec<EdgeId>, ParseError> {
    let g = wg.graph();
    let mut order = Vec::with_capacity(g.m());
    for (line, fields) in data_lines(text) {
        if fields.len() != 2 && fields.len() != 3 {
            return Err(ParseError::Malformed {
                line,
                reason: format!("scheme line needs `u v [w]`, found {} fields", fields.len()),
            });
        }
        let u: usize = number(line, fields[0], "u")?;
        let v: usize = number(line, fields[1], "v")?;
        for x in [u, v] {
            if x == 0 || x > g.n() {
                return Err(ParseError::VertexOutOfRange { line, vertex: x, n: g.n() });
            }
        }
        let e = g
            .edge_between(u - 1, v - 1)
            .ok_or(ParseError::UnknownEdge { line })?;
        if let Some(field) = fields.get(2) {
            let w: u32 = number(line, field, "w")?;
            if w != wg.weight(e) {
                return Err(ParseError::Malformed {
                    line,
                    reason: format!("edge {u} {v} has weight {}, not {w}", wg.weight(e)),
                });
            }
        }
        order.push(e);
    }
    Ok(order)
}
