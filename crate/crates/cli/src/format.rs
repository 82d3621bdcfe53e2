//! Plain-text hypergraph files.
//!
//! ```text
//! # comment
//! k 3
//! n 6
//! e 0 1 2
//! e 2 1 3
//! ```
//!
//! Vertices are 0-based and listed in orientation order. Blank lines and
//! lines starting with `#` are ignored; edge order is preserved.

use std::fmt::Write as _;

use property_o::{OrientedHypergraph, Violation};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message}, line {line}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

fn header(line_no: usize, line: &str, key: &str) -> Result<usize, ParseError> {
    let mut parts = line.split_ascii_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some(k), Some(v), None) if k == key => v
            .parse()
            .or_else(|_| fail(line_no, format!("malformed header: bad value {v:?}"))),
        _ => fail(
            line_no,
            format!("malformed header: expected \"{key} <value>\""),
        ),
    }
}

pub fn parse_hypergraph(text: &str) -> Result<OrientedHypergraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let Some((kl, kline)) = lines.next() else {
        return fail(1, "malformed header: missing \"k <value>\"");
    };
    let k = header(kl, kline, "k")?;
    if k < 2 {
        return fail(kl, format!("malformed header: uniformity {k} is below 2"));
    }
    let Some((nl, nline)) = lines.next() else {
        return fail(kl + 1, "malformed header: missing \"n <value>\"");
    };
    let n = header(nl, nline, "n")?;

    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut edge_lines = Vec::new();
    for (no, line) in lines {
        let mut parts = line.split_ascii_whitespace();
        if parts.next() != Some("e") {
            return fail(no, "expected an edge line \"e v1 ... vk\"");
        }
        let vertices = parts
            .map(|t| {
                t.parse::<usize>()
                    .or_else(|_| fail(no, format!("bad vertex {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if vertices.len() != k {
            return fail(
                no,
                format!("wrong arity: {} vertices, expected {k}", vertices.len()),
            );
        }
        edges.push(vertices);
        edge_lines.push(no);
    }

    let h = OrientedHypergraph::from_raw(k, n, &edges).or_else(|e| fail(nl, e.to_string()))?;
    if let Err(violations) = h.validate() {
        let (line, message) = match &violations[0] {
            Violation::RepeatedVertex { edge, .. } => (edge_lines[*edge], "repeated vertex".into()),
            Violation::VertexOutOfRange { edge, vertex, n } => (
                edge_lines[*edge],
                format!("vertex {vertex} out of range for n = {n}"),
            ),
            Violation::DuplicateSet { second, .. } => {
                (edge_lines[*second], violations[0].to_string())
            }
            other => (kl, other.to_string()),
        };
        return fail(line, message);
    }
    Ok(h)
}

pub fn serialize(h: &OrientedHypergraph) -> String {
    let mut out = String::new();
    writeln!(out, "k {}", h.k()).unwrap();
    writeln!(out, "n {}", h.n()).unwrap();
    for e in h.edges() {
        out.push('e');
        for v in e {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}
