//! Text formats: edge lists, METIS `.graph` files and partition files.
//!
//! Edge list:
//! ```text
//! # comment
//! n 4        <- optional, must precede the first edge
//! 0 1
//! 1 2
//! ```
//! Vertices are 0-based. Without the header, n is one past the largest endpoint.
//!
//! METIS graph files use 1-based neighbor lists after an `n m` header.
//! Partition files hold one color per line, line `i` being vertex `i`; this is
//! also the layout METIS writes for its `.part.k` output.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, Partition};

pub fn read_edge_list(text: &str) -> Result<Graph> {
    let mut header_n: Option<usize> = None;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::parse(
                line_no,
                format!("expected two fields, found {}", fields.len()),
            ));
        }
        if fields[0] == "n" {
            if header_n.is_some() {
                return Err(Error::parse(line_no, "repeated vertex-count header"));
            }
            if !edges.is_empty() {
                return Err(Error::parse(line_no, "vertex-count header after edges"));
            }
            header_n = Some(parse_index(fields[1], line_no)?);
            continue;
        }
        let u = parse_index(fields[0], line_no)?;
        let v = parse_index(fields[1], line_no)?;
        edges.push((line_no, u, v));
    }

    let max_index = edges
        .iter()
        .map(|&(_, u, v)| u.max(v) + 1)
        .max()
        .unwrap_or(0);
    let n = match header_n {
        Some(n) => {
            if let Some(&(line_no, u, v)) = edges.iter().find(|&&(_, u, v)| u.max(v) >= n) {
                return Err(Error::parse(
                    line_no,
                    format!("edge ({u}, {v}) exceeds declared vertex count {n}"),
                ));
            }
            n
        }
        None => max_index,
    };

    let mut builder = GraphBuilder::new(n);
    for (line_no, u, v) in edges {
        if u == v {
            return Err(Error::parse(line_no, format!("self-loop at vertex {u}")));
        }
        if builder.has_edge(u, v) {
            return Err(Error::parse(line_no, format!("duplicate edge ({u}, {v})")));
        }
        builder
            .add_edge(u, v)
            .map_err(|e| Error::parse(line_no, e.to_string()))?;
    }
    Ok(builder.build())
}

fn parse_index(field: &str, line_no: usize) -> Result<usize> {
    field
        .parse()
        .map_err(|_| Error::parse(line_no, format!("expected a vertex index, found {field:?}")))
}

/// Edge list with an explicit `n` header, so isolated vertices survive a round trip.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn write_metis_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for v in 0..g.n() {
        let line: Vec<String> = g.neighbors(v).iter().map(|u| (u + 1).to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Reads one color per line. A single trailing newline is allowed; blank
/// lines elsewhere are rejected. When `expected_len` is given the number of
/// entries must match it.
pub fn read_partition_file(text: &str, k: usize, expected_len: Option<usize>) -> Result<Partition> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let mut colors = Vec::new();
    if !body.is_empty() {
        for (idx, raw) in body.split('\n').enumerate() {
            let line_no = idx + 1;
            let field = raw.trim();
            let color: usize = field
                .parse()
                .map_err(|_| Error::parse(line_no, format!("expected a color, found {field:?}")))?;
            if color >= k {
                return Err(Error::parse(
                    line_no,
                    format!("color {color} out of range for k = {k}"),
                ));
            }
            colors.push(color);
        }
    }
    if let Some(n) = expected_len {
        if colors.len() != n {
            return Err(Error::parse(
                colors.len().min(n) + 1,
                format!("expected {n} colors, found {}", colors.len()),
            ));
        }
    }
    Partition::from_colors(colors, k)
}

/// Largest color in a partition file plus one, for files read without a known k.
pub fn infer_part_count(text: &str) -> Result<usize> {
    let mut k = 0;
    for (idx, raw) in text.lines().enumerate() {
        let field = raw.trim();
        if field.is_empty() {
            continue;
        }
        let c: usize = field
            .parse()
            .map_err(|_| Error::parse(idx + 1, format!("expected a color, found {field:?}")))?;
        k = k.max(c + 1);
    }
    Ok(k.max(1))
}

pub fn write_partition_file(p: &Partition) -> String {
    let mut out = String::with_capacity(p.n() * 2);
    for &c in p.colors() {
        writeln!(out, "{c}").unwrap();
    }
    out
}
