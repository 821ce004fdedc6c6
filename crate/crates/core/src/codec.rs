//! Graph file codecs: the plain edge-list format and graph6.
//!
//! Edge-list files may start with `#` comment lines, then a `n m` header
//! line, then `m` lines `u v`. Output is canonical: sorted edges, `u < v`.
//! graph6 is the usual 6-bit ASCII encoding without the optional
//! `>>graph6<<` prefix (the prefix is tolerated on input).

use crate::error::{Error, Result};
use crate::graph::Graph;

/// On-disk graph formats understood by the toolkit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

impl GraphFormat {
    /// Picks a format from a file name: `.g6` means graph6, everything else
    /// is an edge list.
    pub fn from_path(path: &str) -> GraphFormat {
        if path.ends_with(".g6") {
            GraphFormat::Graph6
        } else {
            GraphFormat::EdgeList
        }
    }

    pub fn decode(self, text: &str) -> Result<Graph> {
        match self {
            GraphFormat::EdgeList => parse_edge_list(text),
            GraphFormat::Graph6 => parse_graph6(text),
        }
    }

    pub fn encode(self, g: &Graph) -> String {
        match self {
            GraphFormat::EdgeList => format_edge_list(g),
            GraphFormat::Graph6 => format_graph6(g),
        }
    }
}

fn parse_two_ints(line: &str, line_no: usize, what: &str) -> Result<(usize, usize)> {
    let mut parts = line.split_whitespace();
    let a = parts
        .next()
        .ok_or_else(|| Error::parse(line_no, 0, format!("missing {what}")))?;
    let b = parts
        .next()
        .ok_or_else(|| Error::parse(line_no, a.len(), format!("missing second value of {what}")))?;
    if let Some(extra) = parts.next() {
        let offset = line.find(extra).unwrap_or(0);
        return Err(Error::parse(
            line_no,
            offset,
            format!("unexpected trailing token {extra:?}"),
        ));
    }
    let a = a.parse::<usize>().map_err(|_| {
        Error::parse(
            line_no,
            line.find(a).unwrap_or(0),
            format!("bad integer {a:?}"),
        )
    })?;
    let b = b.parse::<usize>().map_err(|_| {
        Error::parse(
            line_no,
            line.find(b).unwrap_or(0),
            format!("bad integer {b:?}"),
        )
    })?;
    Ok((a, b))
}

/// Parses the edge-list format. Endpoint order within a line is free;
/// duplicates and loops are rejected by the graph constructor.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut data_lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_no, header) = data_lines
        .next()
        .ok_or_else(|| Error::parse(1, 0, "empty input, expected `n m` header"))?;
    let (n, m) = parse_two_ints(header, header_no, "header `n m`")?;

    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line_no, line) = data_lines.next().ok_or_else(|| {
            Error::parse(
                header_no,
                0,
                format!("expected {m} edges, file ended early"),
            )
        })?;
        edges.push(parse_two_ints(line, line_no, "edge `u v`")?);
    }
    if let Some((line_no, line)) = data_lines.next() {
        return Err(Error::parse(
            line_no,
            0,
            format!("expected {m} edges, found extra data line {line:?}"),
        ));
    }
    Graph::new(n, &edges)
}

/// Canonical edge-list text: header line then sorted `u v` lines.
pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

const G6_HEADER: &str = ">>graph6<<";

/// Parses a graph6 string (a single graph, optional standard prefix).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let mut s = text.trim();
    if let Some(rest) = s.strip_prefix(G6_HEADER) {
        s = rest;
    }
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::parse(1, 0, "empty graph6 input"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(
                1,
                i,
                format!("byte {b:#04x} outside the graph6 alphabet"),
            ));
        }
    }

    // Order: one byte n+63 for n <= 62, or '~' + 3 bytes, or '~~' + 6 bytes.
    let (n, mut pos) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, 1)
    } else if bytes.len() > 1 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(Error::parse(1, 1, "truncated graph6 order field"));
        }
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            n = (n << 6) | (b - 63) as usize;
        }
        (n, 4)
    } else {
        if bytes.len() < 8 {
            return Err(Error::parse(1, 2, "truncated graph6 order field"));
        }
        let mut n = 0usize;
        for &b in &bytes[2..8] {
            n = (n << 6) | (b - 63) as usize;
        }
        (n, 8)
    };

    let bit_count = n * n.saturating_sub(1) / 2;
    let byte_count = bit_count.div_ceil(6);
    if bytes.len() - pos != byte_count {
        return Err(Error::parse(
            1,
            pos,
            format!(
                "graph6 body for n={n} needs {byte_count} bytes, found {}",
                bytes.len() - pos
            ),
        ));
    }

    let mut edges = Vec::new();
    let mut bit_index = 0usize;
    let mut current = 0u8;
    let mut bits_left = 0u8;
    for v in 1..n {
        for u in 0..v {
            if bits_left == 0 {
                current = bytes[pos] - 63;
                pos += 1;
                bits_left = 6;
            }
            if current & 0b100000 != 0 {
                edges.push((u, v));
            }
            current <<= 1;
            bits_left -= 1;
            bit_index += 1;
        }
    }
    debug_assert_eq!(bit_index, bit_count);
    // Unused padding bits in the final byte must be zero.
    if bits_left > 0 && current & (((1u8 << bits_left) - 1) << (6 - bits_left)) != 0 {
        return Err(Error::parse(1, pos - 1, "non-zero graph6 padding bits"));
    }
    Graph::new(n, &edges)
}

/// Encodes a graph as graph6 (no prefix, no trailing newline).
pub fn format_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    }
    let mut current = 0u8;
    let mut bits = 0u8;
    for v in 1..n {
        for u in 0..v {
            current <<= 1;
            if g.has_edge(u, v) {
                current |= 1;
            }
            bits += 1;
            if bits == 6 {
                out.push(63 + current);
                current = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push(63 + (current << (6 - bits)));
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}
