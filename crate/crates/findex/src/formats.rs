//! Text formats: a line-oriented edge list and graph6 for `n <= 62`.
//!
//! Edge list: the first non-comment line is the vertex count `n`; each
//! following non-comment line is `u v` with `0 <= u, v < n`. `#` starts a
//! comment to end of line. Self-loops and repeated edges are parse errors.

use std::collections::HashSet;

use thiserror::Error;

use crate::graph::Graph;

pub const GRAPH6_MAX_ORDER: usize = 62;

const GRAPH6_HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("no vertex count line found")]
    MissingOrder,
    #[error("line {line}: invalid vertex count '{token}'")]
    BadOrder { line: usize, token: String },
    #[error("line {line}: expected 'u v'")]
    BadEdgeLine { line: usize },
    #[error("self-loop at line {line}")]
    SelfLoop { line: usize },
    #[error("duplicate edge at line {line}")]
    DuplicateEdge { line: usize },
    #[error("line {line}: vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { line: usize, vertex: u64, n: usize },
    #[error("graph6: empty input")]
    Graph6Empty,
    #[error("graph6: byte {byte:#04x} at position {pos} outside the printable range")]
    Graph6BadByte { pos: usize, byte: u8 },
    #[error("graph6: order above {GRAPH6_MAX_ORDER} is not supported")]
    Graph6TooLarge,
    #[error("graph6: expected {expected} data bytes, found {found}")]
    Graph6BadLength { expected: usize, found: usize },
}

pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut seen: HashSet<(u32, u32)> = HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let data = raw.split('#').next().unwrap_or("").trim();
        if data.is_empty() {
            continue;
        }
        match n {
            None => {
                let order = data.parse::<usize>().map_err(|_| FormatError::BadOrder {
                    line,
                    token: data.to_string(),
                })?;
                n = Some(order);
            }
            Some(order) => {
                let mut it = data.split_whitespace();
                let (u, v) = match (it.next(), it.next(), it.next()) {
                    (Some(a), Some(b), None) => (a, b),
                    _ => return Err(FormatError::BadEdgeLine { line }),
                };
                let u = u
                    .parse::<u64>()
                    .map_err(|_| FormatError::BadEdgeLine { line })?;
                let v = v
                    .parse::<u64>()
                    .map_err(|_| FormatError::BadEdgeLine { line })?;
                for &x in &[u, v] {
                    if x >= order as u64 {
                        return Err(FormatError::VertexOutOfRange {
                            line,
                            vertex: x,
                            n: order,
                        });
                    }
                }
                if u == v {
                    return Err(FormatError::SelfLoop { line });
                }
                let key = ((u.min(v)) as u32, (u.max(v)) as u32);
                if !seen.insert(key) {
                    return Err(FormatError::DuplicateEdge { line });
                }
                edges.push(key);
            }
        }
    }

    let n = n.ok_or(FormatError::MissingOrder)?;
    Ok(Graph::new(n, edges).expect("edge list already validated"))
}

pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Decode a graph6 string (optionally prefixed with `>>graph6<<`).
pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    let mut s = text.trim();
    if let Some(rest) = s.strip_prefix(GRAPH6_HEADER) {
        s = rest;
    }
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Graph6Empty);
    }
    for (pos, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(FormatError::Graph6BadByte { pos, byte: b });
        }
    }
    if bytes[0] == 126 {
        return Err(FormatError::Graph6TooLarge);
    }
    let n = (bytes[0] - 63) as usize;
    let bit_count = n * n.saturating_sub(1) / 2;
    let expected = bit_count.div_ceil(6);
    let data = &bytes[1..];
    if data.len() != expected {
        return Err(FormatError::Graph6BadLength {
            expected,
            found: data.len(),
        });
    }

    let mut edges = Vec::new();
    let mut bit = 0usize;
    // upper triangle, column by column: (0,1), (0,2), (1,2), (0,3), ...
    for j in 1..n {
        for i in 0..j {
            let byte = data[bit / 6] - 63;
            if (byte >> (5 - bit % 6)) & 1 == 1 {
                edges.push((i as u32, j as u32));
            }
            bit += 1;
        }
    }
    Ok(Graph::new(n, edges).expect("graph6 bits form a simple graph"))
}

/// Encode as graph6. Only orders up to 62 are supported.
pub fn emit_graph6(g: &Graph) -> Result<String, FormatError> {
    let n = g.n();
    if n > GRAPH6_MAX_ORDER {
        return Err(FormatError::Graph6TooLarge);
    }
    Ok(graph6_from_bits(n, |i, j| g.has_edge(i as u32, j as u32)))
}

/// Shared bit-level encoder; `edge(i, j)` is queried with `i < j`.
pub(crate) fn graph6_from_bits(n: usize, edge: impl Fn(usize, usize) -> bool) -> String {
    let mut out = String::new();
    out.push((63 + n as u8) as char);
    let mut acc: u8 = 0;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        acc <<= 6 - filled;
        out.push((acc + 63) as char);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const BOWTIE: &str = "5\n0 1\n0 2\n1 2\n0 3\n0 4\n3 4\n";

    #[test]
    fn edge_list_roundtrip() {
        let g = parse_edge_list(BOWTIE).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.m(), 6);
        assert_eq!(parse_edge_list(&emit_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_comments_and_blanks() {
        let text = "# bowtie\n\n5  # order\n0 1\n0 2 # third\n1 2\n0 3\n0 4\n3 4\n";
        assert_eq!(parse_edge_list(text).unwrap().m(), 6);
    }

    #[test]
    fn edge_list_errors_name_the_line() {
        let text = "3\n0 1\n1 1\n";
        assert_eq!(
            parse_edge_list(text).unwrap_err(),
            FormatError::SelfLoop { line: 3 }
        );
        let text = "3\n0 1\n1 0\n";
        assert_eq!(
            parse_edge_list(text).unwrap_err(),
            FormatError::DuplicateEdge { line: 3 }
        );
        let text = "2\n0 5\n";
        assert_eq!(
            parse_edge_list(text).unwrap_err(),
            FormatError::VertexOutOfRange {
                line: 2,
                vertex: 5,
                n: 2
            }
        );
        assert_eq!(
            parse_edge_list("x\n").unwrap_err(),
            FormatError::BadOrder {
                line: 1,
                token: "x".into()
            }
        );
        assert_eq!(
            parse_edge_list("# nothing\n").unwrap_err(),
            FormatError::MissingOrder
        );
    }

    #[test]
    fn graph6_known_strings() {
        // K2, K4, C4, and a 5-vertex graph with edges 02 04 13 34.
        let k2 = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(emit_graph6(&k2).unwrap(), "A_");
        let k4 = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(emit_graph6(&k4).unwrap(), "C~");
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(emit_graph6(&c4).unwrap(), "Cl");
        let g5 = Graph::new(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(emit_graph6(&g5).unwrap(), "DQc");

        for s in ["A_", "C~", "Cl", "DQc"] {
            assert_eq!(emit_graph6(&parse_graph6(s).unwrap()).unwrap(), s);
        }
    }

    #[test]
    fn graph6_accepts_header_and_whitespace() {
        let g = parse_graph6(">>graph6<<C~\n").unwrap();
        assert_eq!(g.m(), 6);
    }

    #[test]
    fn graph6_rejects_bad_input() {
        assert_eq!(parse_graph6("").unwrap_err(), FormatError::Graph6Empty);
        assert_eq!(
            parse_graph6("~~~").unwrap_err(),
            FormatError::Graph6TooLarge
        );
        assert!(matches!(
            parse_graph6("C").unwrap_err(),
            FormatError::Graph6BadLength {
                expected: 1,
                found: 0
            }
        ));
        assert!(matches!(
            parse_graph6("C~~").unwrap_err(),
            FormatError::Graph6BadLength { .. }
        ));
        assert!(matches!(
            parse_graph6("C\u{7f}").unwrap_err(),
            FormatError::Graph6BadByte { .. }
        ));
    }
}
