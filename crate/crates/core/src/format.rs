//! Text formats: graph6 (one graph per line) and whitespace edge lists.
//!
//! graph6 packs the upper triangle of the adjacency matrix column by column
//! (`(0,1), (0,2), (1,2), (0,3), ...`) into 6-bit groups, big-endian within
//! each group, each group biased by 63. The vertex count comes first: one
//! byte for `n <= 62`, otherwise `~` followed by three 6-bit groups.

use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::graph::{Graph, GraphError};

const BIAS: u8 = 63;
const HEADER: &str = ">>graph6<<";

/// Whether a parsed graph must be connected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Connectivity {
    #[default]
    Any,
    /// Reject disconnected graphs, as every metric operation needs connectivity.
    Required,
}

impl Connectivity {
    fn check(self, g: &Graph) -> Result<(), GraphError> {
        match self {
            Connectivity::Any => Ok(()),
            Connectivity::Required => g.ensure_connected(),
        }
    }
}

fn malformed(msg: impl Into<String>) -> GraphError {
    GraphError::MalformedEncoding(msg.into())
}

fn sextet(b: u8) -> Result<u8, GraphError> {
    if !(BIAS..=BIAS + 63).contains(&b) {
        return Err(malformed(format!("byte {b:#04x} outside the graph6 range")));
    }
    Ok(b - BIAS)
}

/// Decodes one graph6 line. Surrounding whitespace and an optional
/// `>>graph6<<` header are ignored.
pub fn parse_graph6(text: &str, connectivity: Connectivity) -> Result<Graph, GraphError> {
    let text = text.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    let (&first, rest) = bytes.split_first().ok_or_else(|| malformed("empty input"))?;

    let (n, body) = if first == b'~' {
        if rest.first() == Some(&b'~') {
            // 6-byte size form, only used for n >= 258048.
            return Err(GraphError::TooLarge(usize::MAX));
        }
        if rest.len() < 3 {
            return Err(malformed("truncated size header"));
        }
        let mut n = 0usize;
        for &b in &rest[..3] {
            n = (n << 6) | sextet(b)? as usize;
        }
        if n < 63 {
            return Err(malformed(format!("long size header used for n = {n}")));
        }
        (n, &rest[3..])
    } else {
        (sextet(first)? as usize, rest)
    };
    if n > MAX_VERTICES {
        return Err(GraphError::TooLarge(n));
    }

    let bit_count = n * n.saturating_sub(1) / 2;
    let expected = bit_count.div_ceil(6);
    if body.len() != expected {
        return Err(malformed(format!(
            "expected {expected} data bytes for n = {n}, found {}",
            body.len()
        )));
    }

    let mut adj = vec![VertexSet::EMPTY; n];
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let group = sextet(body[k / 6])?;
            if (group >> (5 - k % 6)) & 1 == 1 {
                adj[i].insert(j);
                adj[j].insert(i);
            }
            k += 1;
        }
    }
    if bit_count % 6 != 0 {
        let last = sextet(body[expected - 1])?;
        let pad = 6 - bit_count % 6;
        if last & ((1u8 << pad) - 1) != 0 {
            return Err(malformed("non-zero padding bits"));
        }
    }

    let g = Graph::from_adjacency(adj)?;
    connectivity.check(&g)?;
    Ok(g)
}

/// Encodes a graph as a graph6 line (no header, no newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + n * n / 12 + 1);
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group = (group << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(group + BIAS);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// Parses an edge list: one `u v` pair per line, 0-based labels, `#` starts a
/// comment. The graph has `max label + 1` vertices; repeated edges collapse.
pub fn parse_edge_list(text: &str, connectivity: Connectivity) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    let mut max_label: Option<usize> = None;
    for line in text.lines() {
        let content = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let labels = tokens
            .iter()
            .map(|t| t.parse::<usize>().map_err(|_| GraphError::NonInteger(t.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let [u, v] = labels[..] else {
            return Err(malformed(format!("expected two labels per line, got {line:?}")));
        };
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        max_label = Some(max_label.unwrap_or(0).max(u).max(v));
        edges.push((u, v));
    }
    let n = max_label.map(|m| m.saturating_add(1)).ok_or(GraphError::EmptySet)?;
    if n > MAX_VERTICES {
        return Err(GraphError::TooLarge(n));
    }
    let g = Graph::from_edges(n, edges)?;
    connectivity.check(&g)?;
    Ok(g)
}
