//! graph6 encoding: vertex-count header followed by the upper triangle of the
//! adjacency matrix, column by column, packed six bits per printable byte.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const OFFSET: u8 = 63;
const LONG_MARKER: u8 = 126;

fn data_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

fn check_printable(byte: u8, offset: usize) -> Result<u8> {
    if (OFFSET..=126).contains(&byte) {
        Ok(byte - OFFSET)
    } else {
        Err(Error::Graph6Character { byte, offset })
    }
}

/// Decode the vertex count; returns `(n, header_len)`.
fn parse_header(bytes: &[u8], cap: usize) -> Result<(usize, usize)> {
    let first = *bytes.first().ok_or(Error::Graph6Empty)?;
    if !(OFFSET..=LONG_MARKER).contains(&first) {
        return Err(Error::Graph6Header { byte: first, offset: 0 });
    }
    if first != LONG_MARKER {
        return Ok(((first - OFFSET) as usize, 1));
    }
    let (start, width) = if bytes.get(1) == Some(&LONG_MARKER) { (2, 6) } else { (1, 3) };
    if bytes.len() < start + width {
        return Err(Error::Graph6Header {
            byte: first,
            offset: bytes.len(),
        });
    }
    let mut n: u64 = 0;
    for (k, &b) in bytes[start..start + width].iter().enumerate() {
        if !(OFFSET..=126).contains(&b) {
            return Err(Error::Graph6Header { byte: b, offset: start + k });
        }
        n = (n << 6) | u64::from(b - OFFSET);
    }
    if n > cap as u64 {
        return Err(Error::CapExceeded {
            what: "graph6 decoding",
            n: n as usize,
            cap,
        });
    }
    Ok((n as usize, start + width))
}

/// Parse one graph6 line with the default vertex cap.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    parse_graph6_with_cap(text, MAX_VERTICES)
}

pub fn parse_graph6_with_cap(text: &str, cap: usize) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    let (n, header) = parse_header(bytes, cap)?;
    let expected = data_len(n);
    let body = &bytes[header..];
    if body.len() < expected {
        // Report a bad character before a short stream so the error points at
        // the first offending byte.
        for (k, &b) in body.iter().enumerate() {
            check_printable(b, header + k)?;
        }
        return Err(Error::Graph6Truncated {
            expected,
            found: body.len(),
        });
    }
    if body.len() > expected {
        return Err(Error::Graph6Trailing { expected });
    }
    let mut sextets = Vec::with_capacity(expected);
    for (k, &b) in body.iter().enumerate() {
        sextets.push(check_printable(b, header + k)?);
    }
    let mut edges = Vec::new();
    let mut bit = 0usize;
    for v in 1..n {
        for u in 0..v {
            let word = sextets[bit / 6];
            if (word >> (5 - bit % 6)) & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, edges)
}

/// Encode a graph as a graph6 line (no trailing newline).
pub fn write_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_VERTICES {
        return Err(Error::CapExceeded {
            what: "graph6 encoding",
            n,
            cap: MAX_VERTICES,
        });
    }
    let mut out = Vec::with_capacity(4 + data_len(n));
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else {
        out.push(LONG_MARKER);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    }
    let mut word = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            word = (word << 1) | u8::from(g.has_edge(u, v));
            filled += 1;
            if filled == 6 {
                out.push(word + OFFSET);
                word = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((word << (6 - filled)) + OFFSET);
    }
    Ok(String::from_utf8(out).expect("graph6 output is ASCII"))
}

/// Parse a graph6 corpus: one graph per line, blank lines and `#` comments
/// skipped. Each entry carries its 1-based line number.
pub fn parse_graph6_lines(text: &str) -> Vec<(usize, String, Result<Graph>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| {
            let t = l.trim();
            (i + 1, t.to_string(), parse_graph6(t))
        })
        .collect()
}
