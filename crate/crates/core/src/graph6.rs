//! graph6 encoding: vertex count, then the upper triangle of the adjacency
//! matrix in column order (`x(0,1), x(0,2), x(1,2), x(0,3), ...`) packed
//! big-endian into 6-bit groups, each group offset by 63.

use crate::error::{Error, Result};
use crate::graph::{bit, Graph, MAX_VERTICES};

const OFFSET: u8 = 63;
const HEADER: &str = ">>graph6<<";

/// Largest order written in the one-byte short form.
pub const SHORT_FORM_MAX: usize = 62;

/// Parses one graph6 line. A trailing newline and the optional `>>graph6<<`
/// header are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.trim_end_matches(['\n', '\r']);
    let (bytes, base) = match line.strip_prefix(HEADER) {
        Some(rest) => (rest.as_bytes(), HEADER.len()),
        None => (line.as_bytes(), 0),
    };
    let err = |offset: usize, reason: String| Error::Graph6 {
        offset: base + offset,
        reason,
    };

    for (i, &b) in bytes.iter().enumerate() {
        if !(OFFSET..=126).contains(&b) {
            return Err(err(i, format!("byte 0x{b:02x} outside the printable range 63..=126")));
        }
    }
    let first = *bytes.first().ok_or_else(|| err(0, "empty input".into()))?;

    let (n, body_start) = if first != 126 {
        ((first - OFFSET) as usize, 1)
    } else {
        if bytes.get(1) == Some(&126) {
            return Err(err(1, "8-byte order prefix is not supported".into()));
        }
        if bytes.len() < 4 {
            return Err(err(bytes.len(), "truncated long-form order".into()));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - OFFSET) as usize);
        (n, 4)
    };
    if n > MAX_VERTICES {
        return Err(err(0, format!("order {n} exceeds the {MAX_VERTICES}-vertex cap")));
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let expected = body_start + nbits.div_ceil(6);
    if bytes.len() != expected {
        let offset = bytes.len().min(expected);
        return Err(err(
            offset,
            format!("expected {expected} bytes for n = {n}, found {}", bytes.len()),
        ));
    }

    let mut adj = vec![0u64; n];
    let mut k = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = bytes[body_start + k / 6] - OFFSET;
            if byte & (0x20 >> (k % 6)) != 0 {
                adj[i] |= bit(j);
                adj[j] |= bit(i);
            }
            k += 1;
            if k == nbits {
                break 'outer;
            }
        }
    }
    if nbits % 6 != 0 {
        let last = expected - 1;
        let pad_mask = (1u8 << (6 - nbits % 6)) - 1;
        if (bytes[last] - OFFSET) & pad_mask != 0 {
            return Err(err(last, "non-zero padding bits".into()));
        }
    }
    Ok(Graph::from_rows_unchecked(adj))
}

/// Encodes `g` as graph6 (no trailing newline). Orders above 62 use the
/// long-form `~` prefix.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let nbits = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(4 + nbits.div_ceil(6));
    if n <= SHORT_FORM_MAX {
        out.push(n as u8 + OFFSET);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    }
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group = (group << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(group + OFFSET);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + OFFSET);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}
