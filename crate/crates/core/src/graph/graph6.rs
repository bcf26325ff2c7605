//! graph6 encoding (McKay's format): a size header followed by the upper
//! triangle of the adjacency matrix in colex order, six bits per byte, each
//! byte offset by 63.

use super::{Graph, MAX_VERTICES};
use crate::bits::bit;
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::with_capacity(4 + (n * n) / 12 + 1);
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        // n <= 64 here, so the 18-bit form always suffices
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let (base, body) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, trimmed.as_bytes()),
    };
    let err = |offset: usize, message: &str| Error::Graph6 {
        offset: base + offset,
        message: message.to_string(),
    };
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(i, &format!("byte {b:#04x} outside the graph6 range 63..=126")));
        }
    }
    let first = *body.first().ok_or_else(|| err(0, "empty input"))?;
    let (n, mut pos) = if first < 126 {
        ((first - 63) as usize, 1)
    } else if body.get(1) != Some(&126) {
        (read_size(body, 1, 3).ok_or_else(|| err(1, "truncated 18-bit size"))?, 4)
    } else {
        (read_size(body, 2, 6).ok_or_else(|| err(2, "truncated 36-bit size"))?, 8)
    };
    if n > MAX_VERTICES {
        return Err(err(0, &format!("{n} vertices exceeds the maximum of {MAX_VERTICES}")));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if body.len() < pos + need {
        return Err(err(body.len(), &format!(
            "truncated edge bits: need {need} bytes after the header, found {}",
            body.len() - pos
        )));
    }
    if body.len() > pos + need {
        return Err(err(pos + need, "trailing bytes after edge bits"));
    }
    let mut adj = vec![0u64; n];
    let mut k = 0;
    'outer: for v in 1..n {
        for u in 0..v {
            let byte = body[pos + k / 6] - 63;
            if byte & (0x20 >> (k % 6)) != 0 {
                adj[u] |= bit(v);
                adj[v] |= bit(u);
            }
            k += 1;
            if k == bits {
                break 'outer;
            }
        }
    }
    pos += need;
    if bits % 6 != 0 {
        let last = body[pos - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(err(pos - 1, "nonzero padding bits"));
        }
    }
    Graph::from_adjacency(adj)
}

fn read_size(body: &[u8], start: usize, len: usize) -> Option<usize> {
    let bytes = body.get(start..start + len)?;
    Some(bytes.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize))
}
