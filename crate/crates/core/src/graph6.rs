//! graph6 encoding: an order header followed by the upper triangle of the
//! adjacency matrix in column-major order, six bits per printable byte.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};

const BIAS: u8 = 63;
const OPTIONAL_HEADER: &str = ">>graph6<<";

/// Largest order expressible with the single-byte header.
pub const SHORT_HEADER_MAX: usize = 62;

pub fn parse_graph6(record: &[u8]) -> Result<Graph> {
    let record = trim(record);
    let record = record
        .strip_prefix(OPTIONAL_HEADER.as_bytes())
        .unwrap_or(record);
    if record.is_empty() {
        return Err(Error::Graph6Empty);
    }
    for (offset, &byte) in record.iter().enumerate() {
        if !(BIAS..=126).contains(&byte) {
            return Err(Error::Graph6Byte { byte, offset });
        }
    }
    let (n, body) = decode_order(record)?;
    if n > MAX_ORDER {
        return Err(Error::TooLarge { n, max: MAX_ORDER });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6Length {
            expected,
            found: body.len(),
        });
    }

    let mut pairs = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - BIAS;
            if byte & (1 << (5 - k % 6)) != 0 {
                pairs.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edge_list(n, pairs)
}

pub fn parse_graph6_str(record: &str) -> Result<Graph> {
    parse_graph6(record.as_bytes())
}

pub fn write_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_ORDER {
        return Err(Error::TooLarge { n, max: MAX_ORDER });
    }
    let mut out: Vec<u8> = Vec::new();
    if n <= SHORT_HEADER_MAX {
        out.push(n as u8 + BIAS);
    } else {
        out.push(126);
        out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].map(|x| x as u8 + BIAS));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    Ok(String::from_utf8(out).expect("graph6 output is ASCII"))
}

fn decode_order(record: &[u8]) -> Result<(usize, &[u8])> {
    if record[0] != 126 {
        return Ok(((record[0] - BIAS) as usize, &record[1..]));
    }
    if record.len() >= 2 && record[1] == 126 {
        // 6-byte order: larger than anything we accept, but decode it for the error.
        if record.len() < 8 {
            return Err(Error::Graph6Length {
                expected: 8,
                found: record.len(),
            });
        }
        let n = record[2..8]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
        return Ok((n, &record[8..]));
    }
    if record.len() < 4 {
        return Err(Error::Graph6Length {
            expected: 4,
            found: record.len(),
        });
    }
    let n = record[1..4]
        .iter()
        .fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
    Ok((n, &record[4..]))
}

fn trim(record: &[u8]) -> &[u8] {
    let end = record
        .iter()
        .rposition(|b| !b.is_ascii_whitespace())
        .map_or(0, |p| p + 1);
    let start = record[..end]
        .iter()
        .position(|b| !b.is_ascii_whitespace())
        .unwrap_or(end);
    &record[start..end]
}
