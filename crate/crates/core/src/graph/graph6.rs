//! graph6 encoding (header-less variant).
//!
//! The vertex count is written as one byte `n + 63` for `n <= 62`, as `126`
//! followed by three 6-bit bytes for `n <= 258047`, and as `126 126` followed
//! by six 6-bit bytes beyond that. The upper triangle of the adjacency matrix
//! follows column by column (`(0,1), (0,2), (1,2), (0,3), ...`), packed six
//! bits per byte, most significant bit first, each byte offset by 63.

use thiserror::Error;

use super::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("unexpected end of input at offset {offset}")]
    Truncated { offset: usize },
    #[error("trailing data at offset {offset}")]
    TrailingData { offset: usize },
    #[error("nonzero padding bits in final byte at offset {offset}")]
    NonzeroPadding { offset: usize },
}

const BIAS: u8 = 63;

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
}

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            bits += 1;
            if bits == 6 {
                out.push(acc + BIAS);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

fn sixbits(bytes: &[u8], offset: usize) -> Result<u8, Graph6Error> {
    match bytes.get(offset) {
        None => Err(Graph6Error::Truncated { offset }),
        Some(&b) if (BIAS..=126).contains(&b) => Ok(b - BIAS),
        Some(&byte) => Err(Graph6Error::InvalidByte { offset, byte }),
    }
}

fn decode_size(bytes: &[u8]) -> Result<(usize, usize), Graph6Error> {
    let first = sixbits(bytes, 0)?;
    if first != 63 {
        return Ok((first as usize, 1));
    }
    let (start, len) = if bytes.get(1) == Some(&126) {
        (2, 6)
    } else {
        (1, 3)
    };
    let mut n = 0usize;
    for k in 0..len {
        n = (n << 6) | sixbits(bytes, start + k)? as usize;
    }
    Ok((n, start + len))
}

/// Decodes one graph6 string. A single trailing newline is tolerated.
pub fn decode(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.strip_suffix('\n').unwrap_or(text).as_bytes();
    let (n, mut offset) = decode_size(bytes)?;
    let total_bits = n * n.saturating_sub(1) / 2;
    let nbytes = total_bits.div_ceil(6);
    let mut g = Graph::empty(n);
    let (mut i, mut j) = (0usize, 1usize);
    let mut k = 0;
    for b in 0..nbytes {
        let v = sixbits(bytes, offset + b)?;
        for bit in (0..6).rev() {
            if k == total_bits {
                if v & ((1 << (bit + 1)) - 1) != 0 {
                    return Err(Graph6Error::NonzeroPadding { offset: offset + b });
                }
                break;
            }
            if v >> bit & 1 == 1 {
                g.adj[i].insert(j);
                g.adj[j].insert(i);
            }
            k += 1;
            i += 1;
            if i == j {
                i = 0;
                j += 1;
            }
        }
    }
    offset += nbytes;
    if offset != bytes.len() {
        return Err(Graph6Error::TrailingData { offset });
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{basic, sierpinski, Basic};

    #[test]
    fn known_encodings() {
        assert_eq!(encode(&basic(Basic::Complete, 3).unwrap()), "Bw");
        assert_eq!(encode(&Graph::empty(0)), "?");
        // a-c, a-e, b-d, d-e on five vertices.
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
        assert_eq!(decode("DQc").unwrap(), g);
    }

    #[test]
    fn sierpinski_round_trip() {
        let s = sierpinski(3, 2).unwrap();
        assert_eq!(decode(&encode(&s)).unwrap(), s.without_labels());
    }

    #[test]
    fn large_size_header() {
        let g = Graph::from_edges(100, [(0, 99), (50, 51)]).unwrap();
        let text = encode(&g);
        assert!(text.starts_with('~'));
        assert_eq!(decode(&text).unwrap(), g);
    }

    #[test]
    fn malformed_inputs() {
        assert_eq!(decode("~~"), Err(Graph6Error::Truncated { offset: 2 }));
        assert_eq!(decode(""), Err(Graph6Error::Truncated { offset: 0 }));
        assert_eq!(decode("B"), Err(Graph6Error::Truncated { offset: 1 }));
        assert_eq!(decode("Bw?"), Err(Graph6Error::TrailingData { offset: 2 }));
        assert_eq!(
            decode("B\x01"),
            Err(Graph6Error::InvalidByte { offset: 1, byte: 1 })
        );
        assert_eq!(decode("Bx"), Err(Graph6Error::NonzeroPadding { offset: 1 }));
    }
}
