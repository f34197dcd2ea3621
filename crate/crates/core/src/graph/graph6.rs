//! graph6 encoding (standard and extended size headers).
//!
//! Size `n <= 62` is one byte `n + 63`; `n <= 258047` is `~` followed by
//! three 6-bit groups; larger sizes use `~~` and six groups. The adjacency
//! bits are the upper triangle in column order `(0,1),(0,2),(1,2),(0,3),...`,
//! padded with zeros to a multiple of six and emitted as bytes `63 + group`.

use thiserror::Error;

use super::Graph;

const HEADER: &[u8] = b">>graph6<<";
const MAX_N: u64 = 68_719_476_735;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("malformed size header: {0}")]
    MalformedHeader(&'static str),
    #[error("byte {byte:#04x} at offset {offset} is outside the printable range 63..=126")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("truncated adjacency field: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("{extra} trailing bytes after the adjacency field")]
    TrailingGarbage { extra: usize },
    #[error("non-zero padding bits in the final byte")]
    NonZeroPadding,
}

pub fn encode(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    encode_size(n as u64, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
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
    String::from_utf8(out).expect("graph6 output is ASCII")
}

fn encode_size(n: u64, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        assert!(n <= MAX_N, "graph too large for graph6");
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

fn group(bytes: &[u8], offset: usize) -> Result<u64, Graph6Error> {
    let byte = bytes[offset];
    if !(63..=126).contains(&byte) {
        return Err(Graph6Error::InvalidByte { offset, byte });
    }
    Ok(u64::from(byte - 63))
}

/// Decodes one graph6 record (an optional `>>graph6<<` header is accepted;
/// surrounding whitespace is not).
pub fn decode(record: &[u8]) -> Result<Graph, Graph6Error> {
    let bytes = record.strip_prefix(HEADER).unwrap_or(record);
    if bytes.is_empty() {
        return Err(Graph6Error::MalformedHeader("empty record"));
    }
    let (n, start) = if bytes[0] != 126 {
        (group(bytes, 0)?, 1)
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(Graph6Error::MalformedHeader("extended header needs 8 bytes"));
        }
        let mut n = 0;
        for offset in 2..8 {
            n = (n << 6) | group(bytes, offset)?;
        }
        (n, 8)
    } else {
        if bytes.len() < 4 {
            return Err(Graph6Error::MalformedHeader("medium header needs 4 bytes"));
        }
        let mut n = 0;
        for offset in 1..4 {
            n = (n << 6) | group(bytes, offset)?;
        }
        (n, 4)
    };
    let n = usize::try_from(n).map_err(|_| Graph6Error::MalformedHeader("size overflows usize"))?;
    let bits = n
        .checked_mul(n.saturating_sub(1))
        .map(|x| x / 2)
        .ok_or(Graph6Error::MalformedHeader("size overflows usize"))?;
    let expected = bits.div_ceil(6);
    let body = &bytes[start..];
    if body.len() < expected {
        return Err(Graph6Error::Truncated { expected, found: body.len() });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingGarbage { extra: body.len() - expected });
    }
    let mut adj = vec![Vec::new(); n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let g = group(bytes, start + k / 6)?;
            if (g >> (5 - k % 6)) & 1 == 1 {
                adj[i].push(j);
                adj[j].push(i);
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = group(bytes, start + expected - 1)?;
        if last & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(Graph6Error::NonZeroPadding);
        }
    }
    Ok(Graph::from_raw_adjacency(adj))
}

pub fn decode_str(record: &str) -> Result<Graph, Graph6Error> {
    decode(record.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn known_encodings() {
        assert_eq!(encode(&Graph::build(1, &[]).unwrap()), "@");
        assert_eq!(encode(&complete(5)), "D~{");
        assert_eq!(encode(&Graph::empty(0)), "?");
        // Values produced by networkx's `to_graph6_bytes`.
        assert_eq!(encode(&petersen()), "IheA@GUAo");
        assert!(encode(&path(63)).starts_with("~??~hCGGC@"));
    }

    #[test]
    fn extended_headers_round_trip() {
        let g = path(63);
        let s = encode(&g);
        assert!(s.starts_with('~'));
        assert_eq!(decode_str(&s).unwrap(), g);
        let mut big = Vec::new();
        encode_size(300_000, &mut big);
        assert_eq!(&big[..2], b"~~");
    }

    #[test]
    fn distinct_errors() {
        assert!(matches!(decode(b""), Err(Graph6Error::MalformedHeader(_))));
        assert!(matches!(decode(b"~?"), Err(Graph6Error::MalformedHeader(_))));
        assert_eq!(decode(b"D~"), Err(Graph6Error::Truncated { expected: 2, found: 1 }));
        assert_eq!(decode(b"D~{?"), Err(Graph6Error::TrailingGarbage { extra: 1 }));
        assert_eq!(decode(b"D~|"), Err(Graph6Error::NonZeroPadding));
        assert_eq!(decode(b"D~\x20"), Err(Graph6Error::InvalidByte { offset: 2, byte: 0x20 }));
    }

    #[test]
    fn header_is_accepted() {
        assert_eq!(decode(b">>graph6<<D~{").unwrap(), complete(5));
    }
}
