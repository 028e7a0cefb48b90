//! graph6 codec, bit-exact per the standard: size byte 63+n (n <= 62), then
//! the upper-triangle adjacency bits in column-major order (pairs
//! (0,1),(0,2),(1,2),(0,3),...), packed big-endian 6 bits per byte, each byte
//! offset by 63, zero-padded. The optional `>>graph6<<` header is tolerated
//! on input. Long-size forms (n > 62) are not supported.

use thiserror::Error;

use crate::graph::{max_order, Graph, MAX_N_ENV};

pub const HEADER: &str = ">>graph6<<";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {offset}: non-printable graph6 byte 0x{byte:02x} (must be 63..=126)")]
    NonPrintable { offset: usize, byte: u8 },
    #[error("byte {offset}: long-size graph6 forms are unsupported")]
    UnsupportedSize { offset: usize },
    #[error("graph order {n} exceeds the configured cap {cap} (see {MAX_N_ENV})")]
    TooLarge { n: usize, cap: usize },
    #[error("malformed length: order {n} needs {expected} edge bytes, got {got}")]
    BadLength { n: usize, expected: usize, got: usize },
    #[error("byte {offset}: trailing padding bits are nonzero")]
    TrailingBits { offset: usize },
}

fn edge_bytes(n: usize) -> usize {
    (n * (n - 1) / 2 + 5) / 6
}

/// Parses one graph6 line (optionally with the standard header).
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.trim_end_matches(['\n', '\r']);
    let body = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = body.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let b0 = bytes[0];
    if !(63..=126).contains(&b0) {
        return Err(Graph6Error::NonPrintable { offset: 0, byte: b0 });
    }
    if b0 == 126 {
        return Err(Graph6Error::UnsupportedSize { offset: 0 });
    }
    let n = (b0 - 63) as usize;
    if n > max_order() {
        return Err(Graph6Error::TooLarge { n, cap: max_order() });
    }
    let expected = if n == 0 { 0 } else { edge_bytes(n) };
    if bytes.len() - 1 != expected {
        return Err(Graph6Error::BadLength { n, expected, got: bytes.len() - 1 });
    }
    for (i, &b) in bytes.iter().enumerate().skip(1) {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::NonPrintable { offset: i, byte: b });
        }
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let mut g = Graph::empty(n);
    let mut bit = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = bytes[1 + bit / 6];
            let shift = 5 - (bit % 6);
            if (byte - 63) >> shift & 1 == 1 {
                g.toggle_edge(i, j);
            }
            bit += 1;
            if bit >= nbits {
                break 'outer;
            }
        }
    }
    // padding bits of the final byte must be zero
    if nbits % 6 != 0 {
        let last = bytes.len() - 1;
        let pad = 6 - nbits % 6;
        if (bytes[last] - 63) & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::TrailingBits { offset: last });
        }
    }
    Ok(g)
}

/// Canonical headerless graph6 of the labeled graph.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    assert!(n <= 62, "single-byte graph6 size form requires n <= 62");
    let mut out = vec![63 + n as u8];
    if n > 1 {
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..n {
            for i in 0..j {
                acc = (acc << 1) | g.has_edge(i, j) as u8;
                filled += 1;
                if filled == 6 {
                    out.push(63 + acc);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push(63 + (acc << (6 - filled)));
        }
    }
    String::from_utf8(out).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex() {
        assert_eq!(emit_graph6(&Graph::empty(1)), "@");
        assert_eq!(parse_graph6("@").unwrap(), Graph::empty(1));
    }

    #[test]
    fn k5_packs_to_expected_bytes() {
        // 10 upper-triangle bits, all ones: 111111|1111(00) -> 63+63, 63+60.
        assert_eq!(emit_graph6(&Graph::complete(5)), "D~{");
        assert_eq!(parse_graph6("D~{").unwrap(), Graph::complete(5));
    }

    #[test]
    fn c5_packs_to_expected_bytes() {
        // bits for (0,1),(0,2),(1,2),(0,3),(1,3),(2,3),(0,4),(1,4),(2,4),(3,4)
        // of the 5-cycle: 101001|1001(00) -> 63+41='h', 63+36='c'.
        assert_eq!(emit_graph6(&Graph::cycle(5)), "Dhc");
        assert_eq!(parse_graph6("Dhc").unwrap(), Graph::cycle(5));
    }

    #[test]
    fn header_tolerated() {
        assert_eq!(parse_graph6(">>graph6<<Dhc").unwrap(), Graph::cycle(5));
    }

    #[test]
    fn error_cases() {
        assert_eq!(
            parse_graph6("D"),
            Err(Graph6Error::BadLength { n: 5, expected: 2, got: 0 })
        );
        assert!(matches!(
            parse_graph6("D\x20c"),
            Err(Graph6Error::NonPrintable { offset: 1, .. })
        ));
        assert!(matches!(parse_graph6("~??"), Err(Graph6Error::UnsupportedSize { .. })));
        // C5 bytes with a nonzero padding bit in the last byte
        assert!(matches!(parse_graph6("Dhd"), Err(Graph6Error::TrailingBits { offset: 2 })));
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
    }

    #[test]
    fn roundtrip_small() {
        for n in 0..=6 {
            let g = Graph::path(n.max(1));
            assert_eq!(parse_graph6(&emit_graph6(&g)).unwrap(), g);
        }
    }
}
