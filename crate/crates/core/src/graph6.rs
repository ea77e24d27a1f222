//! graph6 encoding: a size header followed by the upper triangle of the
//! adjacency matrix in column order, packed six bits per printable byte.

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";
/// Largest vertex count accepted when parsing.
pub const MAX_VERTICES: usize = 1 << 20;

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

fn sixbits(bytes: &[u8], at: usize) -> Result<u64> {
    match bytes.get(at) {
        None => Err(err(at, "truncated input")),
        Some(&b) if (63..=126).contains(&b) => Ok(u64::from(b - 63)),
        Some(&b) => Err(err(
            at,
            format!("byte {b:#04x} outside the printable range 63..=126"),
        )),
    }
}

/// Parses one graph6 record. An optional `>>graph6<<` prefix and trailing
/// whitespace are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim_end().as_bytes();
    let mut pos = if bytes.starts_with(HEADER.as_bytes()) {
        HEADER.len()
    } else {
        0
    };

    let first = sixbits(bytes, pos)?;
    let n = if first < 63 {
        pos += 1;
        first
    } else if bytes.get(pos + 1) != Some(&126) {
        let mut v = 0;
        for i in 1..=3 {
            v = (v << 6) | sixbits(bytes, pos + i)?;
        }
        pos += 4;
        v
    } else {
        let mut v = 0;
        for i in 2..=7 {
            v = (v << 6) | sixbits(bytes, pos + i)?;
        }
        pos += 8;
        v
    };
    if n > MAX_VERTICES as u64 {
        return Err(err(
            0,
            format!("vertex count {n} exceeds the supported maximum {MAX_VERTICES}"),
        ));
    }
    let n = n as usize;

    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    if bytes.len() < pos + needed {
        return Err(err(
            bytes.len(),
            format!("truncated bit field: expected {needed} data bytes"),
        ));
    }
    if bytes.len() > pos + needed {
        return Err(err(pos + needed, "unexpected trailing bytes"));
    }

    let mut g = Graph::new(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = sixbits(bytes, pos + k / 6)?;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = pos + needed - 1;
        let pad = 6 - bits % 6;
        if sixbits(bytes, last)? & ((1 << pad) - 1) != 0 {
            return Err(err(last, "nonzero padding bits"));
        }
    }
    Ok(g)
}

/// Parses every non-empty line of `text` as a graph6 record.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        if !line.trim().is_empty() {
            out.push(parse_graph6(line.trim()).map_err(|e| match e {
                Error::Parse { offset: o, message } => Error::Parse {
                    offset: offset + o,
                    message,
                },
                other => other,
            })?);
        }
        offset += line.len();
    }
    Ok(out)
}

/// Canonical graph6 encoding without header or newline.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_forms() {
        assert_eq!(parse_graph6("?").unwrap().vertex_count(), 0);
        let g = parse_graph6(">>graph6<<C~\n").unwrap();
        assert_eq!(g.edge_count(), 6);
        let big = Graph::new(100);
        let s = emit_graph6(&big);
        assert!(s.starts_with("~?@c"));
        assert_eq!(parse_graph6(&s).unwrap(), big);
    }

    #[test]
    fn errors_carry_offsets() {
        assert!(matches!(
            parse_graph6("C"),
            Err(Error::Parse { offset: 1, .. })
        ));
        assert!(matches!(
            parse_graph6("C~~"),
            Err(Error::Parse { offset: 2, .. })
        ));
        assert!(matches!(
            parse_graph6("A\x10"),
            Err(Error::Parse { offset: 1, .. })
        ));
        assert!(matches!(
            parse_graph6("A@"),
            Err(Error::Parse { offset: 1, .. })
        ));
        assert!(matches!(
            parse_graph6("~"),
            Err(Error::Parse { offset: 1, .. })
        ));
    }

    #[test]
    fn multi_line() {
        let gs = parse_graph6_lines("@\nC~\n\nBw\n").unwrap();
        assert_eq!(gs.len(), 3);
        assert_eq!(gs[2].edge_count(), 3);
        assert!(matches!(
            parse_graph6_lines("@\nC~~\n"),
            Err(Error::Parse { offset: 4, .. })
        ));
    }
}
