use fixedbitset::FixedBitSet;

use super::{Graph, DEFAULT_VERTEX_CAP};
use crate::{Error, Result};

/// Optional header nauty writes in front of the first graph.
pub const GRAPH6_HEADER: &str = ">>graph6<<";

const BIAS: u8 = 63;

fn err(msg: impl Into<String>) -> Error {
    Error::Graph6(msg.into())
}

fn encode_n(n: usize, out: &mut Vec<u8>) {
    if n < 63 {
        out.push(n as u8 + BIAS);
    } else if n < 258_048 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
}

/// Returns `(n, bytes consumed)`.
fn decode_n(bytes: &[u8]) -> Result<(usize, usize)> {
    let six = |b: u8| -> Result<usize> {
        if (BIAS..=126).contains(&b) {
            Ok((b - BIAS) as usize)
        } else {
            Err(err(format!("byte {b:#04x} outside the printable graph6 range")))
        }
    };
    let read = |from: usize, count: usize| -> Result<usize> {
        let chunk = bytes
            .get(from..from + count)
            .ok_or_else(|| err("truncated length prefix"))?;
        chunk.iter().try_fold(0usize, |acc, &b| Ok((acc << 6) | six(b)?))
    };
    match bytes {
        [] => Err(err("empty line")),
        [126, 126, ..] => {
            let n = read(2, 6)?;
            if n < 258_048 {
                return Err(err("non-canonical 8-byte length prefix"));
            }
            Ok((n, 8))
        }
        [126, ..] => {
            let n = read(1, 3)?;
            if n < 63 {
                return Err(err("non-canonical 4-byte length prefix"));
            }
            Ok((n, 4))
        }
        [b, ..] => Ok((six(*b)?, 1)),
    }
}

pub fn to_graph6(graph: &Graph) -> String {
    let n = graph.n();
    let mut out = Vec::new();
    encode_n(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(graph.has_edge(i, j));
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
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

pub fn parse_graph6(line: &str) -> Result<Graph> {
    parse_graph6_with_cap(line, DEFAULT_VERTEX_CAP)
}

pub fn parse_graph6_with_cap(line: &str, cap: usize) -> Result<Graph> {
    let line = line.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    let (n, start) = decode_n(bytes)?;
    if n > cap {
        return Err(Error::TooManyVertices { n, cap });
    }
    let data = &bytes[start..];
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if data.len() != expected {
        return Err(err(format!(
            "expected {expected} data bytes for n = {n}, found {}",
            data.len()
        )));
    }
    let mut rows = vec![FixedBitSet::with_capacity(n); n];
    let mut k = 0;
    let mut pairs = (1..n).flat_map(|j| (0..j).map(move |i| (i, j)));
    for &b in data {
        if !(BIAS..=126).contains(&b) {
            return Err(err(format!("byte {b:#04x} outside the printable graph6 range")));
        }
        let v = b - BIAS;
        for shift in (0..6).rev() {
            let bit = (v >> shift) & 1 == 1;
            if k < bits {
                let (i, j) = pairs.next().expect("pair count matches bit count");
                if bit {
                    rows[i].insert(j);
                    rows[j].insert(i);
                }
            } else if bit {
                return Err(err("nonzero padding bits"));
            }
            k += 1;
        }
    }
    Ok(Graph::from_rows(rows))
}

/// Parses one graph per non-blank line; errors carry the 1-based line number.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            parse_graph6(l.trim()).map_err(|e| match e {
                Error::Graph6(msg) => Error::Graph6(format!("line {}: {msg}", i + 1)),
                other => other,
            })
        })
        .collect()
}
