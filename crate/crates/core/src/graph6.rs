//! graph6 encoding (as produced by nauty's `geng`/`showg`).
//!
//! `N(n)` is one byte `n + 63` for `n <= 62`, otherwise `126` followed by
//! three bytes of 6 bits. The upper triangle follows in column order, padded
//! with zeros to a multiple of six bits, each group stored as `value + 63`.

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

const HEADER: &str = ">>graph6<<";

pub fn encode(g: &SimpleGraph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

pub fn decode(text: &str) -> Result<SimpleGraph> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let (body, base) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (rest.as_bytes(), HEADER.len()),
        None => (trimmed.as_bytes(), 0),
    };
    let byte_at = |i: usize| -> Result<u8> {
        let b = *body
            .get(i)
            .ok_or_else(|| Error::parse(base + i, "unexpected end of graph6 data"))?;
        if !(63..=126).contains(&b) {
            return Err(Error::parse(base + i, format!("byte {b:#04x} outside the graph6 range 63..=126")));
        }
        Ok(b - 63)
    };

    let (n, mut pos) = match byte_at(0)? {
        63 => {
            if body.get(1) == Some(&126) {
                return Err(Error::parse(base + 1, "graphs beyond 258047 vertices are not supported"));
            }
            let mut n = 0usize;
            for i in 1..=3 {
                n = n << 6 | byte_at(i)? as usize;
            }
            (n, 4)
        }
        small => (small as usize, 1),
    };
    let mut g = SimpleGraph::new(n).map_err(|e| match e {
        Error::Capability(m) => Error::Capability(m),
        other => Error::parse(base, other.to_string()),
    })?;

    let total = n * n.saturating_sub(1) / 2;
    let needed = total.div_ceil(6);
    let mut bit = 0usize;
    for _ in 0..needed {
        let chunk = byte_at(pos)?;
        for k in (0..6).rev() {
            if bit < total {
                if chunk >> k & 1 == 1 {
                    let (i, j) = pair_at(bit);
                    g.add_edge(i, j).expect("pair in range");
                }
            } else if chunk >> k & 1 == 1 {
                return Err(Error::parse(base + pos, "nonzero padding bits"));
            }
            bit += 1;
        }
        pos += 1;
    }
    if pos != body.len() {
        return Err(Error::parse(base + pos, "trailing bytes after graph6 data"));
    }
    Ok(g)
}

/// `(i, j)` for the `index`-th upper-triangle entry in column order.
fn pair_at(index: usize) -> (usize, usize) {
    let mut j = 1;
    let mut start = 0;
    while start + j <= index {
        start += j;
        j += 1;
    }
    (index - start, j)
}
