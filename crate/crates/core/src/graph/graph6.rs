//! graph6 encoding.
//!
//! Size prefix: one byte `63 + n` for `n <= 62`, otherwise `~` followed by
//! three bytes holding `n` in 18 bits. Then the upper triangle, column by
//! column (`(0,1), (0,2), (1,2), (0,3), ...`), six bits per byte offset by
//! 63, zero-padded.

use super::{bit, Graph, N_MAX};
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    }
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
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn from_graph6(text: &str) -> Result<Graph> {
    let body = text.trim_end_matches(['\n', '\r']);
    let body = body.strip_prefix(HEADER).unwrap_or(body).as_bytes();
    if let Some(&b) = body.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("byte {b} outside the printable range 63..=126")));
    }
    let (n, rest) = match body {
        [] => return Err(Error::Graph6("empty input".into())),
        [126, 126, ..] => return Err(Error::Graph6("graphs beyond 64 vertices are not supported".into())),
        [126, a, b, c, rest @ ..] => {
            let n = ((*a as usize - 63) << 12) | ((*b as usize - 63) << 6) | (*c as usize - 63);
            if n <= 62 {
                return Err(Error::Graph6(format!("non-canonical long size prefix for n = {n}")));
            }
            (n, rest)
        }
        [126, ..] => return Err(Error::Graph6("truncated size prefix".into())),
        [first, rest @ ..] => (*first as usize - 63, rest),
    };
    if n > N_MAX {
        return Err(Error::TooManyVertices(n));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if rest.len() < need {
        return Err(Error::Graph6(format!("expected {need} data bytes for n = {n}, found {}", rest.len())));
    }
    if rest.len() > need {
        return Err(Error::Graph6(format!("{} bytes of trailing garbage", rest.len() - need)));
    }
    let mut rows = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if byte & (0x20 >> (k % 6)) != 0 {
                rows[i] |= bit(j);
                rows[j] |= bit(i);
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = rest[need - 1] - 63;
        if last & ((1u8 << (6 - bits % 6)) - 1) != 0 {
            return Err(Error::Graph6("nonzero padding bits".into()));
        }
    }
    Ok(Graph::from_rows_unchecked(rows))
}
