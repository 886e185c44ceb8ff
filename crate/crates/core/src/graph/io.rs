use super::Graph;
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

/// graph6 encoding without header and without trailing newline.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
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
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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

/// Parses one graph6 line. The `>>graph6<<` header and surrounding
/// whitespace are accepted.
pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty input".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("byte {b:#04x} outside 63..=126")));
    }
    let six = |b: u8| (b - 63) as usize;
    let (n, body) = if bytes[0] != 126 {
        (six(bytes[0]), &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(Error::Graph6("truncated size field".into()));
        }
        let n = bytes[1..4].iter().fold(0, |acc, &b| (acc << 6) | six(b));
        (n, &bytes[4..])
    } else {
        if bytes.len() < 8 {
            return Err(Error::Graph6("truncated size field".into()));
        }
        let n = bytes[2..8].iter().fold(0, |acc, &b| (acc << 6) | six(b));
        (n, &bytes[8..])
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "expected {expected} data bytes for n = {n}, found {}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = six(body[k / 6]);
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let pad = 6 - bits % 6;
        if six(body[expected - 1]) & ((1 << pad) - 1) != 0 {
            return Err(Error::Graph6("nonzero padding bits".into()));
        }
    }
    Ok(g)
}

/// Undirected DOT rendering.
pub fn to_dot(g: &Graph, name: &str) -> String {
    let mut s = format!("graph {name} {{\n");
    for v in g.vertices() {
        s.push_str(&format!("  {v};\n"));
    }
    for (u, v) in g.edges() {
        s.push_str(&format!("  {u} -- {v};\n"));
    }
    s.push_str("}\n");
    s
}
