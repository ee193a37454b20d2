use super::Graph;
use crate::error::{Error, Result};

const BIAS: u8 = 63;

fn perr(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

/// Parses one graph6 line. A leading `>>graph6<<` header and surrounding
/// whitespace are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let trimmed = text.trim();
    let lead = text.len() - text.trim_start().len();
    let (body, mut base) = match trimmed.strip_prefix(">>graph6<<") {
        Some(rest) => (rest, lead + 10),
        None => (trimmed, lead),
    };
    let bytes = body.as_bytes();
    if bytes.is_empty() {
        return Err(perr(base, "empty graph6 string"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(perr(base + i, format!("byte {b} outside [63,126]")));
        }
    }

    let (n, header) = if bytes[0] != 126 {
        ((bytes[0] - BIAS) as usize, 1)
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(perr(base + bytes.len(), "truncated 18-bit size prefix"));
        }
        (read_size(&bytes[1..4]), 4)
    } else {
        if bytes.len() < 8 {
            return Err(perr(base + bytes.len(), "truncated 36-bit size prefix"));
        }
        (read_size(&bytes[2..8]), 8)
    };

    let bits = n * n.saturating_sub(1) / 2;
    let want = bits.div_ceil(6);
    let data = &bytes[header..];
    if data.len() != want {
        return Err(perr(
            base + header + data.len().min(want),
            format!("expected {want} data bytes for n={n}, found {}", data.len()),
        ));
    }

    let mut edges = Vec::new();
    let mut k = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - BIAS;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
            if k == bits {
                break 'outer;
            }
        }
    }
    if bits % 6 != 0 {
        let last = data[want - 1] - BIAS;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            base += header + want - 1;
            return Err(perr(base, "nonzero padding bits"));
        }
    }
    Graph::from_edges(n, edges)
}

fn read_size(b: &[u8]) -> usize {
    b.iter().fold(0usize, |acc, &c| (acc << 6) | (c - BIAS) as usize)
}

/// Canonical graph6 encoding (zero padding bits, shortest size prefix).
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + BIAS);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + BIAS);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc <<= 1;
            if g.has_edge(i, j) {
                acc |= 1;
            }
            k += 1;
            if k == 6 {
                out.push(acc + BIAS);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

fn lerr(line: usize, message: impl Into<String>) -> Error {
    Error::ParseLine {
        line,
        message: message.into(),
    }
}

/// DIMACS edge format: `c` comments, a `p edge n m` (or `p col n m`) header,
/// then `e i j` lines with 1-indexed vertices.
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        let mut tok = line.split_whitespace();
        match tok.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(lerr(ln, "duplicate problem line"));
                }
                let kind = tok.next().ok_or_else(|| lerr(ln, "missing format in problem line"))?;
                if kind != "edge" && kind != "col" {
                    return Err(lerr(ln, format!("unsupported format `{kind}`")));
                }
                let n = parse_num(tok.next(), ln, "vertex count")?;
                let m = parse_num(tok.next(), ln, "edge count")?;
                if tok.next().is_some() {
                    return Err(lerr(ln, "trailing tokens in problem line"));
                }
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| lerr(ln, "edge before problem line"))?;
                let i = parse_num(tok.next(), ln, "edge endpoint")?;
                let j = parse_num(tok.next(), ln, "edge endpoint")?;
                if tok.next().is_some() {
                    return Err(lerr(ln, "edge line must have exactly two endpoints"));
                }
                for v in [i, j] {
                    if v == 0 || v > n {
                        return Err(lerr(ln, format!("vertex {v} out of range 1..={n}")));
                    }
                }
                if i == j {
                    return Err(lerr(ln, format!("self-loop at vertex {i}")));
                }
                edges.push((i - 1, j - 1));
            }
            Some(other) => return Err(lerr(ln, format!("unknown line type `{other}`"))),
        }
    }
    let (n, m) = header.ok_or_else(|| lerr(0, "missing problem line"))?;
    if edges.len() != m {
        return Err(lerr(0, format!("header announces {m} edges, found {}", edges.len())));
    }
    Graph::from_edges(n, edges)
}

/// Whitespace-separated 0-indexed pairs, one per line. `#` starts a comment.
/// The vertex count is one more than the largest index seen.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut n = 0;
    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = line.split('#').next().unwrap_or("");
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.len() {
            0 => continue,
            2 => {
                let i = parse_num(Some(toks[0]), ln, "vertex")?;
                let j = parse_num(Some(toks[1]), ln, "vertex")?;
                if i == j {
                    return Err(lerr(ln, format!("self-loop at vertex {i}")));
                }
                n = n.max(i + 1).max(j + 1);
                edges.push((i, j));
            }
            k => return Err(lerr(ln, format!("expected 2 vertices, found {k} tokens"))),
        }
    }
    Graph::from_edges(n, edges)
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let t = tok.ok_or_else(|| lerr(line, format!("missing {what}")))?;
    t.parse()
        .map_err(|_| lerr(line, format!("invalid {what} `{t}`")))
}
