//! graph6 encoding for graphs on at most 64 nodes.

use super::Graph;
use crate::error::{Error, Result};

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("ascii")
}

pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    let bad = |msg: &str| Error::Parse(format!("graph6 {s:?}: {msg}"));
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("byte outside 63..=126"));
    }
    let (n, rest) = match bytes.first() {
        None => return Err(bad("empty string")),
        Some(&126) => {
            if bytes.len() < 4 || bytes[1] == 126 {
                return Err(bad("unsupported size prefix"));
            }
            let n = bytes[1..4].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
            (n, &bytes[4..])
        }
        Some(&b) => ((b - 63) as usize, &bytes[1..]),
    };
    if n > super::MAX_NODES {
        return Err(bad("more than 64 nodes"));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    if rest.len() != nbits.div_ceil(6) {
        return Err(bad("wrong length"));
    }
    let mut g = Graph::empty(n);
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[idx / 6] - 63;
            if byte >> (5 - idx % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            idx += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = rest[rest.len() - 1] - 63;
        if last & ((1 << (6 - nbits % 6)) - 1) != 0 {
            return Err(bad("nonzero padding bits"));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, h_k};

    #[test]
    fn known_vector() {
        let g = from_graph6("DQc").unwrap();
        assert_eq!(g.edges(), vec![(0, 2), (0, 4), (1, 3), (3, 4)]);
        assert_eq!(to_graph6(&g), "DQc");
    }

    #[test]
    fn round_trips() {
        for g in [cycle(5).unwrap(), complete(7).unwrap(), h_k(5).unwrap(), Graph::empty(0), Graph::empty(1)] {
            assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
        }
        let big = cycle(63).unwrap();
        let enc = to_graph6(&big);
        assert!(enc.starts_with('~'));
        assert_eq!(from_graph6(&enc).unwrap(), big);
    }

    #[test]
    fn malformed() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("D").is_err());
        assert!(from_graph6("DQ c").is_err());
        assert!(from_graph6("Bx").is_err());
        assert_eq!(from_graph6("Bw").unwrap().edge_count(), 3);
    }
}
