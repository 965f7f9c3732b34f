//! graph6 text encoding (short form, up to 62 vertices) and a plain edge-list format
//! for anything larger.
//!
//! graph6 layout: one byte `n + 63`, then the upper triangle of the adjacency matrix
//! read column by column (`(0,1), (0,2), (1,2), (0,3), ...`), packed six bits per
//! byte most-significant first, zero padded, each group offset by 63.

use super::Graph;
use crate::error::{Error, Result};

pub const GRAPH6_MAX_ORDER: usize = 62;

const OFFSET: u8 = 63;
const HEADER: &str = ">>graph6<<";

pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > GRAPH6_MAX_ORDER {
        return Err(Error::Unsupported(format!(
            "graph6 short form holds at most {GRAPH6_MAX_ORDER} vertices, got {n}"
        )));
    }
    let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push((n as u8 + OFFSET) as char);
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group = (group << 1) | g.adjacent(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((group + OFFSET) as char);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((group << (6 - filled)) + OFFSET) as char);
    }
    Ok(out)
}

/// Parse one graph6 record. Surrounding whitespace and an optional `>>graph6<<`
/// header are accepted; anything else outside the record is rejected.
pub fn from_graph6(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(Error::Parse("empty graph6 string".into()));
    };
    if let Some(pos) = bytes.iter().position(|&b| !(OFFSET..=126).contains(&b)) {
        return Err(Error::Parse(format!(
            "byte {:?} at position {pos} is outside the graph6 range",
            bytes[pos] as char
        )));
    }
    if first == 126 {
        return Err(Error::Unsupported(format!(
            "graph6 long form (more than {GRAPH6_MAX_ORDER} vertices) is not supported"
        )));
    }
    let n = (first - OFFSET) as usize;
    let bits = n * n.saturating_sub(1) / 2;
    let groups = bits.div_ceil(6);
    let body = &bytes[1..];
    if body.len() < groups {
        return Err(Error::Parse(format!(
            "graph6 body for {n} vertices needs {groups} bytes, found {}",
            body.len()
        )));
    }
    if body.len() > groups {
        return Err(Error::Parse(format!(
            "trailing garbage after graph6 record: {:?}",
            String::from_utf8_lossy(&body[groups..])
        )));
    }
    let bit = |k: usize| -> bool {
        let v = body[k / 6] - OFFSET;
        (v >> (5 - k % 6)) & 1 == 1
    };
    for k in bits..groups * 6 {
        if bit(k) {
            return Err(Error::Parse("non-zero padding bits in graph6 record".into()));
        }
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Edge-list text: a first line with the vertex count, then one `u v` pair per line.
/// Blank lines and `#` comments are ignored.
pub fn from_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("edge list is empty".into()))?;
    let n: usize = header
        .parse()
        .map_err(|_| Error::Parse(format!("edge list header {header:?} is not a vertex count")))?;
    let mut g = Graph::empty(n);
    for line in lines {
        let mut parts = line.split_whitespace();
        let parse = |p: Option<&str>| -> Result<usize> {
            p.and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad edge line {line:?}")))
        };
        let u = parse(parts.next())?;
        let v = parse(parts.next())?;
        if parts.next().is_some() {
            return Err(Error::Parse(format!("bad edge line {line:?}")));
        }
        g.add_edge(u, v).map_err(|e| Error::Parse(e.to_string()))?;
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.order());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{complete, cycle, petersen, random_graph};
    use super::*;

    /// Encoder written straight from the byte layout: build the bit string, chunk it.
    fn reference_graph6(g: &Graph) -> String {
        let n = g.order();
        let mut bits = String::new();
        for j in 1..n {
            for i in 0..j {
                bits.push(if g.adjacent(i, j) { '1' } else { '0' });
            }
        }
        while !bits.len().is_multiple_of(6) {
            bits.push('0');
        }
        let mut out = vec![(n as u8 + 63) as char];
        for chunk in bits.as_bytes().chunks(6) {
            let v = u8::from_str_radix(std::str::from_utf8(chunk).unwrap(), 2).unwrap();
            out.push((v + 63) as char);
        }
        out.into_iter().collect()
    }

    #[test]
    fn cycle5_encodes_as_dhc() {
        assert_eq!(reference_graph6(&cycle(5)), "Dhc");
        assert_eq!(to_graph6(&cycle(5)).unwrap(), "Dhc");
        assert_eq!(from_graph6("Dhc").unwrap(), cycle(5));
    }

    #[test]
    fn known_strings() {
        // K4: every upper-triangle bit set
        assert_eq!(to_graph6(&complete(4)).unwrap(), "C~");
        assert_eq!(to_graph6(&petersen()).unwrap(), reference_graph6(&petersen()));
        assert_eq!(to_graph6(&Graph::empty(0)).unwrap(), "?");
        assert_eq!(from_graph6("?").unwrap().order(), 0);
        assert_eq!(from_graph6(">>graph6<<Dhc\n").unwrap(), cycle(5));
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(from_graph6(""), Err(Error::Parse(_))));
        assert!(matches!(from_graph6("   "), Err(Error::Parse(_))));
        assert!(matches!(from_graph6("Dhcx"), Err(Error::Parse(_))));
        assert!(matches!(from_graph6("Dh"), Err(Error::Parse(_))));
        assert!(matches!(from_graph6("D h"), Err(Error::Parse(_))));
        // 'd' = 100 = 63 + 37 = 0b100101: last bits of C5's second group must be padding
        assert!(matches!(from_graph6("Dhd"), Err(Error::Parse(_))));
        assert!(matches!(from_graph6("~?@"), Err(Error::Unsupported(_))));
    }

    #[test]
    fn round_trip_matches_reference_on_random_graphs() {
        for seed in 0..300u64 {
            let n = (seed as usize * 7) % 63;
            let g = random_graph(n, 0.3, seed);
            let s = to_graph6(&g).unwrap();
            assert_eq!(s, reference_graph6(&g));
            assert_eq!(from_graph6(&s).unwrap(), g);
        }
    }

    #[test]
    fn edge_list_round_trip() {
        let g = petersen();
        assert_eq!(from_edge_list(&to_edge_list(&g)).unwrap(), g);
        assert!(from_edge_list("").is_err());
        assert!(from_edge_list("3\n0 3\n").is_err());
        assert!(from_edge_list("3\n0 1 2\n").is_err());
        let big = Graph::empty(70);
        assert!(matches!(to_graph6(&big), Err(Error::Unsupported(_))));
        assert_eq!(from_edge_list(&to_edge_list(&big)).unwrap(), big);
    }
}
