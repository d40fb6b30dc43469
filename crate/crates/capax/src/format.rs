//! Graph text formats.
//!
//! * Edge list: first line is the vertex count `n`, then one `u v` pair per
//!   line with 0-based indices. Blank lines and `#` comments are ignored.
//! * graph6: the standard 6-bit encoding (bytes offset by 63) of the upper
//!   triangle in column order, with an optional `>>graph6<<` header.

use std::fmt::Write as _;
use std::str::FromStr;

use capax_core::Graph;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GraphFormat {
    #[default]
    EdgeList,
    Graph6,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edgelist" | "edge-list" => Ok(Self::EdgeList),
            "graph6" | "g6" => Ok(Self::Graph6),
            other => Err(Error::Usage(format!("unknown graph format {other:?}"))),
        }
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Graph6 => parse_graph6(text),
    }
}

pub fn emit_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::EdgeList => emit_edge_list(g),
        GraphFormat::Graph6 => emit_graph6(g),
    }
}

fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing vertex count".into(),
    })?;
    let n: usize = header.parse().map_err(|_| Error::Parse {
        line: first,
        msg: format!("expected vertex count, got {header:?}"),
    })?;
    let mut edges = Vec::new();
    for (line, l) in lines {
        let mut it = l.split_whitespace();
        let mut next = || -> Result<usize> {
            let tok = it.next().ok_or(Error::Parse {
                line,
                msg: "expected two vertex indices".into(),
            })?;
            let v: usize = tok.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("bad vertex index {tok:?}"),
            })?;
            if v >= n {
                return Err(Error::Parse {
                    line,
                    msg: format!("vertex {v} out of range for n = {n}"),
                });
            }
            Ok(v)
        };
        let (u, v) = (next()?, next()?);
        if it.next().is_some() {
            return Err(Error::Parse {
                line,
                msg: "trailing tokens after edge".into(),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line,
                msg: format!("self-loop at {u}"),
            });
        }
        edges.push((u, v));
    }
    Ok(Graph::from_edges(n, edges)?)
}

fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}

const G6_HEADER: &str = ">>graph6<<";

fn parse_graph6(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(G6_HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::Graph6(format!(
            "byte {:#04x} at offset {pos} outside 63..=126",
            bytes[pos]
        )));
    }
    let val = |b: u8| (b - 63) as usize;
    let (n, body) = match bytes {
        [] => return Err(Error::Graph6("empty input".into())),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::Graph6("truncated 8-byte size".into()));
            }
            let n = rest[..6].iter().fold(0usize, |acc, &b| (acc << 6) | val(b));
            (n, &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Graph6("truncated 4-byte size".into()));
            }
            let n = rest[..3].iter().fold(0usize, |acc, &b| (acc << 6) | val(b));
            (n, &rest[3..])
        }
        [first, rest @ ..] => (val(*first), rest),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let expected = pairs.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "expected {expected} data bytes for n = {n}, got {}",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = val(body[k / 6]);
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    if k % 6 != 0 && val(body[k / 6]) & ((1 << (6 - k % 6)) - 1) != 0 {
        return Err(Error::Graph6("non-zero padding bits".into()));
    }
    Ok(Graph::from_edges(n, edges)?)
}

fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut bits = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            bits += 1;
            if bits == 6 {
                out.push(acc + 63);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + 63);
    }
    let mut s = String::from_utf8(out).expect("graph6 bytes are ASCII");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use capax_core::graph::hamming_graph;

    #[test]
    fn edge_list_k2() {
        let g = parse_graph("2\n0 1\n", GraphFormat::EdgeList).unwrap();
        assert_eq!(g, Graph::complete(2));
        assert_eq!(emit_graph(&g, GraphFormat::EdgeList), "2\n0 1\n");
    }

    #[test]
    fn edge_list_errors() {
        for (text, line) in [
            ("", 1),
            ("x\n", 1),
            ("3\n0 3\n", 2),
            ("3\n\n0\n", 3),
            ("3\n0 1 2\n", 2),
            ("3\n1 1\n", 2),
            ("3\n0 a\n", 2),
        ] {
            match parse_graph(text, GraphFormat::EdgeList) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        let g = parse_graph("# comment\n3\n0 1 # edge\n\n", GraphFormat::EdgeList).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn graph6_star() {
        // D?{ : five vertices, vertex 4 joined to all others
        let g = parse_graph("D?{", GraphFormat::Graph6).unwrap();
        let star = Graph::from_edges(5, [(0, 4), (1, 4), (2, 4), (3, 4)]).unwrap();
        assert_eq!(g, star);
        assert_eq!(emit_graph(&star, GraphFormat::Graph6), "D?{\n");
        let el = parse_graph("5\n0 4\n1 4\n2 4\n3 4\n", GraphFormat::EdgeList).unwrap();
        assert_eq!(g, el);
    }

    #[test]
    fn graph6_known_strings() {
        // Petersen graph in nauty's ordering is "IheA@GUAo"; check
        // structure rather than labelling
        let p = parse_graph(">>graph6<<IheA@GUAo\n", GraphFormat::Graph6).unwrap();
        assert_eq!(p.n(), 10);
        assert_eq!(p.regular_degree(), Some(3));
        assert_eq!(parse_graph("@", GraphFormat::Graph6).unwrap().n(), 1);
        assert_eq!(parse_graph("?", GraphFormat::Graph6).unwrap().n(), 0);
    }

    #[test]
    fn graph6_errors() {
        assert!(matches!(
            parse_graph("", GraphFormat::Graph6),
            Err(Error::Graph6(_))
        ));
        assert!(matches!(
            parse_graph("D?", GraphFormat::Graph6),
            Err(Error::Graph6(_))
        ));
        assert!(matches!(
            parse_graph("D?{{", GraphFormat::Graph6),
            Err(Error::Graph6(_))
        ));
        assert!(matches!(
            parse_graph("D\x10{", GraphFormat::Graph6),
            Err(Error::Graph6(_))
        ));
        // K2 is "A_"; "A`" sets a padding bit
        assert_eq!(
            parse_graph("A_", GraphFormat::Graph6).unwrap(),
            Graph::complete(2)
        );
        assert!(matches!(
            parse_graph("A`", GraphFormat::Graph6),
            Err(Error::Graph6(_))
        ));
    }

    #[test]
    fn round_trip_cube5_graph_and_large_sizes() {
        let g = hamming_graph(5, &[1, 2]).unwrap();
        for f in [GraphFormat::EdgeList, GraphFormat::Graph6] {
            assert_eq!(parse_graph(&emit_graph(&g, f), f).unwrap(), g);
        }
        let big = hamming_graph(7, &[3]).unwrap();
        let text = emit_graph(&big, GraphFormat::Graph6);
        assert!(text.starts_with('~'));
        assert_eq!(parse_graph(&text, GraphFormat::Graph6).unwrap(), big);
    }

    #[test]
    fn format_names() {
        assert_eq!(
            "graph6".parse::<GraphFormat>().unwrap(),
            GraphFormat::Graph6
        );
        assert_eq!(
            "edgelist".parse::<GraphFormat>().unwrap(),
            GraphFormat::EdgeList
        );
        assert!("dot".parse::<GraphFormat>().is_err());
    }
}
