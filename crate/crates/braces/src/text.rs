//! The text graph format shared by every CLI command.
//!
//! Line 1: `bipartite <nA> <nB>`; each following line one `a b` pair, 0-indexed
//! with `a < nA` and `b < nB`. Duplicate lines encode parallel edges. `#` starts
//! a comment; blank lines are ignored. Serialization emits sorted edge lines, so
//! parse ∘ serialize is the identity on normalized files.

use crate::graph::BipartiteGraph;
use crate::Error;

/// Parse the text format. Edge ids are assigned in input order.
pub fn parse_graph(input: &str) -> Result<BipartiteGraph, Error> {
    let mut header: Option<(usize, usize)> = None;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (i, raw) in input.lines().enumerate() {
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let lineno = i + 1;
        if header.is_none() {
            let mut it = line.split_whitespace();
            if it.next() != Some("bipartite") {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "expected header `bipartite <nA> <nB>`".into(),
                });
            }
            let na = parse_count(it.next(), lineno)?;
            let nb = parse_count(it.next(), lineno)?;
            if it.next().is_some() {
                return Err(Error::Parse { line: lineno, msg: "trailing tokens in header".into() });
            }
            header = Some((na, nb));
            continue;
        }
        let mut it = line.split_whitespace();
        let a = parse_count(it.next(), lineno)?;
        let b = parse_count(it.next(), lineno)?;
        if it.next().is_some() {
            return Err(Error::Parse { line: lineno, msg: "expected exactly `a b`".into() });
        }
        let (na, nb) = header.unwrap();
        if a >= na || b >= nb {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("edge ({a}, {b}) out of range for classes {na} and {nb}"),
            });
        }
        pairs.push((a, b));
    }
    let (na, nb) = header.ok_or(Error::Parse { line: 0, msg: "missing header".into() })?;
    BipartiteGraph::build(na, nb, &pairs)
}

fn parse_count(tok: Option<&str>, line: usize) -> Result<usize, Error> {
    tok.ok_or(Error::Parse { line, msg: "missing number".into() })?
        .parse()
        .map_err(|_| Error::Parse { line, msg: "malformed number".into() })
}

/// Serialize to the normalized text format: header then sorted edge lines.
pub fn serialize_graph(g: &BipartiteGraph) -> String {
    let na = g.class_a().len();
    let nb = g.class_b().len();
    let mut lines: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|e| {
            let (_, ai) = g.class_index(e.a).expect("endpoint in class A");
            let (_, bi) = g.class_index(e.b).expect("endpoint in class B");
            (ai, bi)
        })
        .collect();
    lines.sort_unstable();
    let mut out = format!("bipartite {na} {nb}\n");
    for (a, b) in lines {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}
