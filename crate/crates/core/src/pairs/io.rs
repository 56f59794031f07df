//! Text format for rooted pairs: a graph file plus `small`, `smalledge` and
//! `root` directives.

use std::fmt::Write;

use super::RootedPair;
use crate::error::Result;
use crate::graph::io::{load_error, parse_index, tokenized_lines, GraphBuilder};
use crate::graph::write_graph;

/// Parses a pair. `root` lines fix the root order; without them the small
/// vertices are used in ascending order.
pub fn parse_pair(text: &str) -> Result<RootedPair> {
    let mut builder = GraphBuilder::default();
    let mut small = Vec::new();
    let mut small_edges = Vec::new();
    let mut roots = Vec::new();
    let mut last_line = 1;
    for (line, toks) in tokenized_lines(text) {
        last_line = line;
        if builder.accept(line, &toks)? {
            continue;
        }
        match (toks[0], toks.len()) {
            ("small", 2) => small.push(parse_index(toks[1], line)?),
            ("root", 2) => roots.push(parse_index(toks[1], line)?),
            ("smalledge", 3) => small_edges.push((parse_index(toks[1], line)?, parse_index(toks[2], line)?)),
            (word, _) => return Err(load_error(line, format!("unexpected directive `{word}`"))),
        }
    }
    let big = builder.finish()?;
    if roots.is_empty() {
        small.sort_unstable();
        roots = small.clone();
    } else if !small.is_empty() {
        let mut a = small.clone();
        let mut b = roots.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Err(load_error(last_line, "`root` lines must list the `small` vertices"));
        }
    }
    RootedPair::new(big, roots, small_edges).map_err(|e| load_error(last_line, e.to_string()))
}

pub fn write_pair(pair: &RootedPair) -> String {
    let mut out = write_graph(pair.big());
    for &r in pair.roots() {
        writeln!(out, "small {r}").unwrap();
    }
    for &(a, b) in pair.small_edges() {
        writeln!(out, "smalledge {a} {b}").unwrap();
    }
    for &r in pair.roots() {
        writeln!(out, "root {r}").unwrap();
    }
    out
}
