//! Plain-text graph format.
//!
//! ```text
//! # comment
//! vertices 4
//! edge 0 1
//! edge 1 2
//! ```

use std::fmt::Write;

use super::Graph;
use crate::error::{Error, Result};

/// Non-blank, non-comment lines split into whitespace tokens, with 1-based line numbers.
pub(crate) fn tokenized_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

pub(crate) fn load_error(line: usize, msg: impl Into<String>) -> Error {
    Error::Load { line, msg: msg.into() }
}

pub(crate) fn parse_index(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| load_error(line, format!("expected a vertex index, found `{tok}`")))
}

/// Accumulates `vertices`/`edge` directives, validating as it goes.
#[derive(Default)]
pub(crate) struct GraphBuilder {
    n: Option<usize>,
    edges: Vec<(usize, usize)>,
    seen: std::collections::HashSet<(usize, usize)>,
}

impl GraphBuilder {
    /// Consumes the line if it is a graph directive; returns false otherwise.
    pub(crate) fn accept(&mut self, line: usize, toks: &[&str]) -> Result<bool> {
        match toks[0] {
            "vertices" => {
                if self.n.is_some() {
                    return Err(load_error(line, "repeated `vertices` line"));
                }
                if toks.len() != 2 {
                    return Err(load_error(line, "expected `vertices <n>`"));
                }
                self.n = Some(parse_index(toks[1], line)?);
                Ok(true)
            }
            "edge" => {
                let n = self.n.ok_or_else(|| load_error(line, "`edge` before `vertices`"))?;
                if toks.len() != 3 {
                    return Err(load_error(line, "expected `edge <u> <v>`"));
                }
                let a = parse_index(toks[1], line)?;
                let b = parse_index(toks[2], line)?;
                if a >= n || b >= n {
                    return Err(load_error(line, format!("edge endpoint out of range 0..{n}")));
                }
                if a == b {
                    return Err(load_error(line, format!("loop at vertex {a}")));
                }
                let key = (a.min(b), a.max(b));
                if !self.seen.insert(key) {
                    return Err(load_error(line, format!("duplicate edge {a} {b}")));
                }
                self.edges.push(key);
                Ok(true)
            }
            _ => Ok(false),
        }
    }

    pub(crate) fn finish(self) -> Result<Graph> {
        let n = self.n.ok_or_else(|| load_error(1, "missing `vertices <n>` line"))?;
        Graph::new(n, self.edges)
    }
}

/// Parses the graph text format.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut builder = GraphBuilder::default();
    for (line, toks) in tokenized_lines(text) {
        if !builder.accept(line, &toks)? {
            return Err(load_error(line, format!("unknown directive `{}`", toks[0])));
        }
    }
    builder.finish()
}

/// Renders a graph in the text format accepted by [`parse_graph`].
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("vertices {}\n", g.vertex_count());
    for &(a, b) in g.edges() {
        writeln!(out, "edge {a} {b}").unwrap();
    }
    out
}
