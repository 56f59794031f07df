//! Cyclic `m`-extensions: a short tailed cycle hung on one base vertex, or a
//! short path between two base vertices.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Subgraph, SubgraphKey};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CyclicKind {
    /// Tail `x, y¹_1..y¹_{t1}` followed by a cycle through `y²_1..y²_{t2}`.
    Type1,
    /// Path `x_1, y_1..y_t, x_2` between distinct base vertices.
    Type2,
}

/// One cyclic extension of a base subgraph inside a host graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicExtension {
    pub kind: CyclicKind,
    /// Base vertices the extension hangs on (one for Type1, two for Type2).
    pub anchors: Vec<usize>,
    /// New vertices in traversal order (tail first for Type1).
    pub new_vertices: Vec<usize>,
    /// For Type1, how many of `new_vertices` form the tail.
    pub tail_len: usize,
    /// New edges, normalised and sorted.
    pub new_edges: Vec<(usize, usize)>,
}

impl CyclicExtension {
    fn key(&self) -> (Vec<usize>, Vec<(usize, usize)>) {
        let mut vs = self.new_vertices.clone();
        vs.sort_unstable();
        (vs, self.new_edges.clone())
    }

    /// The base with this extension added.
    pub fn apply(&self, base: &Subgraph) -> Subgraph {
        let mut vs = base.vertices().to_vec();
        vs.extend_from_slice(&self.new_vertices);
        let mut es = base.edges().to_vec();
        es.extend_from_slice(&self.new_edges);
        Subgraph::from_parts_unchecked(vs, es)
    }
}

fn norm(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

struct Search<'a> {
    gamma: &'a Graph,
    in_base: Vec<bool>,
    used: Vec<bool>,
    m: usize,
    seen: BTreeSet<SubgraphKey>,
    out: Vec<CyclicExtension>,
}

impl Search<'_> {
    fn push(&mut self, ext: CyclicExtension) {
        if self.seen.insert(ext.key()) {
            self.out.push(ext);
        }
    }

    /// Type1: extend the tail from `x` (the anchor), then close a cycle.
    fn tail(&mut self, x: usize, tail: &mut Vec<usize>) {
        let budget = self.m - 1;
        let hub = *tail.last().unwrap_or(&x);
        // Close a cycle through `hub` with t2 >= 2 new vertices.
        if budget >= tail.len() + 2 {
            let mut cycle = Vec::new();
            self.cycle(x, hub, tail, &mut cycle);
        }
        if tail.len() + 3 > budget {
            return;
        }
        for &w in self.gamma.neighbors(hub) {
            if self.in_base[w] || self.used[w] {
                continue;
            }
            self.used[w] = true;
            tail.push(w);
            self.tail(x, tail);
            tail.pop();
            self.used[w] = false;
        }
    }

    fn cycle(&mut self, x: usize, hub: usize, tail: &[usize], cycle: &mut Vec<usize>) {
        let last = *cycle.last().unwrap_or(&hub);
        if cycle.len() >= 2 && self.gamma.is_adjacent(last, hub) {
            let mut new_vertices = tail.to_vec();
            new_vertices.extend_from_slice(cycle);
            let mut edges = Vec::new();
            let mut prev = x;
            for &v in tail {
                edges.push(norm(prev, v));
                prev = v;
            }
            let mut prev = hub;
            for &v in cycle.iter() {
                edges.push(norm(prev, v));
                prev = v;
            }
            edges.push(norm(prev, hub));
            edges.sort_unstable();
            self.push(CyclicExtension {
                kind: CyclicKind::Type1,
                anchors: vec![x],
                new_vertices,
                tail_len: tail.len(),
                new_edges: edges,
            });
        }
        if tail.len() + cycle.len() + 1 > self.m - 1 {
            return;
        }
        for &w in self.gamma.neighbors(last) {
            if self.in_base[w] || self.used[w] {
                continue;
            }
            self.used[w] = true;
            cycle.push(w);
            self.cycle(x, hub, tail, cycle);
            cycle.pop();
            self.used[w] = false;
        }
    }

    /// Type2: paths from `x1` through new vertices to a base vertex `x2 > x1`.
    fn path(&mut self, x1: usize, path: &mut Vec<usize>) {
        let last = *path.last().unwrap_or(&x1);
        if !path.is_empty() {
            for &x2 in self.gamma.neighbors(last) {
                if self.in_base[x2] && x2 > x1 {
                    let mut edges = Vec::new();
                    let mut prev = x1;
                    for &v in path.iter() {
                        edges.push(norm(prev, v));
                        prev = v;
                    }
                    edges.push(norm(prev, x2));
                    edges.sort_unstable();
                    self.push(CyclicExtension {
                        kind: CyclicKind::Type2,
                        anchors: vec![x1, x2],
                        new_vertices: path.clone(),
                        tail_len: 0,
                        new_edges: edges,
                    });
                }
            }
        }
        if path.len() + 1 > self.m - 1 {
            return;
        }
        for &w in self.gamma.neighbors(last) {
            if self.in_base[w] || self.used[w] {
                continue;
            }
            self.used[w] = true;
            path.push(w);
            self.path(x1, path);
            path.pop();
            self.used[w] = false;
        }
    }
}

/// All cyclic `m`-extensions of `base` inside `gamma`, deduplicated by their
/// sets of new vertices and new edges.
///
/// A Type2 extension with no new vertices is a single host edge between two
/// base vertices that is not an edge of `base`.
pub fn enumerate_cyclic_extensions(gamma: &Graph, base: &Subgraph, m: usize) -> Result<Vec<CyclicExtension>> {
    if m < 2 {
        return Err(Error::domain("cyclic extensions need m >= 2"));
    }
    let n = gamma.vertex_count();
    let mut in_base = vec![false; n];
    for &v in base.vertices() {
        gamma.check_vertex(v)?;
        in_base[v] = true;
    }
    let mut s = Search {
        gamma,
        in_base,
        used: vec![false; n],
        m,
        seen: BTreeSet::new(),
        out: Vec::new(),
    };
    if m >= 3 {
        for &x in base.vertices() {
            s.tail(x, &mut Vec::new());
        }
    }
    for &x1 in base.vertices() {
        for &x2 in gamma.neighbors(x1) {
            if x2 > x1 && s.in_base[x2] && !base.contains_edge(x1, x2) {
                s.push(CyclicExtension {
                    kind: CyclicKind::Type2,
                    anchors: vec![x1, x2],
                    new_vertices: Vec::new(),
                    tail_len: 0,
                    new_edges: vec![(x1, x2)],
                });
            }
        }
        s.path(x1, &mut Vec::new());
    }
    Ok(s.out)
}

/// Whether every cyclic `m`-extension of `g_sub` in `gamma` is also a cyclic
/// `m`-extension of `h_sub` (compared as resulting subgraphs).
pub fn is_cyclically_m_maximal(gamma: &Graph, g_sub: &Subgraph, h_sub: &Subgraph, m: usize) -> Result<bool> {
    if !h_sub.is_subgraph_of(g_sub) {
        return Err(Error::domain("H must be a subgraph of G"));
    }
    let of_h: BTreeSet<Subgraph> = enumerate_cyclic_extensions(gamma, h_sub, m)?
        .iter()
        .map(|e| e.apply(h_sub))
        .collect();
    Ok(enumerate_cyclic_extensions(gamma, g_sub, m)?
        .iter()
        .all(|e| of_h.contains(&e.apply(g_sub))))
}
