//! Finite simple undirected graphs and their exact invariants.

mod density;
pub(crate) mod flow;
pub(crate) mod io;
mod iso;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use density::{
    density, is_strictly_balanced, is_strictly_balanced_capped, max_density, max_density_capped, DEFAULT_SUBSET_CAP,
};
pub use io::{parse_graph, write_graph};
pub use iso::{
    automorphism_count, automorphism_count_capped, canonical_form, canonical_form_rooted, find_isomorphism,
    is_isomorphic, DEFAULT_AUTOMORPHISM_CAP,
};

/// Shortest-path length, or `Infinite` between different components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// Simple undirected graph on vertices `0..vertex_count`.
///
/// Edges are stored as sorted `(u, v)` pairs with `u < v`, alongside adjacency
/// lists and a bit matrix for constant-time adjacency tests. Values are
/// immutable once built.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    words: usize,
    bits: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;
    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::new(r.vertex_count, r.edges)
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            vertex_count: g.n,
            edges: g.edges,
        }
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.edges.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::domain(format!(
                    "edge {{{a},{b}}} has an endpoint outside 0..{vertex_count}"
                )));
            }
            if a == b {
                return Err(Error::domain(format!("loop at vertex {a}")));
            }
            list.push((a.min(b), a.max(b)));
        }
        let before = list.len();
        list.sort_unstable();
        list.dedup();
        if list.len() != before {
            return Err(Error::domain("duplicate edge"));
        }
        Ok(Self::from_sorted(vertex_count, list))
    }

    /// Builds a graph from edges that may repeat; duplicates are merged.
    pub fn from_edges_lossy(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= vertex_count || b >= vertex_count || a == b {
                return Err(Error::domain(format!("invalid edge {{{a},{b}}}")));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_sorted(vertex_count, list))
    }

    pub(crate) fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
            bits[a * words + b / 64] |= 1 << (b % 64);
            bits[b * words + a / 64] |= 1 << (a % 64);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            n,
            edges,
            adj,
            words,
            bits,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        Self::from_sorted(n, edges)
    }

    /// Path on `n` vertices `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Self {
        Self::from_sorted(n, (1..n).map(|i| (i - 1, i)).collect())
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::domain("a cycle needs at least 3 vertices"));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::from_sorted(leaves + 1, (1..=leaves).map(|i| (0, i)).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "vertex {v} out of range for a graph on {} vertices",
                self.n
            )))
        }
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (a + shift, b + shift)));
        Self::from_sorted(self.n + other.n, edges)
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::domain("permutation length differs from vertex count"));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::domain("not a permutation"));
            }
        }
        Graph::new(self.n, self.edges.iter().map(|&(a, b)| (perm[a], perm[b])))
    }

    /// Breadth-first distances from `source`.
    pub fn bfs(&self, source: usize) -> Vec<Distance> {
        let mut dist = vec![Distance::Infinite; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Distance::Finite(0);
        queue.push_back((source, 0));
        while let Some((v, d)) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == Distance::Infinite {
                    dist[w] = Distance::Finite(d + 1);
                    queue.push_back((w, d + 1));
                }
            }
        }
        dist
    }

    /// Multi-source BFS: distance from each vertex to the nearest source.
    pub fn bfs_from_set(&self, sources: &[usize]) -> Vec<Distance> {
        let mut dist = vec![Distance::Infinite; self.n];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] == Distance::Infinite {
                dist[s] = Distance::Finite(0);
                queue.push_back((s, 0));
            }
        }
        while let Some((v, d)) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == Distance::Infinite {
                    dist[w] = Distance::Finite(d + 1);
                    queue.push_back((w, d + 1));
                }
            }
        }
        dist
    }

    pub fn distance(&self, x: usize, y: usize) -> Result<Distance> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        Ok(self.bfs(x)[y])
    }

    /// Minimum distance between a vertex of `a` and a vertex of `b`.
    pub fn set_distance(&self, a: &[usize], b: &[usize]) -> Result<Distance> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::domain("set distance needs two nonempty sets"));
        }
        for &v in a.iter().chain(b) {
            self.check_vertex(v)?;
        }
        let dist = self.bfs_from_set(a);
        Ok(b.iter().map(|&v| dist[v]).min().unwrap_or(Distance::Infinite))
    }

    /// Vertices at distance exactly `r` from every vertex of `xs`.
    pub fn common_r_neighbors(&self, xs: &[usize], r: usize) -> Result<Vec<usize>> {
        if xs.is_empty() {
            return Err(Error::domain("common neighbours of an empty tuple"));
        }
        for &x in xs {
            self.check_vertex(x)?;
        }
        let mut keep = vec![true; self.n];
        for &x in xs {
            for (y, d) in self.bfs(x).into_iter().enumerate() {
                if d != Distance::Finite(r) {
                    keep[y] = false;
                }
            }
        }
        Ok((0..self.n).filter(|&y| keep[y]).collect())
    }

    /// Induced subgraph on `set`, relabelled in ascending original order.
    ///
    /// Returns the subgraph and the map from new labels to original vertices.
    pub fn induced(&self, set: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut vs = set.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vs.iter().enumerate() {
            self.check_vertex(v)?;
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vs.iter().enumerate() {
            for &w in &self.adj[v] {
                if index[w] != usize::MAX && index[w] > i {
                    edges.push((i, index[w]));
                }
            }
        }
        edges.sort_unstable();
        Ok((Graph::from_sorted(vs.len(), edges), vs))
    }

    /// Neighbourhood of `v` as a bit mask (graphs up to 64 vertices).
    pub(crate) fn neighbor_mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.bits[v * self.words]
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.bfs(0).iter().all(|d| *d != Distance::Infinite)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Adjacency matrix rendered as rows of `0`/`1`.
    pub fn adjacency_rows(&self) -> Vec<String> {
        (0..self.n)
            .map(|a| {
                (0..self.n)
                    .map(|b| if self.is_adjacent(a, b) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert_eq!(Graph::from_edges_lossy(3, [(0, 1), (1, 0)]).unwrap().edge_count(), 1);
    }

    #[test]
    fn distances() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.distance(0, 0).unwrap(), Distance::Finite(0));
        assert_eq!(c5.distance(0, 2).unwrap(), Distance::Finite(2));
        assert_eq!(Graph::empty(2).distance(0, 1).unwrap(), Distance::Infinite);
        assert!(c5.distance(0, 5).is_err());
        assert!(Distance::Finite(1000) < Distance::Infinite);
    }

    #[test]
    fn set_distances() {
        let c6 = Graph::cycle(6).unwrap();
        assert_eq!(c6.set_distance(&[0], &[3]).unwrap(), Distance::Finite(3));
        assert_eq!(c6.set_distance(&[0, 1], &[1, 4]).unwrap(), Distance::Finite(0));
        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.set_distance(&[0, 1], &[2]).unwrap(), Distance::Infinite);
        assert!(c6.set_distance(&[], &[1]).is_err());
    }

    #[test]
    fn common_neighbors() {
        let k4 = Graph::complete(4);
        assert_eq!(k4.common_r_neighbors(&[0, 1], 1).unwrap(), vec![2, 3]);
        let p3 = Graph::path(3);
        assert_eq!(p3.common_r_neighbors(&[0, 2], 1).unwrap(), vec![1]);
        let c8 = Graph::cycle(8).unwrap();
        assert_eq!(c8.common_r_neighbors(&[0], 4).unwrap(), vec![4]);
    }

    #[test]
    fn induced_subgraphs() {
        let (k3, map) = Graph::complete(4).induced(&[3, 0, 2]).unwrap();
        assert_eq!(k3, Graph::complete(3));
        assert_eq!(map, vec![0, 2, 3]);
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.induced(&[1, 2, 3]).unwrap().0, Graph::path(3));
        assert_eq!(c5.induced(&[0, 1, 2, 3, 4]).unwrap().0, c5);
        assert!(c5.induced(&[7]).is_err());
    }

    #[test]
    fn mask_helpers() {
        let k4 = Graph::complete(4);
        assert_eq!(k4.neighbor_mask(0), 0b1110);
    }
}
