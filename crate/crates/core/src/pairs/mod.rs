//! Rooted pairs `(G, H)`, relative densities, safety and balance.

mod cyclic;
mod extension;
mod io;
mod maximal;

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{flow, Graph};
use crate::rational::Rational;

pub use cyclic::{enumerate_cyclic_extensions, is_cyclically_m_maximal, CyclicExtension, CyclicKind};
pub use extension::{count_extensions, enumerate_extensions, find_extension, for_each_extension, ExtensionQuery};
pub use io::{parse_pair, write_pair};
pub use maximal::{count_kt_maximal_extensions, is_kt_maximal};

/// Largest number of non-root vertices handled by subset enumeration.
pub const DEFAULT_PAIR_CAP: usize = 14;

/// Sorted vertex list and sorted edge list identifying a copy.
pub type SubgraphKey = (Vec<usize>, Vec<(usize, usize)>);

/// A subgraph of some host graph: a vertex set and edges among those vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct Subgraph {
    vertices: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

impl Subgraph {
    /// Builds a subgraph, normalising order and checking edges against `host`.
    pub fn new(host: &Graph, vertices: &[usize], edges: &[(usize, usize)]) -> Result<Self> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        for &v in &vs {
            host.check_vertex(v)?;
        }
        let mut es = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            let e = (a.min(b), a.max(b));
            if vs.binary_search(&e.0).is_err() || vs.binary_search(&e.1).is_err() {
                return Err(Error::domain(format!("edge {{{a},{b}}} leaves the vertex set")));
            }
            if !host.is_adjacent(a, b) {
                return Err(Error::domain(format!("{{{a},{b}}} is not an edge of the host")));
            }
            es.push(e);
        }
        es.sort_unstable();
        es.dedup();
        Ok(Subgraph {
            vertices: vs,
            edges: es,
        })
    }

    /// The subgraph induced by `vertices`.
    pub fn induced(host: &Graph, vertices: &[usize]) -> Result<Self> {
        let (_, map) = host.induced(vertices)?;
        let edges = host
            .edges()
            .iter()
            .copied()
            .filter(|&(a, b)| map.binary_search(&a).is_ok() && map.binary_search(&b).is_ok())
            .collect();
        Ok(Subgraph { vertices: map, edges })
    }

    pub fn whole(host: &Graph) -> Self {
        Subgraph {
            vertices: (0..host.vertex_count()).collect(),
            edges: host.edges().to_vec(),
        }
    }

    pub(crate) fn from_parts_unchecked(mut vertices: Vec<usize>, mut edges: Vec<(usize, usize)>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        for e in &mut edges {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        edges.sort_unstable();
        edges.dedup();
        Subgraph { vertices, edges }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn is_subgraph_of(&self, other: &Subgraph) -> bool {
        self.vertices.iter().all(|&v| other.contains_vertex(v))
            && self.edges.iter().all(|&(a, b)| other.contains_edge(a, b))
    }

    /// Union of vertex and edge sets.
    pub fn union(&self, other: &Subgraph) -> Subgraph {
        let mut vs = self.vertices.clone();
        vs.extend_from_slice(&other.vertices);
        let mut es = self.edges.clone();
        es.extend_from_slice(&other.edges);
        Subgraph::from_parts_unchecked(vs, es)
    }

    /// The subgraph as a standalone graph, relabelled by ascending host index.
    pub fn to_graph(&self) -> Graph {
        let index = |v: usize| self.vertices.binary_search(&v).unwrap();
        Graph::from_sorted(self.vertices.len(), {
            let mut es: Vec<_> = self.edges.iter().map(|&(a, b)| (index(a), index(b))).collect();
            es.sort_unstable();
            es
        })
    }
}

/// Exponent `α ∈ (0, 1)` of the edge probability `p = n^{-α}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Alpha(Rational);

impl Alpha {
    pub fn new(value: Rational) -> Result<Self> {
        if value > Rational::zero() && value < Rational::one() {
            Ok(Alpha(value))
        } else {
            Err(Error::domain(format!("alpha must lie in (0,1), got {value}")))
        }
    }

    /// `α = 1 − 1/(2^{k−1} + a/b)`.
    pub fn from_kab(k: u32, a: i64, b: i64) -> Result<Self> {
        if k == 0 || k > 40 || a < 1 || b < 1 {
            return Err(Error::domain("need k in 1..=40 and positive a, b"));
        }
        let base = Rational::from_integer(1i64 << (k - 1)) + Rational::new(a, b);
        Alpha::new(Rational::one() - base.recip())
    }

    pub fn value(self) -> Rational {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        crate::rational::to_f64(&self.0)
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A graph `G` with a rooted subgraph `H`.
///
/// `roots` lists `V(H)` in a fixed order; `small_edges` is `E(H)`, which need
/// not contain every edge of `G` among the roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootedPair {
    big: Graph,
    roots: Vec<usize>,
    small_edges: Vec<(usize, usize)>,
}

/// Relative edge structure of a pair over its non-root vertices.
pub(crate) struct Relative {
    /// Edges of `G` among the roots that are not in `E(H)`.
    pub c0: i64,
    /// Non-root vertices of `G`.
    pub free: Vec<usize>,
    /// Edges from each free vertex to the roots.
    pub bonus: Vec<i64>,
    /// Edges between free vertices, as indices into `free`.
    pub inner: Vec<(usize, usize)>,
    /// Adjacency among free vertices as masks (only filled when `free.len() <= 64`).
    pub inner_mask: Vec<u64>,
}

impl Relative {
    /// `e(K, H)` for the pair spanned by the roots plus the free-vertex mask.
    pub fn edge_counts(&self) -> Vec<i64> {
        let f = self.free.len();
        let mut counts = vec![0i64; 1 << f];
        counts[0] = self.c0;
        for mask in 1usize..1 << f {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            counts[mask] = counts[rest] + self.bonus[low] + (self.inner_mask[low] & rest as u64).count_ones() as i64;
        }
        counts
    }
}

impl RootedPair {
    pub fn new(big: Graph, roots: Vec<usize>, small_edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &r in &roots {
            big.check_vertex(r)?;
            if !seen.insert(r) {
                return Err(Error::domain(format!("root {r} listed twice")));
            }
        }
        let mut es = Vec::with_capacity(small_edges.len());
        for (a, b) in small_edges {
            if !seen.contains(&a) || !seen.contains(&b) {
                return Err(Error::domain(format!("small edge {{{a},{b}}} leaves the roots")));
            }
            if a == b || !big.is_adjacent(a, b) {
                return Err(Error::domain(format!("small edge {{{a},{b}}} is not an edge of G")));
            }
            es.push((a.min(b), a.max(b)));
        }
        es.sort_unstable();
        es.dedup();
        Ok(RootedPair {
            big,
            roots,
            small_edges: es,
        })
    }

    /// Pair whose small graph is induced by `roots`.
    pub fn induced(big: Graph, roots: Vec<usize>) -> Result<Self> {
        let set: BTreeSet<usize> = roots.iter().copied().collect();
        let small = big
            .edges()
            .iter()
            .copied()
            .filter(|(a, b)| set.contains(a) && set.contains(b))
            .collect();
        RootedPair::new(big, roots, small)
    }

    pub fn big(&self) -> &Graph {
        &self.big
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn small_edges(&self) -> &[(usize, usize)] {
        &self.small_edges
    }

    pub fn is_root(&self, v: usize) -> bool {
        self.roots.contains(&v)
    }

    pub fn has_small_edge(&self, a: usize, b: usize) -> bool {
        self.small_edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// Vertices of `G` outside `H`, ascending.
    pub fn free_vertices(&self) -> Vec<usize> {
        (0..self.big.vertex_count()).filter(|&v| !self.is_root(v)).collect()
    }

    /// Edges of `G` outside `E(H)`.
    pub fn relative_edges(&self) -> Vec<(usize, usize)> {
        self.big
            .edges()
            .iter()
            .copied()
            .filter(|&(a, b)| !self.has_small_edge(a, b))
            .collect()
    }

    pub(crate) fn relative(&self) -> Relative {
        let free = self.free_vertices();
        let mut index = vec![usize::MAX; self.big.vertex_count()];
        for (i, &v) in free.iter().enumerate() {
            index[v] = i;
        }
        let mut c0 = 0;
        let mut bonus = vec![0i64; free.len()];
        let mut inner = Vec::new();
        let mut inner_mask = vec![0u64; free.len()];
        for &(a, b) in self.big.edges() {
            match (index[a], index[b]) {
                (usize::MAX, usize::MAX) => {
                    if !self.has_small_edge(a, b) {
                        c0 += 1;
                    }
                }
                (usize::MAX, j) | (j, usize::MAX) => bonus[j] += 1,
                (i, j) => {
                    inner.push((i, j));
                    if free.len() <= 64 {
                        inner_mask[i] |= 1 << j;
                        inner_mask[j] |= 1 << i;
                    }
                }
            }
        }
        Relative {
            c0,
            free,
            bonus,
            inner,
            inner_mask,
        }
    }

    /// `(v(G) − v(H), e(G) − e(H))`.
    pub fn rel_counts(&self) -> (usize, usize) {
        (
            self.big.vertex_count() - self.roots.len(),
            self.big.edge_count() - self.small_edges.len(),
        )
    }

    /// `e(G,H) / v(G,H)`.
    pub fn rel_density(&self) -> Result<Rational> {
        let (v, e) = self.rel_counts();
        if v == 0 {
            return Err(Error::domain("relative density needs v(G,H) >= 1"));
        }
        Ok(Rational::new(e as i64, v as i64))
    }

    fn check_enumerable(&self, cap: usize) -> Result<usize> {
        let f = self.big.vertex_count() - self.roots.len();
        if f == 0 {
            return Err(Error::domain("the pair has no vertices outside H"));
        }
        if f > cap.min(20) {
            return Err(Error::capacity(
                "non-root vertices for subset enumeration",
                f,
                cap.min(20),
            ));
        }
        Ok(f)
    }

    /// Maximum of `ρ(K, H)` over `H ⊂ K ⊆ G` with `v(K,H) >= 1`, and the
    /// vertex set of a maximiser (fewest vertices, then lexicographically first).
    pub fn max_rel_density(&self) -> Result<(Rational, Vec<usize>)> {
        self.max_rel_density_capped(DEFAULT_PAIR_CAP)
    }

    pub fn max_rel_density_capped(&self, cap: usize) -> Result<(Rational, Vec<usize>)> {
        self.check_enumerable(cap)?;
        let rel = self.relative();
        let counts = rel.edge_counts();
        let mut best = (counts[1], 1i64, 1usize);
        for (mask, &e) in counts.iter().enumerate().skip(2) {
            let v = mask.count_ones() as i64;
            let (be, bv, bm) = best;
            let lhs = e * bv;
            let rhs = be * v;
            let diff = mask ^ bm;
            let lex = diff != 0 && mask >> diff.trailing_zeros() & 1 == 1;
            if lhs > rhs || (lhs == rhs && (v < bv || (v == bv && lex))) {
                best = (e, v, mask);
            }
        }
        Ok((Rational::new(best.0, best.1), self.witness_vertices(&rel, best.2)))
    }

    fn witness_vertices(&self, rel: &Relative, mask: usize) -> Vec<usize> {
        let mut vs = self.roots.clone();
        vs.extend((0..rel.free.len()).filter(|&i| mask >> i & 1 == 1).map(|i| rel.free[i]));
        vs.sort_unstable();
        vs
    }

    /// Minimum `e(K,H)` over maximisers `K` of `ρ(K,H)` having at least one edge
    /// outside `E(H) ∪ E(K \ H)`.
    pub fn e_min(&self) -> Result<usize> {
        let f = self.check_enumerable(DEFAULT_PAIR_CAP)?;
        let (max, _) = self.max_rel_density()?;
        let rel = self.relative();
        let counts = rel.edge_counts();
        let mut inner_counts = vec![0i64; 1 << f];
        for mask in 1usize..1 << f {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            inner_counts[mask] = inner_counts[rest] + (rel.inner_mask[low] & rest as u64).count_ones() as i64;
        }
        (1usize..1 << f)
            .filter(|&mask| Rational::new(counts[mask], mask.count_ones() as i64) == max)
            .filter(|&mask| counts[mask] > inner_counts[mask])
            .map(|mask| counts[mask] as usize)
            .min()
            .ok_or_else(|| Error::domain("no maximiser has an edge between H and the rest"))
    }

    /// `v(G,H) − α·e(G,H)`.
    pub fn f_alpha(&self, alpha: Alpha) -> Rational {
        let (v, e) = self.rel_counts();
        Rational::from_integer(v as i64) - alpha.value() * Rational::from_integer(e as i64)
    }

    /// Whether `f_α(S, H) > 0` for every `S` with `H ⊂ S ⊆ G`.
    ///
    /// Only graphs `S` carrying every edge of `G` on their vertex set matter.
    /// Pairs with at most [`DEFAULT_PAIR_CAP`] free vertices are enumerated,
    /// larger ones go through a max-flow closure test.
    pub fn is_alpha_safe(&self, alpha: Alpha) -> Result<bool> {
        self.is_alpha_safe_capped(alpha, DEFAULT_PAIR_CAP)
    }

    pub fn is_alpha_safe_capped(&self, alpha: Alpha, cap: usize) -> Result<bool> {
        let f = self.big.vertex_count() - self.roots.len();
        let rel = self.relative();
        if rel.c0 > 0 {
            // S = H plus the extra root edges has f_α = −α·c0 < 0.
            return Ok(false);
        }
        if f == 0 {
            return Ok(true);
        }
        let (p, q) = (*alpha.value().numer(), *alpha.value().denom());
        if f <= cap.min(20) {
            let counts = rel.edge_counts();
            Ok((1usize..1 << f).all(|mask| q * mask.count_ones() as i64 > p * counts[mask]))
        } else {
            // Unsafe iff some nonempty free set F has p·e(F) − q·|F| >= 0.
            let weights: Vec<i64> = rel.bonus.iter().map(|b| p * b - q).collect();
            let pairs: Vec<_> = rel.inner.iter().map(|&(a, b)| (a, b, p)).collect();
            Ok(!flow::exists_nonnegative_set(&weights, &pairs, 0, &[]))
        }
    }

    /// Whether `ρ(G,H) > ρ(K,H)` for every `H ⊂ K ⊂ G` with `v(K,H) >= 1`.
    pub fn is_strictly_balanced(&self) -> Result<bool> {
        self.is_strictly_balanced_capped(DEFAULT_PAIR_CAP)
    }

    pub fn is_strictly_balanced_capped(&self, cap: usize) -> Result<bool> {
        let f = self.big.vertex_count() - self.roots.len();
        if f == 0 {
            return Err(Error::domain("strict balance needs v(G,H) >= 1"));
        }
        let rel = self.relative();
        let (v, e) = self.rel_counts();
        let (v, e) = (v as i64, e as i64);
        if f <= cap.min(20) {
            let counts = rel.edge_counts();
            let full = (1usize << f) - 1;
            Ok((1..full).all(|mask| counts[mask] * v < e * mask.count_ones() as i64))
        } else {
            // Not strictly balanced iff for some excluded w a nonempty F ⊆ free − w
            // has v·e(F) − e·|F| >= 0, where e(F) includes the constant c0.
            let weights: Vec<i64> = rel.bonus.iter().map(|b| v * b - e).collect();
            let pairs: Vec<_> = rel.inner.iter().map(|&(a, b)| (a, b, v)).collect();
            Ok(!(0..f).any(|w| flow::exists_nonnegative_set(&weights, &pairs, v * rel.c0, &[w])))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    fn alpha(a: i64, b: i64) -> Alpha {
        Alpha::new(r(a, b)).unwrap()
    }

    /// Triangle 0-1-2 rooted on the edge {0,1}.
    fn k3_edge() -> RootedPair {
        RootedPair::induced(Graph::complete(3), vec![0, 1]).unwrap()
    }

    #[test]
    fn alpha_domain() {
        assert!(Alpha::new(r(0, 1)).is_err());
        assert!(Alpha::new(r(1, 1)).is_err());
        assert_eq!(Alpha::from_kab(4, 7, 1).unwrap().value(), r(14, 15));
        assert_eq!(Alpha::from_kab(3, 1, 1).unwrap().value(), r(4, 5));
    }

    #[test]
    fn counts_and_densities() {
        assert_eq!(k3_edge().rel_counts(), (1, 2));
        let g = Graph::cycle(4).unwrap();
        let whole = RootedPair::induced(g.clone(), vec![0, 1, 2, 3]).unwrap();
        assert_eq!(whole.rel_counts(), (0, 0));
        assert!(whole.rel_density().is_err());
        assert_eq!(RootedPair::induced(g, vec![0]).unwrap().rel_counts(), (3, 4));
        assert_eq!(k3_edge().rel_density().unwrap(), r(2, 1));
        let path = RootedPair::induced(Graph::path(3), vec![0]).unwrap();
        assert_eq!(path.rel_density().unwrap(), r(1, 1));
    }

    #[test]
    fn max_relative_density() {
        assert_eq!(k3_edge().max_rel_density().unwrap(), (r(2, 1), vec![0, 1, 2]));
        let k4 = RootedPair::induced(Graph::complete(4), vec![0]).unwrap();
        assert_eq!(k4.max_rel_density().unwrap(), (r(2, 1), vec![0, 1, 2, 3]));
    }

    #[test]
    fn minimum_edges() {
        assert_eq!(k3_edge().e_min().unwrap(), 2);
        let star = RootedPair::induced(Graph::star(3), vec![1, 2, 3]).unwrap();
        assert_eq!(star.e_min().unwrap(), 3);
        let edge = RootedPair::induced(Graph::path(2), vec![0]).unwrap();
        assert_eq!(edge.e_min().unwrap(), 1);
    }

    #[test]
    fn f_alpha_and_safety() {
        assert_eq!(k3_edge().f_alpha(alpha(2, 5)), r(1, 5));
        let path = RootedPair::induced(Graph::path(3), vec![0]).unwrap();
        assert_eq!(path.f_alpha(alpha(1, 2)), r(1, 1));
        let whole = RootedPair::induced(Graph::complete(3), vec![0, 1, 2]).unwrap();
        assert_eq!(whole.f_alpha(alpha(1, 3)), r(0, 1));
        assert!(k3_edge().is_alpha_safe(alpha(2, 5)).unwrap());
        assert!(!k3_edge().is_alpha_safe(alpha(1, 2)).unwrap());
        let isolated = RootedPair::induced(Graph::empty(2), vec![0]).unwrap();
        for a in 1..10 {
            assert!(isolated.is_alpha_safe(alpha(a, 10)).unwrap());
        }
        // Root edge missing from H makes the pair unsafe at any alpha.
        let loose = RootedPair::new(Graph::path(3), vec![0, 1], vec![]).unwrap();
        assert!(!loose.is_alpha_safe(alpha(1, 10)).unwrap());
    }

    #[test]
    fn strict_balance_of_pairs() {
        assert!(k3_edge().is_strictly_balanced().unwrap());
        let two_pendants = RootedPair::induced(Graph::new(4, [(0, 2), (1, 3)]).unwrap(), vec![0, 1]).unwrap();
        assert!(!two_pendants.is_strictly_balanced().unwrap());
        let single = RootedPair::induced(Graph::star(4), vec![1, 2, 3, 4]).unwrap();
        assert!(single.is_strictly_balanced().unwrap());
    }

    #[test]
    fn flow_routes_match_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..400 {
            let n = rng.gen_range(2..9);
            let edges: Vec<_> = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            let g = Graph::new(n, edges).unwrap();
            let roots: Vec<usize> = (0..rng.gen_range(1..n)).collect();
            let induced = RootedPair::induced(g.clone(), roots.clone()).unwrap();
            let bare = RootedPair::new(g, roots, vec![]).unwrap();
            for pair in [induced, bare] {
                assert_eq!(
                    pair.is_strictly_balanced_capped(20).unwrap(),
                    pair.is_strictly_balanced_capped(0).unwrap(),
                    "{pair:?}"
                );
                for a in 1..10 {
                    let al = alpha(a, 10);
                    assert_eq!(
                        pair.is_alpha_safe_capped(al, 20).unwrap(),
                        pair.is_alpha_safe_capped(al, 0).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn subgraph_helpers() {
        let g = Graph::complete(4);
        let s = Subgraph::new(&g, &[2, 0], &[(2, 0)]).unwrap();
        assert_eq!(s.vertices(), &[0, 2]);
        assert!(s.contains_edge(2, 0));
        assert!(Subgraph::new(&g, &[0, 1], &[(0, 2)]).is_err());
        assert_eq!(Subgraph::induced(&g, &[1, 2, 3]).unwrap().edges().len(), 3);
        assert!(s.is_subgraph_of(&Subgraph::whole(&g)));
        assert_eq!(Subgraph::induced(&g, &[1, 3]).unwrap().to_graph(), Graph::complete(2));
    }
}
