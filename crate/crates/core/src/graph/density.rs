//! Densities, maximum density and strict balance.

use super::{flow, Graph};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Largest vertex count for exhaustive subset enumeration.
pub const DEFAULT_SUBSET_CAP: usize = 16;

/// `e(G)/v(G)`.
pub fn density(g: &Graph) -> Result<Rational> {
    if g.vertex_count() == 0 {
        return Err(Error::domain("density of the empty graph is undefined"));
    }
    Ok(Rational::new(g.edge_count() as i64, g.vertex_count() as i64))
}

/// Edge counts of every induced subgraph, indexed by vertex mask.
pub(crate) fn subset_edge_counts(g: &Graph) -> Vec<u32> {
    let n = g.vertex_count();
    let mut counts = vec![0u32; 1 << n];
    for mask in 1usize..1 << n {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        counts[mask] = counts[rest] + (g.neighbor_mask(low) & rest as u64).count_ones();
    }
    counts
}

pub(crate) fn mask_vertices(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// True when the sorted vertex list of `a` precedes that of `b` (equal sizes).
fn lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a >> diff.trailing_zeros() & 1 == 1
}

/// Maximum density over nonempty induced subgraphs, with the achieving set.
///
/// Ties go to the fewest vertices, then to the lexicographically smallest
/// sorted vertex list.
pub fn max_density(g: &Graph) -> Result<(Rational, Vec<usize>)> {
    max_density_capped(g, DEFAULT_SUBSET_CAP)
}

pub fn max_density_capped(g: &Graph, cap: usize) -> Result<(Rational, Vec<usize>)> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::domain("maximum density of the empty graph is undefined"));
    }
    if n > cap.min(30) {
        return Err(Error::capacity("vertex count for subset enumeration", n, cap.min(30)));
    }
    let counts = subset_edge_counts(g);
    let mut best: (u64, u64, u64) = (0, 1, 1); // (edges, vertices, mask)
    for mask in 1u64..1 << n {
        let e = counts[mask as usize] as u64;
        let v = mask.count_ones() as u64;
        let (be, bv, bm) = best;
        let lhs = e * bv;
        let rhs = be * v;
        let better = lhs > rhs || (lhs == rhs && (v < bv || (v == bv && lex_less(mask, bm))));
        if better {
            best = (e, v, mask);
        }
    }
    Ok((Rational::new(best.0 as i64, best.1 as i64), mask_vertices(best.2)))
}

/// Whether every proper nonempty induced subgraph is strictly sparser than `g`.
///
/// Graphs up to [`DEFAULT_SUBSET_CAP`] vertices are checked by enumeration;
/// larger ones by a max-flow closure test.
pub fn is_strictly_balanced(g: &Graph) -> Result<bool> {
    is_strictly_balanced_capped(g, DEFAULT_SUBSET_CAP)
}

pub fn is_strictly_balanced_capped(g: &Graph, cap: usize) -> Result<bool> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::domain("strict balance of the empty graph is undefined"));
    }
    if n <= cap.min(24) {
        Ok(strictly_balanced_enumerate(g))
    } else {
        Ok(strictly_balanced_flow(g))
    }
}

pub(crate) fn strictly_balanced_enumerate(g: &Graph) -> bool {
    let n = g.vertex_count();
    let (e, v) = (g.edge_count() as u64, n as u64);
    let counts = subset_edge_counts(g);
    let full = (1u64 << n) - 1;
    (1..full).all(|mask| (counts[mask as usize] as u64) * v < e * mask.count_ones() as u64)
}

/// For each vertex `w`, asks whether some nonempty `S` avoiding `w` has
/// `v(G) e(S) - e(G) |S| >= 0`.
pub(crate) fn strictly_balanced_flow(g: &Graph) -> bool {
    let n = g.vertex_count();
    let (e, v) = (g.edge_count() as i64, n as i64);
    let weights = vec![-e; n];
    let pairs: Vec<_> = g.edges().iter().map(|&(a, b)| (a, b, v)).collect();
    !(0..n).any(|w| flow::exists_nonnegative_set(&weights, &pairs, 0, &[w]))
}
