//! Explicit witness graphs for the two spectrum constructions, and the
//! unextendable-copy property they are used with.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{density, Graph};
use crate::pairs::{find_extension, Alpha, ExtensionQuery, RootedPair, SubgraphKey};
use crate::rational::Rational;

/// A graph `X`, a graph `Y ⊃ X` with `X` on vertices `0..v(X)`, and the
/// rooted pair `(Y, X)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub x: Graph,
    pub y: Graph,
    pub pair: RootedPair,
    pub alpha: Alpha,
}

fn finish(x: Graph, y: Graph, alpha: Rational) -> Result<Witness> {
    let alpha = Alpha::new(alpha)?;
    let roots: Vec<usize> = (0..x.vertex_count()).collect();
    let pair = RootedPair::new(y.clone(), roots, x.edges().to_vec())?;
    let target = alpha.value().recip();
    let (dx, dy, dp) = (density(&x)?, density(&y)?, pair.rel_density()?);
    if dx != target || dy != target || dp != target {
        return Err(Error::domain(format!(
            "construction densities {dx}, {dy}, {dp} differ from 1/alpha = {target}"
        )));
    }
    Ok(Witness { x, y, pair, alpha })
}

/// `α = 1/h + 1/(h(m + h − 1))` with `h = ⌊k/2⌋`.
pub fn theorem1_alpha(k: usize, m: usize) -> Result<Rational> {
    if k < 5 || m < 1 {
        return Err(Error::domain("need k >= 5 and m >= 1"));
    }
    let h = (k / 2) as i64;
    let m = m as i64;
    Ok(Rational::new(1, h) + Rational::new(1, h * (m + h - 1)))
}

/// Witness of the first construction.
///
/// `X` is an `h`-clique `x_1..x_h` (vertices `0..h`) with `m` common
/// neighbours `c_1..c_m` (vertices `h..h+m`), of which `c_1..c_h` form a
/// clique; it needs `m ≥ h`, since a graph on `m + h` vertices with
/// `h(m + h − 1)` edges exists only then. `Y` adds `v_1..v_{m+h−1}` and `z`
/// (last): `v_i` for `i ≤ m` is joined to `c_i`, `z` and `x_3..x_h`, and
/// `v_{m+t}` to `z` and every `x_j` with `j ≠ t + 1`.
pub fn build_theorem1_witness(k: usize, m: usize) -> Result<Witness> {
    let alpha = theorem1_alpha(k, m)?;
    if alpha >= Rational::from_integer(1) {
        return Err(Error::domain(format!("alpha = {alpha} is not below 1")));
    }
    let h = k / 2;
    if m < h {
        return Err(Error::domain(format!(
            "no graph on {} vertices has {} edges; the construction needs m >= {h}",
            m + h,
            h * (m + h - 1)
        )));
    }
    let mut xe = Vec::new();
    for i in 0..h {
        for j in i + 1..h {
            xe.push((i, j));
            xe.push((h + i, h + j));
        }
        for c in 0..m {
            xe.push((i, h + c));
        }
    }
    let vx = h + m;
    let x = Graph::new(vx, xe.iter().copied())?;

    let z = vx + (m + h - 1);
    let mut ye = xe;
    for i in 0..m {
        let v = vx + i;
        ye.push((h + i, v));
        ye.push((v, z));
        ye.extend((2..h).map(|j| (j, v)));
    }
    for t in 1..h {
        let v = vx + m + t - 1;
        ye.push((v, z));
        ye.extend((0..h).filter(|&j| j != t).map(|j| (j, v)));
    }
    let y = Graph::new(z + 1, ye)?;
    finish(x, y, alpha)
}

/// `α = 1 − 1/2^{k−5} + 1/(2^{k−5} m)`.
pub fn theorem2_alpha(k: usize, m: usize) -> Result<Rational> {
    if !(8..=40).contains(&k) || m < 2 {
        return Err(Error::domain("need 8 <= k <= 40 and m >= 2"));
    }
    let l = 1i64 << (k - 5);
    Ok(Rational::from_integer(1) - Rational::new(1, l) + Rational::new(1, l * m as i64))
}

/// Witness of the second construction, with `L = 2^{k−5}`.
///
/// `X` joins `a = 0` and `b = 1` by `m` internally disjoint paths of length
/// `L`, and joins `a` to each path midpoint `x^i` by a further path of length
/// `L`. `Y` adds `z` (last) and a path of length `L` from `z` to every `x^i`.
pub fn build_theorem2_witness(k: usize, m: usize) -> Result<Witness> {
    let alpha = theorem2_alpha(k, m)?;
    let l = 1usize << (k - 5);
    if m.saturating_mul(l) > 1 << 16 {
        return Err(Error::capacity("witness edges per layer", m * l, 1 << 16));
    }
    let mut next = 2;
    let mut edges = Vec::new();
    let path = |from: usize, to: usize, next: &mut usize, edges: &mut Vec<(usize, usize)>| -> Vec<usize> {
        let inner: Vec<usize> = (0..l - 1).map(|i| *next + i).collect();
        *next += l - 1;
        let mut walk = vec![from];
        walk.extend(&inner);
        walk.push(to);
        edges.extend(walk.windows(2).map(|w| (w[0], w[1])));
        inner
    };
    let mut mids = Vec::new();
    for _ in 0..m {
        let inner = path(0, 1, &mut next, &mut edges);
        mids.push(inner[l / 2 - 1]);
    }
    for &mid in &mids {
        path(0, mid, &mut next, &mut edges);
    }
    let x = Graph::new(next, edges.iter().copied())?;

    let z = next + m * (l - 1);
    let mut next_y = next;
    for &mid in &mids {
        path(z, mid, &mut next_y, &mut edges);
    }
    let y = Graph::new(z + 1, edges)?;
    finish(x, y, alpha)
}

/// Largest `X` accepted by [`has_unextendable_copy`].
pub const DEFAULT_UNEXTENDABLE_CAP: usize = 32;

/// Whether some copy of `x` in `host` lies in no copy of `Y` extending it.
///
/// `pair` is `(Y, X)` with its `i`-th root playing vertex `i` of `x`. A copy
/// is a subgraph, so all embeddings with the same image are tried before it
/// is declared unextendable.
pub fn has_unextendable_copy(host: &Graph, x: &Graph, pair: &RootedPair) -> Result<bool> {
    has_unextendable_copy_capped(host, x, pair, DEFAULT_UNEXTENDABLE_CAP)
}

pub fn has_unextendable_copy_capped(host: &Graph, x: &Graph, pair: &RootedPair, cap: usize) -> Result<bool> {
    if x.vertex_count() > cap {
        return Err(Error::capacity("copy pattern vertices", x.vertex_count(), cap));
    }
    let roots = pair.roots();
    if roots.len() != x.vertex_count() {
        return Err(Error::domain("pair roots do not match the copy pattern"));
    }
    let mut mapped: Vec<(usize, usize)> = x
        .edges()
        .iter()
        .map(|&(a, b)| (roots[a].min(roots[b]), roots[a].max(roots[b])))
        .collect();
    mapped.sort_unstable();
    if mapped != pair.small_edges() {
        return Err(Error::domain("pair small graph differs from the copy pattern"));
    }

    let plain = RootedPair::new(x.clone(), vec![], vec![])?;
    let mut copies: BTreeMap<SubgraphKey, bool> = BTreeMap::new();
    let mut failure = None;
    ExtensionQuery::new(host, &plain, &[]).for_each(&mut |phi| {
        let mut vs = phi.to_vec();
        vs.sort_unstable();
        let mut es: Vec<(usize, usize)> = x
            .edges()
            .iter()
            .map(|&(a, b)| (phi[a].min(phi[b]), phi[a].max(phi[b])))
            .collect();
        es.sort_unstable();
        let seen = copies.entry((vs, es)).or_insert(false);
        if !*seen {
            match find_extension(host, pair, phi, false) {
                Ok(found) => *seen = found.is_some(),
                Err(e) => {
                    failure = Some(e);
                    return false;
                }
            }
        }
        true
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(copies.values().any(|&extendable| !extendable))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_strictly_balanced;

    #[test]
    fn first_construction_small_case() {
        let w = build_theorem1_witness(5, 3).unwrap();
        assert_eq!((w.x.vertex_count(), w.x.edge_count()), (5, 8));
        assert_eq!(w.alpha.value(), Rational::new(5, 8));
        assert!(is_strictly_balanced(&w.x).unwrap());
        assert!(w.pair.is_strictly_balanced().unwrap());
        assert!(build_theorem1_witness(5, 1).is_err());
        assert!(build_theorem1_witness(6, 2).is_err());
    }

    #[test]
    fn second_construction_small_case() {
        let w = build_theorem2_witness(8, 2).unwrap();
        assert_eq!((w.x.vertex_count(), w.x.edge_count()), (30, 32));
        assert_eq!(w.pair.rel_density().unwrap(), Rational::new(16, 15));
        assert_eq!(w.alpha.value(), Rational::new(15, 16));
        assert_eq!(w.x.distance(0, 1).unwrap().finite(), Some(8));
    }

    #[test]
    fn unextendable_copies() {
        let w = build_theorem1_witness(5, 2).unwrap();
        assert!(has_unextendable_copy(&w.x, &w.x, &w.pair).unwrap());
        assert!(!has_unextendable_copy(&w.y, &w.x, &w.pair).unwrap());
        assert!(has_unextendable_copy(&w.x.disjoint_union(&w.y), &w.x, &w.pair).unwrap());
    }
}
