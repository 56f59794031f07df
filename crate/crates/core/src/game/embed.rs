//! Backtracking search for induced copies of a marked structure.

use crate::graph::Graph;
use crate::pairs::Subgraph;

/// Decides whether a completed vertex map is acceptable.
pub(crate) type Accept<'a> = dyn FnMut(&[(usize, usize)]) -> bool + 'a;

/// Default number of search nodes before an embedding search gives up.
pub const DEFAULT_EMBED_BUDGET: usize = 200_000;

/// Searches for maps `f` from `vertices` (in `xg`) into `yg` that extend
/// `fixed`, are injective, avoid `forbidden`, and satisfy
/// `xg.is_adjacent(u, v) == yg.is_adjacent(f(u), f(v))` for all mapped pairs.
///
/// Each complete map is offered to `accept` as `(x, y)` pairs; the first one
/// accepted is returned. `budget` bounds the number of search nodes and is
/// decremented in place; an exhausted budget ends the search with `None`.
pub fn find_induced_copy(
    xg: &Graph,
    yg: &Graph,
    vertices: &[usize],
    fixed: &[(usize, usize)],
    forbidden: &[usize],
    budget: &mut usize,
    accept: &mut Accept<'_>,
) -> Option<Vec<(usize, usize)>> {
    let mut vs: Vec<usize> = vertices.to_vec();
    vs.sort_unstable();
    vs.dedup();
    let mut in_set = vec![false; xg.vertex_count()];
    for &v in &vs {
        in_set[v] = true;
    }
    let mut order: Vec<usize> = Vec::with_capacity(vs.len());
    let mut placed = vec![false; xg.vertex_count()];
    let mut map: Vec<(usize, usize)> = Vec::with_capacity(vs.len());
    for &(a, b) in fixed {
        if !in_set[a] || placed[a] {
            continue;
        }
        placed[a] = true;
        map.push((a, b));
        order.push(a);
    }
    // Breadth-first over the structure so each vertex usually has a mapped
    // neighbour that restricts its candidates.
    let mut head = 0;
    loop {
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in xg.neighbors(u) {
                if in_set[w] && !placed[w] {
                    placed[w] = true;
                    order.push(w);
                }
            }
        }
        match vs.iter().find(|&&v| !placed[v]) {
            Some(&v) => {
                placed[v] = true;
                order.push(v);
            }
            None => break,
        }
    }
    for (i, &(a, b)) in map.iter().enumerate() {
        for &(c, d) in &map[..i] {
            if b == d || xg.is_adjacent(a, c) != yg.is_adjacent(b, d) {
                return None;
            }
        }
        if forbidden.contains(&b) {
            return None;
        }
    }
    let mut used = vec![false; yg.vertex_count()];
    for &(_, b) in &map {
        used[b] = true;
    }
    for &b in forbidden {
        if b < used.len() {
            used[b] = true;
        }
    }
    let start = map.len();
    let mut found = None;
    extend(xg, yg, &order, start, &mut map, &mut used, budget, accept, &mut found);
    found
}

#[allow(clippy::too_many_arguments)]
fn extend(
    xg: &Graph,
    yg: &Graph,
    order: &[usize],
    depth: usize,
    map: &mut Vec<(usize, usize)>,
    used: &mut Vec<bool>,
    budget: &mut usize,
    accept: &mut Accept<'_>,
    found: &mut Option<Vec<(usize, usize)>>,
) -> bool {
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    if depth == order.len() {
        if accept(map) {
            *found = Some(map.clone());
            return false;
        }
        return true;
    }
    let v = order[depth];
    let anchor = map.iter().find(|&&(a, _)| xg.is_adjacent(a, v)).map(|&(_, b)| b);
    let candidates: Vec<usize> = match anchor {
        Some(b) => yg.neighbors(b).to_vec(),
        None => (0..yg.vertex_count()).collect(),
    };
    for y in candidates {
        if used[y] {
            continue;
        }
        if map.iter().any(|&(a, b)| xg.is_adjacent(a, v) != yg.is_adjacent(b, y)) {
            continue;
        }
        map.push((v, y));
        used[y] = true;
        let go_on = extend(xg, yg, order, depth + 1, map, used, budget, accept, found);
        used[y] = false;
        map.pop();
        if !go_on {
            return false;
        }
    }
    true
}

/// Image of a subgraph under a vertex map given as pairs.
pub fn map_subgraph(sub: &Subgraph, map: &[(usize, usize)]) -> Option<Subgraph> {
    let image = |v: usize| map.iter().find(|&&(a, _)| a == v).map(|&(_, b)| b);
    let vs: Option<Vec<usize>> = sub.vertices().iter().map(|&v| image(v)).collect();
    let es: Option<Vec<(usize, usize)>> = sub.edges().iter().map(|&(a, b)| Some((image(a)?, image(b)?))).collect();
    Some(Subgraph::from_parts_unchecked(vs?, es?))
}
