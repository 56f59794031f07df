//! Isomorphism search, automorphism counting and small canonical forms.

use super::Graph;
use crate::error::{Error, Result};

pub const DEFAULT_AUTOMORPHISM_CAP: usize = 10;
const CANONICAL_CAP: usize = 10;

/// Matching order: fixed vertices first, then greedily the vertex with the
/// most already-ordered neighbours (ties to higher degree).
fn search_order(g: &Graph, first: &[usize]) -> Vec<usize> {
    let n = g.vertex_count();
    let mut placed = vec![false; n];
    let mut weight = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    let push = |v: usize, placed: &mut Vec<bool>, weight: &mut Vec<usize>, order: &mut Vec<usize>| {
        placed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            weight[w] += 1;
        }
    };
    for &v in first {
        if !placed[v] {
            push(v, &mut placed, &mut weight, &mut order);
        }
    }
    while order.len() < n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (weight[v], g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        push(v, &mut placed, &mut weight, &mut order);
    }
    order
}

struct Matcher<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    fixed: Vec<Option<usize>>,
}

impl<'a> Matcher<'a> {
    fn new(g: &'a Graph, h: &'a Graph, fixed: &[(usize, usize)]) -> Option<Self> {
        let n = g.vertex_count();
        if n != h.vertex_count() || g.edge_count() != h.edge_count() {
            return None;
        }
        let mut degs_g: Vec<_> = (0..n).map(|v| g.degree(v)).collect();
        let mut degs_h: Vec<_> = (0..n).map(|v| h.degree(v)).collect();
        degs_g.sort_unstable();
        degs_h.sort_unstable();
        if degs_g != degs_h {
            return None;
        }
        let mut pinned = vec![None; n];
        for &(a, b) in fixed {
            if a >= n || b >= n {
                return None;
            }
            match pinned[a] {
                Some(old) if old != b => return None,
                _ => pinned[a] = Some(b),
            }
        }
        let first: Vec<usize> = fixed.iter().map(|p| p.0).collect();
        Some(Matcher {
            g,
            h,
            order: search_order(g, &first),
            map: vec![usize::MAX; n],
            used: vec![false; n],
            fixed: pinned,
        })
    }

    fn consistent(&self, depth: usize, v: usize, w: usize) -> bool {
        if self.used[w] || self.g.degree(v) != self.h.degree(w) {
            return false;
        }
        self.order[..depth]
            .iter()
            .all(|&u| self.g.is_adjacent(u, v) == self.h.is_adjacent(self.map[u], w))
    }

    /// Visits complete maps; the visitor returns false to stop.
    fn run(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(&self.map);
        }
        let v = self.order[depth];
        let candidates: Vec<usize> = match self.fixed[v] {
            Some(w) => vec![w],
            None => (0..self.h.vertex_count()).collect(),
        };
        for w in candidates {
            if !self.consistent(depth, v, w) {
                continue;
            }
            self.map[v] = w;
            self.used[w] = true;
            let go_on = self.run(depth + 1, visit);
            self.used[w] = false;
            self.map[v] = usize::MAX;
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// An isomorphism `g -> h` (as `map[v]`) extending the `fixed` pairs, if any.
pub fn find_isomorphism(g: &Graph, h: &Graph, fixed: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut m = Matcher::new(g, h, fixed)?;
    let mut found = None;
    m.run(0, &mut |map| {
        found = Some(map.to_vec());
        false
    });
    found
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h, &[]).is_some()
}

/// Number of automorphisms, for graphs up to [`DEFAULT_AUTOMORPHISM_CAP`] vertices.
pub fn automorphism_count(g: &Graph) -> Result<u64> {
    automorphism_count_capped(g, DEFAULT_AUTOMORPHISM_CAP)
}

pub fn automorphism_count_capped(g: &Graph, cap: usize) -> Result<u64> {
    if g.vertex_count() > cap {
        return Err(Error::capacity(
            "vertex count for automorphism search",
            g.vertex_count(),
            cap,
        ));
    }
    let mut count = 0u64;
    if let Some(mut m) = Matcher::new(g, g, &[]) {
        m.run(0, &mut |_| {
            count += 1;
            true
        });
    }
    Ok(count)
}

/// Canonical relabelling: isomorphic graphs map to equal outputs.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    canonical_form_rooted(g, 0)
}

/// Canonical relabelling that keeps vertices `0..roots` in place, so two
/// graphs agree exactly when an isomorphism fixes each of those roots.
pub fn canonical_form_rooted(g: &Graph, roots: usize) -> Result<Graph> {
    let n = g.vertex_count();
    if n > CANONICAL_CAP {
        return Err(Error::capacity("vertex count for canonical form", n, CANONICAL_CAP));
    }
    if roots > n {
        return Err(Error::domain("more roots than vertices"));
    }
    let key = |v: usize| {
        let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
        nd.sort_unstable();
        let root_adj: Vec<bool> = (0..roots).map(|r| g.is_adjacent(r, v)).collect();
        (std::cmp::Reverse(g.degree(v)), root_adj, nd)
    };
    let mut rest: Vec<usize> = (roots..n).collect();
    rest.sort_by_key(|&v| key(v));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for v in rest {
        match groups.last_mut() {
            Some(grp) if key(grp[0]) == key(v) => grp.push(v),
            _ => groups.push(vec![v]),
        }
    }
    // position[v] = new label; enumerate permutations inside each group.
    let mut best: Option<Vec<(usize, usize)>> = None;
    let mut slots: Vec<usize> = (0..roots).collect();
    fn rec(
        g: &Graph,
        groups: &[Vec<usize>],
        gi: usize,
        chosen: &mut Vec<bool>,
        slots: &mut Vec<usize>,
        best: &mut Option<Vec<(usize, usize)>>,
    ) {
        if gi == groups.len() {
            let mut label = vec![0usize; slots.len()];
            for (new, &old) in slots.iter().enumerate() {
                label[old] = new;
            }
            let mut edges: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .map(|&(a, b)| (label[a].min(label[b]), label[a].max(label[b])))
                .collect();
            edges.sort_unstable();
            if best.as_ref().is_none_or(|b| edges < *b) {
                *best = Some(edges);
            }
            return;
        }
        let start = slots.len();
        permute(g, groups, gi, &groups[gi], chosen, slots, best, start);
    }
    #[allow(clippy::too_many_arguments)]
    fn permute(
        g: &Graph,
        groups: &[Vec<usize>],
        gi: usize,
        group: &[usize],
        chosen: &mut Vec<bool>,
        slots: &mut Vec<usize>,
        best: &mut Option<Vec<(usize, usize)>>,
        start: usize,
    ) {
        if slots.len() - start == group.len() {
            rec(g, groups, gi + 1, chosen, slots, best);
            return;
        }
        for &v in group {
            if chosen[v] {
                continue;
            }
            chosen[v] = true;
            slots.push(v);
            permute(g, groups, gi, group, chosen, slots, best, start);
            slots.pop();
            chosen[v] = false;
        }
    }
    let mut chosen = vec![false; n];
    rec(g, &groups, 0, &mut chosen, &mut slots, &mut best);
    Ok(Graph::from_sorted(n, best.unwrap_or_default()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(t: u64) -> u64 {
        (1..=t).product()
    }

    #[test]
    fn automorphisms() {
        assert_eq!(automorphism_count(&Graph::complete(3)).unwrap(), 6);
        assert_eq!(automorphism_count(&Graph::path(3)).unwrap(), 2);
        assert_eq!(automorphism_count(&Graph::cycle(4).unwrap()).unwrap(), 8);
        for t in 0..=6 {
            assert_eq!(automorphism_count(&Graph::complete(t)).unwrap(), factorial(t as u64));
            assert_eq!(automorphism_count(&Graph::empty(t)).unwrap(), factorial(t as u64));
        }
        assert!(automorphism_count(&Graph::empty(11)).unwrap_err().is_capacity());
    }

    #[test]
    fn isomorphisms_respect_fixed_pairs() {
        let p = Graph::path(3);
        assert!(find_isomorphism(&p, &p, &[(0, 2)]).is_some());
        assert!(find_isomorphism(&p, &p, &[(0, 1)]).is_none());
        let c5 = Graph::cycle(5).unwrap();
        assert!(!is_isomorphic(&c5, &Graph::path(5)));
        let map = find_isomorphism(&c5, &c5.relabel(&[3, 1, 4, 0, 2]).unwrap(), &[]).unwrap();
        assert_eq!(map.len(), 5);
    }

    #[test]
    fn canonical_forms_identify_isomorphic_graphs() {
        use rand::{seq::SliceRandom, Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(1..8);
            let edges: Vec<_> = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .filter(|_| rng.gen_bool(0.45))
                .collect();
            let g = Graph::new(n, edges).unwrap();
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let h = g.relabel(&perm).unwrap();
            assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
            assert!(is_isomorphic(&g, &canonical_form(&g).unwrap()));
        }
        assert_ne!(
            canonical_form(&Graph::path(4)).unwrap(),
            canonical_form(&Graph::star(3)).unwrap()
        );
    }

    #[test]
    fn rooted_canonical_forms_fix_roots() {
        // Path 0-1-2 rooted at 0 vs rooted at the centre.
        let end = Graph::path(3);
        let centre = Graph::new(3, [(0, 1), (0, 2)]).unwrap();
        assert_ne!(
            canonical_form_rooted(&end, 1).unwrap(),
            canonical_form_rooted(&centre, 1).unwrap()
        );
        let end2 = Graph::new(3, [(0, 2), (2, 1)]).unwrap();
        assert_eq!(
            canonical_form_rooted(&end, 1).unwrap(),
            canonical_form_rooted(&end2, 1).unwrap()
        );
    }
}
