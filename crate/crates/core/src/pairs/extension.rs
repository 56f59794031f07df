//! Embeddings of a rooted pattern onto an anchor tuple.

use super::RootedPair;
use crate::error::{Error, Result};
use crate::graph::Graph;

type Filter<'a> = &'a (dyn Fn(usize) -> bool + Sync);

/// A search for `(G, (x_1..x_m))`-extensions of an anchor tuple in a host graph.
///
/// A result is a map from pattern vertices to host vertices that sends the
/// roots to the anchor, is injective, and sends every edge of `E(G) \ E(H)` to
/// a host edge. A strict search also requires every non-adjacent pattern pair
/// involving a non-root vertex to stay non-adjacent.
pub struct ExtensionQuery<'a> {
    gamma: &'a Graph,
    pattern: &'a RootedPair,
    anchor: &'a [usize],
    strict: bool,
    allowed: Option<Filter<'a>>,
}

impl<'a> ExtensionQuery<'a> {
    pub fn new(gamma: &'a Graph, pattern: &'a RootedPair, anchor: &'a [usize]) -> Self {
        ExtensionQuery {
            gamma,
            pattern,
            anchor,
            strict: false,
            allowed: None,
        }
    }

    pub fn strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }

    /// Restricts the host vertices that may receive non-root pattern vertices.
    pub fn allowed(mut self, filter: Filter<'a>) -> Self {
        self.allowed = Some(filter);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.anchor.len() != self.pattern.roots().len() {
            return Err(Error::domain(format!(
                "anchor has {} vertices but the pattern has {} roots",
                self.anchor.len(),
                self.pattern.roots().len()
            )));
        }
        for (i, &a) in self.anchor.iter().enumerate() {
            self.gamma.check_vertex(a)?;
            if self.anchor[..i].contains(&a) {
                return Err(Error::domain(format!("anchor vertex {a} repeated")));
            }
        }
        Ok(())
    }

    /// Calls `visit` on every extension until it returns false.
    pub fn for_each(&self, visit: &mut dyn FnMut(&[usize]) -> bool) -> Result<()> {
        self.validate()?;
        let pg = self.pattern.big();
        let n = pg.vertex_count();
        let mut map = vec![usize::MAX; n];
        for (&r, &a) in self.pattern.roots().iter().zip(self.anchor) {
            map[r] = a;
        }
        // Root pairs: only relative edges constrain them.
        for &(a, b) in pg.edges() {
            if self.pattern.is_root(a)
                && self.pattern.is_root(b)
                && !self.pattern.has_small_edge(a, b)
                && !self.gamma.is_adjacent(map[a], map[b])
            {
                return Ok(());
            }
        }
        let order = new_vertex_order(self.pattern);
        let mut used = vec![false; self.gamma.vertex_count()];
        for &a in self.anchor {
            used[a] = true;
        }
        let mut placed: Vec<usize> = self.pattern.roots().to_vec();
        self.extend(&order, 0, &mut map, &mut used, &mut placed, visit);
        Ok(())
    }

    fn extend(
        &self,
        order: &[usize],
        depth: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        placed: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == order.len() {
            return visit(map);
        }
        let pg = self.pattern.big();
        let v = order[depth];
        let hub = placed.iter().copied().find(|&u| pg.is_adjacent(u, v));
        let all: Vec<usize>;
        let candidates: &[usize] = match hub {
            Some(u) => self.gamma.neighbors(map[u]),
            None => {
                all = (0..self.gamma.vertex_count()).collect();
                &all
            }
        };
        for &w in candidates {
            if used[w] || self.allowed.is_some_and(|f| !f(w)) {
                continue;
            }
            let ok = placed.iter().all(|&u| {
                let want = pg.is_adjacent(u, v);
                let have = self.gamma.is_adjacent(map[u], w);
                if want {
                    have
                } else {
                    !(self.strict && have)
                }
            });
            if !ok {
                continue;
            }
            map[v] = w;
            used[w] = true;
            placed.push(v);
            let go_on = self.extend(order, depth + 1, map, used, placed, visit);
            placed.pop();
            used[w] = false;
            map[v] = usize::MAX;
            if !go_on {
                return false;
            }
        }
        true
    }

    pub fn collect(&self) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        self.for_each(&mut |m| {
            out.push(m.to_vec());
            true
        })?;
        Ok(out)
    }

    pub fn count(&self) -> Result<usize> {
        let mut c = 0;
        self.for_each(&mut |_| {
            c += 1;
            true
        })?;
        Ok(c)
    }

    pub fn find(&self) -> Result<Option<Vec<usize>>> {
        let mut found = None;
        self.for_each(&mut |m| {
            found = Some(m.to_vec());
            false
        })?;
        Ok(found)
    }
}

/// Non-root vertices ordered so that each has as many earlier neighbours as possible.
fn new_vertex_order(pattern: &RootedPair) -> Vec<usize> {
    let g = pattern.big();
    let mut placed: Vec<bool> = (0..g.vertex_count()).map(|v| pattern.is_root(v)).collect();
    let mut order = Vec::new();
    loop {
        let next = (0..g.vertex_count()).filter(|&v| !placed[v]).max_by_key(|&v| {
            let back = g.neighbors(v).iter().filter(|&&u| placed[u]).count();
            (back, g.degree(v), std::cmp::Reverse(v))
        });
        match next {
            Some(v) => {
                placed[v] = true;
                order.push(v);
            }
            None => return order,
        }
    }
}

/// All extensions of `anchor`, each as a map indexed by pattern vertex.
pub fn enumerate_extensions(
    gamma: &Graph,
    pattern: &RootedPair,
    anchor: &[usize],
    strict: bool,
) -> Result<Vec<Vec<usize>>> {
    ExtensionQuery::new(gamma, pattern, anchor).strict(strict).collect()
}

pub fn count_extensions(gamma: &Graph, pattern: &RootedPair, anchor: &[usize], strict: bool) -> Result<usize> {
    ExtensionQuery::new(gamma, pattern, anchor).strict(strict).count()
}

pub fn find_extension(
    gamma: &Graph,
    pattern: &RootedPair,
    anchor: &[usize],
    strict: bool,
) -> Result<Option<Vec<usize>>> {
    ExtensionQuery::new(gamma, pattern, anchor).strict(strict).find()
}

/// Visits extensions until `visit` returns false.
pub fn for_each_extension(
    gamma: &Graph,
    pattern: &RootedPair,
    anchor: &[usize],
    strict: bool,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<()> {
    ExtensionQuery::new(gamma, pattern, anchor)
        .strict(strict)
        .for_each(visit)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pendant() -> RootedPair {
        RootedPair::induced(Graph::path(2), vec![0]).unwrap()
    }

    #[test]
    fn pendant_edge_counts() {
        assert_eq!(
            count_extensions(&Graph::complete(3), &pendant(), &[1], false).unwrap(),
            2
        );
        let p3 = Graph::path(3);
        assert_eq!(count_extensions(&p3, &pendant(), &[1], false).unwrap(), 2);
        assert_eq!(count_extensions(&p3, &pendant(), &[0], false).unwrap(), 1);
    }

    #[test]
    fn strict_requires_non_edges() {
        // y adjacent to x1 only; x2 present and not adjacent to y.
        let pat = RootedPair::induced(Graph::new(3, [(0, 2)]).unwrap(), vec![0, 1]).unwrap();
        let k3 = Graph::complete(3);
        assert_eq!(count_extensions(&k3, &pat, &[0, 1], true).unwrap(), 0);
        assert_eq!(count_extensions(&k3, &pat, &[0, 1], false).unwrap(), 1);
    }

    #[test]
    fn arity_and_anchor_checks() {
        let k3 = Graph::complete(3);
        assert!(count_extensions(&k3, &pendant(), &[0, 1], false).is_err());
        let pat = RootedPair::induced(Graph::path(3), vec![0, 2]).unwrap();
        assert!(count_extensions(&k3, &pat, &[1, 1], false).is_err());
    }

    #[test]
    fn root_edges_outside_h_must_map_to_edges() {
        let pat = RootedPair::new(Graph::complete(2), vec![0, 1], vec![]).unwrap();
        let p3 = Graph::path(3);
        assert_eq!(count_extensions(&p3, &pat, &[0, 1], false).unwrap(), 1);
        assert_eq!(count_extensions(&p3, &pat, &[0, 2], false).unwrap(), 0);
    }

    #[test]
    fn strict_is_subset_of_plain() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let n = rng.gen_range(3..8);
            let edges: Vec<_> = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            let gamma = Graph::new(n, edges).unwrap();
            let pat = RootedPair::induced(Graph::new(4, [(0, 2), (2, 3), (1, 3)]).unwrap(), vec![0, 1]).unwrap();
            let strict = enumerate_extensions(&gamma, &pat, &[0, 1], true).unwrap();
            let plain = enumerate_extensions(&gamma, &pat, &[0, 1], false).unwrap();
            assert!(strict.iter().all(|m| plain.contains(m)));
        }
    }
}
