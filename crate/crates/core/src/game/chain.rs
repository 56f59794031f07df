//! Chains of cyclic extensions grown from one vertex.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pairs::{enumerate_cyclic_extensions, Alpha, CyclicExtension, Subgraph};
use crate::rational::Rational;

/// How the last graph of a chain sits in the host.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChainClosure {
    /// The host induces no extra edge on the chain's vertices.
    Induced,
    /// The induced subgraph has extra edges but density below `1/α`.
    Sparse,
    /// Extra edges and density at least `1/α`: the host is too dense.
    Dense,
}

/// A chain `G_0 ⊂ G_1 ⊂ … ⊂ G_s` with `G_0 = ({x}, ∅)` and each `G_{i+1}` a
/// cyclic `2^{k-1}`-extension of `G_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionChain {
    pub root: usize,
    /// `2^{k-1}`.
    pub scale: usize,
    /// The extension taken at each step; step `i` turns `G_i` into `G_{i+1}`.
    pub extensions: Vec<CyclicExtension>,
    /// `G_1 … G_s`.
    pub graphs: Vec<Subgraph>,
    /// `e(G_i) - e(G_{i-1})` for each step.
    pub step_edges: Vec<usize>,
    /// Whether each step is a cyclic `2^{k-1}`- but not `(2^{k-1} - 1)`-extension.
    pub long_steps: Vec<bool>,
    /// Whether the first long step was rebuilt by detouring around it.
    pub rebuilt: bool,
    /// A `μ` with `G_{μ+1}` long over `G_μ` and no cyclic `2^{k-1}`-extension
    /// of `G_μ` avoiding the new part of `G_{μ+1}`.
    pub mu: Option<usize>,
    /// Whether the chain stopped at the length guard `2^{k-1} b + 1`.
    pub guard_exceeded: bool,
    pub closure: ChainClosure,
    /// Density of the host's induced subgraph on `V(G_s)`.
    pub closure_density: Rational,
}

impl ExtensionChain {
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// `G_i`, with `G_0 = ({root}, ∅)`.
    pub fn graph(&self, i: usize) -> Subgraph {
        if i == 0 {
            Subgraph::from_parts_unchecked(vec![self.root], Vec::new())
        } else {
            self.graphs[i - 1].clone()
        }
    }

    /// The last graph `G_s` (or `G_0` for an empty chain).
    pub fn last(&self) -> Subgraph {
        self.graph(self.len())
    }

    /// Property d): either no step is long, or a suitable `μ` exists.
    pub fn detour_property(&self) -> bool {
        !self.long_steps.contains(&true) || self.mu.is_some()
    }
}

fn without_step(host: &Graph, ext: &CyclicExtension) -> Graph {
    let edges = host.edges().iter().copied().filter(|&(a, b)| {
        !ext.new_vertices.contains(&a) && !ext.new_vertices.contains(&b) && !ext.new_edges.contains(&(a, b))
    });
    Graph::from_sorted(host.vertex_count(), edges.collect())
}

/// The extension of `base` with the fewest new vertices, ties broken by
/// enumeration order.
fn next_extension(host: &Graph, base: &Subgraph, m: usize) -> Result<Option<CyclicExtension>> {
    let exts = enumerate_cyclic_extensions(host, base, m)?;
    Ok(exts.into_iter().min_by_key(|e| e.new_vertices.len()))
}

/// Builds the chain of cyclic `2^{k-1}`-extensions from `x`.
///
/// Steps are taken greedily, fewest new vertices first. At the first long step
/// `G_{i-1} → G_i`, the chain is rebuilt: it first grows from `G_{i-1}` in the
/// host with the new part of `G_i` removed, then re-attaches that part, then
/// continues in the full host. The number of steps is capped at
/// `2^{k-1} b + 1`; a longer chain means the host is denser than `1/α` allows.
pub fn build_extension_chain(x1: &Graph, x: usize, k: u32, alpha: Alpha, b: u64) -> Result<ExtensionChain> {
    x1.check_vertex(x)?;
    if !(2..=20).contains(&k) {
        return Err(Error::domain(format!("k = {k} outside 2..=20")));
    }
    if b == 0 {
        return Err(Error::domain("b must be positive"));
    }
    let m = 1usize << (k - 1);
    let limit = (m as u64).saturating_mul(b).saturating_add(1) as usize;
    let mut chain = ExtensionChain {
        root: x,
        scale: m,
        extensions: Vec::new(),
        graphs: Vec::new(),
        step_edges: Vec::new(),
        long_steps: Vec::new(),
        rebuilt: false,
        mu: None,
        guard_exceeded: false,
        closure: ChainClosure::Induced,
        closure_density: Rational::from_integer(0),
    };
    let push = |chain: &mut ExtensionChain, ext: CyclicExtension| -> bool {
        if chain.graphs.len() >= limit {
            chain.guard_exceeded = true;
            return false;
        }
        let base = chain.last();
        let next = ext.apply(&base);
        chain.step_edges.push(ext.new_edges.len());
        chain.long_steps.push(ext.new_vertices.len() + 1 == m);
        chain.graphs.push(next);
        chain.extensions.push(ext);
        true
    };

    // Greedy phase up to and including the first long step.
    let mut first_long = None;
    while let Some(ext) = next_extension(x1, &chain.last(), m)? {
        let long = ext.new_vertices.len() + 1 == m;
        if !push(&mut chain, ext) {
            break;
        }
        if long {
            first_long = Some(chain.len());
            break;
        }
    }

    if let (Some(i), false) = (first_long, chain.guard_exceeded) {
        let long_ext = chain.extensions[i - 1].clone();
        let reduced = without_step(x1, &long_ext);
        chain.extensions.truncate(i - 1);
        chain.graphs.truncate(i - 1);
        chain.step_edges.truncate(i - 1);
        chain.long_steps.truncate(i - 1);
        let mut detoured = false;
        while let Some(ext) = next_extension(&reduced, &chain.last(), m)? {
            detoured = true;
            if !push(&mut chain, ext) {
                break;
            }
        }
        chain.rebuilt = detoured;
        if !chain.guard_exceeded {
            push(&mut chain, long_ext);
        }
    }
    if !chain.guard_exceeded {
        while let Some(ext) = next_extension(x1, &chain.last(), m)? {
            if !push(&mut chain, ext) {
                break;
            }
        }
    }

    // Property d), checked directly on the finished chain.
    for i in 0..chain.len() {
        if !chain.long_steps[i] {
            continue;
        }
        let reduced = without_step(x1, &chain.extensions[i]);
        if enumerate_cyclic_extensions(&reduced, &chain.graph(i), m)?.is_empty() {
            chain.mu = Some(i);
            break;
        }
    }

    let last = chain.last();
    let induced = Subgraph::induced(x1, last.vertices())?;
    chain.closure_density = Rational::new(induced.edges().len() as i64, induced.vertices().len() as i64);
    chain.closure = if induced.edges().len() == last.edges().len() {
        ChainClosure::Induced
    } else if chain.closure_density < alpha.value().recip() {
        ChainClosure::Sparse
    } else {
        ChainClosure::Dense
    };
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha() -> Alpha {
        Alpha::from_kab(4, 7, 1).unwrap()
    }

    #[test]
    fn no_extension_gives_an_empty_chain() {
        let g = Graph::path(9);
        let c = build_extension_chain(&g, 4, 4, alpha(), 1).unwrap();
        assert!(c.is_empty());
        assert_eq!(c.last().vertices(), &[4]);
        assert_eq!(c.closure, ChainClosure::Induced);
    }

    #[test]
    fn a_short_cycle_is_one_step() {
        let g = Graph::cycle(6).unwrap();
        let c = build_extension_chain(&g, 0, 4, alpha(), 1).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.step_edges, vec![6]);
        assert_eq!(c.long_steps, vec![false]);
        assert_eq!(c.last().edges().len(), 6);
        assert!(c.detour_property());
        assert_eq!(c.closure, ChainClosure::Induced);
    }

    #[test]
    fn an_eight_cycle_is_one_long_step() {
        let g = Graph::cycle(8).unwrap();
        let c = build_extension_chain(&g, 0, 4, alpha(), 1).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.long_steps, vec![true]);
        assert_eq!(c.mu, Some(0));
        assert!(!c.rebuilt);
    }

    #[test]
    fn theta_graph_steps_are_all_long() {
        // Three paths of length 4 between 0 and 1: an 8-cycle, then a path.
        let mut edges = Vec::new();
        let mut next = 2;
        for _ in 0..3 {
            let mut prev = 0;
            for _ in 0..3 {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
            edges.push((prev, 1));
        }
        let g = Graph::new(next, edges).unwrap();
        let c = build_extension_chain(&g, 0, 4, alpha(), 1).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.step_edges, vec![8, 4]);
        assert_eq!(c.long_steps, vec![true, false]);
        // Without the first cycle's new vertices the third path hangs free.
        assert_eq!(c.mu, Some(0));
        assert!(c.detour_property());
        assert_eq!(c.last().vertices().len(), next);
    }

    #[test]
    fn dense_hosts_hit_the_guard() {
        let g = Graph::complete(6);
        let c = build_extension_chain(&g, 0, 3, Alpha::from_kab(3, 3, 1).unwrap(), 1).unwrap();
        assert!(c.guard_exceeded);
        assert_eq!(c.len(), 5);
    }
}
