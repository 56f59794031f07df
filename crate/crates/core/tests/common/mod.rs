#![allow(dead_code)]

use folab_core::Graph;
use proptest::prelude::*;

/// Graphs on `1..=max_n` vertices with an arbitrary edge set.
pub fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for a in 0..n {
                for b in a + 1..n {
                    if it.next().unwrap() {
                        edges.push((a, b));
                    }
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

/// A graph together with a permutation of its vertices.
pub fn graph_and_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

/// Every injective map from `0..k` into `0..n`, by backtracking.
pub fn injective_maps(k: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !cur.contains(&v) {
                cur.push(v);
                go(k, n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(k, n, &mut Vec::new(), &mut out);
    out
}

/// Whether `pattern` embeds (not necessarily induced) into `host`.
pub fn embeds(pattern: &Graph, host: &Graph) -> bool {
    injective_maps(pattern.vertex_count(), host.vertex_count())
        .iter()
        .any(|m| pattern.edges().iter().all(|&(a, b)| host.is_adjacent(m[a], m[b])))
}
