//! Benchmark fixtures shared by the criterion targets.

use folab_core::logic::{parse_sentence, Formula};
use folab_core::random::{sample_gnp, SampleSpec};
use folab_core::Graph;

/// A seeded `G(n, p)` sample.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    sample_gnp(&SampleSpec::explicit(n, p, seed, 1), 0).expect("valid sample spec")
}

/// Wheel on `spokes + 1` vertices: a cycle plus a hub joined to every rim vertex.
pub fn wheel(spokes: usize) -> Graph {
    let rim = (0..spokes).map(|i| (i, (i + 1) % spokes));
    let hub = (0..spokes).map(|i| (i, spokes));
    Graph::new(spokes + 1, rim.chain(hub)).expect("valid wheel")
}

/// "Every vertex lies on a triangle", depth 3.
pub fn triangle_cover() -> Formula {
    parse_sentence("A x. E y. E z. (adj(x,y) & adj(y,z) & adj(x,z))").expect("valid sentence")
}
