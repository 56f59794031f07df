mod common;

use folab_core::logic::{
    evaluate, extension_sentence, subgraph_sentence, theorem1_sentence, theorem2_sentence, Assignment,
};
use folab_core::pairs::RootedPair;
use folab_core::random::{build_theorem1_witness, build_theorem2_witness};
use folab_core::Graph;
use proptest::prelude::*;

fn holds(g: &Graph, f: &folab_core::logic::Formula) -> bool {
    evaluate(g, f, &Assignment::new()).unwrap()
}

/// Every injective placement of the roots extends to the whole pattern with all non-small edges present.
fn extends_everywhere(host: &Graph, pair: &RootedPair) -> bool {
    let big = pair.big();
    let roots = pair.roots();
    let needed: Vec<(usize, usize)> = big
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| !pair.has_small_edge(a, b))
        .collect();
    let full = common::injective_maps(big.vertex_count(), host.vertex_count());
    common::injective_maps(roots.len(), host.vertex_count())
        .iter()
        .all(|placed| {
            full.iter().any(|m| {
                roots.iter().zip(placed).all(|(&r, &v)| m[r] == v)
                    && needed.iter().all(|&(a, b)| host.is_adjacent(m[a], m[b]))
            })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn copy_sentence_matches_brute_force(pattern in common::graph(4), host in common::graph(6)) {
        let f = subgraph_sentence(&pattern).unwrap();
        prop_assert_eq!(holds(&host, &f), common::embeds(&pattern, &host));
    }

    #[test]
    fn extension_sentence_matches_brute_force(
        big in common::graph(4),
        host in common::graph(5),
        root_bits in any::<u8>(),
        small_bits in any::<u8>(),
    ) {
        let n = big.vertex_count();
        let roots: Vec<usize> = (0..n).filter(|v| root_bits >> v & 1 == 1).collect();
        // At least one free vertex keeps the pair non-trivial.
        prop_assume!(roots.len() < n);
        let small: Vec<(usize, usize)> = big
            .edges()
            .iter()
            .copied()
            .filter(|&(a, b)| roots.contains(&a) && roots.contains(&b))
            .enumerate()
            .filter(|(i, _)| small_bits >> i & 1 == 1)
            .map(|(_, e)| e)
            .collect();
        let pair = RootedPair::new(big, roots, small).unwrap();
        let f = extension_sentence(&pair).unwrap();
        prop_assert_eq!(holds(&host, &f), extends_everywhere(&host, &pair));
    }
}

#[test]
fn first_construction_sentence_holds_on_both_witness_graphs() {
    for (k, m) in [(5, 2), (5, 3), (6, 3)] {
        let w = build_theorem1_witness(k, m).unwrap();
        let f = theorem1_sentence(k).unwrap();
        assert!(holds(&w.x, &f), "X({k},{m})");
        assert!(holds(&w.y, &f), "Y({k},{m})");
    }
}

/// The depth-8 sentence is false on both witness graphs, so it does not
/// separate them; kept as a regression record of that finding.
#[test]
#[ignore = "about 3e10 evaluation steps; run with --release --ignored"]
fn second_construction_sentence_fails_on_the_witness() {
    let w = build_theorem2_witness(8, 2).unwrap();
    let f = theorem2_sentence(8).unwrap();
    assert!(!holds(&w.x, &f));
    assert!(!holds(&w.y, &f));
}
