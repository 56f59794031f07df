mod common;

use folab_core::graph::{automorphism_count, density, is_isomorphic, is_strictly_balanced, max_density};
use folab_core::rational::ratio;
use folab_core::{Graph, Rational};
use proptest::prelude::*;

fn subset_densities(g: &Graph) -> Vec<(usize, Rational)> {
    let n = g.vertex_count();
    (1usize..1 << n)
        .map(|mask| {
            let e = g
                .edges()
                .iter()
                .filter(|&&(a, b)| mask >> a & 1 == 1 && mask >> b & 1 == 1)
                .count();
            (mask, ratio(e as i64, mask.count_ones() as i64).unwrap())
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn max_density_matches_subset_enumeration(g in common::graph(7)) {
        let dens = subset_densities(&g);
        let best = dens.iter().map(|d| d.1).max().unwrap();
        let (rho, witness) = max_density(&g).unwrap();
        prop_assert_eq!(rho, best);
        let (sub, _) = g.induced(&witness).unwrap();
        prop_assert_eq!(density(&sub).unwrap(), best);
        let full = (1usize << g.vertex_count()) - 1;
        let strict = dens.iter().all(|&(mask, d)| mask == full || d < dens.last().unwrap().1);
        prop_assert_eq!(is_strictly_balanced(&g).unwrap(), strict);
    }

    #[test]
    fn invariants_survive_relabelling((g, perm) in common::graph_and_perm(7)) {
        let h = g.relabel(&perm).unwrap();
        prop_assert!(is_isomorphic(&g, &h));
        prop_assert_eq!(max_density(&g).unwrap().0, max_density(&h).unwrap().0);
        prop_assert_eq!(automorphism_count(&g).unwrap(), automorphism_count(&h).unwrap());
    }

    #[test]
    fn automorphisms_match_permutation_count(g in common::graph(6)) {
        let n = g.vertex_count();
        let count = common::injective_maps(n, n)
            .iter()
            .filter(|p| g.edges().iter().all(|&(a, b)| g.is_adjacent(p[a], p[b])))
            .count() as u64;
        prop_assert_eq!(automorphism_count(&g).unwrap(), count);
    }
}
