mod common;

use folab_core::game::{solve, Winner};
use folab_core::logic::{evaluate, random_sentence, Assignment};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn solver_is_symmetric(g in common::graph(5), h in common::graph(5), k in 1usize..=3) {
        prop_assert_eq!(solve(&g, &h, k).unwrap(), solve(&h, &g, k).unwrap());
    }

    #[test]
    fn spoiler_wins_persist_with_more_rounds(g in common::graph(5), h in common::graph(5), k in 1usize..=2) {
        if solve(&g, &h, k).unwrap() == Winner::SpoilerWins {
            prop_assert_eq!(solve(&g, &h, k + 1).unwrap(), Winner::SpoilerWins);
        }
    }

    #[test]
    fn duplicator_wins_on_isomorphic_copies((g, perm) in common::graph_and_perm(5), k in 1usize..=3) {
        prop_assert_eq!(solve(&g, &g, k).unwrap(), Winner::DuplicatorWins);
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(solve(&g, &h, k).unwrap(), Winner::DuplicatorWins);
    }

    #[test]
    fn distinguishing_sentences_force_a_spoiler_win(
        g in common::graph(5),
        h in common::graph(5),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_sentence(&mut rng, 3);
        let sigma = Assignment::new();
        if evaluate(&g, &f, &sigma).unwrap() != evaluate(&h, &f, &sigma).unwrap() {
            prop_assert_eq!(solve(&g, &h, f.depth()).unwrap(), Winner::SpoilerWins, "{}", f);
        }
    }
}
