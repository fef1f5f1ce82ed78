mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::*;
use spatial_theta::moves::MoveKind;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(240))]

    #[test]
    fn single_moves_preserve_knot_invariants(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let k = random_knot(&mut rng, 8);
        prop_assert!(k.crossing_count() <= 8);
        if let Some((m, next)) = random_move(&k, 8, &mut rng, |_| true) {
            prop_assert_eq!(fingerprint(&k), fingerprint(&next), "{} on {}", m, k);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn graph_moves_preserve_yamada(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let t = random_theta(&mut rng);
        let cap = t.crossing_count() + 1;
        if let Some((m, next)) = random_move(&t, cap, &mut rng, graph_move) {
            prop_assert_eq!(yamada_of(&t), yamada_of(&next), "{} on {}", m, t);
        }
    }

    #[test]
    fn vertex_moves_preserve_yamada(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let t = random_theta(&mut rng);
        let cap = t.crossing_count() + 1;
        let vertex = |k| matches!(k, MoveKind::R4Plus | MoveKind::R4Minus | MoveKind::R5Plus | MoveKind::R5Minus);
        if let Some((m, next)) = random_move(&t, cap, &mut rng, vertex) {
            prop_assert_eq!(yamada_of(&t), yamada_of(&next), "{} on {}", m, t);
        }
    }
}
