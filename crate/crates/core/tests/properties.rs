use linkcalc::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_corpus() -> Vec<LinkDiagram> {
    CORPUS
        .iter()
        .map(|e| e.diagram())
        .filter(|d| d.crossing_count() <= 8)
        .collect()
}

/// A corpus diagram after a seeded random walk of `steps` moves.
fn walked(which: usize, seed: u64, steps: usize) -> LinkDiagram {
    let all = small_corpus();
    let d0 = &all[which % all.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = d0.clone();
    for _ in 0..steps {
        let moves = enumerate_moves(&d, d0.crossing_count() + 4);
        let Some(m) = moves.choose(&mut rng) else {
            break;
        };
        d = apply_move(&d, m).unwrap();
    }
    d
}

fn diagrams() -> impl Strategy<Value = LinkDiagram> {
    (0usize..64, any::<u64>(), 0usize..8).prop_map(|(w, s, n)| walked(w, s, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn key_ignores_labels(d in diagrams(), shift in 1u32..50, rev in any::<bool>()) {
        let top = d.max_label() + shift + 1;
        let r = d.relabel(|a| if rev { top - a } else { a + shift }).unwrap();
        prop_assert_eq!(canonical_key(&r), canonical_key(&d));
    }

    #[test]
    fn linking_is_symmetric(d in diagrams()) {
        let m = d.linking_matrix();
        for i in 0..m.n() {
            prop_assert_eq!(m.get(i, i), 0);
            for j in 0..m.n() {
                prop_assert_eq!(m.get(i, j), m.get(j, i));
            }
        }
    }

    #[test]
    fn deletion_takes_a_minor(d in diagrams()) {
        let m = d.linking_matrix();
        for k in 0..d.component_count() {
            let s = d.delete_component(k).unwrap();
            prop_assert_eq!(s.component_count(), d.component_count() - 1);
            prop_assert_eq!(s.linking_matrix(), m.minor(k));
        }
    }

    #[test]
    fn faces_obey_euler(d in diagrams()) {
        prop_assert_eq!(d.faces().len(), d.crossing_count() + 2 * d.piece_count());
    }

    #[test]
    fn pd_and_json_round_trip(d in diagrams()) {
        let back = parse_pd(&to_pd(&d)).unwrap();
        prop_assert_eq!(canonical_key(&back), canonical_key(&d));
        prop_assert_eq!(back.linking_matrix(), d.linking_matrix());
        let text = serde_json::to_string(&to_json(&d)).unwrap();
        let j = from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(j, d.normalized());
    }

    #[test]
    fn moves_preserve_invariants_and_invert(d in diagrams(), pick in any::<prop::sample::Index>()) {
        let moves = enumerate_moves(&d, d.crossing_count() + 2);
        prop_assume!(!moves.is_empty());
        let m = pick.get(&moves);
        let next = apply_move(&d, m).unwrap();
        prop_assert_eq!(next.component_count(), d.component_count());
        prop_assert_eq!(next.linking_matrix(), d.linking_matrix());
        prop_assert_eq!(next.crossing_count() as i64, d.crossing_count() as i64 + m.kind.delta());
        let inv = inverse_move(&d, &next);
        prop_assert!(inv.is_some(), "no inverse for {:?}", m);
        prop_assert_eq!(canonical_key(&apply_move(&next, &inv.unwrap()).unwrap()), canonical_key(&d));
    }
}

// Searches are costlier; fewer cases.
proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn certificates_replay(seed in any::<u64>(), k in 1usize..=2) {
        let loops = parse_pd(&(1..=k).map(|i| format!("O[{i}]")).collect::<Vec<_>>().join(" ")).unwrap();
        let s = scramble(&loops, seed, 3, 0);
        let cfg = SearchConfig { greedy: false, ..Default::default() };
        let budget = SearchBudget::with_nodes(5_000);
        if let SearchOutcome::Found { diagram, certificate, .. } =
            search_reduce(&s.diagram, &TargetPredicate::Crossingless, &budget, &cfg).unwrap()
        {
            let end = replay_certificate(&s.diagram, &certificate).unwrap();
            prop_assert!(end.is_crossingless());
            prop_assert_eq!(canonical_key(&end), canonical_key(&diagram));
        }
    }

    #[test]
    fn larger_budgets_find_no_less(seed in any::<u64>(), nodes in 10usize..400) {
        let d = scramble(&parse_pd("O[1]").unwrap(), seed, 3, 0).diagram;
        let cfg = SearchConfig { greedy: false, ..Default::default() };
        let small = search_reduce(&d, &TargetPredicate::Crossingless, &SearchBudget::with_nodes(nodes), &cfg).unwrap();
        let large = search_reduce(&d, &TargetPredicate::Crossingless, &SearchBudget::with_nodes(4 * nodes), &cfg).unwrap();
        prop_assert!(!small.is_found() || large.is_found());
        let v1 = is_unknot(&d, &SearchBudget::with_nodes(nodes), &cfg).unwrap().kind();
        let v2 = is_unknot(&d, &SearchBudget::with_nodes(4 * nodes), &cfg).unwrap().kind();
        prop_assert!(v1 == VerdictKind::Inconclusive || v1 == v2);
    }
}
