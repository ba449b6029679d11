use linkcalc::*;

/// All orders of `0..n`.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn reordering_components_permutes_the_report() {
    let budget = SearchBudget::with_nodes(5_000);
    let cfg = ClassifierConfig::default();
    for name in [
        "unlink3",
        "hopf",
        "key-chain",
        "whitehead",
        "borromean",
        "borromean-bundled",
    ] {
        let d = corpus_load(name).unwrap();
        let base = classify_htb(&d, &budget, &cfg);
        for order in permutations(d.component_count()) {
            let p = d.reorder_components(&order).unwrap();
            let r = classify_htb(&p, &budget, &cfg);
            assert_eq!(r.htb, base.htb, "{name} {order:?}");
            assert_eq!(r.trivial.kind(), base.trivial.kind(), "{name} {order:?}");
            assert_eq!(
                r.brunnian.verdict, base.brunnian.verdict,
                "{name} {order:?}"
            );
            for (k, &old) in order.iter().enumerate() {
                assert_eq!(r.linking_matrix[k].len(), base.linking_matrix.len());
                assert_eq!(
                    r.brunnian.sublinks[k].kind(),
                    base.brunnian.sublinks[old].kind(),
                    "{name} {order:?}"
                );
                for (l, &old_l) in order.iter().enumerate() {
                    assert_eq!(r.linking_matrix[k][l], base.linking_matrix[old][old_l]);
                }
            }
        }
    }
}
