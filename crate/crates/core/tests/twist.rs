use linkcalc::*;

fn sites() -> Vec<(&'static str, LinkDiagram, TwistSite)> {
    let mut out = Vec::new();
    for e in CORPUS {
        let d = e.diagram();
        for k in 0..d.component_count() {
            if let Some(s) = detect_bundle(&d, k).unwrap() {
                out.push((e.name, d.clone(), s));
            }
        }
    }
    out
}

#[test]
fn linking_law_on_every_site() {
    let all = sites();
    assert!(all.len() >= 10);
    for (name, d, site) in &all {
        for q in -3..=3 {
            let t = twist(d, site, q, false).unwrap();
            let want = predicted_linking_after_twist(&d.linking_matrix(), site.component, q);
            assert_eq!(
                t.linking_matrix(),
                want,
                "{name} K={} q={q}",
                site.component
            );
        }
    }
}

#[test]
fn crossing_accounting() {
    for (name, d, site) in sites() {
        let m = site.strands() as i64;
        let mut circle = 0;
        for q in -2i64..=2 {
            let kept = twist(&d, &site, q, true).unwrap();
            let gone = twist(&d, &site, q, false).unwrap();
            let added = q.abs() * m * (m - 1);
            assert_eq!(
                kept.crossing_count() as i64,
                d.crossing_count() as i64 + added,
                "{name} q={q}"
            );
            if m > 0 {
                circle = 2 * m;
            }
            assert_eq!(
                gone.crossing_count() as i64,
                d.crossing_count() as i64 + added - circle,
                "{name} q={q}"
            );
        }
    }
}

#[test]
fn positive_twist_is_right_handed() {
    let d = corpus_load("key-chain").unwrap();
    let site = detect_bundle(&d, 2).unwrap().unwrap();
    assert_eq!(site.strands(), 2);
    let t = twist(&d, &site, 1, false).unwrap();
    assert_eq!(t.component_count(), 2);
    assert_eq!(t.linking_matrix().get(0, 1), 1);
    let t = twist(&d, &site, 1, true).unwrap();
    assert!(t.crossings().iter().filter(|x| x.sign() > 0).count() >= 2);
}

/// The twist and its inverse meet along bigons; some sequence of removals
/// must reach `target`.
fn reaches_by_removals(
    d: &LinkDiagram,
    target: &CanonicalKey,
    n: usize,
    seen: &mut std::collections::HashSet<CanonicalKey>,
) -> bool {
    let k = canonical_key(d);
    if &k == target {
        return true;
    }
    if d.crossing_count() <= n || !seen.insert(k) {
        return false;
    }
    enumerate_moves(d, d.crossing_count())
        .into_iter()
        .filter(|m| m.kind.is_removal())
        .any(|m| reaches_by_removals(&apply_move(d, &m).unwrap(), target, n, seen))
}

#[test]
fn kept_twist_stays_bundled_and_cancels() {
    for (name, d, site) in sites() {
        if site.strands() > 3 {
            continue;
        }
        for q in [-2, -1, 1, 2] {
            let t = twist(&d, &site, q, true).unwrap();
            let again = detect_bundle(&t, site.component)
                .unwrap()
                .expect("still bundled");
            let back = twist(&t, &again, -q, true).unwrap();
            let found = reaches_by_removals(
                &back,
                &canonical_key(&d),
                d.crossing_count(),
                &mut Default::default(),
            );
            assert!(found, "{name} K={} q={q}", site.component);
        }
    }
}

#[test]
fn slopes_match_direct_twist() {
    let d = corpus_load("borromean-bundled").unwrap();
    let site = detect_bundle(&d, 2).unwrap().unwrap();
    let direct = twist(&d, &site, 1, false).unwrap();
    let s: SlopeVector = "*,*,1/1".parse().unwrap();
    let SlopeOutcome::Applied(via) =
        apply_slopes(&d, &s, &SearchBudget::default(), &SearchConfig::default()).unwrap()
    else {
        panic!("bundled component needs no search")
    };
    assert_eq!(canonical_key(&via), canonical_key(&direct));
    assert!(direct.is_homologically_trivial());
    let all_star: SlopeVector = "*,*,*".parse().unwrap();
    let SlopeOutcome::Applied(same) = apply_slopes(
        &d,
        &all_star,
        &SearchBudget::default(),
        &SearchConfig::default(),
    )
    .unwrap() else {
        panic!()
    };
    assert_eq!(canonical_key(&same), canonical_key(&d));
}
