//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use linkcalc::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    ensure(t.elapsed() < limit, || {
        format!("took {:?}, limit {limit:?}", t.elapsed())
    })
}

fn cfg(workers: usize) -> ClassifierConfig {
    ClassifierConfig {
        search: SearchConfig {
            workers,
            ..Default::default()
        },
        ..Default::default()
    }
}

fn loops(k: usize) -> LinkDiagram {
    let s: Vec<String> = (1..=k).map(|i| format!("O[{i}]")).collect();
    parse_pd(&s.join(" ")).unwrap()
}

/// Linking numbers straight from crossing signs.
fn linking_from_signs(d: &LinkDiagram, i: usize, j: usize) -> i64 {
    let mut twice = 0i64;
    for (c, x) in d.crossings().iter().enumerate() {
        let (a, b) = (d.strand_component(c, 0), d.strand_component(c, 1));
        if (a, b) == (i, j) || (a, b) == (j, i) {
            twice += x.sign() as i64;
        }
    }
    assert!(twice % 2 == 0);
    twice / 2
}

fn scrambled_unlinks() -> Vec<(String, LinkDiagram)> {
    let mut out = Vec::new();
    for k in 1..=3 {
        for seed in 0..8u64 {
            let s = scramble(&loops(k), 1000 * k as u64 + seed, 6, 2);
            out.push((format!("unlink{k}/seed{seed}"), s.diagram));
        }
    }
    out
}

fn linking_law() -> Result<String, String> {
    let t = Instant::now();
    let mut checked = 0;
    for e in CORPUS {
        let d = e.diagram();
        for k in 0..d.component_count() {
            let Some(site) = detect_bundle(&d, k).map_err(|e| e.to_string())? else {
                continue;
            };
            for q in -3..=3 {
                let got = twist(&d, &site, q, false)
                    .map_err(|e| e.to_string())?
                    .linking_matrix();
                let want = predicted_linking_after_twist(&d.linking_matrix(), k, q);
                ensure(got == want, || {
                    format!("{} K={k} q={q}: {got:?} != {want:?}", e.name)
                })?;
                checked += 1;
            }
        }
    }
    ensure(checked > 0, || "no twist sites".into())?;
    within(t, Duration::from_secs(10))?;
    Ok(format!("{checked} (site, q) pairs"))
}

fn reidemeister_invariance() -> Result<String, String> {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut applied = 0;
    let start: Vec<LinkDiagram> = CORPUS
        .iter()
        .map(|e| e.diagram())
        .filter(|d| d.crossing_count() <= 8)
        .collect();
    while applied < 1200 {
        let d0 = start.choose(&mut rng).unwrap();
        let mut d = d0.clone();
        for _ in 0..6 {
            let moves = enumerate_moves(&d, d0.crossing_count() + 4);
            let Some(m) = moves.choose(&mut rng) else {
                break;
            };
            let next = apply_move(&d, m).map_err(|e| format!("enumerated move failed: {e}"))?;
            ensure(next.component_count() == d.component_count(), || {
                format!("{m:?} changed components")
            })?;
            ensure(next.linking_matrix() == d.linking_matrix(), || {
                format!("{m:?} changed linking")
            })?;
            let inv = inverse_move(&d, &next).ok_or_else(|| format!("no inverse for {m:?}"))?;
            let back = apply_move(&next, &inv).map_err(|e| e.to_string())?;
            ensure(canonical_key(&back) == canonical_key(&d), || {
                format!("inverse of {m:?} missed")
            })?;
            applied += 1;
            d = next;
        }
    }
    within(t, Duration::from_secs(30))?;
    Ok(format!("{applied} moves, each undone"))
}

fn positive_cases() -> Result<String, String> {
    let budget = SearchBudget {
        max_nodes: 100_000,
        headroom: 2,
        ..Default::default()
    };
    let all = scrambled_unlinks();
    let mut slowest = Duration::ZERO;
    for (name, d) in &all {
        let t = Instant::now();
        let v = is_trivial_link(d, &budget, &cfg(1));
        let Verdict::Trivial { evidence } = &v else {
            return Err(format!("{name}: {}", v.kind()));
        };
        verify_trivial(d, evidence).map_err(|e| format!("{name}: replay failed: {e}"))?;
        within(t, Duration::from_secs(60)).map_err(|e| format!("{name}: {e}"))?;
        slowest = slowest.max(t.elapsed());
    }
    Ok(format!("{} instances, slowest {slowest:?}", all.len()))
}

fn witnessed_negatives() -> Result<String, String> {
    let t = Instant::now();
    for name in ["hopf", "chain4"] {
        let e = linkcalc::corpus::entry(name).ok_or("missing entry")?;
        let d = e.diagram();
        let v = is_trivial_link(&d, &SearchBudget::default(), &cfg(1));
        let Verdict::Nontrivial { witness } = &v else {
            return Err(format!("{name}: {}", v.kind()));
        };
        verify_witness(&d, witness)?;
        let Witness::Linking { i, j, value } = witness else {
            return Err(format!("{name}: expected a linking witness"));
        };
        ensure(
            value != &0 && linking_from_signs(&d, *i, *j) == *value,
            || format!("{name}: bad witness"),
        )?;
        ensure(e.linking_matrix()[*i][*j] == *value, || {
            format!("{name}: disagrees with annotation")
        })?;
    }
    within(t, Duration::from_secs(1))?;
    Ok(format!("in {:?}", t.elapsed()))
}

fn brunnian_htb() -> Result<String, String> {
    let t = Instant::now();
    let budget = SearchBudget::with_nodes(10_000);
    let d = corpus_load("borromean").map_err(|e| e.to_string())?;
    let r = classify_htb(&d, &budget, &cfg(1));
    ensure(r.homologically_trivial, || {
        "borromean not homologically trivial".into()
    })?;
    ensure(r.brunnian.verdict == VerdictKind::Trivial, || {
        format!("borromean brunnian {}", r.brunnian.verdict)
    })?;
    ensure(r.htb == Htb::Confirmed, || {
        format!("borromean htb {:?}", r.htb)
    })?;
    ensure(!r.trivial.is_trivial(), || {
        "borromean called trivial".into()
    })?;
    for k in 0..3 {
        let s = d.delete_component(k).map_err(|e| e.to_string())?;
        let out = search_reduce(
            &s,
            &TargetPredicate::Crossingless,
            &budget,
            &SearchConfig::default(),
        )
        .map_err(|e| e.to_string())?;
        ensure(out.is_found(), || {
            format!("borromean minus {k} not reduced")
        })?;
    }
    let w = classify_htb(&corpus_load("whitehead").unwrap(), &budget, &cfg(1));
    ensure(w.htb == Htb::Confirmed, || {
        format!("whitehead htb {:?}", w.htb)
    })?;
    let tr = corpus_load("trefoil").unwrap();
    let r = classify_htb(&tr, &budget, &cfg(1));
    ensure(r.brunnian.by_convention, || {
        "trefoil not brunnian by convention".into()
    })?;
    let cap5 = SearchBudget {
        max_crossings: Some(5),
        ..SearchBudget::with_nodes(100_000)
    };
    let v = is_unknot(&tr, &cap5, &SearchConfig::default()).map_err(|e| e.to_string())?;
    let Verdict::Inconclusive { report } = &v else {
        return Err(format!("trefoil is_unknot {}", v.kind()));
    };
    ensure(report.exhausted, || {
        "trefoil search not exhausted at cap 5".into()
    })?;
    within(t, Duration::from_secs(60))?;
    Ok(format!(
        "trefoil exhausted {} diagrams; {:?}",
        report.nodes_explored,
        t.elapsed()
    ))
}

fn matrix() -> Vec<(String, LinkDiagram)> {
    let mut m: Vec<(String, LinkDiagram)> = CORPUS
        .iter()
        .map(|e| (e.name.to_string(), e.diagram()))
        .collect();
    m.extend(scrambled_unlinks().into_iter().step_by(3));
    m
}

fn trivial_sublinks_consistency() -> Result<String, String> {
    let budget = SearchBudget::with_nodes(10_000);
    let mut trivial = 0;
    for (name, d) in matrix() {
        if !is_trivial_link(&d, &budget, &cfg(1)).is_trivial() {
            continue;
        }
        trivial += 1;
        ensure(d.linking_matrix().is_zero(), || {
            format!("{name}: nonzero linking")
        })?;
        if d.component_count() > 1 {
            for k in 0..d.component_count() {
                let s = d.delete_component(k).map_err(|e| e.to_string())?;
                let v = is_trivial_link(&s, &budget, &cfg(1));
                ensure(v.is_trivial(), || format!("{name} minus {k}: {}", v.kind()))?;
            }
        }
    }
    Ok(format!("{trivial} trivial diagrams rechecked"))
}

fn budgets_and_workers() -> Result<String, String> {
    let small = SearchBudget {
        headroom: 1,
        ..SearchBudget::with_nodes(1_000)
    };
    let large = SearchBudget {
        headroom: 2,
        ..SearchBudget::with_nodes(10_000)
    };
    let mut definite = 0;
    for (name, d) in matrix() {
        let a = is_trivial_link(&d, &small, &cfg(1)).kind();
        let b = is_trivial_link(&d, &large, &cfg(1)).kind();
        if a != VerdictKind::Inconclusive {
            definite += 1;
            ensure(a == b, || {
                format!("{name}: {a} under the small budget, {b} under the large")
            })?;
        }
        let mut par = cfg(4);
        par.search.deterministic = false;
        let c = is_trivial_link(&d, &large, &par).kind();
        ensure(b == c, || format!("{name}: {b} with 1 worker, {c} with 4"))?;
    }
    Ok(format!("{definite} definite verdicts stable"))
}

fn main() {
    let checks: [(&str, Check); 7] = [
        ("linking law under twists", linking_law),
        ("Reidemeister invariance", reidemeister_invariance),
        ("scrambled unlinks are trivial", positive_cases),
        ("witnessed negatives", witnessed_negatives),
        ("Brunnian / HTB classification", brunnian_htb),
        (
            "trivial implies trivial sublinks",
            trivial_sublinks_consistency,
        ),
        ("budget monotonicity, 1 vs 4 workers", budgets_and_workers),
    ];
    let mut failed = 0;
    for (i, (name, f)) in checks.iter().enumerate() {
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let (tag, msg) = match r {
            Ok(m) => ("PASS", m),
            Err(m) => {
                failed += 1;
                ("FAIL", m)
            }
        };
        println!(
            "criterion {} [{tag}] {name}: {msg} ({:.2?})",
            i + 1,
            t.elapsed()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
