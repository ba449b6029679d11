//! Seeded random scrambling of diagrams, for tests and demos.
//!
//! A scramble applies random crossing-increasing moves and, optionally,
//! twist pairs: one component is threaded through another by two R2 moves
//! (a finger pushed over one arc and under the opposite arc), twisted with
//! `q = +-1` keeping the component, then twisted back. The link type never
//! changes; the diagram just gets harder to read.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagram::LinkDiagram;
use crate::reidemeister::{apply_move, enumerate_moves, MoveKind, MoveSpec, OverChoice};
use crate::surgery::{detect_bundle, twist};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "step")]
pub enum ScrambleStep {
    Move { spec: MoveSpec },
    Twist { component: usize, q: i64 },
}

#[derive(Clone, Debug)]
pub struct Scrambled {
    pub diagram: LinkDiagram,
    pub steps: Vec<ScrambleStep>,
}

/// Applies `additions` random R1Add/R2Add moves (each within two crossings
/// of the current count).
pub fn random_additions(
    d: &LinkDiagram,
    additions: usize,
    rng: &mut impl Rng,
) -> (LinkDiagram, Vec<MoveSpec>) {
    let mut cur = d.clone();
    let mut done = Vec::new();
    for _ in 0..additions {
        let moves: Vec<MoveSpec> = enumerate_moves(&cur, cur.crossing_count() + 2)
            .into_iter()
            .filter(|m| matches!(m.kind, MoveKind::R1Add | MoveKind::R2Add))
            .collect();
        let Some(m) = moves.choose(rng) else { break };
        cur = apply_move(&cur, m).expect("enumerated move applies");
        done.push(m.clone());
    }
    (cur, done)
}

/// Two R2 moves making component `k` bundled with two strands of another
/// component. Tries sites in random order.
fn thread(d: &LinkDiagram, k: usize, rng: &mut impl Rng) -> Option<(LinkDiagram, Vec<MoveSpec>)> {
    let cross = |d: &LinkDiagram, m: &MoveSpec, over_k: bool| {
        let (a, b) = (d.component_of(m.site[0])?, d.component_of(m.site[1])?);
        let first_over = m.options.over == Some(OverChoice::First);
        let ok = (a == k && b != k && first_over == over_k)
            || (b == k && a != k && first_over != over_k);
        ok.then_some(())
    };
    let mut firsts: Vec<MoveSpec> = enumerate_moves(d, d.crossing_count() + 2)
        .into_iter()
        .filter(|m| m.kind == MoveKind::R2Add && cross(d, m, false).is_some())
        .collect();
    firsts.shuffle(rng);
    for m1 in firsts.iter().take(24) {
        let d1 = apply_move(d, m1).ok()?;
        let mut seconds: Vec<MoveSpec> = enumerate_moves(&d1, d1.crossing_count() + 2)
            .into_iter()
            .filter(|m| m.kind == MoveKind::R2Add && cross(&d1, m, true).is_some())
            .collect();
        seconds.shuffle(rng);
        for m2 in seconds {
            let d2 = apply_move(&d1, &m2).ok()?;
            if matches!(detect_bundle(&d2, k), Ok(Some(ref s)) if s.strands() == 2) {
                return Some((d2, vec![m1.clone(), m2]));
            }
        }
    }
    None
}

/// Scrambles `d` with `additions` random additions and up to `twists`
/// twist-and-untwist pairs, reproducibly from `seed`.
pub fn scramble(d: &LinkDiagram, seed: u64, additions: usize, twists: usize) -> Scrambled {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = d.clone();
    let mut steps = Vec::new();
    let n = d.component_count();
    // Twist pairs go first: threading needs an arc of each component on a
    // common face, which later additions may destroy.
    if n >= 2 {
        for _ in 0..twists {
            let k = rng.gen_range(0..n);
            let Some((c, ms)) = thread(&cur, k, &mut rng) else {
                continue;
            };
            steps.extend(ms.into_iter().map(|spec| ScrambleStep::Move { spec }));
            let q = if rng.gen_bool(0.5) { 1 } else { -1 };
            let site = detect_bundle(&c, k).expect("in range").expect("threaded");
            let t = twist(&c, &site, q, true).expect("fresh site");
            let site = detect_bundle(&t, k)
                .expect("in range")
                .expect("still bundled");
            cur = twist(&t, &site, -q, true).expect("fresh site");
            steps.push(ScrambleStep::Twist { component: k, q });
            steps.push(ScrambleStep::Twist {
                component: k,
                q: -q,
            });
        }
    }
    let (c, ms) = random_additions(&cur, additions, &mut rng);
    steps.extend(ms.into_iter().map(|spec| ScrambleStep::Move { spec }));
    Scrambled { diagram: c, steps }
}
