//! Reidemeister moves as value-level rewrites.
//!
//! New crossings are assembled from a local picture: each of the four
//! directions around the crossing (listed counterclockwise) carries an arc,
//! a strand tag and an in/out flag, and [`assemble`] rotates that into PD
//! order. Labels touched by a rewrite keep their tail occurrence; fresh
//! labels go above the current maximum, so replay is deterministic.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::diagram::{Arc, ArcSide, Crossing, Face, LinkDiagram, Side, Slot};
use crate::error::{DiagramError, MoveError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    R1Remove,
    R2Remove,
    R3,
    R1Add,
    R2Add,
}

impl MoveKind {
    pub fn is_removal(self) -> bool {
        matches!(self, MoveKind::R1Remove | MoveKind::R2Remove)
    }

    /// Change in crossing count.
    pub fn delta(self) -> i64 {
        match self {
            MoveKind::R1Remove => -1,
            MoveKind::R2Remove => -2,
            MoveKind::R3 => 0,
            MoveKind::R1Add => 1,
            MoveKind::R2Add => 2,
        }
    }
}

/// Which arc-side of an R2Add site passes over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OverChoice {
    First,
    Second,
}

/// Which strand of an R3 triangle is slid across the opposite crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Slide {
    Top,
    Bottom,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MoveOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sides: Option<[Side; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub over: Option<OverChoice>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slide: Option<Slide>,
}

/// One Reidemeister rewrite at a located site.
///
/// Sites are arc labels: the monogon arc (R1Remove), the two bigon arcs
/// (R2Remove), the triangle arcs in boundary order (R3), the arc to curl
/// (R1Add) or the two arcs to push together (R2Add).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MoveSpec {
    pub kind: MoveKind,
    pub site: Vec<Arc>,
    #[serde(default)]
    pub options: MoveOptions,
}

impl MoveSpec {
    pub fn r1_remove(arc: Arc) -> Self {
        MoveSpec {
            kind: MoveKind::R1Remove,
            site: vec![arc],
            options: MoveOptions::default(),
        }
    }

    pub fn r1_add(arc: Arc, side: Side, sign: i8) -> Self {
        MoveSpec {
            kind: MoveKind::R1Add,
            site: vec![arc],
            options: MoveOptions {
                side: Some(side),
                sign: Some(sign),
                ..Default::default()
            },
        }
    }

    pub fn r2_remove(a: Arc, b: Arc) -> Self {
        MoveSpec {
            kind: MoveKind::R2Remove,
            site: vec![a.min(b), a.max(b)],
            options: MoveOptions::default(),
        }
    }

    pub fn r2_add(first: ArcSide, second: ArcSide, over: OverChoice) -> Self {
        MoveSpec {
            kind: MoveKind::R2Add,
            site: vec![first.arc, second.arc],
            options: MoveOptions {
                sides: Some([first.side, second.side]),
                over: Some(over),
                ..Default::default()
            },
        }
    }

    pub fn r3(triangle: [Arc; 3], slide: Slide) -> Self {
        MoveSpec {
            kind: MoveKind::R3,
            site: triangle.to_vec(),
            options: MoveOptions {
                slide: Some(slide),
                ..Default::default()
            },
        }
    }
}

/// One end of a strand at a crossing being assembled.
#[derive(Clone, Copy, Debug)]
pub(crate) struct End {
    pub arc: Arc,
    pub over: bool,
    pub incoming: bool,
}

/// Builds a crossing from four ends listed counterclockwise.
pub(crate) fn assemble(ends: [End; 4]) -> Crossing {
    let u = (0..4)
        .find(|&k| !ends[k].over && ends[k].incoming)
        .expect("crossing needs an incoming under end");
    let o = (0..4)
        .find(|&k| ends[k].over && ends[k].incoming)
        .expect("crossing needs an incoming over end");
    debug_assert!(!ends[(u + 2) % 4].over && !ends[(u + 2) % 4].incoming);
    debug_assert!(ends[(o + 2) % 4].over && !ends[(o + 2) % 4].incoming);
    let slots = [
        ends[u].arc,
        ends[(u + 1) % 4].arc,
        ends[(u + 2) % 4].arc,
        ends[(u + 3) % 4].arc,
    ];
    Crossing::new(slots, ((o + 4 - u) % 4) as u8)
}

/// Mutable scratch copy of a diagram for local rewrites.
pub(crate) struct Editor {
    crossings: Vec<Crossing>,
    removed: Vec<bool>,
    loops: Vec<Arc>,
    comp: HashMap<Arc, usize>,
    next: Arc,
}

impl Editor {
    pub fn new(d: &LinkDiagram) -> Self {
        Editor {
            crossings: d.crossings().to_vec(),
            removed: vec![false; d.crossing_count()],
            loops: d.loops().to_vec(),
            comp: d.component_map().clone(),
            next: d.max_label() + 1,
        }
    }

    pub fn fresh(&mut self, component: usize) -> Arc {
        let a = self.next;
        self.next += 1;
        self.comp.insert(a, component);
        a
    }

    pub fn comp(&self, a: Arc) -> usize {
        self.comp[&a]
    }

    pub fn set(&mut self, s: Slot, a: Arc) {
        self.crossings[s.crossing].set_arc(s.slot, a);
    }

    pub fn push(&mut self, x: Crossing) {
        self.crossings.push(x);
        self.removed.push(false);
    }

    pub fn remove(&mut self, c: usize) {
        self.removed[c] = true;
    }

    pub fn drop_loop(&mut self, a: Arc) {
        self.loops.retain(|&l| l != a);
    }

    pub fn finish(self) -> Result<LinkDiagram, DiagramError> {
        let crossings = self
            .crossings
            .into_iter()
            .zip(self.removed)
            .filter(|(_, r)| !r)
            .map(|(x, _)| x)
            .collect();
        let comp = self.comp;
        let hint = move |a: Arc| comp.get(&a).copied();
        LinkDiagram::build(crossings, self.loops, Some(&hint))
    }
}

fn mismatch(msg: impl Into<String>) -> MoveError {
    MoveError::SiteMismatch(msg.into())
}

fn half_edge_of(d: &LinkDiagram, s: ArcSide) -> Option<Slot> {
    let e = d.ends(s.arc)?;
    match s.side {
        Side::Right => e.tail,
        Side::Left => e.head,
    }
}

/// Face index for every arc-side.
fn side_faces(faces: &[Face]) -> HashMap<ArcSide, usize> {
    let mut m = HashMap::new();
    for (i, f) in faces.iter().enumerate() {
        for &s in &f.sides {
            m.insert(s, i);
        }
    }
    m
}

fn bigon_arcs(d: &LinkDiagram, f: &Face) -> Option<(Arc, Arc, bool)> {
    if f.len() != 2 {
        return None;
    }
    let (h1, h2) = (f.half_edges[0], f.half_edges[1]);
    if h1.crossing == h2.crossing {
        return None;
    }
    let e1 = f.sides[0].arc;
    let t = d.twin(h1);
    let coherent = h1.slot % 2 == t.slot % 2;
    Some((e1, f.sides[1].arc, coherent))
}

/// Triangle with three distinct crossings; returns its arcs and whether
/// some strand passes over both others.
fn triangle(f: &Face) -> Option<([Arc; 3], bool)> {
    if f.len() != 3 {
        return None;
    }
    let c: Vec<usize> = f.half_edges.iter().map(|h| h.crossing).collect();
    if c[0] == c[1] || c[1] == c[2] || c[0] == c[2] {
        return None;
    }
    // Strand S_k carries arc e_k (leaving crossing k along the face).
    // At crossing k+1 it meets S_{k+1}: S_k is over iff e_k's slot there is odd,
    // which is the slot preceding the face half-edge.
    let over_next: Vec<bool> = (0..3)
        .map(|k| {
            let h = f.half_edges[(k + 1) % 3];
            ((h.slot + 3) % 4) % 2 == 1
        })
        .collect();
    let cyclic = over_next.iter().all(|&b| b) || over_next.iter().all(|&b| !b);
    let arcs = [f.sides[0].arc, f.sides[1].arc, f.sides[2].arc];
    Some((arcs, !cyclic))
}

fn rotate_min(arcs: [Arc; 3]) -> [Arc; 3] {
    let k = (0..3).min_by_key(|&i| arcs[i]).unwrap_or(0);
    [arcs[k], arcs[(k + 1) % 3], arcs[(k + 2) % 3]]
}

/// Every Reidemeister move available on `d` within a crossing cap, in
/// sorted order.
pub fn enumerate_moves(d: &LinkDiagram, cap: usize) -> Vec<MoveSpec> {
    let faces = d.faces();
    let mut out = Vec::new();
    let n = d.crossing_count();
    // a one-crossing figure eight has two monogons with the same result
    let mut curled = vec![false; n];
    for f in &faces {
        if f.half_edges.is_empty() {
            continue;
        }
        match f.len() {
            1 => {
                let c = f.half_edges[0].crossing;
                if !std::mem::replace(&mut curled[c], true) {
                    out.push(MoveSpec::r1_remove(f.sides[0].arc));
                }
            }
            2 => {
                if let Some((a, b, true)) = bigon_arcs(d, f) {
                    out.push(MoveSpec::r2_remove(a, b));
                }
            }
            3 => {
                if let Some((arcs, true)) = triangle(f) {
                    let t = rotate_min(arcs);
                    out.push(MoveSpec::r3(t, Slide::Top));
                    out.push(MoveSpec::r3(t, Slide::Bottom));
                }
            }
            _ => {}
        }
    }
    if n < cap {
        for a in d.arcs() {
            for side in [Side::Left, Side::Right] {
                for sign in [1i8, -1] {
                    out.push(MoveSpec::r1_add(a, side, sign));
                }
            }
        }
    }
    if n + 2 <= cap {
        let overs = [OverChoice::First, OverChoice::Second];
        for f in &faces {
            for &s1 in &f.sides {
                for &s2 in &f.sides {
                    for over in overs {
                        out.push(MoveSpec::r2_add(s1, s2, over));
                    }
                }
            }
        }
        // Split pieces can be nested into any face of one another.
        let mut by_piece: HashMap<usize, Vec<ArcSide>> = HashMap::new();
        for f in &faces {
            by_piece
                .entry(f.piece)
                .or_default()
                .extend(f.sides.iter().copied());
        }
        if by_piece.len() > 1 {
            let mut pieces: Vec<usize> = by_piece.keys().copied().collect();
            pieces.sort_unstable();
            for &p in &pieces {
                for &q in &pieces {
                    if p == q {
                        continue;
                    }
                    for &s1 in &by_piece[&p] {
                        for &s2 in &by_piece[&q] {
                            for over in overs {
                                out.push(MoveSpec::r2_add(s1, s2, over));
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Applies a move, checking that its site exists in `d`.
pub fn apply_move(d: &LinkDiagram, m: &MoveSpec) -> Result<LinkDiagram, MoveError> {
    for &a in &m.site {
        if !d.contains_arc(a) {
            return Err(mismatch(format!("arc {a} not in diagram")));
        }
    }
    match m.kind {
        MoveKind::R1Remove => r1_remove(d, m),
        MoveKind::R2Remove => r2_remove(d, m),
        MoveKind::R3 => r3(d, m),
        MoveKind::R1Add => r1_add(d, m),
        MoveKind::R2Add => r2_add(d, m),
    }
}

fn r1_remove(d: &LinkDiagram, m: &MoveSpec) -> Result<LinkDiagram, MoveError> {
    let [a] = m.site[..] else {
        return Err(mismatch("R1Remove takes one arc"));
    };
    let e = d.ends(a).ok_or_else(|| mismatch("unknown arc"))?;
    let (Some(t), Some(h)) = (e.tail, e.head) else {
        return Err(mismatch(format!("arc {a} is a loop")));
    };
    let diff = (t.slot + 4 - h.slot) % 4;
    if t.crossing != h.crossing || (diff != 1 && diff != 3) {
        return Err(mismatch(format!("arc {a} does not bound a monogon")));
    }
    let mut remove = vec![false; d.crossing_count()];
    remove[t.crossing] = true;
    Ok(d.remove_crossings(&remove, None)?)
}

fn find_face<'f>(faces: &'f [Face], arcs: &[Arc]) -> Option<&'f Face> {
    let mut want = arcs.to_vec();
    want.sort_unstable();
    faces.iter().find(|f| {
        if f.half_edges.is_empty() || f.len() != want.len() {
            return false;
        }
        let mut got: Vec<Arc> = f.sides.iter().map(|s| s.arc).collect();
        got.sort_unstable();
        got == want
    })
}

fn r2_remove(d: &LinkDiagram, m: &MoveSpec) -> Result<LinkDiagram, MoveError> {
    if m.site.len() != 2 {
        return Err(mismatch("R2Remove takes two arcs"));
    }
    let faces = d.faces();
    let f = faces
        .iter()
        .filter(|f| bigon_arcs(d, f).is_some_and(|(_, _, c)| c))
        .find(|f| find_face(std::slice::from_ref(f), &m.site).is_some())
        .ok_or_else(|| mismatch(format!("no removable bigon on arcs {:?}", m.site)))?;
    let mut remove = vec![false; d.crossing_count()];
    for h in &f.half_edges {
        remove[h.crossing] = true;
    }
    Ok(d.remove_crossings(&remove, None)?)
}

fn r3(d: &LinkDiagram, m: &MoveSpec) -> Result<LinkDiagram, MoveError> {
    if m.site.len() != 3 {
        return Err(mismatch("R3 takes three arcs"));
    }
    let faces = d.faces();
    let f = faces
        .iter()
        .filter(|f| triangle(f).is_some_and(|(_, ok)| ok))
        .find(|f| find_face(std::slice::from_ref(f), &m.site).is_some())
        .ok_or_else(|| mismatch(format!("no R3 triangle on arcs {:?}", m.site)))?;
    let xs = d.crossings();
    let hs = &f.half_edges;
    // j_k: slot where the face boundary arrives at crossing k.
    let c = [hs[0].crossing, hs[1].crossing, hs[2].crossing];
    let j = [
        (hs[0].slot + 3) % 4,
        (hs[1].slot + 3) % 4,
        (hs[2].slot + 3) % 4,
    ];
    // Ports counterclockwise around the triangle's disk.
    let ports: [(usize, u8); 6] = [
        (c[0], (j[0] + 2) % 4),
        (c[0], (j[0] + 3) % 4),
        (c[2], (j[2] + 2) % 4),
        (c[2], (j[2] + 3) % 4),
        (c[1], (j[1] + 2) % 4),
        (c[1], (j[1] + 3) % 4),
    ];
    let port_arc = |p: usize| xs[ports[p].0].arc(ports[p].1);
    let port_in = |p: usize| xs[ports[p].0].is_incoming(ports[p].1);
    // Chords: A = p0-p3, B = p1-p4, C = p2-p5.
    let chord_of = |p: usize| p % 3;
    // Heights: A vs B at c0, B vs C at c1, C vs A at c2.
    let a_over_b = Crossing::is_over(ports[0].1);
    let b_over_c = Crossing::is_over(j[1]);
    let c_over_a = Crossing::is_over(j[2]);
    let over = |x: usize, y: usize| -> bool {
        match (x, y) {
            (0, 1) => a_over_b,
            (1, 0) => !a_over_b,
            (1, 2) => b_over_c,
            (2, 1) => !b_over_c,
            (2, 0) => c_over_a,
            (0, 2) => !c_over_a,
            _ => unreachable!(),
        }
    };
    let mut ed = Editor::new(d);
    for &ci in &c {
        ed.remove(ci);
    }
    let mids: Vec<Arc> = (0..3)
        .map(|k| {
            let comp = ed.comp(port_arc(k));
            ed.fresh(comp)
        })
        .collect();
    // Each new crossing lists the ports its four directions point to.
    let layouts: [([usize; 4], [bool; 4]); 3] = [
        // near p1,p2: toward p1, p2 are port arcs; toward p4, p5 are middles
        ([1, 2, 4, 5], [true, true, false, false]),
        ([0, 1, 3, 4], [false, false, true, true]),
        ([0, 2, 3, 5], [true, false, false, true]),
    ];
    for (targets, is_port) in layouts {
        let chords: Vec<usize> = targets.iter().map(|&p| chord_of(p)).collect();
        let (x, y) = (chords[0], chords[1]);
        let x_over = over(x, y);
        let ends: Vec<End> = (0..4)
            .map(|k| {
                let p = targets[k];
                let ch = chord_of(p);
                End {
                    arc: if is_port[k] { port_arc(p) } else { mids[ch] },
                    over: (ch == x) == x_over,
                    incoming: port_in(p),
                }
            })
            .collect();
        ed.push(assemble([ends[0], ends[1], ends[2], ends[3]]));
    }
    Ok(ed.finish()?)
}

fn r1_add(d: &LinkDiagram, m: &MoveSpec) -> Result<LinkDiagram, MoveError> {
    let [x] = m.site[..] else {
        return Err(mismatch("R1Add takes one arc"));
    };
    let side = m
        .options
        .side
        .ok_or_else(|| mismatch("R1Add needs a side"))?;
    let sign = m
        .options
        .sign
        .ok_or_else(|| mismatch("R1Add needs a sign"))?;
    if sign != 1 && sign != -1 {
        return Err(mismatch("R1Add sign must be +1 or -1"));
    }
    let mut ed = Editor::new(d);
    let comp = ed.comp(x);
    let is_loop = d.is_loop(x);
    let x2 = ed.fresh(comp);
    let x3 = if is_loop {
        ed.drop_loop(x);
        x
    } else {
        let a = ed.fresh(comp);
        let head = d.ends(x).and_then(|e| e.head).expect("crossing arc");
        ed.set(head, a);
        a
    };
    let x1 = x;
    let build = |first_over: bool| -> Crossing {
        let e = |arc, first: bool, incoming| End {
            arc,
            over: first == first_over,
            incoming,
        };
        // Directions E, N, W, S. The strand passes once along the arc and
        // once after the curl.
        match side {
            Side::Right => assemble([
                e(x2, true, false),
                e(x3, false, false),
                e(x1, true, true),
                e(x2, false, true),
            ]),
            Side::Left => assemble([
                e(x1, true, true),
                e(x3, false, false),
                e(x2, true, false),
                e(x2, false, true),
            ]),
        }
    };
    let mut c = build(true);
    if c.sign() != sign as i32 {
        c = build(false);
    }
    ed.push(c);
    Ok(ed.finish()?)
}

fn r2_add(d: &LinkDiagram, m: &MoveSpec) -> Result<LinkDiagram, MoveError> {
    let [x, y] = m.site[..] else {
        return Err(mismatch("R2Add takes two arcs"));
    };
    let [sx, sy] = m
        .options
        .sides
        .ok_or_else(|| mismatch("R2Add needs sides"))?;
    let over = m
        .options
        .over
        .ok_or_else(|| mismatch("R2Add needs an over choice"))?;
    let (ax, ay) = (ArcSide { arc: x, side: sx }, ArcSide { arc: y, side: sy });
    let faces = d.faces();
    let fmap = side_faces(&faces);
    let (fx, fy) = (fmap[&ax], fmap[&ay]);
    if fx != fy && faces[fx].piece == faces[fy].piece {
        return Err(mismatch(format!(
            "arc-sides {x}/{sx:?} and {y}/{sy:?} share no face"
        )));
    }
    if x == y && sx != sy {
        return Err(mismatch("both sides of one arc"));
    }
    let mut ed = Editor::new(d);
    let (cx, cy) = (ed.comp(x), ed.comp(y));
    let head_slot = |a: Arc| {
        half_edge_of(
            d,
            ArcSide {
                arc: a,
                side: Side::Left,
            },
        )
    };
    let (x1, x2, x3, y1, y2, y3);
    if x != y {
        x1 = x;
        x2 = ed.fresh(cx);
        x3 = match head_slot(x) {
            Some(h) => {
                let a = ed.fresh(cx);
                ed.set(h, a);
                a
            }
            None => {
                ed.drop_loop(x);
                x
            }
        };
        y1 = y;
        y2 = ed.fresh(cy);
        y3 = match head_slot(y) {
            Some(h) => {
                let a = ed.fresh(cy);
                ed.set(h, a);
                a
            }
            None => {
                ed.drop_loop(y);
                y
            }
        };
    } else {
        // Split the arc into an earlier and a later segment; the earlier one
        // is pushed across the later one.
        x1 = x;
        x2 = ed.fresh(cx);
        x3 = ed.fresh(cx);
        y1 = x3;
        y2 = ed.fresh(cx);
        y3 = match head_slot(x) {
            Some(h) => {
                let a = ed.fresh(cx);
                ed.set(h, a);
                a
            }
            None => {
                ed.drop_loop(x);
                x
            }
        };
    }
    // Picture: x runs along the top of the shared face, y along the bottom.
    let x_east = sx == Side::Right;
    let y_east = sy == Side::Left;
    let (xw, xe) = if x_east { (x1, x3) } else { (x3, x1) };
    let (yw, ye) = if y_east { (y1, y3) } else { (y3, y1) };
    let x_over = over == OverChoice::First;
    let xe_ = |arc, incoming| End {
        arc,
        over: x_over,
        incoming,
    };
    let ye_ = |arc, incoming| End {
        arc,
        over: !x_over,
        incoming,
    };
    // Directions E, N, W, S.
    let p = assemble([
        ye_(y2, !y_east),
        xe_(xw, x_east),
        ye_(yw, y_east),
        xe_(x2, !x_east),
    ]);
    let q = assemble([
        ye_(ye, !y_east),
        xe_(xe, !x_east),
        ye_(y2, y_east),
        xe_(x2, x_east),
    ]);
    ed.push(p);
    ed.push(q);
    Ok(ed.finish()?)
}

/// Applies a certificate step by step.
pub fn replay(d: &LinkDiagram, moves: &[MoveSpec]) -> Result<LinkDiagram, MoveError> {
    let mut cur = d.clone();
    for (step, m) in moves.iter().enumerate() {
        cur = apply_move(&cur, m).map_err(|e| MoveError::Replay {
            step,
            source: Box::new(e),
        })?;
    }
    Ok(cur)
}

/// A move on `after = apply_move(d, m)` that takes it back to the
/// canonical key of `d`. The first such move in enumeration order.
pub fn inverse_move(d: &LinkDiagram, after: &LinkDiagram) -> Option<MoveSpec> {
    let key = crate::canon::canonical_key(d);
    let cap = d.crossing_count().max(after.crossing_count());
    enumerate_moves(after, cap)
        .into_iter()
        .find(|m| apply_move(after, m).is_ok_and(|back| crate::canon::canonical_key(&back) == key))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_key;
    use crate::pd::parse_pd;

    fn kink() -> LinkDiagram {
        parse_pd("X[1,1,2,2]").unwrap()
    }

    #[test]
    fn kink_has_one_removal_class() {
        let d = kink();
        let moves = enumerate_moves(&d, 1);
        let r1: Vec<_> = moves
            .iter()
            .filter(|m| m.kind == MoveKind::R1Remove)
            .collect();
        assert!(!r1.is_empty());
        for m in r1 {
            let e = apply_move(&d, m).unwrap();
            assert!(e.is_crossingless());
            assert_eq!(e.component_count(), 1);
        }
    }

    #[test]
    fn loop_with_zero_cap_has_no_moves() {
        let d = parse_pd("O[1]").unwrap();
        assert!(enumerate_moves(&d, 0).is_empty());
    }

    #[test]
    fn r1_add_then_remove() {
        let d = parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]").unwrap();
        let k = canonical_key(&d);
        for m in enumerate_moves(&d, 4)
            .into_iter()
            .filter(|m| m.kind == MoveKind::R1Add)
        {
            let e = apply_move(&d, &m).unwrap();
            assert_eq!(e.crossing_count(), 4);
            let sign = m.options.sign.unwrap() as i64;
            assert_eq!(e.writhe(), d.writhe() + sign);
            let back = enumerate_moves(&e, 4)
                .into_iter()
                .filter(|b| b.kind == MoveKind::R1Remove)
                .any(|b| canonical_key(&apply_move(&e, &b).unwrap()) == k);
            assert!(back, "{m:?}");
        }
    }

    #[test]
    fn r2_add_then_remove() {
        for text in [
            "O[1]",
            "O[1] O[2]",
            "X[1,3,2,4] X[3,1,4,2]",
            "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]",
        ] {
            let d = parse_pd(text).unwrap();
            let k = canonical_key(&d);
            let cap = d.crossing_count() + 2;
            for m in enumerate_moves(&d, cap)
                .into_iter()
                .filter(|m| m.kind == MoveKind::R2Add)
            {
                let e = apply_move(&d, &m).unwrap_or_else(|err| panic!("{text} {m:?}: {err}"));
                assert_eq!(e.crossing_count(), d.crossing_count() + 2);
                assert_eq!(e.linking_matrix(), d.linking_matrix());
                let back = enumerate_moves(&e, cap)
                    .into_iter()
                    .filter(|b| b.kind == MoveKind::R2Remove)
                    .any(|b| canonical_key(&apply_move(&e, &b).unwrap()) == k);
                assert!(back, "{text} {m:?}");
            }
        }
    }

    #[test]
    fn stale_site_rejected() {
        let d = parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]").unwrap();
        let err = apply_move(&d, &MoveSpec::r1_remove(1)).unwrap_err();
        assert!(matches!(err, MoveError::SiteMismatch(_)));
        let err = apply_move(&d, &MoveSpec::r1_remove(99)).unwrap_err();
        assert!(matches!(err, MoveError::SiteMismatch(_)));
    }

    #[test]
    fn move_json_shape() {
        let m = MoveSpec::r2_add(
            ArcSide {
                arc: 3,
                side: Side::Left,
            },
            ArcSide {
                arc: 7,
                side: Side::Right,
            },
            OverChoice::First,
        );
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(
            s,
            r#"{"kind":"R2Add","site":[3,7],"options":{"sides":["left","right"],"over":"first"}}"#
        );
        let back: MoveSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
