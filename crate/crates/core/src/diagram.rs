//! Planar link diagrams in PD form.
//!
//! A crossing lists four arc labels counterclockwise, starting at the
//! incoming under-strand, so the under-strand always runs slot 0 -> slot 2.
//! Which of slots 1 and 3 carries the incoming over-strand is stored
//! explicitly; plain PD text leaves it implicit and the parser infers it.
//! Crossingless components are kept as explicit loop records.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::DiagramError;

/// Arc label. Any positive integer.
pub type Arc = u32;

/// A (crossing index, slot) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub crossing: usize,
    pub slot: u8,
}

impl Slot {
    pub(crate) fn new(crossing: usize, slot: u8) -> Self {
        Slot { crossing, slot }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    slots: [Arc; 4],
    over_in: u8,
}

impl Crossing {
    /// `over_in` is the slot (1 or 3) where the over-strand enters.
    pub fn new(slots: [Arc; 4], over_in: u8) -> Self {
        assert!(over_in == 1 || over_in == 3, "over_in must be 1 or 3");
        Crossing { slots, over_in }
    }

    pub fn slots(&self) -> [Arc; 4] {
        self.slots
    }

    pub fn arc(&self, slot: u8) -> Arc {
        self.slots[slot as usize % 4]
    }

    pub fn over_in(&self) -> u8 {
        self.over_in
    }

    pub fn over_out(&self) -> u8 {
        4 - self.over_in
    }

    /// +1 when the over-strand enters at slot 3 (runs d -> b), -1 otherwise.
    /// With this choice the right-handed trefoil has writhe +3.
    pub fn sign(&self) -> i32 {
        if self.over_in == 3 {
            1
        } else {
            -1
        }
    }

    pub fn is_incoming(&self, slot: u8) -> bool {
        slot == 0 || slot == self.over_in
    }

    pub fn is_over(slot: u8) -> bool {
        slot % 2 == 1
    }

    pub(crate) fn set_arc(&mut self, slot: u8, arc: Arc) {
        self.slots[slot as usize] = arc;
    }

    /// Incoming slot of the strand that uses `slot`.
    pub fn strand_entry(&self, slot: u8) -> u8 {
        if slot.is_multiple_of(2) {
            0
        } else {
            self.over_in
        }
    }
}

/// Which side of an oriented arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArcSide {
    pub arc: Arc,
    pub side: Side,
}

/// A face: the arc-sides met walking its boundary with the face on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub piece: usize,
    pub sides: Vec<ArcSide>,
    pub(crate) half_edges: Vec<Slot>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct ArcEnds {
    pub tail: Option<Slot>,
    pub head: Option<Slot>,
}

#[derive(Clone, Debug)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    loops: Vec<Arc>,
    components: Vec<Vec<Arc>>,
    ends: HashMap<Arc, ArcEnds>,
    component_of: HashMap<Arc, usize>,
}

impl PartialEq for LinkDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings
            && self.loops == other.loops
            && self.components == other.components
    }
}

impl Eq for LinkDiagram {}

/// Symmetric matrix of pairwise linking numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkingMatrix {
    entries: Vec<Vec<i64>>,
}

impl LinkingMatrix {
    pub fn from_rows(entries: Vec<Vec<i64>>) -> Self {
        LinkingMatrix { entries }
    }

    pub fn zeros(n: usize) -> Self {
        LinkingMatrix {
            entries: vec![vec![0; n]; n],
        }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|&v| v == 0)
    }

    /// First nonzero off-diagonal entry (i < j).
    pub fn first_nonzero(&self) -> Option<(usize, usize, i64)> {
        let n = self.n();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, self.entries[i][j]))
            .find(|&(_, _, v)| v != 0)
    }

    /// The matrix with row and column `k` removed.
    pub fn minor(&self, k: usize) -> LinkingMatrix {
        let entries = self
            .entries
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        LinkingMatrix { entries }
    }
}

impl fmt::Display for LinkingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl LinkDiagram {
    /// Validates and assembles a diagram. `hint` assigns arcs to component
    /// indices so that numbering survives rewrites; components are sorted by
    /// the hint of their arcs, falling back to their smallest label.
    pub(crate) fn build(
        crossings: Vec<Crossing>,
        loops: Vec<Arc>,
        hint: Option<&dyn Fn(Arc) -> Option<usize>>,
    ) -> Result<Self, DiagramError> {
        let mut ends: HashMap<Arc, ArcEnds> = HashMap::new();
        let mut count: BTreeMap<Arc, usize> = BTreeMap::new();
        for (ci, x) in crossings.iter().enumerate() {
            for s in 0..4u8 {
                let a = x.arc(s);
                if a == 0 {
                    return Err(DiagramError::Syntax(format!(
                        "arc label 0 at crossing {ci}"
                    )));
                }
                *count.entry(a).or_default() += 1;
                let e = ends.entry(a).or_insert(ArcEnds {
                    tail: None,
                    head: None,
                });
                let slot = Slot::new(ci, s);
                if x.is_incoming(s) {
                    if e.head.is_some() {
                        return Err(DiagramError::Orientation { arc: a });
                    }
                    e.head = Some(slot);
                } else {
                    if e.tail.is_some() {
                        return Err(DiagramError::Orientation { arc: a });
                    }
                    e.tail = Some(slot);
                }
            }
        }
        if let Some((&a, &n)) = count.iter().find(|(_, &n)| n != 2) {
            return Err(DiagramError::Multiplicity { arc: a, count: n });
        }
        for &l in &loops {
            if l == 0 {
                return Err(DiagramError::Syntax("loop label 0".into()));
            }
            if ends.contains_key(&l) {
                return Err(DiagramError::Multiplicity {
                    arc: l,
                    count: count.get(&l).copied().unwrap_or(0) + 1,
                });
            }
            ends.insert(
                l,
                ArcEnds {
                    tail: None,
                    head: None,
                },
            );
        }
        if loops.len() + count.len() != ends.len() {
            let mut seen = std::collections::HashSet::new();
            let dup = loops
                .iter()
                .find(|l| !seen.insert(**l))
                .copied()
                .unwrap_or(0);
            return Err(DiagramError::Multiplicity { arc: dup, count: 2 });
        }
        for (&a, e) in &ends {
            if !loops.contains(&a) && (e.head.is_none() || e.tail.is_none()) {
                return Err(DiagramError::Orientation { arc: a });
            }
        }

        // Strand following: out of an arc's head, straight across the crossing.
        let mut comps: Vec<Vec<Arc>> = Vec::new();
        let mut done: HashMap<Arc, bool> = HashMap::new();
        for &a in count.keys() {
            if done.contains_key(&a) {
                continue;
            }
            let mut comp = Vec::new();
            let mut cur = a;
            loop {
                done.insert(cur, true);
                comp.push(cur);
                let h = ends[&cur].head.expect("checked above");
                cur = crossings[h.crossing].arc((h.slot + 2) % 4);
                if cur == a {
                    break;
                }
                if done.contains_key(&cur) {
                    return Err(DiagramError::Orientation { arc: cur });
                }
            }
            comps.push(comp);
        }
        for &l in &loops {
            comps.push(vec![l]);
        }
        for comp in comps.iter_mut() {
            let pos = comp
                .iter()
                .enumerate()
                .min_by_key(|&(_, a)| *a)
                .map(|(i, _)| i)
                .unwrap_or(0);
            comp.rotate_left(pos);
        }
        let rank = |comp: &Vec<Arc>| -> (usize, Arc) {
            let h = hint.and_then(|f| comp.iter().filter_map(|&a| f(a)).min());
            (h.unwrap_or(usize::MAX), comp[0])
        };
        comps.sort_by_key(|c| rank(c));
        let mut component_of = HashMap::new();
        for (i, comp) in comps.iter().enumerate() {
            for &a in comp {
                component_of.insert(a, i);
            }
        }

        let d = LinkDiagram {
            crossings,
            loops,
            components: comps,
            ends,
            component_of,
        };
        d.check_planarity()?;
        Ok(d)
    }

    fn check_planarity(&self) -> Result<(), DiagramError> {
        let pieces = self.piece_of_crossing();
        let npieces = pieces.iter().copied().max().map_or(0, |m| m + 1);
        let mut verts = vec![0usize; npieces];
        for &p in &pieces {
            verts[p] += 1;
        }
        let mut faces = vec![0usize; npieces];
        for f in self.crossing_faces(&pieces) {
            faces[f.piece] += 1;
        }
        for p in 0..npieces {
            // V - E + F = 2 with E = 2V.
            if faces[p] != verts[p] + 2 {
                let c = pieces.iter().position(|&q| q == p).unwrap_or(0);
                return Err(DiagramError::Planarity { crossing: c });
            }
        }
        Ok(())
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn loops(&self) -> &[Arc] {
        &self.loops
    }

    pub fn components(&self) -> &[Vec<Arc>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_crossingless(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn component_of(&self, arc: Arc) -> Option<usize> {
        self.component_of.get(&arc).copied()
    }

    pub fn is_loop(&self, arc: Arc) -> bool {
        self.loops.contains(&arc)
    }

    pub fn contains_arc(&self, arc: Arc) -> bool {
        self.ends.contains_key(&arc)
    }

    pub(crate) fn ends(&self, arc: Arc) -> Option<ArcEnds> {
        self.ends.get(&arc).copied()
    }

    pub fn max_label(&self) -> Arc {
        self.ends.keys().copied().max().unwrap_or(0)
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.components.iter().flatten().copied()
    }

    /// The slot at the other end of the arc leaving/entering `s`.
    pub(crate) fn twin(&self, s: Slot) -> Slot {
        let x = &self.crossings[s.crossing];
        let a = x.arc(s.slot);
        let e = self.ends[&a];
        if x.is_incoming(s.slot) {
            e.tail.expect("non-loop arc")
        } else {
            e.head.expect("non-loop arc")
        }
    }

    /// Component index of the strand through `slot` of crossing `c`.
    pub fn strand_component(&self, c: usize, slot: u8) -> usize {
        self.component_of[&self.crossings[c].arc(slot)]
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|x| x.sign() as i64).sum()
    }

    pub fn linking_matrix(&self) -> LinkingMatrix {
        let n = self.components.len();
        let mut twice = vec![vec![0i64; n]; n];
        for (ci, x) in self.crossings.iter().enumerate() {
            let (i, j) = (self.strand_component(ci, 0), self.strand_component(ci, 1));
            if i != j {
                twice[i][j] += x.sign() as i64;
                twice[j][i] += x.sign() as i64;
            }
        }
        for row in twice.iter_mut() {
            for v in row.iter_mut() {
                debug_assert!(*v % 2 == 0);
                *v /= 2;
            }
        }
        LinkingMatrix { entries: twice }
    }

    pub fn is_homologically_trivial(&self) -> bool {
        self.linking_matrix().is_zero()
    }

    /// Crossings where component `i` meets itself.
    pub fn self_crossings(&self, i: usize) -> usize {
        (0..self.crossings.len())
            .filter(|&c| self.strand_component(c, 0) == i && self.strand_component(c, 1) == i)
            .count()
    }

    /// Connected piece index for each crossing.
    pub(crate) fn piece_of_crossing(&self) -> Vec<usize> {
        let n = self.crossings.len();
        let mut uf = UnionFind::new(n);
        for e in self.ends.values() {
            if let (Some(t), Some(h)) = (e.tail, e.head) {
                uf.union(t.crossing, h.crossing);
            }
        }
        let mut ids = HashMap::new();
        (0..n)
            .map(|c| {
                let r = uf.find(c);
                let next = ids.len();
                *ids.entry(r).or_insert(next)
            })
            .collect()
    }

    pub fn piece_count(&self) -> usize {
        self.piece_of_crossing()
            .into_iter()
            .max()
            .map_or(0, |m| m + 1)
            + self.loops.len()
    }

    fn crossing_faces(&self, pieces: &[usize]) -> Vec<Face> {
        let n = self.crossings.len();
        let mut seen = vec![[false; 4]; n];
        let mut faces = Vec::new();
        for c in 0..n {
            for s in 0..4u8 {
                if seen[c][s as usize] {
                    continue;
                }
                let start = Slot::new(c, s);
                let mut h = start;
                let mut sides = Vec::new();
                let mut half_edges = Vec::new();
                loop {
                    seen[h.crossing][h.slot as usize] = true;
                    let x = &self.crossings[h.crossing];
                    let side = if x.is_incoming(h.slot) {
                        Side::Left
                    } else {
                        Side::Right
                    };
                    sides.push(ArcSide {
                        arc: x.arc(h.slot),
                        side,
                    });
                    half_edges.push(h);
                    let t = self.twin(h);
                    h = Slot::new(t.crossing, (t.slot + 1) % 4);
                    if h == start {
                        break;
                    }
                }
                faces.push(Face {
                    piece: pieces[c],
                    sides,
                    half_edges,
                });
            }
        }
        faces
    }

    /// All faces. Each crossingless loop contributes two one-sided faces.
    pub fn faces(&self) -> Vec<Face> {
        let pieces = self.piece_of_crossing();
        let base = pieces.iter().copied().max().map_or(0, |m| m + 1);
        let mut faces = self.crossing_faces(&pieces);
        for (i, &l) in self.loops.iter().enumerate() {
            for side in [Side::Left, Side::Right] {
                faces.push(Face {
                    piece: base + i,
                    sides: vec![ArcSide { arc: l, side }],
                    half_edges: vec![],
                });
            }
        }
        faces
    }

    /// Removes the given crossings, joining the arcs of each strand that ran
    /// through them. Arcs of `drop` are discarded. Strands left without
    /// crossings become loops.
    pub(crate) fn remove_crossings(
        &self,
        remove: &[bool],
        drop: Option<usize>,
    ) -> Result<LinkDiagram, DiagramError> {
        let labels: Vec<Arc> = {
            let mut v: Vec<Arc> = self.ends.keys().copied().collect();
            v.sort_unstable();
            v
        };
        let index: HashMap<Arc, usize> = labels.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut uf = UnionFind::new(labels.len());
        for (c, x) in self.crossings.iter().enumerate() {
            if remove[c] {
                uf.union(index[&x.arc(0)], index[&x.arc(2)]);
                uf.union(index[&x.arc(1)], index[&x.arc(3)]);
            }
        }
        // Union-find roots are the smallest index, hence the smallest label.
        let rep = |uf: &mut UnionFind, a: Arc| labels[uf.find(index[&a])];
        let mut crossings = Vec::new();
        let mut used = std::collections::HashSet::new();
        for (c, x) in self.crossings.iter().enumerate() {
            if remove[c] {
                continue;
            }
            let mut y = *x;
            for s in 0..4u8 {
                let r = rep(&mut uf, x.arc(s));
                y.set_arc(s, r);
                used.insert(r);
            }
            crossings.push(y);
        }
        let mut loops = Vec::new();
        for &a in &labels {
            let r = rep(&mut uf, a);
            if r != a || used.contains(&r) {
                continue;
            }
            if drop == Some(self.component_of[&a]) {
                continue;
            }
            loops.push(a);
        }
        let comp = &self.component_of;
        let shift = move |a: Arc| -> Option<usize> {
            let i = *comp.get(&a)?;
            match drop {
                Some(k) if i > k => Some(i - 1),
                _ => Some(i),
            }
        };
        LinkDiagram::build(crossings, loops, Some(&shift))
    }

    /// Deletes component `i` (zero-based).
    pub fn delete_component(&self, i: usize) -> Result<LinkDiagram, DiagramError> {
        if i >= self.components.len() {
            return Err(DiagramError::ComponentIndex {
                index: i,
                count: self.components.len(),
            });
        }
        let remove: Vec<bool> = (0..self.crossings.len())
            .map(|c| self.strand_component(c, 0) == i || self.strand_component(c, 1) == i)
            .collect();
        self.remove_crossings(&remove, Some(i))
    }

    /// Diagram with every arc label replaced through `f`, which must be
    /// injective on this diagram's labels.
    pub fn relabel(&self, f: impl Fn(Arc) -> Arc) -> Result<LinkDiagram, DiagramError> {
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                let s = x.slots();
                Crossing::new([f(s[0]), f(s[1]), f(s[2]), f(s[3])], x.over_in())
            })
            .collect();
        let loops = self.loops.iter().map(|&l| f(l)).collect();
        let inv: HashMap<Arc, usize> = self.component_of.iter().map(|(&a, &i)| (f(a), i)).collect();
        let hint = move |a: Arc| inv.get(&a).copied();
        LinkDiagram::build(crossings, loops, Some(&hint))
    }

    /// Labels renumbered 1..2c along components, loops after.
    pub fn normalized(&self) -> LinkDiagram {
        let mut map = HashMap::new();
        let mut next = 1;
        for comp in &self.components {
            if comp.len() == 1 && self.is_loop(comp[0]) {
                continue;
            }
            for &a in comp {
                map.insert(a, next);
                next += 1;
            }
        }
        for comp in &self.components {
            if comp.len() == 1 && self.is_loop(comp[0]) {
                map.insert(comp[0], next);
                next += 1;
            }
        }
        self.relabel(|a| map[&a])
            .expect("relabeling a valid diagram")
    }

    /// Diagram with components listed in the given order (`order[k]` is the
    /// old index of the new component `k`).
    pub fn reorder_components(&self, order: &[usize]) -> Result<LinkDiagram, DiagramError> {
        let n = self.components.len();
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(DiagramError::ComponentIndex { index: n, count: n });
        }
        let mut new_index = vec![0; n];
        for (k, &old) in order.iter().enumerate() {
            new_index[old] = k;
        }
        let comp = &self.component_of;
        let hint = move |a: Arc| comp.get(&a).map(|&i| new_index[i]);
        LinkDiagram::build(self.crossings.clone(), self.loops.clone(), Some(&hint))
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> LinkDiagram {
        // Swapping over and under keeps the ccw order; the new slot 0 is the
        // old incoming over-strand.
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                let s = x.slots();
                let o = x.over_in() as usize;
                let rot = [s[o], s[(o + 1) % 4], s[(o + 2) % 4], s[(o + 3) % 4]];
                // Old under-in (slot 0) now sits at position (4 - o) % 4.
                Crossing::new(rot, ((4 - o) % 4) as u8)
            })
            .collect();
        let comp = &self.component_of;
        let hint = move |a: Arc| comp.get(&a).copied();
        LinkDiagram::build(crossings, self.loops.clone(), Some(&hint))
            .expect("mirror of a valid diagram")
    }

    pub(crate) fn component_map(&self) -> &HashMap<Arc, usize> {
        &self.component_of
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pd::parse_pd;

    const TREFOIL: &str = "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]";
    const HOPF: &str = "X[1,3,2,4] X[3,1,4,2]";

    #[test]
    fn trefoil_basics() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.writhe(), 3);
        assert_eq!(d.faces().len(), 5);
        assert_eq!(d.mirror().writhe(), -3);
    }

    #[test]
    fn hopf_linking_and_faces() {
        let d = parse_pd(HOPF).unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.faces().len(), 4);
        // Hand count: both crossings are d -> b on the over-strand.
        assert_eq!(d.linking_matrix().rows(), &[vec![0, 1], vec![1, 0]]);
        let m = d.mirror();
        assert_eq!(m.linking_matrix().get(0, 1), -1);
    }

    #[test]
    fn loops_and_faces() {
        let d = parse_pd("O[1]").unwrap();
        assert_eq!(d.faces().len(), 2);
        assert!(d.linking_matrix().is_zero());
        let d = parse_pd("O[1] O[2]").unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.crossing_count(), 0);
        let e = d.delete_component(1).unwrap();
        assert_eq!(e.component_count(), 1);
        assert_eq!(e.loops(), &[1]);
    }

    #[test]
    fn delete_from_hopf_leaves_a_loop() {
        let d = parse_pd(HOPF).unwrap();
        for i in 0..2 {
            let e = d.delete_component(i).unwrap();
            assert_eq!(e.component_count(), 1);
            assert_eq!(e.crossing_count(), 0);
            assert_eq!(e.loops().len(), 1);
            assert_eq!(e.faces().len(), 2);
        }
        assert!(matches!(
            d.delete_component(2),
            Err(DiagramError::ComponentIndex { .. })
        ));
    }

    #[test]
    fn unmatched_arcs_rejected() {
        let err = parse_pd("X[1,2,3,4]").unwrap_err();
        assert!(matches!(err, DiagramError::Multiplicity { .. }), "{err}");
    }

    #[test]
    fn nonplanar_rejected() {
        // Gauss word 1212 on one component with no consistent embedding.
        let err = parse_pd("X[1,3,2,4] X[2,4,3,1]").unwrap_err();
        assert!(
            matches!(
                err,
                DiagramError::Planarity { .. } | DiagramError::Orientation { .. }
            ),
            "{err}"
        );
    }

    #[test]
    fn minor_matches_deletion() {
        let m = LinkingMatrix::from_rows(vec![vec![0, 1, 2], vec![1, 0, 3], vec![2, 3, 0]]);
        assert_eq!(m.minor(1).rows(), &[vec![0, 2], vec![2, 0]]);
    }
}
