//! Relabeling-invariant keys for diagrams.
//!
//! Each connected piece is encoded as a signed Gauss code: strands are walked
//! in orientation order, crossings are numbered on first visit, and every
//! passage records (crossing number, over/under, sign). The next strand
//! starts at the lowest-numbered crossing with an unvisited strand. The code
//! is minimized over all starting passages. Piece codes are sorted and
//! followed by the number of crossingless loops. Since the sign and
//! over/under data fix the rotation at every crossing, equal codes mean the
//! pieces are the same oriented diagram on the sphere.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::diagram::LinkDiagram;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u32>);

impl CanonicalKey {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

const ALPHABET: &[u8; 32] = b"0123456789abcdefghijklmnopqrstuv";

impl fmt::Display for CanonicalKey {
    /// Base-32 digits, `.` between values.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            let mut digits = Vec::new();
            let mut x = v;
            loop {
                digits.push(ALPHABET[(x % 32) as usize]);
                x /= 32;
                if x == 0 {
                    break;
                }
            }
            digits.reverse();
            f.write_str(std::str::from_utf8(&digits).expect("ascii"))?;
        }
        Ok(())
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

const PIECE_END: u32 = u32::MAX;

struct Walker<'a> {
    d: &'a LinkDiagram,
    crossings: &'a [usize],
    marked: Option<usize>,
}

impl Walker<'_> {
    /// Code of the piece starting on the strand entering `start`. Returns
    /// None as soon as the code exceeds `best`.
    fn code(&self, start: (usize, u8), best: Option<&[u32]>) -> Option<Vec<u32>> {
        let d = self.d;
        let xs = d.crossings();
        let mut number = std::collections::HashMap::with_capacity(self.crossings.len());
        let mut visited = std::collections::HashSet::with_capacity(self.crossings.len() * 2);
        let mut order: Vec<usize> = Vec::with_capacity(self.crossings.len());
        let mut out: Vec<u32> = Vec::with_capacity(self.crossings.len() * 2 + 8);
        let mut tight = best.is_some();
        let push = |out: &mut Vec<u32>, v: u32, tight: &mut bool| -> bool {
            let k = out.len();
            out.push(v);
            if *tight {
                let b = best.expect("tight implies best");
                match b.get(k).map(|&bv| v.cmp(&bv)) {
                    Some(Ordering::Less) => *tight = false,
                    Some(Ordering::Greater) | None => return false,
                    Some(Ordering::Equal) => {}
                }
            }
            true
        };
        let mut strand_start = Some(start);
        while let Some((c0, s0)) = strand_start {
            // strand header: length and marking
            let mut passages = Vec::new();
            let (mut c, mut s) = (c0, s0);
            loop {
                visited.insert((c, s % 2));
                passages.push((c, s));
                let x = &xs[c];
                let arc = x.arc((s + 2) % 4);
                let head = d.ends(arc).and_then(|e| e.head).expect("crossing arc");
                c = head.crossing;
                s = head.slot;
                if (c, s) == (c0, s0) {
                    break;
                }
            }
            let marked = self
                .marked
                .map(|m| d.strand_component(c0, s0) == m)
                .unwrap_or(false);
            if !push(
                &mut out,
                passages.len() as u32 * 2 + marked as u32,
                &mut tight,
            ) {
                return None;
            }
            for &(c, s) in &passages {
                let next = number.len() as u32;
                let num = *number.entry(c).or_insert_with(|| {
                    order.push(c);
                    next
                });
                let x = &xs[c];
                let token = num * 4 + (s % 2) as u32 * 2 + (x.sign() > 0) as u32;
                if !push(&mut out, token, &mut tight) {
                    return None;
                }
            }
            strand_start = order.iter().find_map(|&c| {
                if !visited.contains(&(c, 0)) {
                    Some((c, 0))
                } else if !visited.contains(&(c, 1)) {
                    Some((c, xs[c].over_in()))
                } else {
                    None
                }
            });
        }
        Some(out)
    }
}

fn piece_codes(d: &LinkDiagram, marked: Option<usize>) -> Vec<Vec<u32>> {
    let pieces = d.piece_of_crossing();
    let npieces = pieces.iter().copied().max().map_or(0, |m| m + 1);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); npieces];
    for (c, &p) in pieces.iter().enumerate() {
        members[p].push(c);
    }
    let mut codes = Vec::with_capacity(npieces);
    for crossings in &members {
        let w = Walker {
            d,
            crossings,
            marked,
        };
        let mut best: Option<Vec<u32>> = None;
        for &c in crossings {
            for s in [0u8, d.crossings()[c].over_in()] {
                if let Some(code) = w.code((c, s), best.as_deref()) {
                    if best.as_ref().is_none_or(|b| code < *b) {
                        best = Some(code);
                    }
                }
            }
        }
        codes.push(best.expect("nonempty piece"));
    }
    codes.sort();
    codes
}

fn assemble(d: &LinkDiagram, marked: Option<usize>) -> CanonicalKey {
    let mut key = Vec::new();
    for code in piece_codes(d, marked) {
        key.extend(code);
        key.push(PIECE_END);
    }
    let marked_loop = marked
        .map(|m| d.loops().iter().any(|&l| d.component_of(l) == Some(m)))
        .unwrap_or(false);
    key.push((d.loops().len() - marked_loop as usize) as u32);
    key.push(marked_loop as u32);
    CanonicalKey(key)
}

pub fn canonical_key(d: &LinkDiagram) -> CanonicalKey {
    assemble(d, None)
}

/// Key that also records which strands belong to component `i`.
pub fn canonical_key_marked(d: &LinkDiagram, i: usize) -> CanonicalKey {
    assemble(d, Some(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pd::parse_pd;

    #[test]
    fn trefoil_rotation_and_mirror() {
        let d = parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]").unwrap();
        let rotated = d.relabel(|a| a % 6 + 1).unwrap();
        assert_eq!(canonical_key(&d), canonical_key(&rotated));
        assert_ne!(canonical_key(&d), canonical_key(&d.mirror()));
    }

    #[test]
    fn loops_counted() {
        let a = parse_pd("O[1] O[2]").unwrap();
        let b = parse_pd("O[7]").unwrap();
        assert_ne!(canonical_key(&a), canonical_key(&b));
        assert_eq!(
            canonical_key(&a),
            canonical_key(&parse_pd("O[5] O[3]").unwrap())
        );
    }

    #[test]
    fn display_is_stable() {
        let k = canonical_key(&parse_pd("O[1]").unwrap());
        assert_eq!(k.to_string(), "1.0");
    }
}
