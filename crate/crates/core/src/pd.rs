//! PD text and JSON formats.
//!
//! Text: whitespace (or comma) separated terms, `X[a,b,c,d]` for a crossing
//! and `O[k]` for a crossingless loop, `%` starts a comment. An optional
//! `PD[ ... ]` wrapper is accepted.
//!
//! Plain PD does not say which over-slot is incoming. It is propagated from
//! the under-strands; strands that only ever pass over are oriented with the
//! usual consecutive-label rule (over-strand enters at `d` iff `b = d + 1`
//! or `d > b + 1`). JSON carries the component arc sequences and is exact.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::diagram::{Arc, Crossing, LinkDiagram};
use crate::error::DiagramError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub crossings: Vec<[Arc; 4]>,
    #[serde(default)]
    pub loops: Vec<Arc>,
    #[serde(default)]
    pub components: Vec<Vec<Arc>>,
    /// Incoming over slot (1 or 3) per crossing. Optional, but the only way
    /// to fix the direction of a two-arc component that only passes over.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub over_in: Vec<u8>,
}

fn tokenize(text: &str) -> Result<(Vec<[Arc; 4]>, Vec<Arc>), DiagramError> {
    let mut body = String::new();
    for line in text.lines() {
        let line = line.split('%').next().unwrap_or("");
        body.push_str(line);
        body.push(' ');
    }
    let mut s = body.trim();
    if let Some(rest) = s.strip_prefix("PD[") {
        s = rest
            .trim_end()
            .strip_suffix(']')
            .ok_or_else(|| DiagramError::Syntax("unterminated PD[".into()))?;
    }
    let mut crossings = Vec::new();
    let mut loops = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() || c == ',' {
            i += 1;
            continue;
        }
        if c != 'X' && c != 'O' {
            return Err(DiagramError::Syntax(format!(
                "unexpected `{c}` at offset {i}"
            )));
        }
        let open = i + 1;
        if bytes.get(open) != Some(&b'[') {
            return Err(DiagramError::Syntax(format!(
                "expected `[` after `{c}` at offset {i}"
            )));
        }
        let close = s[open..]
            .find(']')
            .map(|k| k + open)
            .ok_or_else(|| DiagramError::Syntax(format!("unterminated term at offset {i}")))?;
        let nums: Result<Vec<Arc>, _> = s[open + 1..close]
            .split(',')
            .map(|t| t.trim().parse::<Arc>())
            .collect();
        let nums =
            nums.map_err(|e| DiagramError::Syntax(format!("bad label at offset {i}: {e}")))?;
        match (c, nums.len()) {
            ('X', 4) => crossings.push([nums[0], nums[1], nums[2], nums[3]]),
            ('O', 1) => loops.push(nums[0]),
            _ => {
                return Err(DiagramError::Syntax(format!(
                    "`{c}` term at offset {i} has {} labels",
                    nums.len()
                )))
            }
        }
        i = close + 1;
    }
    Ok((crossings, loops))
}

fn check_multiplicity(crossings: &[[Arc; 4]], loops: &[Arc]) -> Result<(), DiagramError> {
    let mut count: HashMap<Arc, usize> = HashMap::new();
    for x in crossings {
        for &a in x {
            *count.entry(a).or_default() += 1;
        }
    }
    let mut bad: Vec<(Arc, usize)> = count
        .iter()
        .filter(|(_, &n)| n != 2)
        .map(|(&a, &n)| (a, n))
        .collect();
    bad.sort_unstable();
    if let Some(&(arc, count)) = bad.first() {
        return Err(DiagramError::Multiplicity { arc, count });
    }
    for &l in loops {
        if let Some(&n) = count.get(&l) {
            return Err(DiagramError::Multiplicity {
                arc: l,
                count: n + 1,
            });
        }
    }
    Ok(())
}

/// Infers the incoming over-slot of every crossing.
fn infer_orientation(crossings: &[[Arc; 4]]) -> Result<Vec<u8>, DiagramError> {
    // occurrences of each arc: (crossing, slot)
    let mut occ: HashMap<Arc, Vec<(usize, u8)>> = HashMap::new();
    for (c, x) in crossings.iter().enumerate() {
        for s in 0..4u8 {
            occ.entry(x[s as usize]).or_default().push((c, s));
        }
    }
    let n = crossings.len();
    let mut over_in: Vec<Option<u8>> = vec![None; n];
    // Some(true) = this occurrence is the head (incoming).
    let mut queue: VecDeque<(usize, u8, bool)> = VecDeque::new();
    for c in 0..n {
        queue.push_back((c, 0, true));
        queue.push_back((c, 2, false));
    }
    let mut assigned: HashMap<(usize, u8), bool> = HashMap::new();
    let mut next_free = 0;
    loop {
        while let Some((c, s, incoming)) = queue.pop_front() {
            if let Some(&prev) = assigned.get(&(c, s)) {
                if prev != incoming {
                    return Err(DiagramError::Orientation {
                        arc: crossings[c][s as usize],
                    });
                }
                continue;
            }
            assigned.insert((c, s), incoming);
            let arc = crossings[c][s as usize];
            // the other occurrence has the opposite role
            let other = occ[&arc].iter().copied().find(|&o| o != (c, s));
            match other {
                Some((c2, s2)) => queue.push_back((c2, s2, !incoming)),
                None => return Err(DiagramError::Orientation { arc }),
            }
            if s % 2 == 1 {
                let o = if incoming { s } else { 4 - s };
                match over_in[c] {
                    Some(prev) if prev != o => return Err(DiagramError::Orientation { arc }),
                    _ => {}
                }
                over_in[c] = Some(o);
                queue.push_back((c, 4 - s, !incoming));
            }
        }
        while next_free < n && over_in[next_free].is_some() {
            next_free += 1;
        }
        if next_free == n {
            break;
        }
        let x = crossings[next_free];
        let (b, d) = (x[1] as i64, x[3] as i64);
        let positive = b - d == 1 || d - b > 1;
        queue.push_back((next_free, if positive { 3 } else { 1 }, true));
    }
    Ok(over_in
        .into_iter()
        .map(|o| o.expect("all assigned"))
        .collect())
}

pub fn parse_pd(text: &str) -> Result<LinkDiagram, DiagramError> {
    let (raw, loops) = tokenize(text)?;
    check_multiplicity(&raw, &loops)?;
    let over = infer_orientation(&raw)?;
    let crossings = raw
        .iter()
        .zip(over)
        .map(|(&s, o)| Crossing::new(s, o))
        .collect();
    LinkDiagram::build(crossings, loops, None)
}

/// PD text with labels renumbered along components.
///
/// A two-arc component that only passes over reads the same both ways in
/// PD text; the parser takes its labels as increasing at the first crossing
/// listing it, so crossings are ordered to make that true.
pub fn to_pd(d: &LinkDiagram) -> String {
    let n = d.normalized();
    let xs = n.crossings();
    let mut order: Vec<usize> = (0..xs.len()).collect();
    for comp in n.components() {
        let &[a, b] = comp.as_slice() else { continue };
        let over_in = |arc: Arc| xs.iter().position(|x| x.arc(x.over_in()) == arc);
        let at = |c: usize| order.iter().position(|&o| o == c).expect("listed");
        if let (Some(p), Some(q)) = (over_in(a), over_in(b)) {
            let only_over = [p, q].iter().all(|&c| {
                (0..4u8).all(|s| Crossing::is_over(s) || ![a, b].contains(&xs[c].arc(s)))
            });
            let (i, j) = (at(p), at(q));
            if only_over && p != q && i > j {
                order.swap(i, j);
            }
        }
    }
    let mut terms: Vec<String> = order
        .iter()
        .map(|&c| {
            let s = xs[c].slots();
            format!("X[{},{},{},{}]", s[0], s[1], s[2], s[3])
        })
        .collect();
    terms.extend(n.loops().iter().map(|l| format!("O[{l}]")));
    terms.join(" ")
}

pub fn to_json(d: &LinkDiagram) -> DiagramJson {
    let n = d.normalized();
    DiagramJson {
        crossings: n.crossings().iter().map(|x| x.slots()).collect(),
        loops: n.loops().to_vec(),
        components: n.components().to_vec(),
        over_in: n.crossings().iter().map(|x| x.over_in()).collect(),
    }
}

/// Builds a diagram from JSON. Orientation comes from the component
/// sequences when present; otherwise it is inferred as for PD text.
pub fn from_json(j: &DiagramJson) -> Result<LinkDiagram, DiagramError> {
    check_multiplicity(&j.crossings, &j.loops)?;
    let over = if !j.over_in.is_empty() {
        if j.over_in.len() != j.crossings.len() || j.over_in.iter().any(|&o| o != 1 && o != 3) {
            return Err(DiagramError::Syntax(
                "over_in needs one entry, 1 or 3, per crossing".into(),
            ));
        }
        j.over_in.clone()
    } else if j.components.is_empty() {
        infer_orientation(&j.crossings)?
    } else {
        let mut succ: HashMap<Arc, Arc> = HashMap::new();
        for comp in &j.components {
            for (k, &a) in comp.iter().enumerate() {
                succ.insert(a, comp[(k + 1) % comp.len()]);
            }
        }
        j.crossings
            .iter()
            .map(|x| {
                if succ.get(&x[3]) == Some(&x[1]) && x[1] != x[3] {
                    Ok(3)
                } else if succ.get(&x[1]) == Some(&x[3]) {
                    Ok(1)
                } else {
                    Err(DiagramError::Orientation { arc: x[1] })
                }
            })
            .collect::<Result<Vec<u8>, _>>()?
    };
    let crossings = j
        .crossings
        .iter()
        .zip(over)
        .map(|(&s, o)| Crossing::new(s, o))
        .collect();
    let order: HashMap<Arc, usize> = j
        .components
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.iter().map(move |&a| (a, i)))
        .collect();
    let hint = move |a: Arc| order.get(&a).copied();
    let d = LinkDiagram::build(crossings, j.loops.clone(), Some(&hint))?;
    if !j.components.is_empty() && d.component_count() != j.components.len() {
        return Err(DiagramError::Syntax(format!(
            "components list has {} entries, strand following gives {}",
            j.components.len(),
            d.component_count()
        )));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_terms_comments_and_wrapper() {
        let d = parse_pd("% trefoil\nPD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]]").unwrap();
        assert_eq!(d.crossing_count(), 3);
        let d = parse_pd("O[1] O[2]").unwrap();
        assert_eq!(d.component_count(), 2);
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse_pd("Y[1]"), Err(DiagramError::Syntax(_))));
        assert!(matches!(parse_pd("X[1,2,3]"), Err(DiagramError::Syntax(_))));
        assert!(matches!(
            parse_pd("X[1,2,3,4"),
            Err(DiagramError::Syntax(_))
        ));
        assert!(matches!(
            parse_pd("X[a,2,3,4]"),
            Err(DiagramError::Syntax(_))
        ));
    }

    #[test]
    fn loop_label_clash() {
        assert!(matches!(
            parse_pd("O[1] O[1]"),
            Err(DiagramError::Multiplicity { arc: 1, .. })
        ));
    }

    #[test]
    fn json_round_trip_keeps_orientation() {
        let d = parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2] O[9]").unwrap();
        let j = to_json(&d);
        let text = serde_json::to_string(&j).unwrap();
        let back: DiagramJson = serde_json::from_str(&text).unwrap();
        let e = from_json(&back).unwrap();
        assert_eq!(e.writhe(), 3);
        assert_eq!(e.component_count(), 2);
    }
}
