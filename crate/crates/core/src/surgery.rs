//! 1/q surgery on unknotted components, realized as a twist of the strands
//! that pierce the component's disk.
//!
//! A component K is in bundled form when it has no self-crossings, reading
//! its crossings in order gives m where K is under followed by m where K is
//! over, and on one side of K every crossing is joined directly to its
//! partner: the j-th under crossing to the (m+1-j)-th over crossing. Those m
//! arcs are the strands through K's disk. The twist inserts q full twists
//! on them just outside the over-arc of K.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::{Arc, LinkDiagram, LinkingMatrix, Side, Slot};
use crate::error::{DiagramError, SurgeryError};
use crate::reidemeister::{assemble, Editor, End};
use crate::search::{
    search_reduce, SearchBudget, SearchConfig, SearchOutcome, SearchReport, TargetPredicate,
};

/// A component in bundled form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistSite {
    pub component: usize,
    /// Side of K (relative to its orientation) holding the disk.
    pub inside: Side,
    /// Arcs inside the disk, ordered by their under crossing along K.
    pub bundle: Vec<Arc>,
    /// K's arcs, starting with the one entering the first under crossing.
    pub circle: Vec<Arc>,
}

impl TwistSite {
    pub fn strands(&self) -> usize {
        self.bundle.len()
    }
}

struct Detected {
    site: TwistSite,
    /// For strand i: the slot at its over crossing leading away from the disk.
    outer: Vec<Slot>,
}

fn inside_slot(entry: u8, side: Side) -> u8 {
    match side {
        Side::Left => (entry + 3) % 4,
        Side::Right => (entry + 1) % 4,
    }
}

fn detect(d: &LinkDiagram, k: usize) -> Result<Option<Detected>, DiagramError> {
    if k >= d.component_count() {
        return Err(DiagramError::ComponentIndex {
            index: k,
            count: d.component_count(),
        });
    }
    let comp = &d.components()[k];
    if comp.len() == 1 && d.is_loop(comp[0]) {
        let site = TwistSite {
            component: k,
            inside: Side::Left,
            bundle: vec![],
            circle: comp.clone(),
        };
        return Ok(Some(Detected {
            site,
            outer: vec![],
        }));
    }
    let xs = d.crossings();
    // (crossing, entry slot, arc entering) for each passage of K
    let mut passages = Vec::with_capacity(comp.len());
    for &a in comp {
        let h = d.ends(a).and_then(|e| e.head).expect("crossing arc");
        let other = d.strand_component(h.crossing, (h.slot + 1) % 4);
        if other == k {
            return Ok(None);
        }
        passages.push((h, a));
    }
    let n = passages.len();
    if n % 2 != 0 {
        return Ok(None);
    }
    let m = n / 2;
    let under: Vec<bool> = passages.iter().map(|(h, _)| h.slot == 0).collect();
    let Some(r) = (0..n).find(|&r| (0..n).all(|t| under[(r + t) % n] == (t < m))) else {
        return Ok(None);
    };
    let rot: Vec<(Slot, Arc)> = (0..n).map(|t| passages[(r + t) % n]).collect();
    let (us, os) = rot.split_at(m);
    'side: for side in [Side::Left, Side::Right] {
        let mut bundle = Vec::with_capacity(m);
        let mut outer = Vec::with_capacity(m);
        for i in 0..m {
            let (u, _) = us[i];
            let (o, _) = os[m - 1 - i];
            let s = Slot::new(u.crossing, inside_slot(u.slot, side));
            let t = d.twin(s);
            let want = Slot::new(o.crossing, inside_slot(o.slot, side));
            if t != want {
                continue 'side;
            }
            bundle.push(xs[u.crossing].arc(s.slot));
            outer.push(Slot::new(o.crossing, (want.slot + 2) % 4));
        }
        let circle = rot.iter().map(|&(_, a)| a).collect();
        return Ok(Some(Detected {
            site: TwistSite {
                component: k,
                inside: side,
                bundle,
                circle,
            },
            outer,
        }));
    }
    Ok(None)
}

/// The twist site of component `k`, if it is in bundled form.
pub fn detect_bundle(d: &LinkDiagram, k: usize) -> Result<Option<TwistSite>, DiagramError> {
    Ok(detect(d, k)?.map(|x| x.site))
}

/// Inserts `q` full twists into the bundle of `site`. With `keep = false`
/// the component itself is then deleted, giving the link after 1/q surgery.
pub fn twist(
    d: &LinkDiagram,
    site: &TwistSite,
    q: i64,
    keep: bool,
) -> Result<LinkDiagram, SurgeryError> {
    let det = detect(d, site.component)?
        .filter(|x| x.site == *site)
        .ok_or_else(|| {
            SurgeryError::StaleSite(format!(
                "component {} is not bundled as given",
                site.component
            ))
        })?;
    let m = site.bundle.len();
    let twisted = if m >= 2 && q != 0 {
        insert_full_twists(d, &det, q)?
    } else {
        d.clone()
    };
    if keep {
        Ok(twisted)
    } else {
        Ok(twisted.delete_component(site.component)?)
    }
}

fn insert_full_twists(
    d: &LinkDiagram,
    det: &Detected,
    q: i64,
) -> Result<LinkDiagram, DiagramError> {
    let m = det.site.bundle.len();
    let xs = d.crossings();
    let mut ed = Editor::new(d);
    // Position of strand i along the over-arc, left to right as seen from
    // inside the disk looking out.
    let pos_of = |i: usize| match det.site.inside {
        Side::Left => i,
        Side::Right => m - 1 - i,
    };
    let mut strand_at = vec![0usize; m];
    let mut cur = vec![0 as Arc; m];
    let mut outward = vec![false; m];
    let mut comp = vec![0usize; m];
    for i in 0..m {
        let s = det.outer[i];
        let w = xs[s.crossing].arc(s.slot);
        comp[i] = ed.comp(w);
        outward[i] = !xs[s.crossing].is_incoming(s.slot);
        let bottom = ed.fresh(comp[i]);
        ed.set(s, bottom);
        strand_at[pos_of(i)] = i;
        cur[pos_of(i)] = bottom;
    }
    let letters: Vec<usize> = if q > 0 {
        (0..m - 1).collect()
    } else {
        (0..m - 1).rev().collect()
    };
    let mut braid = Vec::new();
    for _ in 0..q.unsigned_abs() as usize * m {
        for &k in &letters {
            let (a, b) = (strand_at[k], strand_at[k + 1]);
            let a_top = ed.fresh(comp[a]);
            let b_top = ed.fresh(comp[b]);
            let a_over = q > 0;
            // Directions NE, NW, SW, SE; strand a climbs from position k to
            // k + 1, strand b from k + 1 to k.
            braid.push(assemble([
                End {
                    arc: a_top,
                    over: a_over,
                    incoming: !outward[a],
                },
                End {
                    arc: b_top,
                    over: !a_over,
                    incoming: !outward[b],
                },
                End {
                    arc: cur[k],
                    over: a_over,
                    incoming: outward[a],
                },
                End {
                    arc: cur[k + 1],
                    over: !a_over,
                    incoming: outward[b],
                },
            ]));
            cur[k] = b_top;
            cur[k + 1] = a_top;
            strand_at.swap(k, k + 1);
        }
    }
    debug_assert!((0..m).all(|x| strand_at[x] == (0..m).find(|&i| pos_of(i) == x).unwrap()));
    // Reconnect the tops to wherever the outer arcs used to lead.
    let mut rename: Vec<(Arc, Arc)> = Vec::new();
    for i in 0..m {
        let s = det.outer[i];
        let far = d.twin(s);
        let top = cur[pos_of(i)];
        if let Some(j) = det.outer.iter().position(|&o| o == far) {
            if i < j {
                rename.push((cur[pos_of(j)], top));
            }
        } else {
            ed.set(far, top);
        }
    }
    for mut x in braid {
        for s in 0..4u8 {
            if let Some(&(_, to)) = rename.iter().find(|(from, _)| *from == x.arc(s)) {
                x.set_arc(s, to);
            }
        }
        ed.push(x);
    }
    ed.finish()
}

/// Linking numbers after 1/q surgery on component `k`:
/// `l_ij + q * l_ik * l_jk`, with row and column `k` removed.
pub fn predicted_linking_after_twist(m: &LinkingMatrix, k: usize, q: i64) -> LinkingMatrix {
    let n = m.n();
    let keep: Vec<usize> = (0..n).filter(|&i| i != k).collect();
    let rows = keep
        .iter()
        .map(|&i| {
            keep.iter()
                .map(|&j| {
                    if i == j {
                        0
                    } else {
                        m.get(i, j) + q * m.get(i, k) * m.get(j, k)
                    }
                })
                .collect()
        })
        .collect();
    LinkingMatrix::from_rows(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Slope {
    /// No surgery.
    Star,
    /// 1/0: delete the component.
    Infinity,
    OneOverQ(i64),
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Star => f.write_str("*"),
            Slope::Infinity => f.write_str("inf"),
            Slope::OneOverQ(q) => write!(f, "1/{q}"),
        }
    }
}

impl FromStr for Slope {
    type Err = SurgeryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t {
            "*" => return Ok(Slope::Star),
            "inf" | "1/0" | "-1/0" => return Ok(Slope::Infinity),
            _ => {}
        }
        let (p, q) = t
            .split_once('/')
            .ok_or_else(|| SurgeryError::SlopeSyntax(t.into()))?;
        let p: i64 = p
            .trim()
            .parse()
            .map_err(|_| SurgeryError::SlopeSyntax(t.into()))?;
        let q: i64 = q
            .trim()
            .parse()
            .map_err(|_| SurgeryError::SlopeSyntax(t.into()))?;
        match (p, q) {
            (_, 0) if p != 0 => Ok(Slope::Infinity),
            (1, q) => Ok(Slope::OneOverQ(q)),
            (-1, q) => Ok(Slope::OneOverQ(-q)),
            _ => Err(SurgeryError::UnsupportedSlope(t.into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeVector(pub Vec<Slope>);

impl FromStr for SlopeVector {
    type Err = SurgeryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()
            .map(SlopeVector)
    }
}

impl fmt::Display for SlopeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug)]
pub enum SlopeOutcome {
    Applied(LinkDiagram),
    /// Component (original index) that could not be brought to bundled form.
    Failed {
        component: usize,
        report: SearchReport,
    },
}

/// A bundled diagram, the moves that produced it, its site and the search
/// nodes spent.
pub type Bundling = (LinkDiagram, Vec<crate::MoveSpec>, TwistSite, usize);

/// Brings component `k` to bundled form, searching if needed. Returns the
/// diagram, the moves used and the site.
pub fn bundle_component(
    d: &LinkDiagram,
    k: usize,
    budget: &SearchBudget,
    cfg: &SearchConfig,
) -> Result<Result<Bundling, SearchReport>, SurgeryError> {
    if let Some(site) = detect_bundle(d, k)? {
        return Ok(Ok((d.clone(), vec![], site, 0)));
    }
    let budget = budget.clone().at_least(d.crossing_count());
    match search_reduce(d, &TargetPredicate::ComponentBundled(k), &budget, cfg)? {
        SearchOutcome::Found {
            diagram,
            certificate,
            report,
        } => {
            let site = detect_bundle(&diagram, k)?.expect("search target is bundled form");
            Ok(Ok((diagram, certificate, site, report.nodes_explored)))
        }
        SearchOutcome::NotFound { report } => Ok(Err(report)),
    }
}

/// Applies a slope vector left to right.
pub fn apply_slopes(
    d: &LinkDiagram,
    s: &SlopeVector,
    budget: &SearchBudget,
    cfg: &SearchConfig,
) -> Result<SlopeOutcome, SurgeryError> {
    if s.0.len() != d.component_count() {
        return Err(SurgeryError::SlopeLength {
            got: s.0.len(),
            expected: d.component_count(),
        });
    }
    let mut cur = d.clone();
    // current index of each original component
    let mut index: Vec<Option<usize>> = (0..s.0.len()).map(Some).collect();
    for (orig, slope) in s.0.iter().enumerate() {
        let k = index[orig].expect("each component is removed at most once");
        match *slope {
            Slope::Star => continue,
            Slope::Infinity | Slope::OneOverQ(0) => {
                cur = cur.delete_component(k)?;
            }
            Slope::OneOverQ(q) => match bundle_component(&cur, k, budget, cfg)? {
                Ok((bundled, _, site, _)) => cur = twist(&bundled, &site, q, false)?,
                Err(report) => {
                    return Ok(SlopeOutcome::Failed {
                        component: orig,
                        report,
                    })
                }
            },
        }
        index[orig] = None;
        for slot in index.iter_mut().skip(orig + 1).flatten() {
            if *slot > k {
                *slot -= 1;
            }
        }
    }
    Ok(SlopeOutcome::Applied(cur))
}
