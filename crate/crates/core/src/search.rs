//! Bounded breadth-first search over the Reidemeister move graph.
//!
//! The search first applies removals greedily (each strictly lowers the
//! crossing count), then runs breadth-first phases with crossing caps
//! rising from the current count to the budget's cap. Every phase is a
//! fresh search over canonical keys, so raising any budget field only
//! appends work after what a smaller budget would have done: a target found
//! under one budget is found, by the same certificate, under every larger
//! one.
//!
//! Frontier layers are expanded in chunks on a worker pool; children are
//! merged into the visited table serially in enumeration order, so results
//! (certificates included) do not depend on the worker count.

use std::collections::HashMap;
use std::sync::{Arc as Shared, Mutex, OnceLock};

use serde::Serialize;

use crate::canon::{canonical_key, canonical_key_marked, CanonicalKey};
use crate::diagram::LinkDiagram;
use crate::error::{DiagramError, MoveError, SearchError};
use crate::reidemeister::{apply_move, enumerate_moves, replay, MoveKind, MoveSpec};
use crate::surgery::detect_bundle;
use crate::verdict::{Evidence, InconclusiveReport, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    /// Absolute crossing cap; `None` means input crossings plus `headroom`.
    pub max_crossings: Option<usize>,
    pub headroom: usize,
    /// Diagrams stored per crossing-cap phase.
    pub max_nodes: usize,
    /// Breadth-first depth per phase (moves after the greedy pass).
    pub max_depth: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_crossings: None,
            headroom: 2,
            max_nodes: 100_000,
            max_depth: 1_000,
        }
    }
}

impl SearchBudget {
    pub fn with_nodes(max_nodes: usize) -> Self {
        SearchBudget {
            max_nodes,
            ..Default::default()
        }
    }

    /// Raises an absolute crossing cap to at least `n`.
    pub fn at_least(mut self, n: usize) -> Self {
        if let Some(c) = self.max_crossings.as_mut() {
            *c = (*c).max(n);
        }
        self
    }

    /// The crossing cap for a search starting at `d`.
    pub fn cap_for(&self, d: &LinkDiagram) -> Result<usize, SearchError> {
        if self.max_nodes == 0 || self.max_depth == 0 {
            return Err(SearchError::Budget(
                "max_nodes and max_depth must be positive".into(),
            ));
        }
        let n = d.crossing_count();
        match self.max_crossings {
            Some(c) if c < n => Err(SearchError::Budget(format!(
                "max_crossings {c} is below the input's {n} crossings"
            ))),
            Some(c) => Ok(c),
            None => Ok(n + self.headroom),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    /// Threads used to expand frontier chunks; 1 runs inline.
    pub workers: usize,
    /// Apply removals greedily before searching.
    pub greedy: bool,
    /// Record one trace entry per stored node.
    pub trace: bool,
    /// Keep callers that could run concurrently (the classifier) sequential.
    pub deterministic: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            workers: 1,
            greedy: true,
            trace: false,
            deterministic: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "component")]
pub enum TargetPredicate {
    Crossingless,
    ComponentSelfCrossingFree(usize),
    ComponentBundled(usize),
}

impl TargetPredicate {
    fn component(self) -> Option<usize> {
        match self {
            TargetPredicate::Crossingless => None,
            TargetPredicate::ComponentSelfCrossingFree(i)
            | TargetPredicate::ComponentBundled(i) => Some(i),
        }
    }

    pub fn holds(self, d: &LinkDiagram) -> bool {
        match self {
            TargetPredicate::Crossingless => d.is_crossingless(),
            TargetPredicate::ComponentSelfCrossingFree(i) => d.self_crossings(i) == 0,
            TargetPredicate::ComponentBundled(i) => matches!(detect_bundle(d, i), Ok(Some(_))),
        }
    }

    /// Key under which diagrams are deduplicated for this target. Component
    /// targets mark the component, since which component is which matters.
    fn key(self, d: &LinkDiagram) -> CanonicalKey {
        match self.component() {
            None => canonical_key(d),
            Some(i) => canonical_key_marked(d, i),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    pub key: String,
    pub depth: usize,
    pub crossings: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    /// Diagrams stored, summed over phases (greedy steps included).
    pub nodes_explored: usize,
    /// Unexpanded frontier when the last phase stopped.
    pub frontier: usize,
    /// Budget fields that stopped the last phase.
    pub caps_hit: Vec<String>,
    /// Crossing cap of the last phase run.
    pub last_cap: usize,
    /// The last phase explored everything reachable under its cap.
    pub exhausted: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<TraceRecord>,
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found {
        diagram: LinkDiagram,
        certificate: Vec<MoveSpec>,
        report: SearchReport,
    },
    NotFound {
        report: SearchReport,
    },
}

impl SearchOutcome {
    pub fn report(&self) -> &SearchReport {
        match self {
            SearchOutcome::Found { report, .. } | SearchOutcome::NotFound { report } => report,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found { .. })
    }
}

pub(crate) fn pool(workers: usize) -> Shared<rayon::ThreadPool> {
    static POOLS: OnceLock<Mutex<HashMap<usize, Shared<rayon::ThreadPool>>>> = OnceLock::new();
    let mut pools = POOLS
        .get_or_init(Default::default)
        .lock()
        .expect("pool table");
    pools
        .entry(workers)
        .or_insert_with(|| {
            Shared::new(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .build()
                    .expect("thread pool"),
            )
        })
        .clone()
}

/// Applies the first available removal until none is left.
pub fn greedy_reduce(d: &LinkDiagram) -> (LinkDiagram, Vec<MoveSpec>) {
    let (cur, moves, _) = greedy(
        d,
        TargetPredicate::Crossingless,
        &mut SearchReport::default(),
        false,
    );
    (cur, moves)
}

fn greedy(
    d: &LinkDiagram,
    target: TargetPredicate,
    report: &mut SearchReport,
    trace: bool,
) -> (LinkDiagram, Vec<MoveSpec>, bool) {
    let mut cur = d.clone();
    let mut moves = Vec::new();
    loop {
        let Some(m) = enumerate_moves(&cur, cur.crossing_count())
            .into_iter()
            .find(|m| matches!(m.kind, MoveKind::R1Remove | MoveKind::R2Remove))
        else {
            return (cur, moves, false);
        };
        cur = apply_move(&cur, &m).expect("enumerated move applies");
        moves.push(m);
        report.nodes_explored += 1;
        if trace {
            report.trace.push(TraceRecord {
                key: target.key(&cur).to_string(),
                depth: moves.len(),
                crossings: cur.crossing_count(),
            });
        }
        if target.holds(&cur) {
            return (cur, moves, true);
        }
    }
}

type Children = Vec<(MoveSpec, LinkDiagram, CanonicalKey)>;

fn expand(d: &LinkDiagram, cap: usize, target: TargetPredicate) -> Children {
    enumerate_moves(d, cap)
        .into_iter()
        .filter_map(|m| {
            let c = apply_move(d, &m).ok()?;
            let k = target.key(&c);
            Some((m, c, k))
        })
        .collect()
}

/// One breadth-first phase under a fixed crossing cap.
fn phase(
    start: &LinkDiagram,
    target: TargetPredicate,
    cap: usize,
    budget: &SearchBudget,
    cfg: &SearchConfig,
    base_depth: usize,
    report: &mut SearchReport,
) -> Option<(LinkDiagram, Vec<MoveSpec>)> {
    let mut ids: HashMap<CanonicalKey, u32> = HashMap::new();
    let mut nodes: Vec<(u32, Option<MoveSpec>)> = vec![(0, None)];
    let start_key = target.key(start);
    if cfg.trace {
        report.trace.push(TraceRecord {
            key: start_key.to_string(),
            depth: base_depth,
            crossings: start.crossing_count(),
        });
    }
    ids.insert(start_key, 0);
    report.nodes_explored += 1;
    report.last_cap = cap;
    report.caps_hit.clear();
    report.exhausted = false;

    let path = |nodes: &[(u32, Option<MoveSpec>)], mut id: u32| {
        let mut p = Vec::new();
        while let (parent, Some(m)) = &nodes[id as usize] {
            p.push(m.clone());
            id = *parent;
        }
        p.reverse();
        p
    };

    let parallel = cfg.workers > 1;
    let chunk = if parallel { cfg.workers * 2 } else { 1 };
    let workers = parallel.then(|| pool(cfg.workers));
    let mut frontier: Vec<(u32, LinkDiagram)> = vec![(0, start.clone())];
    let mut depth = 0;
    while !frontier.is_empty() {
        if depth >= budget.max_depth {
            report.caps_hit.push("max_depth".into());
            report.frontier = frontier.len();
            return None;
        }
        let mut next = Vec::new();
        for (ci, part) in frontier.chunks(chunk).enumerate() {
            let expanded: Vec<Children> = match &workers {
                Some(p) => {
                    use rayon::prelude::*;
                    p.install(|| {
                        part.par_iter()
                            .map(|(_, d)| expand(d, cap, target))
                            .collect()
                    })
                }
                None => part.iter().map(|(_, d)| expand(d, cap, target)).collect(),
            };
            for (pi, ((pid, _), children)) in part.iter().zip(expanded).enumerate() {
                for (m, child, key) in children {
                    if ids.contains_key(&key) {
                        continue;
                    }
                    if nodes.len() >= budget.max_nodes {
                        report.caps_hit.push("max_nodes".into());
                        report.frontier = frontier.len() - (ci * chunk + pi) + next.len();
                        return None;
                    }
                    let id = nodes.len() as u32;
                    nodes.push((*pid, Some(m)));
                    report.nodes_explored += 1;
                    if cfg.trace {
                        report.trace.push(TraceRecord {
                            key: key.to_string(),
                            depth: base_depth + depth + 1,
                            crossings: child.crossing_count(),
                        });
                    }
                    ids.insert(key, id);
                    if target.holds(&child) {
                        return Some((child, path(&nodes, id)));
                    }
                    next.push((id, child));
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    report.frontier = 0;
    report.exhausted = true;
    report.caps_hit.push("max_crossings".into());
    None
}

/// Searches for a diagram satisfying `target` reachable from `d`.
pub fn search_reduce(
    d: &LinkDiagram,
    target: &TargetPredicate,
    budget: &SearchBudget,
    cfg: &SearchConfig,
) -> Result<SearchOutcome, SearchError> {
    let target = *target;
    if let Some(i) = target.component() {
        if i >= d.component_count() {
            return Err(DiagramError::ComponentIndex {
                index: i,
                count: d.component_count(),
            }
            .into());
        }
    }
    let cap_max = budget.cap_for(d)?;
    let mut report = SearchReport::default();
    if target.holds(d) {
        report.nodes_explored = 1;
        return Ok(SearchOutcome::Found {
            diagram: d.clone(),
            certificate: vec![],
            report,
        });
    }
    let (start, prefix) = if cfg.greedy {
        let (cur, moves, hit) = greedy(d, target, &mut report, cfg.trace);
        if hit {
            return Ok(SearchOutcome::Found {
                diagram: cur,
                certificate: moves,
                report,
            });
        }
        (cur, moves)
    } else {
        (d.clone(), vec![])
    };
    for cap in start.crossing_count()..=cap_max {
        if let Some((diagram, path)) =
            phase(&start, target, cap, budget, cfg, prefix.len(), &mut report)
        {
            let mut certificate = prefix;
            certificate.extend(path);
            return Ok(SearchOutcome::Found {
                diagram,
                certificate,
                report,
            });
        }
    }
    Ok(SearchOutcome::NotFound { report })
}

/// Bounded unknot check: Trivial with a certificate, or Inconclusive.
pub fn is_unknot(
    d: &LinkDiagram,
    budget: &SearchBudget,
    cfg: &SearchConfig,
) -> Result<Verdict, SearchError> {
    if d.component_count() != 1 {
        return Err(SearchError::NotAKnot(d.component_count()));
    }
    Ok(
        match search_reduce(d, &TargetPredicate::Crossingless, budget, cfg)? {
            SearchOutcome::Found { certificate, .. } => Verdict::Trivial {
                evidence: Evidence::Reduction { certificate },
            },
            SearchOutcome::NotFound { report } => Verdict::Inconclusive {
                report: InconclusiveReport::from_search(
                    "no crossingless diagram within budget",
                    &report,
                ),
            },
        },
    )
}

/// Replays a certificate; errors name the failing step.
pub fn replay_certificate(d: &LinkDiagram, cert: &[MoveSpec]) -> Result<LinkDiagram, MoveError> {
    replay(d, cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pd::parse_pd;
    use crate::Side;

    fn kink() -> LinkDiagram {
        let loop1 = parse_pd("O[1]").unwrap();
        apply_move(&loop1, &MoveSpec::r1_add(1, Side::Left, 1)).unwrap()
    }

    #[test]
    fn kink_reduces_in_one_move() {
        let d = kink();
        assert_eq!(d.crossing_count(), 1);
        let cfg = SearchConfig {
            greedy: false,
            ..Default::default()
        };
        let out = search_reduce(
            &d,
            &TargetPredicate::Crossingless,
            &SearchBudget::default(),
            &cfg,
        )
        .unwrap();
        let SearchOutcome::Found { certificate, .. } = out else {
            panic!("not found")
        };
        assert_eq!(certificate.len(), 1);
        assert!(replay_certificate(&d, &certificate)
            .unwrap()
            .is_crossingless());
    }

    #[test]
    fn loops_need_no_moves() {
        let d = parse_pd("O[1] O[2] O[3]").unwrap();
        let out = search_reduce(
            &d,
            &TargetPredicate::Crossingless,
            &SearchBudget::default(),
            &SearchConfig::default(),
        )
        .unwrap();
        assert!(
            matches!(out, SearchOutcome::Found { ref certificate, .. } if certificate.is_empty())
        );
    }

    #[test]
    fn trefoil_exhausts_at_cap_five() {
        let d = parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]").unwrap();
        let b = SearchBudget {
            max_crossings: Some(5),
            ..Default::default()
        };
        let v = is_unknot(&d, &b, &SearchConfig::default()).unwrap();
        let Verdict::Inconclusive { report } = v else {
            panic!("trefoil reduced")
        };
        assert!(report.exhausted);
    }

    #[test]
    fn double_kink() {
        let d = kink();
        let a = d.arcs().next().unwrap();
        let d = apply_move(&d, &MoveSpec::r1_add(a, Side::Right, -1)).unwrap();
        let v = is_unknot(&d, &SearchBudget::default(), &SearchConfig::default()).unwrap();
        let Verdict::Trivial {
            evidence: Evidence::Reduction { certificate },
        } = v
        else {
            panic!()
        };
        assert_eq!(certificate.len(), 2);
    }

    #[test]
    fn rejects_bad_budgets() {
        let d = parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]").unwrap();
        let b = SearchBudget {
            max_crossings: Some(2),
            ..Default::default()
        };
        assert!(search_reduce(
            &d,
            &TargetPredicate::Crossingless,
            &b,
            &SearchConfig::default()
        )
        .is_err());
        assert!(is_unknot(
            &parse_pd("O[1] O[2]").unwrap(),
            &SearchBudget::default(),
            &SearchConfig::default()
        )
        .is_err());
    }
}
