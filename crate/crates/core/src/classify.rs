//! Recursive unlink recognition and Brunnian / HTB classification.
//!
//! A link with n >= 2 components is trivial iff it is homologically
//! trivial, every (n-1)-component deletion sublink is trivial, and the link
//! left by a +-1 twist along one (unknotted) component is trivial. The
//! recursion bottoms out in knots, which are handed to the bounded unknot
//! search. Every definite verdict carries evidence that [`verify_trivial`]
//! or [`verify_witness`] re-checks from scratch.

use std::collections::HashMap;
use std::sync::Mutex;

use serde::Serialize;

use crate::canon::{canonical_key, CanonicalKey};
use crate::diagram::LinkDiagram;
use crate::reidemeister::replay;
use crate::search::{greedy_reduce, is_unknot, pool, SearchBudget, SearchConfig};
use crate::surgery::{bundle_component, detect_bundle, twist, TwistSite};
use crate::verdict::{Evidence, InconclusiveReport, Verdict, VerdictKind, Witness};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifierConfig {
    pub search: SearchConfig,
    /// Twist used for the third condition: +1 or -1.
    pub q: i64,
    /// On an inconclusive twisted link, go on to the next component.
    pub try_all_components: bool,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        ClassifierConfig {
            search: SearchConfig::default(),
            q: 1,
            try_all_components: true,
        }
    }
}

/// One node of the recursion tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    /// Path from the root: `d2` deletes component 2, `t1` twists along 1.
    pub path: String,
    pub components: usize,
    pub crossings: usize,
    pub verdict: VerdictKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twisted_component: Option<usize>,
    pub memo_hit: bool,
}

struct Classifier<'a> {
    budget: &'a SearchBudget,
    cfg: &'a ClassifierConfig,
    memo: Mutex<HashMap<CanonicalKey, Vec<(LinkDiagram, Verdict)>>>,
    trace: Mutex<Vec<TraceEntry>>,
}

/// Budget usage gathered from the searches behind an inconclusive result.
#[derive(Default)]
struct Spent {
    report: InconclusiveReport,
    parts: usize,
}

impl Spent {
    fn add(&mut self, nodes: usize, frontier: usize, caps: &[String], exhausted: bool) {
        let r = &mut self.report;
        r.nodes_explored += nodes;
        r.frontier += frontier;
        for c in caps {
            if !r.caps_hit.contains(c) {
                r.caps_hit.push(c.clone());
            }
        }
        r.exhausted = exhausted && (self.parts == 0 || r.exhausted);
        self.parts += 1;
    }

    fn search(&mut self, r: &crate::search::SearchReport) {
        self.add(r.nodes_explored, r.frontier, &r.caps_hit, r.exhausted);
    }

    fn verdict(&mut self, v: &Verdict) {
        if let Verdict::Inconclusive { report: r } = v {
            self.add(r.nodes_explored, r.frontier, &r.caps_hit, r.exhausted);
        }
    }

    fn finish(mut self, reason: impl Into<String>) -> Verdict {
        self.report.reason = reason.into();
        self.report.caps_hit.sort();
        Verdict::Inconclusive {
            report: self.report,
        }
    }
}

impl Classifier<'_> {
    fn parallel(&self) -> bool {
        !self.cfg.search.deterministic && self.cfg.search.workers > 1
    }

    fn classify(&self, d: &LinkDiagram, path: &str) -> Verdict {
        let key = canonical_key(d);
        let cached = self.memo.lock().expect("memo").get(&key).and_then(|hits| {
            // Evidence refers to arc labels, so only an identical diagram can
            // reuse a definite verdict; an inconclusive one carries nothing.
            hits.iter()
                .find(|(e, v)| e == d || v.is_inconclusive())
                .map(|(_, v)| v.clone())
        });
        let (v, hit) = match cached {
            Some(v) => (v, true),
            None => {
                let v = self.compute(d, path);
                self.memo
                    .lock()
                    .expect("memo")
                    .entry(key)
                    .or_default()
                    .push((d.clone(), v.clone()));
                (v, false)
            }
        };
        let twisted_component = match &v {
            Verdict::Trivial {
                evidence: Evidence::Recursive { component, .. },
            } => Some(*component),
            _ => None,
        };
        self.trace.lock().expect("trace").push(TraceEntry {
            path: path.to_string(),
            components: d.component_count(),
            crossings: d.crossing_count(),
            verdict: v.kind(),
            twisted_component,
            memo_hit: hit,
        });
        v
    }

    fn compute(&self, d: &LinkDiagram, path: &str) -> Verdict {
        let n = d.component_count();
        if d.is_crossingless() {
            return Verdict::Trivial {
                evidence: Evidence::Reduction {
                    certificate: vec![],
                },
            };
        }
        if n == 1 {
            let budget = self.budget.clone().at_least(d.crossing_count());
            return is_unknot(d, &budget, &self.cfg.search).expect("one component, valid budget");
        }
        if let Some((i, j, value)) = d.linking_matrix().first_nonzero() {
            return Verdict::Nontrivial {
                witness: Witness::Linking { i, j, value },
            };
        }
        let (r, pre) = greedy_reduce(d);
        if !pre.is_empty() {
            return match self.classify(&r, path) {
                Verdict::Trivial {
                    evidence: Evidence::Reduction { certificate },
                } => {
                    let mut all = pre;
                    all.extend(certificate);
                    Verdict::Trivial {
                        evidence: Evidence::Reduction { certificate: all },
                    }
                }
                Verdict::Trivial { evidence } => Verdict::Trivial {
                    evidence: Evidence::After {
                        moves: pre,
                        then: Box::new(evidence),
                    },
                },
                Verdict::Nontrivial { witness } => Verdict::Nontrivial {
                    witness: Witness::After {
                        moves: pre,
                        then: Box::new(witness),
                    },
                },
                v => v,
            };
        }
        self.recurse(d, path)
    }

    fn recurse(&self, d: &LinkDiagram, path: &str) -> Verdict {
        let n = d.component_count();
        let sub = |i: usize| {
            let s = d.delete_component(i).expect("index in range");
            self.classify(&s, &format!("{path}/d{i}"))
        };
        let sublinks: Vec<Verdict> = if self.parallel() {
            use rayon::prelude::*;
            pool(self.cfg.search.workers).install(|| (0..n).into_par_iter().map(sub).collect())
        } else {
            (0..n).map(sub).collect()
        };
        if let Some((i, v)) = sublinks.iter().enumerate().find(|(_, v)| v.is_nontrivial()) {
            let Verdict::Nontrivial { witness } = v else {
                unreachable!()
            };
            return Verdict::Nontrivial {
                witness: Witness::Deleted {
                    component: i,
                    inner: Box::new(witness.clone()),
                },
            };
        }
        if let Some(i) = sublinks.iter().position(|v| v.is_inconclusive()) {
            let mut spent = Spent::default();
            sublinks.iter().for_each(|v| spent.verdict(v));
            return spent.finish(format!("sublink without component {i} is inconclusive"));
        }

        // Components already bundled come first, then the rest ordered by
        // how many nodes their bundling search needed.
        let mut spent = Spent::default();
        let mut tried = Vec::new();
        let mut failed = Vec::new();
        let bundled: Vec<(usize, TwistSite)> = (0..n)
            .filter_map(|k| detect_bundle(d, k).expect("in range").map(|s| (k, s)))
            .collect();
        let mut candidates: Vec<(usize, usize, LinkDiagram, Vec<_>, TwistSite)> = bundled
            .into_iter()
            .map(|(k, s)| (0, k, d.clone(), vec![], s))
            .collect();
        let mut searched = candidates.len() == n;
        let mut idx = 0;
        loop {
            if idx == candidates.len() {
                if searched {
                    break;
                }
                searched = true;
                let mut more = Vec::new();
                for k in 0..n {
                    if candidates.iter().any(|c| c.1 == k) {
                        continue;
                    }
                    match bundle_component(d, k, self.budget, &self.cfg.search)
                        .expect("valid budget")
                    {
                        Ok((b, moves, site, nodes)) => {
                            spent.add(nodes, 0, &[], false);
                            more.push((nodes, k, b, moves, site));
                        }
                        Err(report) => {
                            spent.search(&report);
                            failed.push(k);
                        }
                    }
                }
                more.sort_by_key(|c| (c.0, c.1));
                candidates.extend(more);
                continue;
            }
            let (_, k, b, moves, site) = &candidates[idx];
            idx += 1;
            let t = twist(b, site, self.cfg.q, false).expect("fresh site");
            let v = self.classify(&t, &format!("{path}/t{k}"));
            tried.push(*k);
            match v {
                Verdict::Trivial { .. } => {
                    return Verdict::Trivial {
                        evidence: Evidence::Recursive {
                            sublinks,
                            component: *k,
                            bundling: moves.clone(),
                            q: self.cfg.q,
                            twisted: Box::new(v),
                        },
                    };
                }
                Verdict::Nontrivial { witness } => {
                    return Verdict::Nontrivial {
                        witness: Witness::Twisted {
                            component: *k,
                            bundling: moves.clone(),
                            q: self.cfg.q,
                            inner: Box::new(witness),
                        },
                    };
                }
                v @ Verdict::Inconclusive { .. } => {
                    spent.verdict(&v);
                    if !self.cfg.try_all_components {
                        break;
                    }
                }
            }
        }
        let mut reason = String::from("homologically trivial and Brunnian; ");
        if !tried.is_empty() {
            reason += &format!("twisted links inconclusive for components {tried:?}");
        }
        if !failed.is_empty() {
            if !tried.is_empty() {
                reason += "; ";
            }
            reason += &format!("no bundled form within budget for components {failed:?}");
        }
        spent.finish(reason)
    }
}

/// Bounded decision of whether `d` is a trivial link.
pub fn is_trivial_link(d: &LinkDiagram, budget: &SearchBudget, cfg: &ClassifierConfig) -> Verdict {
    is_trivial_link_traced(d, budget, cfg).0
}

pub fn is_trivial_link_traced(
    d: &LinkDiagram,
    budget: &SearchBudget,
    cfg: &ClassifierConfig,
) -> (Verdict, Vec<TraceEntry>) {
    let c = Classifier {
        budget,
        cfg,
        memo: Default::default(),
        trace: Default::default(),
    };
    let v = c.classify(d, "L");
    (v, c.trace.into_inner().expect("trace"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Htb {
    Confirmed,
    Refuted,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrunnianReport {
    pub verdict: VerdictKind,
    /// Knots are Brunnian by convention.
    pub by_convention: bool,
    pub sublinks: Vec<Verdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub homologically_trivial: bool,
    pub linking_matrix: Vec<Vec<i64>>,
    pub brunnian: BrunnianReport,
    pub htb: Htb,
    pub trivial: Verdict,
    pub trace: Vec<TraceEntry>,
}

pub fn classify_htb(
    d: &LinkDiagram,
    budget: &SearchBudget,
    cfg: &ClassifierConfig,
) -> ClassificationReport {
    let c = Classifier {
        budget,
        cfg,
        memo: Default::default(),
        trace: Default::default(),
    };
    let m = d.linking_matrix();
    let n = d.component_count();
    let brunnian = if n == 1 {
        BrunnianReport {
            verdict: VerdictKind::Trivial,
            by_convention: true,
            sublinks: vec![],
        }
    } else {
        let sublinks: Vec<Verdict> = (0..n)
            .map(|i| {
                c.classify(
                    &d.delete_component(i).expect("in range"),
                    &format!("L/d{i}"),
                )
            })
            .collect();
        let verdict = if sublinks.iter().all(Verdict::is_trivial) {
            VerdictKind::Trivial
        } else if sublinks.iter().any(Verdict::is_nontrivial) {
            VerdictKind::Nontrivial
        } else {
            VerdictKind::Inconclusive
        };
        BrunnianReport {
            verdict,
            by_convention: false,
            sublinks,
        }
    };
    let htb = match (m.is_zero(), brunnian.verdict) {
        (false, _) | (_, VerdictKind::Nontrivial) => Htb::Refuted,
        (true, VerdictKind::Trivial) => Htb::Confirmed,
        (true, VerdictKind::Inconclusive) => Htb::Inconclusive,
    };
    let trivial = c.classify(d, "L");
    ClassificationReport {
        homologically_trivial: m.is_zero(),
        linking_matrix: m.rows().to_vec(),
        brunnian,
        htb,
        trivial,
        trace: c.trace.into_inner().expect("trace"),
    }
}

/// Re-checks a Trivial verdict's evidence against `d`.
pub fn verify_trivial(d: &LinkDiagram, e: &Evidence) -> Result<(), String> {
    match e {
        Evidence::Reduction { certificate } => {
            let r = replay(d, certificate).map_err(|err| err.to_string())?;
            if r.is_crossingless() && r.component_count() == d.component_count() {
                Ok(())
            } else {
                Err("certificate does not end crossingless".into())
            }
        }
        Evidence::After { moves, then } => {
            let r = replay(d, moves).map_err(|err| err.to_string())?;
            verify_trivial(&r, then)
        }
        Evidence::Recursive {
            sublinks,
            component,
            bundling,
            q,
            twisted,
        } => {
            if !d.is_homologically_trivial() {
                return Err("linking matrix is not zero".into());
            }
            if sublinks.len() != d.component_count() {
                return Err("wrong number of sublink verdicts".into());
            }
            for (i, v) in sublinks.iter().enumerate() {
                let Verdict::Trivial { evidence } = v else {
                    return Err(format!("sublink {i} is not Trivial"));
                };
                let s = d.delete_component(i).map_err(|err| err.to_string())?;
                verify_trivial(&s, evidence).map_err(|err| format!("sublink {i}: {err}"))?;
            }
            let t = twisted_link(d, *component, bundling, *q)?;
            let Verdict::Trivial { evidence } = twisted.as_ref() else {
                return Err("twisted link is not Trivial".into());
            };
            verify_trivial(&t, evidence).map_err(|err| format!("twisted link: {err}"))
        }
    }
}

fn twisted_link(
    d: &LinkDiagram,
    k: usize,
    bundling: &[crate::MoveSpec],
    q: i64,
) -> Result<LinkDiagram, String> {
    if q.abs() != 1 {
        return Err(format!("twist {q} is not +-1"));
    }
    let b = replay(d, bundling).map_err(|err| err.to_string())?;
    let site = detect_bundle(&b, k)
        .map_err(|err| err.to_string())?
        .ok_or_else(|| format!("component {k} is not bundled after the moves"))?;
    twist(&b, &site, q, false).map_err(|err| err.to_string())
}

/// Re-checks a Nontrivial verdict's witness against `d`.
pub fn verify_witness(d: &LinkDiagram, w: &Witness) -> Result<(), String> {
    match w {
        Witness::Linking { i, j, value } => {
            let n = d.component_count();
            if *i >= n || *j >= n {
                return Err("component out of range".into());
            }
            let v = d.linking_matrix().get(*i, *j);
            if v != *value || v == 0 {
                return Err(format!("linking number of {i},{j} is {v}"));
            }
            Ok(())
        }
        Witness::Deleted { component, inner } => {
            let s = d
                .delete_component(*component)
                .map_err(|err| err.to_string())?;
            verify_witness(&s, inner)
        }
        Witness::Twisted {
            component,
            bundling,
            q,
            inner,
        } => {
            let t = twisted_link(d, *component, bundling, *q)?;
            verify_witness(&t, inner)
        }
        Witness::After { moves, then } => {
            let r = replay(d, moves).map_err(|err| err.to_string())?;
            verify_witness(&r, then)
        }
    }
}

/// Checks any verdict: definite ones must re-verify.
pub fn verify_verdict(d: &LinkDiagram, v: &Verdict) -> Result<(), String> {
    match v {
        Verdict::Trivial { evidence } => verify_trivial(d, evidence),
        Verdict::Nontrivial { witness } => verify_witness(d, witness),
        Verdict::Inconclusive { .. } => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::corpus_load;

    fn run(name: &str) -> Verdict {
        let d = corpus_load(name).unwrap();
        let v = is_trivial_link(&d, &SearchBudget::default(), &ClassifierConfig::default());
        verify_verdict(&d, &v).unwrap();
        v
    }

    #[test]
    fn unlink_and_hopf() {
        assert!(run("unlink3").is_trivial());
        let v = run("hopf");
        assert!(matches!(
            v,
            Verdict::Nontrivial {
                witness: Witness::Linking { value: 1, .. }
            }
        ));
    }

    #[test]
    fn chain_witness() {
        assert!(run("chain4").is_nontrivial());
    }

    #[test]
    fn knot_is_brunnian_by_convention() {
        let d = corpus_load("trefoil").unwrap();
        let b = SearchBudget {
            max_crossings: Some(5),
            ..Default::default()
        };
        let r = classify_htb(&d, &b, &ClassifierConfig::default());
        assert!(r.brunnian.by_convention);
        assert_eq!(r.htb, Htb::Confirmed);
        assert!(r.trivial.is_inconclusive());
    }
}
