//! Three-valued results of the bounded recognition procedures.

use serde::Serialize;

use crate::reidemeister::MoveSpec;
use crate::search::SearchReport;

/// Why a link is trivial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Evidence {
    /// Moves taking the diagram to crossingless loops.
    Reduction { certificate: Vec<MoveSpec> },
    /// Zero linking matrix, every deletion sublink trivial, and the link
    /// obtained by a `q` twist on `component` trivial.
    Recursive {
        sublinks: Vec<Verdict>,
        component: usize,
        /// Moves bringing `component` to bundled form.
        bundling: Vec<MoveSpec>,
        q: i64,
        twisted: Box<Verdict>,
    },
    /// `moves` first, then `then` applies to the result.
    After {
        moves: Vec<MoveSpec>,
        then: Box<Evidence>,
    },
}

/// Why a link is not trivial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Witness {
    /// Components `i` and `j` have linking number `value != 0`.
    Linking { i: usize, j: usize, value: i64 },
    /// Deleting `component` leaves a nontrivial link.
    Deleted {
        component: usize,
        inner: Box<Witness>,
    },
    /// Twisting along `component` (after `bundling`) leaves a nontrivial link.
    Twisted {
        component: usize,
        bundling: Vec<MoveSpec>,
        q: i64,
        inner: Box<Witness>,
    },
    /// `moves` first, then `then` applies to the result.
    After {
        moves: Vec<MoveSpec>,
        then: Box<Witness>,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InconclusiveReport {
    pub reason: String,
    pub nodes_explored: usize,
    pub frontier: usize,
    pub caps_hit: Vec<String>,
    /// Every diagram reachable under the crossing cap was explored.
    pub exhausted: bool,
}

impl InconclusiveReport {
    pub fn from_search(reason: impl Into<String>, r: &SearchReport) -> Self {
        InconclusiveReport {
            reason: reason.into(),
            nodes_explored: r.nodes_explored,
            frontier: r.frontier,
            caps_hit: r.caps_hit.clone(),
            exhausted: r.exhausted,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    Trivial { evidence: Evidence },
    Nontrivial { witness: Witness },
    Inconclusive { report: InconclusiveReport },
}

/// Verdict kind without payload.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VerdictKind {
    Trivial,
    Nontrivial,
    Inconclusive,
}

impl Verdict {
    pub fn kind(&self) -> VerdictKind {
        match self {
            Verdict::Trivial { .. } => VerdictKind::Trivial,
            Verdict::Nontrivial { .. } => VerdictKind::Nontrivial,
            Verdict::Inconclusive { .. } => VerdictKind::Inconclusive,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.kind() == VerdictKind::Trivial
    }

    pub fn is_nontrivial(&self) -> bool {
        self.kind() == VerdictKind::Nontrivial
    }

    pub fn is_inconclusive(&self) -> bool {
        self.kind() == VerdictKind::Inconclusive
    }
}

impl std::fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            VerdictKind::Trivial => "Trivial",
            VerdictKind::Nontrivial => "Nontrivial",
            VerdictKind::Inconclusive => "Inconclusive",
        })
    }
}
