use thiserror::Error;

use crate::diagram::Arc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("arc {arc} appears {count} times (expected 2, or once as a loop)")]
    Multiplicity { arc: Arc, count: usize },
    #[error("inconsistent orientation at arc {arc}")]
    Orientation { arc: Arc },
    #[error("diagram is not planar (piece containing crossing {crossing})")]
    Planarity { crossing: usize },
    #[error("component index {index} out of range ({count} components)")]
    ComponentIndex { index: usize, count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("move does not match the diagram: {0}")]
    SiteMismatch(String),
    #[error("certificate step {step}: {source}")]
    Replay {
        step: usize,
        #[source]
        source: Box<MoveError>,
    },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("stale twist site: {0}")]
    StaleSite(String),
    #[error("slope {0} is not realizable here (only *, 1/0 and 1/q)")]
    UnsupportedSlope(String),
    #[error("slope vector has {got} entries, diagram has {expected} components")]
    SlopeLength { got: usize, expected: usize },
    #[error("cannot parse slope `{0}`")]
    SlopeSyntax(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("invalid budget: {0}")]
    Budget(String),
    #[error("expected a 1-component diagram, got {0} components")]
    NotAKnot(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}
