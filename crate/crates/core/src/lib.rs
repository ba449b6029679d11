//! Link-diagram calculus: PD diagrams, Reidemeister moves with replayable
//! certificates, bounded move search, 1/q twist surgery on unknotted
//! components, and recursive unlink recognition.

pub mod canon;
pub mod classify;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod pd;
pub mod reidemeister;
pub mod scramble;
pub mod search;
pub mod surgery;
pub mod verdict;

pub use canon::{canonical_key, canonical_key_marked, CanonicalKey};
pub use classify::{
    classify_htb, is_trivial_link, is_trivial_link_traced, verify_trivial, verify_verdict,
    verify_witness, BrunnianReport, ClassificationReport, ClassifierConfig, Htb, TraceEntry,
};
pub use corpus::{corpus_load, CorpusEntry, CORPUS};
pub use diagram::{Arc, ArcSide, Crossing, Face, LinkDiagram, LinkingMatrix, Side};
pub use error::{DiagramError, MoveError, SearchError, SurgeryError};
pub use pd::{from_json, parse_pd, to_json, to_pd, DiagramJson};
pub use reidemeister::{
    apply_move, enumerate_moves, inverse_move, replay, MoveKind, MoveOptions, MoveSpec, OverChoice,
    Slide,
};
pub use scramble::{scramble, ScrambleStep, Scrambled};
pub use search::{
    greedy_reduce, is_unknot, replay_certificate, search_reduce, SearchBudget, SearchConfig,
    SearchOutcome, SearchReport, TargetPredicate, TraceRecord,
};
pub use surgery::{
    apply_slopes, bundle_component, detect_bundle, predicted_linking_after_twist, twist, Bundling,
    Slope, SlopeOutcome, SlopeVector, TwistSite,
};
pub use verdict::{Evidence, InconclusiveReport, Verdict, VerdictKind, Witness};
