//! Words over Σ and Γ, gadget traversal patterns and the counting of rightmost paths.

pub mod analysis;
pub mod automaton;
pub mod catalog;
pub mod counting;
pub mod language;
pub mod letters;
pub mod local;
pub mod structure;

use thiserror::Error;

use crate::engine::WalkError;
use crate::family::FamilyError;
use crate::graph::PathError;
use crate::oracle::OracleError;

pub use analysis::{
    classify_bounce, encode_trace, verify_transitions, BounceClass, BounceReport, BounceSource, TransitionCategory,
    TransitionReport,
};
pub use automaton::{anchor, build_j_automaton, EmpiricalAutomaton, JAutomaton};
pub use catalog::{GadgetClass, PatternCatalog};
pub use counting::{asymptotics, growth_constant, recurrence_table, AsymptoticsResult};
pub use language::{check_total_order, compare, enumerate_language, j_language, phi};
pub use letters::{Gamma, GammaWord, LetterPattern, PatternWord, Sigma, Terminal};
pub use structure::{skeleton, CutState, LetterKey, NumberKey, SigmaKey, Skeleton};

#[derive(Debug, Error)]
pub enum WordError {
    #[error("anchoring failed: {0}")]
    Anchor(String),
    #[error("pattern labels: {0}")]
    Labels(String),
    #[error("word {0} is not in J")]
    NotInJ(String),
    #[error("{0} and {1} are not comparable")]
    Incomparable(String, String),
    #[error("order check failed: {0}")]
    Order(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("bounce classification: {0}")]
    Classification(String),
    #[error("no pattern for {0}")]
    Unclassifiable(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error(transparent)]
    Path(#[from] PathError),
}
