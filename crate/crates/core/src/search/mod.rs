//! Bounded search over finite frames: exhaustive enumeration, seeded random
//! generation, and countermodel search.

mod countermodel;
mod enumerate;
mod random;

pub use countermodel::{find_countermodel, find_countermodel_with, CountermodelResult};
pub use enumerate::{
    enumerate_frames, enumerate_frames_with, partitions, FrameEnumeration, MAX_ENUMERATION_WORLDS,
};
pub use random::random_valid_frame;

use crate::semantics::SemanticsError;
use crate::syntax::System;

/// Limits for enumeration, countermodel search and random generation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_worlds: usize,
    /// Propositions the valuations range over. Empty means "those occurring
    /// in the query".
    pub propositions: Vec<String>,
    /// Seed for random generation.
    pub seed: u64,
}

impl SearchBudget {
    pub fn new(max_worlds: usize) -> SearchBudget {
        SearchBudget {
            max_worlds,
            propositions: Vec::new(),
            seed: 0,
        }
    }

    pub fn with_propositions<S: Into<String>>(mut self, props: impl IntoIterator<Item = S>) -> SearchBudget {
        self.propositions = props.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_seed(mut self, seed: u64) -> SearchBudget {
        self.seed = seed;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("bound-too-large: {requested} worlds requested, at most {max} supported")]
    BoundTooLarge { requested: usize, max: usize },
    #[error("the world bound must be at least 1")]
    EmptyBound,
    #[error("wrong-system: `{formula}` is not a formula of {system}")]
    WrongSystem { formula: String, system: System },
    #[error("{propositions} propositions over {worlds} worlds give too many valuations")]
    TooManyPropositions { propositions: usize, worlds: usize },
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

impl SearchError {
    pub fn reason(&self) -> &'static str {
        match self {
            SearchError::BoundTooLarge { .. } => "bound-too-large",
            SearchError::EmptyBound => "empty-bound",
            SearchError::WrongSystem { .. } => "wrong-system",
            SearchError::TooManyPropositions { .. } => "too-many-propositions",
            SearchError::Semantics(e) => e.reason(),
        }
    }
}
