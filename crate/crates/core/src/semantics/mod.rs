//! Finite Kripke semantics.
//!
//! A [`Frame`] holds the worlds with the unitary relation `U` and one
//! measurement relation. A [`Model`] adds a valuation, a [`Structure`] adds
//! an interpretation of labels. Frames are never completed automatically;
//! [`validate_frame`] reports every condition they fail.

mod file;
mod frame;
mod model;

pub use file::{load_structure, parse_structure, ModelFileError};
pub use frame::{
    validate_frame, validate_frame_with, Conditions, Frame, FrameProperty, FrameViolation,
    WorldSet, MAX_FRAME_WORLDS,
};
pub use model::{entails_in, eval, holds, satisfying_worlds, Model, Structure};

pub(crate) use frame::{full_set, members, satisfies};

use crate::syntax::{Label, Relation, System};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SemanticsError {
    #[error("unknown-world: world {0} is not in the frame")]
    UnknownWorld(usize),
    #[error("wrong-system: relation {relation} is not interpreted in {system}")]
    WrongSystem { relation: Relation, system: System },
    #[error("unbound-label: label `{0}` has no interpretation")]
    UnboundLabel(Label),
    #[error("a frame has between 1 and {MAX_FRAME_WORLDS} worlds, not {0}")]
    FrameSize(usize),
    #[error("expected {expected} world names, found {found}")]
    NameCount { expected: usize, found: usize },
    #[error("duplicate world `{0}`")]
    DuplicateWorld(String),
    #[error("valuation covers {found} worlds, the frame has {expected}")]
    ValuationSize { expected: usize, found: usize },
}

impl SemanticsError {
    /// Stable identifier for the error kind.
    pub fn reason(&self) -> &'static str {
        match self {
            SemanticsError::UnknownWorld(_) => "unknown-world",
            SemanticsError::WrongSystem { .. } => "wrong-system",
            SemanticsError::UnboundLabel(_) => "unbound-label",
            _ => "invalid-model",
        }
    }
}
