//! Proof checking and finite model search for labelled modal logics of
//! quantum measurement.
//!
//! * [`syntax`]: formulas, parsing and printing.
//! * [`kernel`]: proof scripts and the proof checker.
//! * [`semantics`]: finite frames, models and the truth relation.
//! * [`search`]: frame enumeration, random frames, countermodel search.

pub mod kernel;
pub mod search;
pub mod semantics;
pub mod syntax;

pub use kernel::{check, parse_script, CheckReport, Diagnostic, ProofScript, ReasonCode, Verdict};
pub use search::{enumerate_frames, find_countermodel, random_valid_frame, CountermodelResult, SearchBudget};
pub use semantics::{eval, holds, validate_frame, Frame, FrameViolation, Model, Structure};
pub use syntax::{parse_formula, Formula, Label, MFormula, Relation, System};
